//! Accept/reject decisions for a candidate phrase against an enrolled template.
//!
//! Two procedures are provided:
//!
//! * [`crude_match`]: equal tap counts and total span within
//!   `±span_tolerance` of the template. It ignores rhythm entirely.
//! * [`hamming_match`]: the same span gate, then the Hamming distance between
//!   the span-normalized occupancy signals must not exceed `tau`. Tap counts
//!   may differ.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::TapPhrase;
use crate::signal::{hamming_distance, normalize, BinarySignal};

/// Relative slack applied to both span-gate endpoints so that a span
/// summing to exactly `(1 ± tol)·T` is not lost to rounding.
pub const SPAN_GATE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MatcherParams {
    /// Signal resolution.
    pub bins: usize,
    /// Maximum accepted Hamming distance.
    pub tau: f64,
    /// Allowed relative deviation of the candidate span.
    pub span_tolerance: f64,
    /// Debounce floor for segments of event-derived phrases.
    pub min_segment_ms: f64,
}

impl Default for MatcherParams {
    fn default() -> Self {
        Self {
            bins: 64,
            tau: 0.15,
            span_tolerance: 0.20,
            min_segment_ms: 15.0,
        }
    }
}

impl MatcherParams {
    pub fn new(bins: usize, tau: f64, span_tolerance: f64, min_segment_ms: f64) -> Result<Self> {
        let params = Self {
            bins,
            tau,
            span_tolerance,
            min_segment_ms,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.bins < 8 {
            return Err(Error::InvalidParams(format!(
                "bins must be at least 8, got {}",
                self.bins
            )));
        }
        if !(self.tau > 0.0 && self.tau < 1.0) {
            return Err(Error::InvalidParams(format!(
                "tau must lie in (0, 1), got {}",
                self.tau
            )));
        }
        if !(self.span_tolerance > 0.0 && self.span_tolerance < 1.0) {
            return Err(Error::InvalidParams(format!(
                "span_tolerance must lie in (0, 1), got {}",
                self.span_tolerance
            )));
        }
        if !(self.min_segment_ms.is_finite() && self.min_segment_ms >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "min_segment_ms must be finite and non-negative, got {}",
                self.min_segment_ms
            )));
        }
        Ok(())
    }

    /// Inclusive span interval `[lo, hi]` accepted for a template span,
    /// with [`SPAN_GATE_SLACK`] applied.
    pub fn span_bounds(&self, template_span: f64) -> (f64, f64) {
        (
            (1.0 - self.span_tolerance) * template_span * (1.0 - SPAN_GATE_SLACK),
            (1.0 + self.span_tolerance) * template_span * (1.0 + SPAN_GATE_SLACK),
        )
    }

    pub fn span_gate(&self, template_span: f64, candidate_span: f64) -> bool {
        let (lo, hi) = self.span_bounds(template_span);
        lo <= candidate_span && candidate_span <= hi
    }
}

/// An enrolled tap phrase together with the parameters it is matched under.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Template {
    pub id: String,
    pub phrase: TapPhrase,
    pub params: MatcherParams,
    /// Unix time of enrollment in milliseconds.
    pub created_at: u64,
}

impl Template {
    pub fn new(id: impl Into<String>, phrase: TapPhrase, params: MatcherParams) -> Self {
        let created_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0);
        Self {
            id: id.into(),
            phrase,
            params,
            created_at,
        }
    }

    /// Template signal at the template's own resolution.
    pub fn signal(&self) -> Result<BinarySignal> {
        normalize(&self.phrase, self.params.bins)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchResult {
    pub accepted: bool,
    /// Hamming distance; absent for the crude matcher and when the span gate
    /// rejected before any signal comparison.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub distance: Option<f64>,
    pub span_gate_passed: bool,
    /// Only the crude matcher checks tap counts.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub count_gate_passed: Option<bool>,
    pub candidate_span_ms: f64,
    pub template_span_ms: f64,
}

pub fn tap_count(phrase: &TapPhrase) -> usize {
    phrase.tap_count()
}

pub fn crude_match(template: &Template, candidate: &TapPhrase) -> MatchResult {
    let template_span = template.phrase.total_span();
    let candidate_span = candidate.total_span();
    let span_ok = template.params.span_gate(template_span, candidate_span);
    let count_ok = tap_count(&template.phrase) == tap_count(candidate);
    MatchResult {
        accepted: span_ok && count_ok,
        distance: None,
        span_gate_passed: span_ok,
        count_gate_passed: Some(count_ok),
        candidate_span_ms: candidate_span,
        template_span_ms: template_span,
    }
}

pub fn hamming_match(template: &Template, candidate: &TapPhrase) -> MatchResult {
    let reference = template
        .signal()
        .expect("template bins validated at construction");
    hamming_match_with_signal(template, &reference, candidate)
}

/// [`hamming_match`] with the template signal already computed.
pub(crate) fn hamming_match_with_signal(
    template: &Template,
    reference: &BinarySignal,
    candidate: &TapPhrase,
) -> MatchResult {
    let params = &template.params;
    let template_span = template.phrase.total_span();
    let candidate_span = candidate.total_span();
    let span_ok = params.span_gate(template_span, candidate_span);
    let distance = span_ok.then(|| {
        let signal = normalize(candidate, reference.len()).expect("reference length is valid");
        hamming_distance(reference, &signal).expect("equal lengths")
    });
    MatchResult {
        accepted: distance.is_some_and(|d| d <= params.tau),
        distance,
        span_gate_passed: span_ok,
        count_gate_passed: None,
        candidate_span_ms: candidate_span,
        template_span_ms: template_span,
    }
}

/// Matcher selector used by the front ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MatcherKind {
    Crude,
    #[default]
    Hamming,
}

impl MatcherKind {
    pub fn run(self, template: &Template, candidate: &TapPhrase) -> MatchResult {
        match self {
            MatcherKind::Crude => crude_match(template, candidate),
            MatcherKind::Hamming => hamming_match(template, candidate),
        }
    }
}

impl std::str::FromStr for MatcherKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "crude" => Ok(MatcherKind::Crude),
            "hamming" => Ok(MatcherKind::Hamming),
            other => Err(Error::InvalidParams(format!(
                "unknown matcher {other:?} (expected crude or hamming)"
            ))),
        }
    }
}
