//! Timeout-free streaming authentication.
//!
//! An [`AuthSession`] consumes raw edges one at a time. On every release it
//! tries each buffered press as the start of a candidate window ending at
//! that release, so acceptance fires on the release that completes the
//! phrase instead of after an inactivity timeout.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcher::{hamming_match_with_signal, MatchResult, Template};
use crate::model::{phrase_from_events, validate_events, EdgeKind, TapEvent, TapPhrase};
use crate::signal::BinarySignal;

/// Looseness of the raw-timestamp span checks used for pre-filtering and
/// pruning, relative to the exact gate applied to the summed segments.
const RAW_SPAN_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SessionState {
    Idle,
    Pressed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuthDecision {
    pub accepted: bool,
    /// Inclusive `(start, end)` event indices of the accepting window, counted
    /// from the first event pushed since the last reset.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matched_window: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub result: Option<MatchResult>,
}

impl AuthDecision {
    fn pending() -> Self {
        Self {
            accepted: false,
            matched_window: None,
            result: None,
        }
    }
}

/// Debounced candidate phrase for a window of raw events.
pub fn window_phrase(events: &[TapEvent], min_segment_ms: f64) -> Result<TapPhrase> {
    Ok(phrase_from_events(events)?.debounced(min_segment_ms))
}

#[derive(Debug, Clone)]
pub struct AuthSession {
    template: Template,
    reference: BinarySignal,
    buffer: Vec<TapEvent>,
    /// Session-wide index of `buffer[0]`.
    offset: usize,
    last_t: Option<f64>,
    state: SessionState,
    decided_at: Option<f64>,
    pruning: bool,
}

impl AuthSession {
    pub fn new(template: Template) -> Result<Self> {
        template.params.validate()?;
        let reference = template.signal()?;
        Ok(Self {
            template,
            reference,
            buffer: Vec::new(),
            offset: 0,
            last_t: None,
            state: SessionState::Idle,
            decided_at: None,
            pruning: true,
        })
    }

    /// Disables buffer pruning. Decisions are unchanged; memory grows with
    /// the stream. Used as a reference in tests.
    pub fn without_pruning(mut self) -> Self {
        self.pruning = false;
        self
    }

    pub fn template(&self) -> &Template {
        &self.template
    }

    pub fn buffer(&self) -> &[TapEvent] {
        &self.buffer
    }

    pub fn state(&self) -> SessionState {
        self.state
    }

    /// Timestamp of the release that produced the first acceptance.
    pub fn decided_at(&self) -> Option<f64> {
        self.decided_at
    }

    /// Total events accepted since the last reset.
    pub fn events_seen(&self) -> usize {
        self.offset + self.buffer.len()
    }

    pub fn push_event(&mut self, event: TapEvent) -> Result<AuthDecision> {
        if self.decided_at.is_some() {
            return Err(Error::SessionAlreadyDecided);
        }
        if !(event.t.is_finite() && event.t >= 0.0) {
            return Err(Error::InvariantViolation(format!(
                "invalid timestamp {}",
                event.t
            )));
        }
        if let Some(last) = self.last_t {
            if event.t <= last {
                return Err(Error::OutOfOrderEvent { t: event.t, last });
            }
        }
        let expected = match self.state {
            SessionState::Idle => EdgeKind::Press,
            SessionState::Pressed => EdgeKind::Release,
        };
        if event.kind != expected {
            return Err(Error::AlternationViolation {
                index: self.events_seen(),
            });
        }

        self.buffer.push(event);
        self.last_t = Some(event.t);
        self.state = match event.kind {
            EdgeKind::Press => SessionState::Pressed,
            EdgeKind::Release => SessionState::Idle,
        };
        if event.kind == EdgeKind::Press {
            return Ok(AuthDecision::pending());
        }

        let decision = self.evaluate_release();
        if decision.accepted {
            self.decided_at = Some(event.t);
        } else if self.pruning {
            self.prune(event.t);
        }
        Ok(decision)
    }

    /// Tries every buffered press as a window start, oldest first.
    fn evaluate_release(&self) -> AuthDecision {
        let end = self.buffer.len() - 1;
        let now = self.buffer[end].t;
        let params = &self.template.params;
        let template_span = self.template.phrase.total_span();
        let (lo, hi) = params.span_bounds(template_span);

        for start in (0..end).step_by(2) {
            let span = now - self.buffer[start].t;
            // Raw span pre-filter; the matcher re-applies the exact gate on
            // the debounced phrase.
            if span > hi * (1.0 + RAW_SPAN_MARGIN) || span < lo * (1.0 - RAW_SPAN_MARGIN) {
                continue;
            }
            let window = &self.buffer[start..=end];
            let phrase = window_phrase(window, params.min_segment_ms)
                .expect("buffer keeps stream invariants");
            let result = hamming_match_with_signal(&self.template, &self.reference, &phrase);
            if result.accepted {
                return AuthDecision {
                    accepted: true,
                    matched_window: Some((self.offset + start, self.offset + end)),
                    result: Some(result),
                };
            }
        }
        AuthDecision::pending()
    }

    /// Drops presses that can no longer open a window within the span gate,
    /// keeping one extra press/release pair before the earliest viable press.
    fn prune(&mut self, now: f64) {
        let template_span = self.template.phrase.total_span();
        let (_, hi) = self.template.params.span_bounds(template_span);
        // Buffer ends on a release here, so presses sit at even indices.
        let first_viable = (0..self.buffer.len())
            .step_by(2)
            .find(|&i| now - self.buffer[i].t <= hi * (1.0 + RAW_SPAN_MARGIN))
            .unwrap_or(self.buffer.len());
        let cut = first_viable.saturating_sub(2);
        if cut > 0 {
            self.buffer.drain(..cut);
            self.offset += cut;
        }
    }

    /// Clears the buffer and latch. The next event starts a fresh clock
    /// domain, so its timestamp may be earlier than anything seen before.
    pub fn reset(&mut self) {
        self.buffer.clear();
        self.offset = 0;
        self.last_t = None;
        self.state = SessionState::Idle;
        self.decided_at = None;
    }
}

/// Brute-force evaluation of every `(press, release)` window of `events`.
///
/// Returns every accepting window ordered by end index, then start index.
/// The first entry is the decision a streaming session would emit. A
/// trailing press is tolerated since it cannot close a window.
pub fn offline_scan(template: &Template, events: &[TapEvent]) -> Result<Vec<AuthDecision>> {
    validate_events(events)?;
    template.params.validate()?;
    let reference = template.signal()?;
    let params = &template.params;
    let mut accepted = Vec::new();
    for end in (1..events.len()).step_by(2) {
        for start in (0..end).step_by(2) {
            let phrase = window_phrase(&events[start..=end], params.min_segment_ms)?;
            let result = hamming_match_with_signal(template, &reference, &phrase);
            if result.accepted {
                accepted.push(AuthDecision {
                    accepted: true,
                    matched_window: Some((start, end)),
                    result: Some(result),
                });
            }
        }
    }
    Ok(accepted)
}
