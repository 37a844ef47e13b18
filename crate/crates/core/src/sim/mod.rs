//! Monte-Carlo FAR/FRR estimation and the summary statistics used to compare
//! unlock times.
//!
//! All estimators are deterministic: draw `i` of a run depends only on the
//! model seed and `i` (see [`rng`]), so any single trial can be recomputed
//! in isolation and runs with different `sigma` share their noise.

pub mod rng;
pub mod stats;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcher::{hamming_match_with_signal, Template};
use crate::model::TapPhrase;

/// Lower bound on the multiplicative jitter factor; keeps durations positive.
pub const MIN_JITTER_FACTOR: f64 = 0.05;

/// Per-segment multiplicative motor noise of a legitimate user.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JitterModel {
    pub sigma: f64,
    pub seed: u64,
}

impl JitterModel {
    pub fn new(sigma: f64, seed: u64) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "sigma must be finite and non-negative, got {sigma}"
            )));
        }
        Ok(Self { sigma, seed })
    }
}

/// Random-guess attacker: uniform tap count, log-uniform durations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhraseGenModel {
    pub tap_count_range: (usize, usize),
    pub duration_range_ms: (f64, f64),
    pub seed: u64,
}

impl Default for PhraseGenModel {
    fn default() -> Self {
        Self {
            tap_count_range: (3, 10),
            duration_range_ms: (80.0, 800.0),
            seed: 0,
        }
    }
}

impl PhraseGenModel {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.tap_count_range;
        if lo == 0 || lo > hi {
            return Err(Error::InvalidParams(format!(
                "tap count range [{lo}, {hi}] must be non-empty and start at 1 or more"
            )));
        }
        let (dlo, dhi) = self.duration_range_ms;
        if !(dlo.is_finite() && dhi.is_finite() && dlo > 0.0 && dlo <= dhi) {
            return Err(Error::InvalidParams(format!(
                "duration range [{dlo}, {dhi}] must be positive and non-empty"
            )));
        }
        Ok(())
    }
}

/// A Monte-Carlo rate: `rate == hits / trials` exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    pub rate: f64,
    pub hits: u64,
    pub trials: u64,
    pub seed: u64,
}

impl RateEstimate {
    fn new(hits: u64, trials: u64, seed: u64) -> Self {
        Self {
            rate: hits as f64 / trials as f64,
            hits,
            trials,
            seed,
        }
    }
}

/// Jittered copy of `phrase` for draw `draw`: each segment `d` becomes
/// `d * max(0.05, 1 + sigma * z)` with `z` the standard normal keyed by
/// `(seed, draw, segment index)`.
pub fn perturb(phrase: &TapPhrase, model: &JitterModel, draw: u64) -> TapPhrase {
    if model.sigma == 0.0 {
        return phrase.clone();
    }
    let segments = phrase
        .segments()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let z = rng::standard_normal(model.seed, draw, i as u64);
            d * (1.0 + model.sigma * z).max(MIN_JITTER_FACTOR)
        })
        .collect();
    TapPhrase::new(segments).expect("jitter keeps durations positive")
}

/// Random phrase for draw `draw`. Tap count is uniform over the inclusive
/// range (header slot, lane 0); segment `k` is `exp(ln lo + u (ln hi - ln lo))`
/// with `u` keyed by `(seed, draw, k)`.
pub fn gen_random_phrase(model: &PhraseGenModel, draw: u64) -> TapPhrase {
    let (lo, hi) = model.tap_count_range;
    let choices = (hi - lo + 1) as f64;
    let u = rng::uniform(model.seed, draw, rng::HEADER_SEGMENT, 0);
    let taps = lo + ((u * choices) as usize).min(hi - lo);

    let (dlo, dhi) = model.duration_range_ms;
    let (ln_lo, ln_hi) = (dlo.ln(), dhi.ln());
    let segments = (0..2 * taps - 1)
        .map(|k| {
            if dlo == dhi {
                return dlo;
            }
            let u = rng::uniform(model.seed, draw, k as u64, 0);
            (ln_lo + u * (ln_hi - ln_lo)).exp().clamp(dlo, dhi)
        })
        .collect();
    TapPhrase::new(segments).expect("generated durations are positive")
}

/// Fraction of jittered self-replays rejected by the Hamming matcher.
pub fn estimate_frr(
    template: &Template,
    jitter: &JitterModel,
    trials: u64,
) -> Result<RateEstimate> {
    check_trials(trials)?;
    let reference = template.signal()?;
    let rejects = (0..trials)
        .filter(|&draw| {
            let candidate = perturb(&template.phrase, jitter, draw);
            !hamming_match_with_signal(template, &reference, &candidate).accepted
        })
        .count() as u64;
    Ok(RateEstimate::new(rejects, trials, jitter.seed))
}

/// Fraction of random attacker phrases accepted by the Hamming matcher.
pub fn estimate_far(
    template: &Template,
    attacker: &PhraseGenModel,
    trials: u64,
) -> Result<RateEstimate> {
    check_trials(trials)?;
    attacker.validate()?;
    let reference = template.signal()?;
    let accepts = (0..trials)
        .filter(|&draw| {
            let candidate = gen_random_phrase(attacker, draw);
            hamming_match_with_signal(template, &reference, &candidate).accepted
        })
        .count() as u64;
    Ok(RateEstimate::new(accepts, trials, attacker.seed))
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    Ok(())
}
