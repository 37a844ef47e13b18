//! Browser bindings for the tap-phrase playground.
//!
//! Each export takes plain numbers and returns a JSON string. Errors are
//! thrown as JS strings of the form `"<ErrorName>: <detail>"`. The page under
//! `www/` drives three operations: inspect a phrase's signal, compare two
//! recorded phrases, and sweep error rates over jitter.

use serde::Serialize;
use serde_json::json;
use tapphrase::sim::{estimate_far, estimate_frr, JitterModel, PhraseGenModel};
use tapphrase::{
    crude_match, hamming_match, normalize, phrase_from_events, MatcherParams, TapEvent, TapPhrase,
    Template,
};
use wasm_bindgen::prelude::*;

type Out = Result<String, String>;

fn fail(e: tapphrase::Error) -> String {
    format!("{}: {e}", e.name())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn phrase(segments: &[f64]) -> Result<TapPhrase, String> {
    TapPhrase::new(segments.to_vec()).map_err(fail)
}

fn template(segments: &[f64], params: MatcherParams) -> Result<Template, String> {
    params.validate().map_err(fail)?;
    // Built directly: the system clock is unavailable on wasm32-unknown-unknown.
    Ok(Template {
        id: "playground".into(),
        phrase: phrase(segments)?,
        params,
        created_at: 0,
    })
}

/// Turns alternating press/release timestamps (first one a press) into
/// debounced phrase segments.
pub fn record_impl(times: &[f64], min_segment_ms: f64) -> Out {
    let events: Vec<TapEvent> = times
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            if i % 2 == 0 {
                TapEvent::press(t)
            } else {
                TapEvent::release(t)
            }
        })
        .collect();
    let phrase = phrase_from_events(&events)
        .map_err(fail)?
        .debounced(min_segment_ms);
    Ok(to_json(&json!({
        "segments": phrase.segments(),
        "tap_count": phrase.tap_count(),
        "span_ms": phrase.total_span(),
    })))
}

pub fn signal_impl(segments: &[f64], bins: usize) -> Out {
    let p = phrase(segments)?;
    let signal = normalize(&p, bins).map_err(fail)?;
    Ok(to_json(&json!({
        "bits": signal.to_string(),
        "tap_count": p.tap_count(),
        "span_ms": p.total_span(),
    })))
}

pub fn compare_impl(
    template_segments: &[f64],
    candidate_segments: &[f64],
    bins: usize,
    tau: f64,
    span_tolerance: f64,
) -> Out {
    let params = MatcherParams {
        bins,
        tau,
        span_tolerance,
        ..MatcherParams::default()
    };
    let t = template(template_segments, params)?;
    let c = phrase(candidate_segments)?;
    let template_bits = t.signal().map_err(fail)?;
    let candidate_bits = normalize(&c, bins).map_err(fail)?;
    Ok(to_json(&json!({
        "template_bits": template_bits.to_string(),
        "candidate_bits": candidate_bits.to_string(),
        "hamming": hamming_match(&t, &c),
        "crude": crude_match(&t, &c),
    })))
}

pub fn rates_impl(
    template_segments: &[f64],
    sigmas: &[f64],
    trials: u32,
    seed: u64,
    bins: usize,
    tau: f64,
    span_tolerance: f64,
) -> Out {
    let params = MatcherParams {
        bins,
        tau,
        span_tolerance,
        ..MatcherParams::default()
    };
    let t = template(template_segments, params)?;
    let mut frr = Vec::with_capacity(sigmas.len());
    for &sigma in sigmas {
        let jitter = JitterModel::new(sigma, seed).map_err(fail)?;
        frr.push(estimate_frr(&t, &jitter, trials.into()).map_err(fail)?);
    }
    let far = estimate_far(&t, &PhraseGenModel::with_seed(seed), trials.into()).map_err(fail)?;
    Ok(to_json(
        &json!({ "sigmas": sigmas, "frr": frr, "far": far }),
    ))
}

fn js(out: Out) -> Result<String, JsValue> {
    out.map_err(|e| JsValue::from_str(&e))
}

/// Phrase segments from alternating press/release timestamps.
#[wasm_bindgen]
pub fn record(times: &[f64], min_segment_ms: f64) -> Result<String, JsValue> {
    js(record_impl(times, min_segment_ms))
}

/// Span-normalized occupancy signal of a phrase.
#[wasm_bindgen]
pub fn signal(segments: &[f64], bins: usize) -> Result<String, JsValue> {
    js(signal_impl(segments, bins))
}

/// Both matchers' verdicts for a candidate against a template.
#[wasm_bindgen]
pub fn compare(
    template_segments: &[f64],
    candidate_segments: &[f64],
    bins: usize,
    tau: f64,
    span_tolerance: f64,
) -> Result<String, JsValue> {
    js(compare_impl(
        template_segments,
        candidate_segments,
        bins,
        tau,
        span_tolerance,
    ))
}

/// Monte Carlo FRR at each jitter level plus FAR against random guesses.
#[wasm_bindgen]
pub fn rates(
    template_segments: &[f64],
    sigmas: &[f64],
    trials: u32,
    seed: u64,
    bins: usize,
    tau: f64,
    span_tolerance: f64,
) -> Result<String, JsValue> {
    js(rates_impl(
        template_segments,
        sigmas,
        trials,
        seed,
        bins,
        tau,
        span_tolerance,
    ))
}
