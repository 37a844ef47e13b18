//! Reference implementations used as oracles. These deliberately avoid the
//! crate's own normalize/match/stream code paths and work in absolute time
//! on plain slices.

#![allow(dead_code)]

use tapphrase::{EdgeKind, TapEvent};

/// Bit `i` = pressed at absolute time `(i + 0.5) * span / bins`, boundaries
/// belonging to the later segment; first and last bits forced to 1.
pub fn oracle_bits(segments: &[f64], bins: usize) -> Vec<bool> {
    let span: f64 = segments.iter().sum();
    let mut bits = Vec::with_capacity(bins);
    for i in 0..bins {
        let center = (i as f64 + 0.5) * span / bins as f64;
        let mut edge = 0.0;
        let mut segment = 0;
        for (k, d) in segments.iter().enumerate() {
            edge += d;
            if k + 1 < segments.len() && edge <= center + 1e-9 * span {
                segment = k + 1;
            }
        }
        bits.push(segment % 2 == 0);
    }
    bits[0] = true;
    bits[bins - 1] = true;
    bits
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|b| if *b { '1' } else { '0' }).collect()
}

pub fn oracle_distance(a: &[f64], b: &[f64], bins: usize) -> f64 {
    let (x, y) = (oracle_bits(a, bins), oracle_bits(b, bins));
    x.iter().zip(&y).filter(|(p, q)| p != q).count() as f64 / bins as f64
}

pub struct OracleParams {
    pub bins: usize,
    pub tau: f64,
    pub span_tolerance: f64,
    pub min_segment_ms: f64,
}

impl Default for OracleParams {
    fn default() -> Self {
        Self {
            bins: 64,
            tau: 0.15,
            span_tolerance: 0.2,
            min_segment_ms: 15.0,
        }
    }
}

pub fn oracle_span_ok(template: &[f64], candidate: &[f64], tol: f64) -> bool {
    let t: f64 = template.iter().sum();
    let c: f64 = candidate.iter().sum();
    c >= (1.0 - tol) * t * (1.0 - 1e-9) && c <= (1.0 + tol) * t * (1.0 + 1e-9)
}

pub fn oracle_accepts(template: &[f64], candidate: &[f64], p: &OracleParams) -> bool {
    oracle_span_ok(template, candidate, p.span_tolerance)
        && oracle_distance(template, candidate, p.bins) <= p.tau
}

/// Debounce: repeatedly fuse the shortest interior segment under `min`
/// (lowest index on ties) with both neighbours.
pub fn oracle_debounce(segments: &[f64], min: f64) -> Vec<f64> {
    let mut s = segments.to_vec();
    loop {
        let mut best: Option<usize> = None;
        for i in 1..s.len().saturating_sub(1) {
            if s[i] < min && best.is_none_or(|b| s[i] < s[b]) {
                best = Some(i);
            }
        }
        match best {
            None => return s,
            Some(i) => {
                let merged = s[i - 1] + s[i] + s[i + 1];
                s.remove(i + 1);
                s.remove(i);
                s[i - 1] = merged;
            }
        }
    }
}

/// First accepting `(press, release)` window: lowest release index, then
/// lowest press index.
pub fn oracle_first_accept(
    template: &[f64],
    events: &[TapEvent],
    p: &OracleParams,
) -> Option<(usize, usize)> {
    for end in 0..events.len() {
        if events[end].kind != EdgeKind::Release {
            continue;
        }
        for start in 0..end {
            if events[start].kind != EdgeKind::Press {
                continue;
            }
            let raw: Vec<f64> = events[start..=end]
                .windows(2)
                .map(|w| w[1].t - w[0].t)
                .collect();
            let candidate = oracle_debounce(&raw, p.min_segment_ms);
            if oracle_accepts(template, &candidate, p) {
                return Some((start, end));
            }
        }
    }
    None
}

// Independent transcription of the documented counter-based RNG stream.

fn splitmix_finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

pub fn oracle_uniform(seed: u64, draw: u64, segment: u64, lane: u64) -> f64 {
    let g = 0x9E3779B97F4A7C15u64;
    let mut h = splitmix_finalize(seed.wrapping_add(g));
    h = splitmix_finalize(h ^ (draw.wrapping_add(1)).wrapping_mul(g));
    h = splitmix_finalize(h ^ (segment.wrapping_add(1)).wrapping_mul(0xD1B54A32D192ED03));
    h = splitmix_finalize(h ^ (lane.wrapping_add(1)).wrapping_mul(0x8CB92BA72F3D8DD7));
    ((h >> 11) as f64 + 0.5) * 2f64.powi(-53)
}

pub fn oracle_perturb(segments: &[f64], sigma: f64, seed: u64, draw: u64) -> Vec<f64> {
    segments
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let u0 = oracle_uniform(seed, draw, i as u64, 0);
            let u1 = oracle_uniform(seed, draw, i as u64, 1);
            let z = (-2.0 * u0.ln()).sqrt() * (2.0 * std::f64::consts::PI * u1).cos();
            d * f64::max(0.05, 1.0 + sigma * z)
        })
        .collect()
}

pub fn oracle_random_phrase(
    taps: (usize, usize),
    durations: (f64, f64),
    seed: u64,
    draw: u64,
) -> Vec<f64> {
    let u = oracle_uniform(seed, draw, u64::MAX, 0);
    let n = (taps.0 + (u * (taps.1 - taps.0 + 1) as f64).floor() as usize).min(taps.1);
    (0..2 * n - 1)
        .map(|k| {
            if durations.0 == durations.1 {
                return durations.0;
            }
            let u = oracle_uniform(seed, draw, k as u64, 0);
            (durations.0.ln() + u * (durations.1.ln() - durations.0.ln()))
                .exp()
                .clamp(durations.0, durations.1)
        })
        .collect()
}

use tapphrase::sim::{gen_random_phrase, perturb, rng, JitterModel, PhraseGenModel};
use tapphrase::TapPhrase;

/// Random template plus an event stream of at most `max_events` edges mixing
/// noise taps (some shorter than the debounce floor) with jittered replays
/// of the template. Fully determined by `seed`.
pub fn scenario(seed: u64, max_events: usize) -> (TapPhrase, Vec<TapEvent>) {
    let template = gen_random_phrase(
        &PhraseGenModel {
            tap_count_range: (1, 5),
            duration_range_ms: (30.0, 400.0),
            seed,
        },
        0,
    );
    let jitter = JitterModel {
        sigma: 0.04,
        seed: seed ^ 0xA5A5,
    };
    let u = |slot: u64| rng::uniform(seed, 1, slot, 0);
    let log_between = |x: f64, lo: f64, hi: f64| (lo.ln() + x * (hi.ln() - lo.ln())).exp();

    let mut events = Vec::new();
    let mut t = log_between(u(0), 1.0, 500.0);
    let mut slot = 1;
    while events.len() + 2 <= max_events {
        let pick = u(slot);
        slot += 1;
        if pick < 0.5 {
            let tap = log_between(u(slot), 3.0, 400.0);
            events.push(TapEvent::press(t));
            events.push(TapEvent::release(t + tap));
            t += tap;
        } else {
            let replay = perturb(&template, &jitter, slot);
            if events.len() + replay.len() + 1 > max_events {
                continue;
            }
            let mut replay_events = replay.to_events(t);
            t = replay_events.last().unwrap().t;
            events.append(&mut replay_events);
        }
        t += log_between(u(slot + 10_000), 3.0, 1500.0);
        slot += 1;
        if slot > 200 {
            break;
        }
    }
    if events.len() < max_events && u(999_999) < 0.2 {
        events.push(TapEvent::press(t));
    }
    if events.is_empty() {
        events.push(TapEvent::press(t));
        events.push(TapEvent::release(t + 10.0));
    }
    (template, events)
}
