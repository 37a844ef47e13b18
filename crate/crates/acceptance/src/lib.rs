//! Deterministic workload generators shared by the acceptance checks.

use tapphrase::sim::{gen_random_phrase, perturb, rng, JitterModel, PhraseGenModel};
use tapphrase::{MatcherParams, TapEvent, TapPhrase, Template};

/// Uniform draw in `[0, 1)` on a stream separate from the phrase generators.
pub fn unit(seed: u64, slot: u64) -> f64 {
    rng::uniform(seed, u64::MAX - 1, slot, 7)
}

fn log_between(x: f64, lo: f64, hi: f64) -> f64 {
    (lo.ln() + x * (hi.ln() - lo.ln())).exp()
}

/// A random template with randomized matcher parameters.
pub fn random_template(seed: u64) -> Template {
    let phrase = gen_random_phrase(
        &PhraseGenModel {
            tap_count_range: (1 + (seed % 4) as usize, 6),
            duration_range_ms: (30.0, 400.0),
            seed,
        },
        0,
    );
    let params = MatcherParams {
        bins: [16, 32, 64, 128][(unit(seed, 0) * 4.0) as usize],
        tau: 0.03 + 0.17 * unit(seed, 1),
        span_tolerance: 0.05 + 0.2 * unit(seed, 2),
        min_segment_ms: [0.0, 15.0, 15.0, 40.0][(unit(seed, 3) * 4.0) as usize],
    };
    Template::new(format!("t{seed}"), phrase, params)
}

/// A valid event stream of at most `max_events` events mixing noise taps with
/// jittered replays of `template`, optionally ending on a press. One seed in
/// three yields noise only.
pub fn random_stream(template: &TapPhrase, seed: u64, max_events: usize) -> Vec<TapEvent> {
    let jitter = JitterModel {
        sigma: 0.04,
        seed: seed ^ 0xA5A5,
    };
    let u = |slot: u64| unit(seed, 100 + slot);
    let mut events = Vec::new();
    let mut t = log_between(u(0), 1.0, 500.0);
    let replay_rate = [0.0, 0.1, 0.3][(seed % 3) as usize];
    let mut slot = 1;
    while events.len() + 2 <= max_events && slot <= 200 {
        let pick = u(slot);
        slot += 1;
        if pick >= replay_rate {
            let tap = log_between(u(slot), 3.0, 400.0);
            events.push(TapEvent::press(t));
            events.push(TapEvent::release(t + tap));
            t += tap;
        } else {
            let replay = perturb(template, &jitter, slot);
            if events.len() + replay.len() + 1 > max_events {
                continue;
            }
            let mut replay_events = replay.to_events(t);
            t = replay_events.last().expect("non-empty phrase").t;
            events.append(&mut replay_events);
        }
        t += log_between(u(slot + 10_000), 3.0, 1500.0);
        slot += 1;
    }
    if events.len() < max_events && u(999_999) < 0.2 {
        events.push(TapEvent::press(t));
    }
    if events.is_empty() {
        events.push(TapEvent::press(t));
        events.push(TapEvent::release(t + 10.0));
    }
    events
}
