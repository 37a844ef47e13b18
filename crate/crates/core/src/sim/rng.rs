//! Counter-based random streams.
//!
//! Every variate is a pure function of `(seed, draw, segment, lane)`:
//!
//! ```text
//! mix(z)  = splitmix64 finalizer:
//!           z = (z ^ z >> 30) * 0xBF58476D1CE4E5B9
//!           z = (z ^ z >> 27) * 0x94D049BB133111EB
//!           z ^ z >> 31
//! h0 = mix(seed + G)
//! h1 = mix(h0 ^ (draw + 1) * G)
//! h2 = mix(h1 ^ (segment + 1) * 0xD1B54A32D192ED03)
//! h3 = mix(h2 ^ (lane + 1) * 0x8CB92BA72F3D8DD7)
//! ```
//!
//! with `G = 0x9E3779B97F4A7C15` and wrapping arithmetic. A uniform in
//! (0, 1) is `((h3 >> 11) + 0.5) / 2^53`; a standard normal is Box-Muller
//! over lanes 0 and 1: `sqrt(-2 ln u0) * cos(2π u1)`.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const SEGMENT_MUL: u64 = 0xD1B5_4A32_D192_ED03;
const LANE_MUL: u64 = 0x8CB9_2BA7_2F3D_8DD7;

/// Segment slot reserved for per-draw header values (e.g. tap counts).
pub const HEADER_SEGMENT: u64 = u64::MAX;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn key(seed: u64, draw: u64, segment: u64, lane: u64) -> u64 {
    let h = mix(seed.wrapping_add(GOLDEN));
    let h = mix(h ^ draw.wrapping_add(1).wrapping_mul(GOLDEN));
    let h = mix(h ^ segment.wrapping_add(1).wrapping_mul(SEGMENT_MUL));
    mix(h ^ lane.wrapping_add(1).wrapping_mul(LANE_MUL))
}

/// Uniform variate in the open interval (0, 1).
pub fn uniform(seed: u64, draw: u64, segment: u64, lane: u64) -> f64 {
    ((key(seed, draw, segment, lane) >> 11) as f64 + 0.5) / (1u64 << 53) as f64
}

pub fn standard_normal(seed: u64, draw: u64, segment: u64) -> f64 {
    let u0 = uniform(seed, draw, segment, 0);
    let u1 = uniform(seed, draw, segment, 1);
    (-2.0 * u0.ln()).sqrt() * (std::f64::consts::TAU * u1).cos()
}
