//! Rhythm-based ("tap phrase") authentication.
//!
//! A secret is a phrase of taps and breaks entered on a surface that acts as
//! one big button. This crate turns press/release streams into phrases,
//! normalizes phrases into fixed-length occupancy signals, matches them
//! against a single enrolled template, authenticates continuously over a
//! live event stream, and estimates false accept/reject rates by simulation.

pub mod error;
pub mod matcher;
pub mod model;
pub mod signal;
pub mod sim;
pub mod stream;
pub mod trace;

pub use error::{Error, Result};
pub use matcher::{
    crude_match, hamming_match, tap_count, MatchResult, MatcherKind, MatcherParams, Template,
};
pub use model::{phrase_from_events, validate_events, EdgeKind, TapEvent, TapPhrase};
pub use signal::{hamming_distance, normalize, BinarySignal};
pub use stream::{offline_scan, window_phrase, AuthDecision, AuthSession, SessionState};
