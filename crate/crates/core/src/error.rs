use thiserror::Error;

/// Every failure the toolkit can report.
///
/// Front ends (CLI, HTTP) surface [`Error::name`] verbatim, so variant names
/// are part of the external contract.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("event stream is empty")]
    EmptyStream,
    #[error("timestamp {t} ms at event {index} is not after the previous event")]
    NonMonotonicTimestamps { index: usize, t: f64 },
    #[error("event {index} repeats the previous edge kind")]
    AlternationViolation { index: usize },
    #[error("event stream ends while pressed")]
    DanglingPress,
    #[error("need at least {min} bins, got {bins}")]
    BinsTooSmall { bins: usize, min: usize },
    #[error("signal lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("{0}")]
    InvariantViolation(String),
    #[error("invalid matcher parameters: {0}")]
    InvalidParams(String),
    #[error("event at {t} ms is not after the last event at {last} ms")]
    OutOfOrderEvent { t: f64, last: f64 },
    #[error("session already accepted; reset before pushing more events")]
    SessionAlreadyDecided,
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),
    #[error("no samples")]
    EmptyInput,
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyStream => "EmptyStream",
            Error::NonMonotonicTimestamps { .. } => "NonMonotonicTimestamps",
            Error::AlternationViolation { .. } => "AlternationViolation",
            Error::DanglingPress => "DanglingPress",
            Error::BinsTooSmall { .. } => "BinsTooSmall",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::ParseError { .. } => "ParseError",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::InvalidParams(_) => "InvalidParams",
            Error::OutOfOrderEvent { .. } => "OutOfOrderEvent",
            Error::SessionAlreadyDecided => "SessionAlreadyDecided",
            Error::DegenerateSample(_) => "DegenerateSample",
            Error::EmptyInput => "EmptyInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
