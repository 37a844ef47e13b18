//! Trace files.
//!
//! Event traces are JSON Lines: one `{"t": <ms>, "k": "d"|"u"}` object per
//! line, ordered by `t`. Phrase files hold a single `{"segments": [...]}`
//! object. Timestamps are written in shortest round-trip form, so decoding
//! an encoded value reproduces it exactly.

use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};
use crate::model::{TapEvent, TapPhrase};

pub fn encode_events(events: &[TapEvent]) -> String {
    let mut out = String::new();
    for event in events {
        // TapEvent serialization cannot fail: plain struct of f64 + enum.
        out.push_str(&serde_json::to_string(event).expect("event serializes"));
        out.push('\n');
    }
    out
}

pub fn write_events<W: Write>(mut writer: W, events: &[TapEvent]) -> io::Result<()> {
    writer.write_all(encode_events(events).as_bytes())
}

/// Parses an event trace. Blank lines are skipped; line numbers in errors
/// are 1-based. Only per-record validity is checked here (see
/// [`crate::model::validate_events`] for stream-level checks).
pub fn decode_events(input: &str) -> Result<Vec<TapEvent>> {
    let mut events = Vec::new();
    for (i, line) in input.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        events.push(decode_event_line(line, i + 1)?);
    }
    Ok(events)
}

pub fn read_events<R: BufRead>(reader: R) -> Result<Vec<TapEvent>> {
    let mut events = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::ParseError {
            line: i + 1,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        events.push(decode_event_line(&line, i + 1)?);
    }
    Ok(events)
}

fn decode_event_line(line: &str, number: usize) -> Result<TapEvent> {
    let event: TapEvent = serde_json::from_str(line).map_err(|e| Error::ParseError {
        line: number,
        message: e.to_string(),
    })?;
    if !(event.t.is_finite() && event.t >= 0.0) {
        return Err(Error::InvariantViolation(format!(
            "line {number}: timestamp {} must be finite and non-negative",
            event.t
        )));
    }
    Ok(event)
}

pub fn encode_phrase(phrase: &TapPhrase) -> String {
    let mut out = serde_json::to_string(phrase).expect("phrase serializes");
    out.push('\n');
    out
}

pub fn decode_phrase(input: &str) -> Result<TapPhrase> {
    #[derive(serde::Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        segments: Vec<f64>,
    }
    let raw: Raw = serde_json::from_str(input).map_err(|e| Error::ParseError {
        line: e.line(),
        message: e.to_string(),
    })?;
    TapPhrase::new(raw.segments)
}
