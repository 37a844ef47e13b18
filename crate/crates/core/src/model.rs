//! Press/release events and the tap phrases built from them.
//!
//! A tap phrase is the canonical form of a secret: alternating tap (pressed)
//! and break (released) durations, always starting and ending with a tap.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Edge direction of a [`TapEvent`]. Serialized as `"d"` (down) / `"u"` (up).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    #[serde(rename = "d")]
    Press,
    #[serde(rename = "u")]
    Release,
}

impl EdgeKind {
    pub fn opposite(self) -> Self {
        match self {
            EdgeKind::Press => EdgeKind::Release,
            EdgeKind::Release => EdgeKind::Press,
        }
    }
}

/// A timestamped edge from a single-button surface. `t` is in milliseconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TapEvent {
    pub t: f64,
    #[serde(rename = "k")]
    pub kind: EdgeKind,
}

impl TapEvent {
    pub fn press(t: f64) -> Self {
        Self {
            t,
            kind: EdgeKind::Press,
        }
    }

    pub fn release(t: f64) -> Self {
        Self {
            t,
            kind: EdgeKind::Release,
        }
    }
}

/// Alternating tap/break durations in milliseconds; index 0 is a tap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PhraseRepr", into = "PhraseRepr")]
pub struct TapPhrase {
    segments: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct PhraseRepr {
    segments: Vec<f64>,
}

impl TryFrom<PhraseRepr> for TapPhrase {
    type Error = Error;

    fn try_from(repr: PhraseRepr) -> Result<Self> {
        TapPhrase::new(repr.segments)
    }
}

impl From<TapPhrase> for PhraseRepr {
    fn from(phrase: TapPhrase) -> Self {
        PhraseRepr {
            segments: phrase.segments,
        }
    }
}

impl TapPhrase {
    /// Validates that the phrase is non-empty, has odd length and only
    /// finite positive durations.
    pub fn new(segments: Vec<f64>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvariantViolation(
                "tap phrase has no segments".into(),
            ));
        }
        if segments.len().is_multiple_of(2) {
            return Err(Error::InvariantViolation(format!(
                "tap phrase must start and end with a tap (odd length), got {} segments",
                segments.len()
            )));
        }
        if let Some((i, d)) = segments
            .iter()
            .enumerate()
            .find(|(_, d)| !(d.is_finite() && **d > 0.0))
        {
            return Err(Error::InvariantViolation(format!(
                "segment {i} has non-positive or non-finite duration {d}"
            )));
        }
        Ok(Self { segments })
    }

    pub fn segments(&self) -> &[f64] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Sum of all segment durations.
    pub fn total_span(&self) -> f64 {
        self.segments.iter().sum()
    }

    /// Number of taps, i.e. `(len + 1) / 2`.
    pub fn tap_count(&self) -> usize {
        self.segments.len().div_ceil(2)
    }

    /// Uniformly stretches every segment by `factor`.
    ///
    /// # Panics
    /// If `factor` is not finite and positive.
    pub fn scaled(&self, factor: f64) -> Self {
        assert!(
            factor.is_finite() && factor > 0.0,
            "scale factor must be positive"
        );
        Self {
            segments: self.segments.iter().map(|d| d * factor).collect(),
        }
    }

    /// Replays the phrase as press/release edges starting at `start`.
    pub fn to_events(&self, start: f64) -> Vec<TapEvent> {
        let mut events = Vec::with_capacity(self.segments.len() + 1);
        let mut t = start;
        events.push(TapEvent::press(t));
        for (i, d) in self.segments.iter().enumerate() {
            t += d;
            events.push(if i % 2 == 0 {
                TapEvent::release(t)
            } else {
                TapEvent::press(t)
            });
        }
        events
    }

    /// Merges short interior segments into their neighbours.
    ///
    /// The shortest interior segment below `min_segment_ms` is fused with the
    /// segment on each side (a short break joins two taps, a short tap joins
    /// two breaks); repeat until none remain. Lowest index wins ties. The
    /// first and last taps are never merged, so the result is still a valid
    /// phrase.
    pub fn debounced(&self, min_segment_ms: f64) -> Self {
        let mut segments = self.segments.clone();
        loop {
            let shortest = segments
                .iter()
                .enumerate()
                .take(segments.len().saturating_sub(1))
                .skip(1)
                .filter(|(_, d)| **d < min_segment_ms)
                .min_by(|a, b| a.1.total_cmp(b.1));
            let Some((i, _)) = shortest else { break };
            let merged = segments[i - 1] + segments[i] + segments[i + 1];
            segments.splice(i - 1..=i + 1, [merged]);
        }
        Self { segments }
    }
}

/// Converts an alternating press/release stream into a tap phrase.
///
/// Segment `i` is the time between edge `i` and edge `i + 1`.
pub fn phrase_from_events(events: &[TapEvent]) -> Result<TapPhrase> {
    validate_events(events)?;
    if events.last().map(|e| e.kind) == Some(EdgeKind::Press) {
        return Err(Error::DanglingPress);
    }
    let segments = events.windows(2).map(|w| w[1].t - w[0].t).collect();
    TapPhrase::new(segments)
}

/// Checks stream invariants: non-empty, starts with a press, strictly
/// increasing finite non-negative timestamps, alternating kinds. A trailing
/// press is allowed here.
pub fn validate_events(events: &[TapEvent]) -> Result<()> {
    let first = events.first().ok_or(Error::EmptyStream)?;
    if first.kind != EdgeKind::Press {
        return Err(Error::AlternationViolation { index: 0 });
    }
    for (index, event) in events.iter().enumerate() {
        if !(event.t.is_finite() && event.t >= 0.0) {
            return Err(Error::InvariantViolation(format!(
                "event {index} has invalid timestamp {}",
                event.t
            )));
        }
        if index == 0 {
            continue;
        }
        let prev = &events[index - 1];
        if event.t <= prev.t {
            return Err(Error::NonMonotonicTimestamps { index, t: event.t });
        }
        if event.kind == prev.kind {
            return Err(Error::AlternationViolation { index });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn events(spec: &[(char, f64)]) -> Vec<TapEvent> {
        spec.iter()
            .map(|&(k, t)| match k {
                'd' => TapEvent::press(t),
                _ => TapEvent::release(t),
            })
            .collect()
    }

    #[test]
    fn single_tap() {
        let p = phrase_from_events(&events(&[('d', 0.0), ('u', 200.0)])).unwrap();
        assert_eq!(p.segments(), &[200.0]);
    }

    #[test]
    fn two_taps() {
        let e = events(&[('d', 0.0), ('u', 200.0), ('d', 300.0), ('u', 450.0)]);
        let p = phrase_from_events(&e).unwrap();
        assert_eq!(p.segments(), &[200.0, 100.0, 150.0]);
        assert_eq!(p.total_span(), 450.0);
    }

    #[test]
    fn stream_errors() {
        assert_eq!(phrase_from_events(&[]), Err(Error::EmptyStream));
        assert_eq!(
            phrase_from_events(&events(&[('d', 0.0), ('d', 100.0), ('u', 200.0)])),
            Err(Error::AlternationViolation { index: 1 })
        );
        assert_eq!(
            phrase_from_events(&events(&[('u', 0.0), ('d', 100.0)])),
            Err(Error::AlternationViolation { index: 0 })
        );
        assert_eq!(
            phrase_from_events(&events(&[('d', 0.0), ('u', 100.0), ('d', 150.0)])),
            Err(Error::DanglingPress)
        );
        assert!(matches!(
            phrase_from_events(&events(&[('d', 10.0), ('u', 10.0)])),
            Err(Error::NonMonotonicTimestamps { index: 1, .. })
        ));
        assert!(matches!(
            phrase_from_events(&events(&[('d', -1.0), ('u', 10.0)])),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn total_span_examples() {
        assert_eq!(TapPhrase::new(vec![200.0]).unwrap().total_span(), 200.0);
        assert_eq!(
            TapPhrase::new(vec![200.0, 100.0, 150.0])
                .unwrap()
                .total_span(),
            450.0
        );
        assert_eq!(TapPhrase::new(vec![100.0; 5]).unwrap().total_span(), 500.0);
    }

    #[test]
    fn phrase_validation() {
        assert!(TapPhrase::new(vec![]).is_err());
        assert!(TapPhrase::new(vec![100.0, 50.0]).is_err());
        assert!(TapPhrase::new(vec![100.0, 0.0, 50.0]).is_err());
        assert!(TapPhrase::new(vec![100.0, f64::NAN, 50.0]).is_err());
        assert!(TapPhrase::new(vec![-3.0]).is_err());
    }

    #[test]
    fn events_round_trip() {
        let p = TapPhrase::new(vec![200.0, 100.0, 150.0, 40.0, 90.0]).unwrap();
        let e = p.to_events(1000.0);
        assert_eq!(e.len(), 6);
        assert_eq!(e[0], TapEvent::press(1000.0));
        assert_eq!(phrase_from_events(&e).unwrap(), p);
    }

    #[test]
    fn debounce_merges_short_break() {
        let p = TapPhrase::new(vec![100.0, 5.0, 100.0, 200.0, 100.0]).unwrap();
        assert_eq!(p.debounced(15.0).segments(), &[205.0, 200.0, 100.0]);
    }

    #[test]
    fn debounce_merges_short_tap_and_keeps_edges() {
        let p = TapPhrase::new(vec![10.0, 100.0, 8.0, 100.0, 12.0]).unwrap();
        assert_eq!(p.debounced(15.0).segments(), &[10.0, 208.0, 12.0]);
    }

    #[test]
    fn debounce_shortest_first() {
        // Both interior breaks are short; the shorter (index 3) merges first,
        // after which index 1 is still short and merges too.
        let p = TapPhrase::new(vec![50.0, 12.0, 50.0, 3.0, 50.0]).unwrap();
        let d = p.debounced(15.0);
        assert_eq!(d.segments(), &[165.0]);
        assert_eq!(d.total_span(), p.total_span());
    }

    #[test]
    fn phrase_serde_rejects_invalid() {
        assert!(serde_json::from_str::<TapPhrase>(r#"{"segments":[1,-2,3]}"#).is_err());
        let p: TapPhrase = serde_json::from_str(r#"{"segments":[200,100,150]}"#).unwrap();
        assert_eq!(p.tap_count(), 2);
    }
}
