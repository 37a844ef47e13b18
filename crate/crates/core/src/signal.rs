//! Fixed-resolution occupancy signals and the Hamming distance between them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::TapPhrase;

/// Smallest resolution accepted by [`normalize`]. Matchers require more; see
/// [`crate::matcher::MatcherParams`].
pub const MIN_BINS: usize = 2;

/// Relative distance (as a fraction of the phrase span) within which a bin
/// center is considered to sit on a segment boundary.
pub const BOUNDARY_SNAP: f64 = 1e-9;

/// Packed bit vector; bit `i` is 1 when the surface is pressed in bin `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinarySignal {
    words: Vec<u64>,
    len: usize,
}

impl BinarySignal {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for bit in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if bit {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        Self { words, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of positions where the two signals differ.
    pub fn differing_bits(&self, other: &Self) -> Result<usize> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }
}

impl fmt::Display for BinarySignal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinarySignal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySignal({self})")
    }
}

impl FromStr for BinarySignal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::ParseError {
                    line: 1,
                    message: format!("invalid bit {other:?} at column {}", i + 1),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }
}

impl Serialize for BinarySignal {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BinarySignal {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Samples the phrase at `bins` bin centers spread over its own span.
///
/// Bin `i` is 1 iff time `(i + 0.5) / bins * span` falls inside a tap. A
/// sample on a boundary belongs to the later segment. Bins 0 and `bins - 1`
/// are always 1 because a phrase begins and ends pressed, even when the
/// first or last tap is shorter than half a bin. Positions are compared as
/// fractions of the span, so the output does not change when the phrase is
/// uniformly stretched.
pub fn normalize(phrase: &TapPhrase, bins: usize) -> Result<BinarySignal> {
    if bins < MIN_BINS {
        return Err(Error::BinsTooSmall {
            bins,
            min: MIN_BINS,
        });
    }
    let span = phrase.total_span();
    // Cumulative boundary positions as fractions of the span, excluding 0 and 1.
    let mut acc = 0.0;
    let boundaries: Vec<f64> = phrase.segments()[..phrase.len() - 1]
        .iter()
        .map(|d| {
            acc += d;
            acc / span
        })
        .collect();

    let mut signal = BinarySignal::zeros(bins);
    let mut segment = 0;
    for i in 0..bins {
        let center = (i as f64 + 0.5) / bins as f64;
        while segment < boundaries.len() && boundaries[segment] <= center + BOUNDARY_SNAP {
            segment += 1;
        }
        signal.set(i, segment % 2 == 0);
    }
    signal.set(0, true);
    signal.set(bins - 1, true);
    Ok(signal)
}

/// Fraction of differing bits between two equal-length signals.
pub fn hamming_distance(a: &BinarySignal, b: &BinarySignal) -> Result<f64> {
    let differing = a.differing_bits(b)?;
    if a.is_empty() {
        return Ok(0.0);
    }
    Ok(differing as f64 / a.len() as f64)
}
