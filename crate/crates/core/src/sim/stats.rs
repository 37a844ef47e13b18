//! Summary statistics and the one-sample t test.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sample summary; `mean` and `sd` in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TTest {
    pub t: f64,
    pub df: usize,
    pub cohens_d: f64,
}

/// One-sample t statistic against `mu0`, with Cohen's d = (mean - mu0) / sd.
pub fn one_sample_t(stats: &SummaryStats, mu0: f64) -> Result<TTest> {
    if stats.n < 2 {
        return Err(Error::DegenerateSample(format!(
            "need at least 2 samples, got {}",
            stats.n
        )));
    }
    if stats.sd.is_nan() || stats.sd <= 0.0 {
        return Err(Error::DegenerateSample(format!(
            "standard deviation must be positive, got {}",
            stats.sd
        )));
    }
    let diff = stats.mean - mu0;
    Ok(TTest {
        t: diff / (stats.sd / (stats.n as f64).sqrt()),
        df: stats.n - 1,
        cohens_d: diff / stats.sd,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Description {
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator); 0 for a single value.
    pub sd: f64,
    pub median: f64,
    /// Upper minus lower Tukey hinge.
    pub iqr: f64,
}

impl Description {
    pub fn summary(&self) -> SummaryStats {
        SummaryStats {
            n: self.n,
            mean: self.mean,
            sd: self.sd,
        }
    }
}

/// Mean, sample SD, median and IQR.
///
/// Quartiles are Tukey hinges: the medians of the lower and upper halves of
/// the sorted sample, each half including the overall median when `n` is
/// odd.
pub fn describe(samples: &[f64]) -> Result<Description> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(x) = samples.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvariantViolation(format!("non-finite sample {x}")));
    }
    let n = samples.len();
    let mean = samples.iter().sum::<f64>() / n as f64;
    let sd = if n > 1 {
        (samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let lower = median_sorted(&sorted[..n.div_ceil(2)]);
    let upper = median_sorted(&sorted[n / 2..]);
    Ok(Description {
        n,
        mean,
        sd,
        median: median_sorted(&sorted),
        iqr: upper - lower,
    })
}

fn median_sorted(xs: &[f64]) -> f64 {
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}
