//! Gaussian kernel density at zero for quantile-regression residuals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::{normal_pdf, order_statistic_quantile, sample_variance, sorted};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub group: u8,
    pub bandwidth: f64,
    pub f_at_zero: f64,
}

/// Rule-of-thumb bandwidth `0.9·min(sd, IQR/1.34)·n^(−1/5)`.
///
/// Quartiles are the `⌈q·n⌉`-th order statistics. When the IQR is zero but
/// the standard deviation is not, the standard deviation is used alone.
pub fn bandwidth_rot(samples: &[f64]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::InvalidInput("bandwidth needs at least two samples".into()));
    }
    let sd = sample_variance(samples).sqrt();
    let s = sorted(samples);
    let iqr = order_statistic_quantile(&s, 0.75) - order_statistic_quantile(&s, 0.25);
    let spread = match (sd > 0.0, iqr > 0.0) {
        (true, true) => sd.min(iqr / 1.34),
        (true, false) => sd,
        (false, true) => iqr / 1.34,
        (false, false) => return Err(Error::DegenerateSpread),
    };
    Ok(0.9 * spread * (samples.len() as f64).powf(-0.2))
}

/// `(n·h)⁻¹ Σ φ(−s_i/h)`.
pub fn kde_at_zero(samples: &[f64], h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::InvalidBandwidth(h));
    }
    if samples.is_empty() {
        return Err(Error::InvalidInput("density needs at least one sample".into()));
    }
    let sum: f64 = samples.iter().map(|s| normal_pdf(-s / h)).sum();
    Ok(sum / (samples.len() as f64 * h))
}

/// Density of one group's residuals at zero with the rule-of-thumb bandwidth.
pub fn group_density(group: u8, residuals: &[f64]) -> Result<DensityEstimate> {
    let bandwidth = bandwidth_rot(residuals)?;
    let f_at_zero = kde_at_zero(residuals, bandwidth)?;
    Ok(DensityEstimate { group, bandwidth, f_at_zero })
}
