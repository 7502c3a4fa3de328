//! Small distribution helpers shared across the crate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};
use statrs::function::erf::erfc;

use crate::error::Error;

/// Direction of the alternative hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    #[default]
    TwoSided,
    /// Rejects for large positive statistics.
    Upper,
    /// Rejects for large negative statistics.
    Lower,
}

impl Side {
    /// p-value of a statistic that is standard normal under the null.
    pub fn normal_p_value(self, z: f64) -> f64 {
        let p = match self {
            Side::TwoSided => erfc(z.abs() / std::f64::consts::SQRT_2),
            Side::Upper => 0.5 * erfc(z / std::f64::consts::SQRT_2),
            Side::Lower => 0.5 * erfc(-z / std::f64::consts::SQRT_2),
        };
        p.clamp(0.0, 1.0)
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::TwoSided => "two",
            Side::Upper => "upper",
            Side::Lower => "lower",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "two" | "two-sided" => Ok(Side::TwoSided),
            "upper" => Ok(Side::Upper),
            "lower" => Ok(Side::Lower),
            other => Err(Error::InvalidInput(format!("unknown side `{other}`"))),
        }
    }
}

pub fn std_normal() -> Normal {
    Normal::standard()
}

pub fn normal_cdf(x: f64) -> f64 {
    std_normal().cdf(x)
}

pub fn normal_quantile(u: f64) -> f64 {
    std_normal().inverse_cdf(u)
}

pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased (n − 1) sample variance.
pub fn sample_variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

/// `⌈u·n⌉`-th order statistic of already sorted data (left-continuous
/// inverse of the empirical CDF). Requires `u ∈ (0,1)`.
pub fn order_statistic_quantile(sorted: &[f64], u: f64) -> f64 {
    let n = sorted.len();
    let k = (u * n as f64).ceil() as usize;
    sorted[k.clamp(1, n) - 1]
}

pub fn sorted(xs: &[f64]) -> Vec<f64> {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// One-sample Kolmogorov–Smirnov statistic `sup |F_n − F|`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let xs = sorted(samples);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

/// Two-sample Kolmogorov–Smirnov statistic.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let (a, b) = (sorted(a), sorted(b));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic Kolmogorov tail probability for statistic `d` with effective
/// sample size `n`, using Stephens' small-sample correction.
pub fn ks_p_value(d: f64, n: f64) -> f64 {
    let sqrt_n = n.sqrt();
    let lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let k = k as f64;
        let term = 2.0 * (-1f64).powf(k - 1.0) * (-2.0 * k * k * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-16 {
            break;
        }
    }
    sum.clamp(0.0, 1.0)
}
