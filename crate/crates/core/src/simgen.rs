//! Data generators for the simulation studies.
//!
//! * [`sample_scenario`]: normal errors with a right-tail inflation in the
//!   control group, `Z = 5 + γC + {1 + η·1(e>0)·1(D=0)}·e`, under four
//!   covariate scenarios.
//! * [`sample_targeted`]: outcome and covariate driven by one uniform draw
//!   through empirical inverse CDFs, with a tail shift
//!   `8·|u − 0.65|^{1/4}` added to control outcomes above u = 0.65.
//!
//! All draws go through inverse CDFs of a seeded ChaCha stream, so a dataset
//! is a pure function of its seed.

use std::path::Path;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coves_test::{GroupPair, ModelParams};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::stats::{normal_quantile, order_statistic_quantile};

/// Tail inflation used for the alternative hypothesis.
pub const ETA_ALTERNATIVE: f64 = 1.35;

const STANDIN_OUTCOME: &str = include_str!("../data/tss_change_standin.txt");
const STANDIN_BASELINE: &str = include_str!("../data/baseline_tss_standin.txt");

/// Uniform draw in the open interval (0, 1) from the top 53 bits.
pub fn open_unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

pub fn standard_normal<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    normal_quantile(open_unit(rng))
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalDist {
    values: Vec<f64>,
}

impl EmpiricalDist {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("empirical distribution needs at least one value".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("empirical distribution values must be finite".into()));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    /// Parses one number per line; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let v: f64 = t
                .parse()
                .map_err(|_| Error::InvalidInput(format!("line {}: `{t}` is not a number", k + 1)))?;
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!("line {}: value must be finite", k + 1)));
            }
            values.push(v);
        }
        Self::new(values)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Synthetic right-skewed sample resembling two-year score changes
    /// (150 values, median 0).
    pub fn standin_outcome() -> Self {
        Self::parse(STANDIN_OUTCOME).expect("bundled outcome sample is valid")
    }

    /// Synthetic positive baseline-score sample (150 values).
    pub fn standin_baseline() -> Self {
        Self::parse(STANDIN_BASELINE).expect("bundled baseline sample is valid")
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn quantile_unchecked(&self, u: f64) -> f64 {
        order_statistic_quantile(&self.values, u)
    }
}

/// `⌈u·n⌉`-th order statistic.
pub fn empirical_inverse_cdf(dist: &EmpiricalDist, u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::Domain(u));
    }
    Ok(dist.quantile_unchecked(u))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalLaw {
    pub mean: f64,
    pub sd: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub scenario: u8,
    pub gamma: f64,
    pub eta: f64,
    pub covariate: GroupPair<NormalLaw>,
}

impl ScenarioSpec {
    /// Scenario 1: no covariate effect. 2: common effect. 3: covariate mean
    /// shifted in the treatment group. 4: covariate sd doubled in the
    /// treatment group.
    pub fn new(scenario: u8, eta: f64) -> Result<Self> {
        let base = NormalLaw { mean: 2.5, sd: 0.5 };
        let (gamma, treatment) = match scenario {
            1 => (0.0, base),
            2 => (1.0, base),
            3 => (1.0, NormalLaw { mean: 3.0, sd: 0.5 }),
            4 => (1.0, NormalLaw { mean: 2.5, sd: 1.0 }),
            other => return Err(Error::InvalidInput(format!("scenario must be 1..4, got {other}"))),
        };
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(Error::InvalidInput(format!("eta must be finite and nonnegative, got {eta}")));
        }
        Ok(Self { scenario, gamma, eta, covariate: GroupPair { treatment, control: base } })
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    /// Coefficients of the true τth conditional quantile `α + δD + γC`.
    pub fn true_quantile_params(&self, tau: f64) -> ModelParams {
        let q = normal_quantile(tau);
        let control_scale = if q > 0.0 { 1.0 + self.eta } else { 1.0 };
        let alpha = 5.0 + control_scale * q;
        ModelParams { alpha, delta: 5.0 + q - alpha, gamma: self.gamma }
    }

    /// Error term after the control-group tail inflation.
    pub fn inflate(&self, e: f64, group: u8) -> f64 {
        if group == 0 && e > 0.0 {
            (1.0 + self.eta) * e
        } else {
            e
        }
    }
}

/// Draws `m` treatment rows followed by `n` control rows from `rng`.
pub fn sample_scenario_with<R: RngCore + ?Sized>(spec: &ScenarioSpec, m: usize, n: usize, rng: &mut R) -> Dataset {
    let total = m + n;
    let (mut z, mut d, mut c) = (Vec::with_capacity(total), Vec::with_capacity(total), Vec::with_capacity(total));
    for i in 0..total {
        let g = u8::from(i < m);
        let law = spec.covariate.get(g);
        let ci = law.mean + law.sd * standard_normal(rng);
        let e = standard_normal(rng);
        z.push(5.0 + spec.gamma * ci + spec.inflate(e, g));
        d.push(g);
        c.push(ci);
    }
    Dataset::new(z, d, c).expect("generated data has both groups")
}

pub fn sample_scenario(spec: &ScenarioSpec, m: usize, n: usize, seed: u64) -> Result<Dataset> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("both group sizes must be at least 1".into()));
    }
    Ok(sample_scenario_with(spec, m, n, &mut rng_from_seed(seed)))
}

/// Extra control-group outcome at uniform level `u`.
pub fn tail_shift(u: f64) -> f64 {
    if u > 0.65 {
        8.0 * (u - 0.65).abs().powf(0.25)
    } else {
        0.0
    }
}

pub fn sample_targeted_with<R: RngCore + ?Sized>(
    f_dist: &EmpiricalDist,
    g_dist: &EmpiricalDist,
    m: usize,
    n: usize,
    rng: &mut R,
) -> Dataset {
    let total = m + n;
    let (mut z, mut d, mut c) = (Vec::with_capacity(total), Vec::with_capacity(total), Vec::with_capacity(total));
    for i in 0..total {
        let g = u8::from(i < m);
        let u = open_unit(rng);
        let base = f_dist.quantile_unchecked(u);
        z.push(if g == 0 { base + tail_shift(u) } else { base });
        d.push(g);
        c.push(g_dist.quantile_unchecked(u));
    }
    Dataset::new(z, d, c).expect("generated data has both groups")
}

pub fn sample_targeted(f_dist: &EmpiricalDist, g_dist: &EmpiricalDist, m: usize, n: usize, seed: u64) -> Result<Dataset> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("both group sizes must be at least 1".into()));
    }
    Ok(sample_targeted_with(f_dist, g_dist, m, n, &mut rng_from_seed(seed)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_cdf_examples() {
        let one = EmpiricalDist::new(vec![10.0]).unwrap();
        assert_eq!(empirical_inverse_cdf(&one, 0.01).unwrap(), 10.0);
        assert_eq!(empirical_inverse_cdf(&one, 0.99).unwrap(), 10.0);
        let four = EmpiricalDist::new(vec![4.0, 2.0, 3.0, 1.0]).unwrap();
        assert_eq!(empirical_inverse_cdf(&four, 0.5).unwrap(), 2.0);
        assert_eq!(empirical_inverse_cdf(&four, 0.75 + 1e-12).unwrap(), 4.0);
        assert_eq!(empirical_inverse_cdf(&four, 0.0), Err(Error::Domain(0.0)));
        assert!(empirical_inverse_cdf(&four, 1.0).is_err());
    }

    #[test]
    fn tail_shift_values() {
        assert_eq!(tail_shift(0.3), 0.0);
        assert_eq!(tail_shift(0.65), 0.0);
        assert!((tail_shift(0.9) - 8.0 * 0.25f64.powf(0.25)).abs() < 1e-15);
        assert!((tail_shift(0.9) - 5.656_854_249_492_38).abs() < 1e-12);
    }

    #[test]
    fn scenario_table() {
        let s3 = ScenarioSpec::new(3, 0.0).unwrap();
        assert_eq!(s3.covariate.treatment.mean, 3.0);
        assert_eq!(s3.covariate.control.mean, 2.5);
        let s4 = ScenarioSpec::new(4, 1.35).unwrap();
        assert_eq!(s4.covariate.treatment.sd, 1.0);
        assert_eq!(ScenarioSpec::new(1, 0.0).unwrap().gamma, 0.0);
        assert!(ScenarioSpec::new(5, 0.0).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let spec = ScenarioSpec::new(2, 1.35).unwrap();
        let a = sample_scenario(&spec, 20, 30, 42).unwrap();
        let b = sample_scenario(&spec, 20, 30, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_scenario(&spec, 20, 30, 43).unwrap());
        assert_eq!(a.group_size(1), 20);
        assert_eq!(a.group_size(0), 30);
    }

    #[test]
    fn targeted_below_threshold_has_no_shift() {
        let f = EmpiricalDist::standin_outcome();
        let g = EmpiricalDist::standin_baseline();
        assert_eq!(f.len(), 150);
        assert_eq!(g.len(), 150);
        let ds = sample_targeted(&f, &g, 50, 50, 7).unwrap();
        // Control outcomes either equal an F atom or exceed one by a tail shift.
        for i in ds.group_indices(0) {
            let z = ds.z()[i];
            assert!(f.values().iter().any(|&v| v == z || z > v));
        }
    }

    #[test]
    fn true_params_under_null() {
        let p = ScenarioSpec::new(2, 0.0).unwrap().true_quantile_params(0.75);
        assert!(p.delta.abs() < 1e-15);
        assert!((p.alpha - 5.0 - 0.674_489_750_196_081_7).abs() < 1e-9);
    }
}
