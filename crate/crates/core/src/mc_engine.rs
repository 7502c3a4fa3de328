//! Monte Carlo rejection rates, power curves and sample-size search.
//!
//! Every replication draws its data from a ChaCha stream keyed by
//! `(master seed, size index, replication index)`, so results do not depend
//! on thread count or scheduling.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::run_ttest;
use crate::coves_test::{run_coves, run_es};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::simgen::{rng_from_seed, sample_scenario_with, sample_targeted_with, EmpiricalDist, ScenarioSpec};
use crate::stats::Side;

/// Largest tolerated fraction of failed replications.
pub const MAX_FAILURE_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestId {
    Coves,
    Es,
    Ttest,
}

impl fmt::Display for TestId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TestId::Coves => "coves",
            TestId::Es => "es",
            TestId::Ttest => "ttest",
        })
    }
}

impl FromStr for TestId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coves" => Ok(TestId::Coves),
            "es" => Ok(TestId::Es),
            "ttest" => Ok(TestId::Ttest),
            other => Err(Error::InvalidInput(format!("unknown test `{other}`"))),
        }
    }
}

/// A test together with its quantile level and sidedness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestSpec {
    pub id: TestId,
    pub tau: f64,
    pub side: Side,
}

impl TestSpec {
    pub fn new(id: TestId) -> Self {
        Self { id, tau: 0.75, side: Side::TwoSided }
    }

    pub fn p_value(&self, data: &Dataset) -> Result<f64> {
        match self.id {
            TestId::Coves => run_coves(data, self.tau, self.side).map(|r| r.p_value),
            TestId::Es => run_es(data, self.tau, self.side).map(|r| r.p_value),
            TestId::Ttest => run_ttest(data, self.side).map(|r| r.p_value),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    Scenario(ScenarioSpec),
    Targeted { f: EmpiricalDist, g: EmpiricalDist },
}

impl Generator {
    pub fn sample(&self, m: usize, n: usize, seed: u64) -> Dataset {
        let mut rng = rng_from_seed(seed);
        match self {
            Generator::Scenario(spec) => sample_scenario_with(spec, m, n, &mut rng),
            Generator::Targeted { f, g } => sample_targeted_with(f, g, m, n, &mut rng),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Allocation {
    /// m = n
    Equal,
    /// m = 2n
    TwoToOne,
}

impl Allocation {
    /// Group sizes `(m, n)` for control size `n`.
    pub fn sizes(self, n: usize) -> (usize, usize) {
        match self {
            Allocation::Equal => (n, n),
            Allocation::TwoToOne => (2 * n, n),
        }
    }
}

impl FromStr for Allocation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "equal" => Ok(Allocation::Equal),
            "two-to-one" => Ok(Allocation::TwoToOne),
            other => Err(Error::InvalidInput(format!("unknown allocation `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerEstimate {
    pub rate: f64,
    pub reps: usize,
    /// Replications whose test raised an error; counted as non-rejections.
    pub failed: usize,
    pub mc_se: f64,
    pub seed: u64,
    pub test_id: TestId,
    pub m: usize,
    pub n: usize,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSizeResult {
    pub m: usize,
    pub n: usize,
    pub allocation: Allocation,
    pub achieved_power: PowerEstimate,
    pub target: f64,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of replication `rep` at size index `size_idx`.
pub fn derive_seed(master: u64, size_idx: u64, rep: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ size_idx) ^ rep)
}

fn estimate_at(
    generator: &Generator,
    test: &TestSpec,
    m: usize,
    n: usize,
    alpha: f64,
    reps: usize,
    seed: u64,
    size_idx: u64,
) -> Result<PowerEstimate> {
    if reps == 0 {
        return Err(Error::InvalidInput("reps must be at least 1".into()));
    }
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("group sizes must be at least 1".into()));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidInput(format!("alpha must lie in (0,1], got {alpha}")));
    }
    let outcomes: Vec<Option<bool>> = (0..reps as u64)
        .into_par_iter()
        .map(|rep| {
            let data = generator.sample(m, n, derive_seed(seed, size_idx, rep));
            test.p_value(&data).ok().map(|p| p < alpha)
        })
        .collect();
    let failed = outcomes.iter().filter(|o| o.is_none()).count();
    if failed as f64 >= MAX_FAILURE_FRACTION * reps as f64 && failed > 0 {
        return Err(Error::UnstableConfiguration { failed, reps });
    }
    let rejections = outcomes.iter().filter(|o| **o == Some(true)).count();
    let rate = rejections as f64 / reps as f64;
    Ok(PowerEstimate {
        rate,
        reps,
        failed,
        mc_se: (rate * (1.0 - rate) / reps as f64).sqrt(),
        seed,
        test_id: test.id,
        m,
        n,
        alpha,
    })
}

/// Rejection proportion of `test` at level `alpha` over `reps` replications.
pub fn estimate_rejection_rate(
    generator: &Generator,
    test: &TestSpec,
    m: usize,
    n: usize,
    alpha: f64,
    reps: usize,
    seed: u64,
) -> Result<PowerEstimate> {
    estimate_at(generator, test, m, n, alpha, reps, seed, 0)
}

/// One estimate per `(m, n)`; size `k` uses seed stream index `k`.
pub fn power_curve(
    generator: &Generator,
    test: &TestSpec,
    sizes: &[(usize, usize)],
    alpha: f64,
    reps: usize,
    seed: u64,
) -> Result<Vec<PowerEstimate>> {
    if sizes.is_empty() {
        return Err(Error::InvalidInput("size list is empty".into()));
    }
    sizes
        .iter()
        .enumerate()
        .map(|(k, &(m, n))| estimate_at(generator, test, m, n, alpha, reps, seed, k as u64))
        .collect()
}

/// Smallest control size `n` in `bounds` (with `m` set by `allocation`) whose
/// estimated power is at least `target − mc_se`, found by bisection.
///
/// Every probe reuses the same replication seeds, so neighbouring sizes see
/// correlated data and the estimated power curve is much smoother in `n`.
#[allow(clippy::too_many_arguments)]
pub fn sample_size_search(
    generator: &Generator,
    test: &TestSpec,
    target: f64,
    allocation: Allocation,
    alpha: f64,
    reps: usize,
    seed: u64,
    bounds: (usize, usize),
) -> Result<SampleSizeResult> {
    let (lower, upper) = bounds;
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::InvalidInput(format!("target power must lie in (0,1), got {target}")));
    }
    if lower == 0 || lower > upper {
        return Err(Error::InvalidInput(format!("invalid bounds [{lower}, {upper}]")));
    }
    let probe = |n: usize| -> Result<PowerEstimate> {
        let (m, n) = allocation.sizes(n);
        estimate_at(generator, test, m, n, alpha, reps, seed, 0)
    };
    let passes = |e: &PowerEstimate| e.rate >= target - e.mc_se;
    let done = |n: usize, e: PowerEstimate| {
        let (m, n) = allocation.sizes(n);
        SampleSizeResult { m, n, allocation, achieved_power: e, target }
    };

    let low = probe(lower)?;
    if passes(&low) {
        return Ok(done(lower, low));
    }
    let mut hi_est = probe(upper)?;
    if !passes(&hi_est) {
        return Err(Error::Bounds { lower, upper, target });
    }
    let (mut lo, mut hi) = (lower, upper);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let est = probe(mid)?;
        if passes(&est) {
            hi = mid;
            hi_est = est;
        } else {
            lo = mid;
        }
    }
    Ok(done(hi, hi_est))
}
