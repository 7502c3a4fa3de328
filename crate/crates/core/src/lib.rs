//! Two-sample tests for treatment effects that live in the upper tail of the
//! outcome distribution.
//!
//! The central piece is the covariate-adjusted expected shortfall (COVES)
//! test in [`coves_test`]: fit a linear regression quantile at level τ, strip
//! the fitted covariate contribution from the outcomes, and compare the
//! groups' means above the fitted quantile plane. Around it sit a
//! least-squares t-test comparator ([`baselines`]), simulation generators
//! ([`simgen`]), a seeded Monte Carlo engine for power and sample size
//! ([`mc_engine`]) and a quantile-curve diagnostic for choosing τ
//! ([`diagnostics`]).
//!
//! ```
//! use coves::{run_coves, sample_scenario, ScenarioSpec, Side};
//!
//! let spec = ScenarioSpec::new(2, 1.35).unwrap();
//! let data = sample_scenario(&spec, 80, 80, 7).unwrap();
//! let report = run_coves(&data, 0.75, Side::TwoSided).unwrap();
//! assert!(report.p_value >= 0.0 && report.p_value <= 1.0);
//! ```

pub mod baselines;
pub mod cli;
pub mod dataset;
pub mod density;
pub mod diagnostics;
pub mod error;
pub mod mc_engine;
pub mod quantreg;
pub mod simgen;
pub mod stats;

pub use baselines::{run_ttest, OlsReport};
pub use coves_test::{
    adjusted_outcomes, coves_stat, decompose_t, orthogonalized_covariate, report_from_fit, run_coves, run_es,
    variance_est, CovesReport, GroupPair, ModelParams,
};
pub use dataset::Dataset;
pub use diagnostics::{adjusted_quantile_curves, QuantileCurves};
pub use error::{Error, Result};
pub use mc_engine::{
    estimate_rejection_rate, power_curve, sample_size_search, Allocation, Generator, PowerEstimate,
    SampleSizeResult, TestId, TestSpec,
};
pub use quantreg::{fit_rq, rho_tau, rq_oracle, QuantileFit, RegressionData};
pub use simgen::{empirical_inverse_cdf, sample_scenario, sample_targeted, EmpiricalDist, ScenarioSpec};
pub use stats::Side;
