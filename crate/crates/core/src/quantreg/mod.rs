//! Linear regression quantiles.
//!
//! [`fit_rq`] minimizes `Σ ρ_τ(y_i − x_iᵀβ)` through the linear program
//!
//! ```text
//! min  Σ τ·u_i + (1−τ)·v_i   s.t.  y = Xβ + u − v,  u, v ≥ 0
//! ```
//!
//! solved with a Mehrotra primal-dual interior-point iteration on the
//! bounded dual, followed by a vertex cleanup that moves to an optimal basic
//! solution interpolating exactly `p` observations. [`rq_oracle`] enumerates
//! every `p`-subset and is only meant for checking small problems.

mod ipm;
mod oracle;
mod vertex;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use oracle::{rq_oracle, ORACLE_MAX_N};

/// Iteration cap for the interior-point phase.
pub const MAX_IPM_ITERATIONS: usize = 200;
/// Relative duality-gap tolerance for the interior-point phase.
pub const GAP_TOLERANCE: f64 = 1e-10;

/// Response vector and row-major design matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionData {
    y: Vec<f64>,
    x: Vec<f64>,
    p: usize,
}

impl RegressionData {
    /// Builds a regression problem from the response and one design row per
    /// observation. Rank is checked when fitting.
    pub fn new(y: Vec<f64>, rows: &[Vec<f64>]) -> Result<Self> {
        if y.len() != rows.len() {
            return Err(Error::InvalidInput(format!(
                "{} responses but {} design rows",
                y.len(),
                rows.len()
            )));
        }
        let p = rows.first().map_or(0, Vec::len);
        if p == 0 || rows.iter().any(|r| r.len() != p) {
            return Err(Error::InvalidInput("design rows must share a nonzero width".into()));
        }
        if y.len() < p {
            return Err(Error::InvalidInput(format!("need n >= p, got n = {}, p = {p}", y.len())));
        }
        let x: Vec<f64> = rows.iter().flatten().copied().collect();
        if y.iter().chain(&x).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("regression data must be finite".into()));
        }
        Ok(Self { y, x, p })
    }

    pub(crate) fn from_parts(y: Vec<f64>, x: Vec<f64>, p: usize) -> Self {
        debug_assert_eq!(y.len() * p, x.len());
        Self { y, x, p }
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.x[i * self.p..(i + 1) * self.p]
    }

    pub fn predict(&self, i: usize, beta: &[f64]) -> f64 {
        self.row(i).iter().zip(beta).map(|(a, b)| a * b).sum()
    }

    /// Residuals are treated as zero below this magnitude.
    pub fn zero_tolerance(&self) -> f64 {
        1e-9 * (1.0 + self.y.iter().fold(0.0_f64, |m, v| m.max(v.abs())))
    }

    fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.n(), self.p, &self.x)
    }

    /// Fails with [`Error::DesignDegenerate`] when the columns of X are
    /// numerically dependent.
    pub fn check_rank(&self) -> Result<()> {
        let sv = self.matrix().singular_values();
        let max = sv.max();
        let min = sv.min();
        if !(max > 0.0) || min <= 1e-10 * max {
            return Err(Error::DesignDegenerate {
                condition: if min > 0.0 { max / min } else { f64::INFINITY },
            });
        }
        Ok(())
    }

    pub fn objective(&self, beta: &[f64], tau: f64) -> f64 {
        (0..self.n())
            .map(|i| rho_tau(self.y[i] - self.predict(i, beta), tau))
            .sum()
    }
}

/// Check (pinball) loss `u·(τ − 1{u<0})`.
pub fn rho_tau(u: f64, tau: f64) -> f64 {
    if u < 0.0 {
        u * (tau - 1.0)
    } else {
        u * tau
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantileFit {
    pub tau: f64,
    /// Coefficients in design-column order; (α̂, δ̂, γ̂) for the trial model.
    pub beta: Vec<f64>,
    pub residuals: Vec<f64>,
    pub objective: f64,
    /// Observations whose residual is classified as zero.
    pub zero_set: Vec<usize>,
    pub zero_tol: f64,
}

impl QuantileFit {
    pub(crate) fn from_beta(data: &RegressionData, tau: f64, beta: Vec<f64>, basis: &[usize]) -> Self {
        let zero_tol = data.zero_tolerance();
        let mut residuals: Vec<f64> = (0..data.n()).map(|i| data.y[i] - data.predict(i, &beta)).collect();
        for &i in basis {
            residuals[i] = 0.0;
        }
        let objective = residuals.iter().map(|&r| rho_tau(r, tau)).sum();
        let zero_set = residuals
            .iter()
            .enumerate()
            .filter(|(_, r)| r.abs() <= zero_tol)
            .map(|(i, _)| i)
            .collect();
        Self { tau, beta, residuals, objective, zero_set, zero_tol }
    }

    /// Residual strictly above the fitted quantile plane.
    pub fn is_positive(&self, i: usize) -> bool {
        self.residuals[i] > self.zero_tol
    }

    pub fn is_negative(&self, i: usize) -> bool {
        self.residuals[i] < -self.zero_tol
    }

    /// `(#{ê<0}, #{ê≤0})` under the zero tolerance.
    pub fn sign_counts(&self) -> (usize, usize) {
        let neg = (0..self.residuals.len()).filter(|&i| self.is_negative(i)).count();
        let nonpos = (0..self.residuals.len()).filter(|&i| !self.is_positive(i)).count();
        (neg, nonpos)
    }
}

pub(crate) fn check_tau(tau: f64) -> Result<()> {
    if tau > 0.0 && tau < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("quantile level must lie in (0,1), got {tau}")))
    }
}

/// Fits the `τ`th regression quantile.
pub fn fit_rq(data: &RegressionData, tau: f64) -> Result<QuantileFit> {
    check_tau(tau)?;
    data.check_rank()?;

    let interior = ipm::solve(data, tau)?;
    let ip_objective = data.objective(&interior, tau);
    let tol = 1e-9 * (1.0 + ip_objective.abs());

    let start = vertex::nearest_basis(data, &interior)?;
    let (mut basis, mut beta) = vertex::descend(data, tau, start)?;
    let mut objective = data.objective(&beta, tau);

    // A degenerate vertex (more than p zero residuals) can stall the edge
    // search; exchange basis members with the other zero residuals.
    if objective > ip_objective + tol {
        if let Some((b, coef)) = vertex::escape_degenerate(data, tau, &basis, ip_objective + tol)? {
            basis = b;
            beta = coef;
            objective = data.objective(&beta, tau);
        }
    }
    if objective > ip_objective + tol {
        return Ok(QuantileFit::from_beta(data, tau, interior, &[]));
    }
    Ok(QuantileFit::from_beta(data, tau, beta, &basis))
}
