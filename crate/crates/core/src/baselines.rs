//! Least-squares comparator: t-test on the treatment coefficient of
//! `Z ~ 1 + D + C` with classical homoskedastic standard errors.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::stats::Side;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OlsReport {
    /// Coefficients for (1, D, C).
    pub beta: Vec<f64>,
    pub se_delta: f64,
    pub t_stat: f64,
    pub df: usize,
    pub p_value: f64,
    pub side: Side,
}

pub fn t_p_value(t: f64, df: usize, side: Side) -> Result<f64> {
    let dist = StudentsT::new(0.0, 1.0, df as f64)
        .map_err(|e| Error::DegenerateRegression(format!("t distribution: {e}")))?;
    let p = match side {
        Side::TwoSided => 2.0 * dist.sf(t.abs()),
        Side::Upper => dist.sf(t),
        Side::Lower => dist.cdf(t),
    };
    Ok(p.clamp(0.0, 1.0))
}

pub fn run_ttest(data: &Dataset, side: Side) -> Result<OlsReport> {
    let n = data.len();
    if n < 4 {
        return Err(Error::InvalidInput(format!("t-test needs at least 4 observations, got {n}")));
    }
    let x = DMatrix::from_fn(n, 3, |i, j| match j {
        0 => 1.0,
        1 => f64::from(data.d()[i]),
        _ => data.c()[i],
    });
    let y = DVector::from_column_slice(data.z());
    let sv = x.singular_values();
    if sv.min() <= 1e-10 * sv.max() {
        return Err(Error::DegenerateRegression("design is rank deficient".into()));
    }
    let xtx_inv = x
        .tr_mul(&x)
        .try_inverse()
        .ok_or_else(|| Error::DegenerateRegression("XᵀX is singular".into()))?;
    let beta = &xtx_inv * x.tr_mul(&y);
    let resid = &y - &x * &beta;
    let df = n - 3;
    let sigma2 = resid.norm_squared() / df as f64;
    if !(sigma2 > 0.0) {
        return Err(Error::DegenerateRegression("zero residual variance".into()));
    }
    let se_delta = (sigma2 * xtx_inv[(1, 1)]).sqrt();
    let t_stat = beta[1] / se_delta;
    Ok(OlsReport {
        beta: beta.iter().copied().collect(),
        se_delta,
        t_stat,
        df,
        p_value: t_p_value(t_stat, df, side)?,
        side,
    })
}
