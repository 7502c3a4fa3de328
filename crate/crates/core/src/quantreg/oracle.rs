use nalgebra::{DMatrix, DVector};

use super::{check_tau, QuantileFit, RegressionData};
use crate::error::{Error, Result};

/// Largest problem the enumeration oracle accepts.
pub const ORACLE_MAX_N: usize = 20;

/// Visits every `k`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == n - k + pos - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return;
        }
        idx[pos - 1] += 1;
        for q in pos..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Brute-force regression quantile: solves the interpolation system for every
/// nonsingular `p`-subset and keeps the best. Ties within `1e-12` relative go
/// to the lexicographically first subset.
pub fn rq_oracle(data: &RegressionData, tau: f64) -> Result<QuantileFit> {
    check_tau(tau)?;
    if data.n() > ORACLE_MAX_N {
        return Err(Error::OracleTooLarge { n: data.n(), limit: ORACLE_MAX_N });
    }
    data.check_rank()?;
    let p = data.p();
    let mut best: Option<(f64, Vec<usize>, Vec<f64>)> = None;
    for_each_subset(data.n(), p, |subset| {
        let rows: Vec<f64> = subset.iter().flat_map(|&i| data.row(i).iter().copied()).collect();
        let a = DMatrix::from_row_slice(p, p, &rows);
        let sv = a.singular_values();
        if sv.min() <= 1e-10 * sv.max() {
            return;
        }
        let rhs = DVector::from_iterator(p, subset.iter().map(|&i| data.y()[i]));
        let Some(beta) = a.lu().solve(&rhs) else { return };
        let beta: Vec<f64> = beta.iter().copied().collect();
        let obj = data.objective(&beta, tau);
        let better = match &best {
            None => true,
            Some((b, _, _)) => obj < b - 1e-12 * (1.0 + b.abs()),
        };
        if better {
            best = Some((obj, subset.to_vec(), beta));
        }
    });
    let (_, basis, beta) = best.ok_or(Error::DesignDegenerate { condition: f64::INFINITY })?;
    Ok(QuantileFit::from_beta(data, tau, beta, &basis))
}
