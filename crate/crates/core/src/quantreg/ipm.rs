//! Mehrotra predictor-corrector on the bounded dual of the quantile LP:
//!
//! ```text
//! min  −yᵀa   s.t.  Xᵀa = (1−τ)·Xᵀ1,   0 ≤ a ≤ 1
//! ```
//!
//! Its equality multipliers are the negated regression coefficients. The
//! iteration starts primal and dual feasible and stays so, so the duality gap
//! is just the complementarity `aᵀz + sᵀw`.

use nalgebra::{DMatrix, DVector};

use super::{RegressionData, GAP_TOLERANCE, MAX_IPM_ITERATIONS};
use crate::error::{Error, Result};

const STEP_FRACTION: f64 = 0.99995;

struct Direction {
    dx: Vec<f64>,
    dz: Vec<f64>,
    dw: Vec<f64>,
    db: DVector<f64>,
}

fn solve_spd(m: DMatrix<f64>, rhs: DVector<f64>) -> Result<DVector<f64>> {
    if let Some(ch) = m.clone().cholesky() {
        return Ok(ch.solve(&rhs));
    }
    m.lu()
        .solve(&rhs)
        .ok_or(Error::DesignDegenerate { condition: f64::INFINITY })
}

fn max_step(v: &[f64], dv: &[f64]) -> f64 {
    v.iter()
        .zip(dv)
        .filter(|(_, &d)| d < 0.0)
        .map(|(&x, &d)| -x / d)
        .fold(f64::INFINITY, f64::min)
}

/// Returns regression coefficients within the gap tolerance of optimal.
pub(super) fn solve(data: &RegressionData, tau: f64) -> Result<Vec<f64>> {
    let n = data.n();
    let p = data.p();
    let xmat = data.matrix();
    let c: Vec<f64> = data.y().iter().map(|v| -v).collect();
    let cvec = DVector::from_column_slice(&c);

    // b = (1−τ)Xᵀ1
    let b = xmat.tr_mul(&DVector::from_element(n, 1.0 - tau));

    let mut x = vec![1.0 - tau; n];
    let mut s = vec![tau; n];
    let mut beta = solve_spd(xmat.tr_mul(&xmat), xmat.tr_mul(&cvec))?;

    let fitted = &xmat * &beta;
    let r: Vec<f64> = (0..n).map(|i| c[i] - fitted[i]).collect();
    let mean_abs = r.iter().map(|v| v.abs()).sum::<f64>() / n as f64;
    let kappa = 0.5 * mean_abs + 1e-3 * data.zero_tolerance();
    let mut z: Vec<f64> = r.iter().map(|&v| v.max(0.0) + kappa).collect();
    let mut w: Vec<f64> = r.iter().map(|&v| (-v).max(0.0) + kappa).collect();

    let mut gap = f64::INFINITY;
    for _ in 0..MAX_IPM_ITERATIONS {
        gap = x.iter().zip(&z).map(|(a, b)| a * b).sum::<f64>()
            + s.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>();
        let primal: f64 = c.iter().zip(&x).map(|(a, b)| a * b).sum();
        if gap <= GAP_TOLERANCE * (1.0 + primal.abs()) {
            return Ok(beta.iter().map(|v| -v).collect());
        }
        let mu = gap / (2 * n) as f64;

        // Residuals of the linear constraints; zero up to rounding.
        let xb = &xmat * &beta;
        let rc: Vec<f64> = (0..n).map(|i| c[i] - xb[i] - z[i] + w[i]).collect();
        let ax = xmat.tr_mul(&DVector::from_column_slice(&x));
        let rb = &b - ax;

        let q: Vec<f64> = (0..n).map(|i| z[i] / x[i] + w[i] / s[i]).collect();
        let mut normal = DMatrix::<f64>::zeros(p, p);
        for i in 0..n {
            let row = data.row(i);
            let wt = 1.0 / q[i];
            for a in 0..p {
                for bb in a..p {
                    normal[(a, bb)] += wt * row[a] * row[bb];
                }
            }
        }
        for a in 0..p {
            for bb in 0..a {
                normal[(a, bb)] = normal[(bb, a)];
            }
        }

        let direction = |rxz: &[f64], rsw: &[f64]| -> Result<Direction> {
            let qv: Vec<f64> = (0..n).map(|i| rc[i] - rxz[i] / x[i] + rsw[i] / s[i]).collect();
            let mut rhs = rb.clone();
            for i in 0..n {
                let f = qv[i] / q[i];
                for (a, xa) in data.row(i).iter().enumerate() {
                    rhs[a] += f * xa;
                }
            }
            let db = solve_spd(normal.clone(), rhs)?;
            let dx: Vec<f64> = (0..n).map(|i| (data.predict(i, db.as_slice()) - qv[i]) / q[i]).collect();
            let dz: Vec<f64> = (0..n).map(|i| (rxz[i] - z[i] * dx[i]) / x[i]).collect();
            let dw: Vec<f64> = (0..n).map(|i| (rsw[i] + w[i] * dx[i]) / s[i]).collect();
            Ok(Direction { dx, dz, dw, db })
        };

        // Predictor.
        let rxz: Vec<f64> = (0..n).map(|i| -x[i] * z[i]).collect();
        let rsw: Vec<f64> = (0..n).map(|i| -s[i] * w[i]).collect();
        // Near a degenerate optimum the weights span so many orders of
        // magnitude that the normal matrix becomes numerically singular. The
        // current iterate is feasible, so it still serves as a warm start.
        let Ok(aff) = direction(&rxz, &rsw) else {
            return Ok(beta.iter().map(|v| -v).collect());
        };
        let ds_aff: Vec<f64> = aff.dx.iter().map(|v| -v).collect();
        let ap = 1f64.min(max_step(&x, &aff.dx)).min(max_step(&s, &ds_aff));
        let ad = 1f64.min(max_step(&z, &aff.dz)).min(max_step(&w, &aff.dw));
        let mu_aff = (0..n)
            .map(|i| {
                (x[i] + ap * aff.dx[i]) * (z[i] + ad * aff.dz[i])
                    + (s[i] + ap * ds_aff[i]) * (w[i] + ad * aff.dw[i])
            })
            .sum::<f64>()
            / (2 * n) as f64;
        let sigma = (mu_aff / mu).clamp(0.0, 1.0).powi(3);

        // Corrector.
        let rxz: Vec<f64> = (0..n)
            .map(|i| sigma * mu - x[i] * z[i] - aff.dx[i] * aff.dz[i])
            .collect();
        let rsw: Vec<f64> = (0..n)
            .map(|i| sigma * mu - s[i] * w[i] - ds_aff[i] * aff.dw[i])
            .collect();
        let Ok(dir) = direction(&rxz, &rsw) else {
            return Ok(beta.iter().map(|v| -v).collect());
        };
        let ds: Vec<f64> = dir.dx.iter().map(|v| -v).collect();
        let ap = 1f64.min(STEP_FRACTION * max_step(&x, &dir.dx).min(max_step(&s, &ds)));
        let ad = 1f64.min(STEP_FRACTION * max_step(&z, &dir.dz).min(max_step(&w, &dir.dw)));

        for i in 0..n {
            x[i] += ap * dir.dx[i];
            s[i] += ap * ds[i];
            z[i] += ad * dir.dz[i];
            w[i] += ad * dir.dw[i];
        }
        beta += ad * dir.db;
    }
    Err(Error::Convergence { iterations: MAX_IPM_ITERATIONS, gap })
}
