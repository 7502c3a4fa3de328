//! Basic (vertex) solutions: a basis is a set of `p` observations whose rows
//! are linearly independent, and its coefficients interpolate them exactly.

use nalgebra::{DMatrix, DVector};

use super::{rho_tau, RegressionData};
use crate::error::{Error, Result};

/// Picks `p` independent rows, preferring those with the smallest residual
/// under `beta`.
pub(super) fn nearest_basis(data: &RegressionData, beta: &[f64]) -> Result<Vec<usize>> {
    let p = data.p();
    let mut order: Vec<usize> = (0..data.n()).collect();
    let abs_res: Vec<f64> = (0..data.n())
        .map(|i| (data.y()[i] - data.predict(i, beta)).abs())
        .collect();
    order.sort_by(|&a, &b| abs_res[a].total_cmp(&abs_res[b]).then(a.cmp(&b)));

    let mut basis = Vec::with_capacity(p);
    let mut ortho: Vec<Vec<f64>> = Vec::with_capacity(p);
    for i in order {
        let row = data.row(i);
        let norm: f64 = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let mut v = row.to_vec();
        for q in &ortho {
            let dot: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
            for (vk, qk) in v.iter_mut().zip(q) {
                *vk -= dot * qk;
            }
        }
        let rem: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if rem > 1e-8 * norm {
            v.iter_mut().for_each(|x| *x /= rem);
            ortho.push(v);
            basis.push(i);
            if basis.len() == p {
                return Ok(basis);
            }
        }
    }
    Err(Error::DesignDegenerate { condition: f64::INFINITY })
}

fn basis_inverse(data: &RegressionData, basis: &[usize]) -> Result<DMatrix<f64>> {
    let p = data.p();
    let rows: Vec<f64> = basis.iter().flat_map(|&i| data.row(i).iter().copied()).collect();
    DMatrix::from_row_slice(p, p, &rows)
        .try_inverse()
        .ok_or(Error::DesignDegenerate { condition: f64::INFINITY })
}

fn interpolate(data: &RegressionData, basis: &[usize], inv: &DMatrix<f64>) -> Vec<f64> {
    let yh = DVector::from_iterator(basis.len(), basis.iter().map(|&i| data.y()[i]));
    (inv * yh).iter().copied().collect()
}

/// Edge-following descent from a starting basis. Each move releases one
/// basis observation along the edge with the most negative directional
/// derivative and runs an exact line search over the residual breakpoints.
pub(super) fn descend(
    data: &RegressionData,
    tau: f64,
    mut basis: Vec<usize>,
) -> Result<(Vec<usize>, Vec<f64>)> {
    let n = data.n();
    let p = data.p();
    let ztol = data.zero_tolerance();
    let cap = 20 * n + 100;
    let mut in_basis = vec![false; n];
    for &i in &basis {
        in_basis[i] = true;
    }

    for _ in 0..cap {
        let inv = basis_inverse(data, &basis)?;
        let beta = interpolate(data, &basis, &inv);
        let resid: Vec<f64> = (0..n)
            .map(|i| if in_basis[i] { 0.0 } else { data.y()[i] - data.predict(i, &beta) })
            .collect();

        // (derivative, leaving position, sign, direction images x_iᵀδ)
        let mut best: Option<(f64, usize, f64, Vec<f64>)> = None;
        for j in 0..p {
            let col: Vec<f64> = (0..p).map(|k| inv[(k, j)]).collect();
            let g: Vec<f64> = (0..n).map(|i| data.predict(i, &col)).collect();
            let scale = 1.0 + g.iter().map(|v| v.abs()).sum::<f64>();
            for sign in [1.0, -1.0] {
                let mut deriv = rho_tau(-sign, tau);
                for i in (0..n).filter(|&i| !in_basis[i]) {
                    let s = sign * g[i];
                    deriv += if resid[i] > ztol {
                        -s * tau
                    } else if resid[i] < -ztol {
                        -s * (tau - 1.0)
                    } else {
                        rho_tau(-s, tau)
                    };
                }
                if deriv < -1e-11 * scale && best.as_ref().map_or(true, |b| deriv < b.0) {
                    best = Some((deriv, j, sign, g.iter().map(|v| sign * v).collect()));
                }
            }
        }

        let Some((deriv, leave, _, s)) = best else {
            return Ok((basis, beta));
        };

        let mut breaks: Vec<(f64, usize)> = (0..n)
            .filter(|&i| !in_basis[i] && resid[i].abs() > ztol && s[i] != 0.0)
            .filter_map(|i| {
                let t = resid[i] / s[i];
                (t > 0.0).then_some((t, i))
            })
            .collect();
        breaks.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut slope = deriv;
        let mut entering = None;
        for (_, i) in breaks {
            slope += s[i].abs();
            if slope >= 0.0 {
                entering = Some(i);
                break;
            }
        }
        let Some(enter) = entering else {
            return Err(Error::DesignDegenerate { condition: f64::INFINITY });
        };
        in_basis[basis[leave]] = false;
        in_basis[enter] = true;
        basis[leave] = enter;
    }
    let inv = basis_inverse(data, &basis)?;
    let beta = interpolate(data, &basis, &inv);
    Ok((basis, beta))
}

/// Retries the descent from bases that swap in other zero-residual
/// observations. Returns the first result reaching `target`, if any.
pub(super) fn escape_degenerate(
    data: &RegressionData,
    tau: f64,
    basis: &[usize],
    target: f64,
) -> Result<Option<(Vec<usize>, Vec<f64>)>> {
    let p = data.p();
    let ztol = data.zero_tolerance();
    let inv = basis_inverse(data, basis)?;
    let beta = interpolate(data, basis, &inv);
    let extra: Vec<usize> = (0..data.n())
        .filter(|i| !basis.contains(i))
        .filter(|&i| (data.y()[i] - data.predict(i, &beta)).abs() <= ztol)
        .collect();
    for &k in &extra {
        let row = data.row(k);
        for j in 0..p {
            let pivot: f64 = (0..p).map(|a| row[a] * inv[(a, j)]).sum();
            if pivot.abs() <= 1e-9 {
                continue;
            }
            let mut trial = basis.to_vec();
            trial[j] = k;
            let (b, coef) = descend(data, tau, trial)?;
            if data.objective(&coef, tau) <= target {
                return Ok(Some((b, coef)));
            }
        }
    }
    Ok(None)
}
