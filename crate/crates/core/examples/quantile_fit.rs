//! Fit a regression quantile and compare it with brute-force enumeration.

use coves::{fit_rq, rq_oracle, RegressionData};

fn main() -> coves::Result<()> {
    let y = vec![3.1, 4.7, 2.2, 6.9, 5.0, 1.4, 7.3, 3.8, 5.6, 4.1];
    let d = [1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0];
    let c = [0.5, 1.2, -0.3, 2.0, 1.1, -1.0, 2.4, 0.2, 1.5, 0.9];
    let rows: Vec<Vec<f64>> = (0..y.len()).map(|i| vec![1.0, d[i], c[i]]).collect();
    let data = RegressionData::new(y, &rows)?;

    for tau in [0.25, 0.5, 0.75, 0.9] {
        let fit = fit_rq(&data, tau)?;
        let oracle = rq_oracle(&data, tau)?;
        let (neg, nonpos) = fit.sign_counts();
        println!(
            "tau {tau:.2}: beta = [{:.4}, {:.4}, {:.4}]  objective {:.6} (enumeration {:.6})  zero set {:?}  #neg {neg}  #nonpos {nonpos}",
            fit.beta[0], fit.beta[1], fit.beta[2], fit.objective, oracle.objective, fit.zero_set
        );
    }
    Ok(())
}
