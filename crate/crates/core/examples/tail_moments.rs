//! Group differences under the tail-inflated normal model, simulated and in
//! closed form.

use coves::stats::{mean, normal_pdf, normal_quantile, order_statistic_quantile, sample_variance, sorted};
use coves::{sample_scenario, ScenarioSpec};

fn main() -> coves::Result<()> {
    let eta = 1.35;
    let n = 1_000_000;
    let data = sample_scenario(&ScenarioSpec::new(1, eta)?, n, n, 3)?;
    let errors = |g: u8| -> Vec<f64> { data.group_indices(g).map(|i| data.z()[i] - 5.0).collect() };
    let (t, c) = (errors(1), errors(0));
    let (st, sc) = (sorted(&t), sorted(&c));

    println!("  tau   simulated   eta*q(tau)");
    for tau in [0.5, 0.6, 0.7, 0.75, 0.8, 0.9] {
        let diff = order_statistic_quantile(&sc, tau) - order_statistic_quantile(&st, tau);
        println!("  {tau:<5} {diff:>9.4} {:>12.4}", eta * normal_quantile(tau).max(0.0));
    }
    let closed_mean = eta * normal_pdf(0.0);
    let closed_ratio = 1.0 + ((1.0 + eta) * (1.0 + eta) - 1.0) / 2.0 - closed_mean * closed_mean;
    println!("mean difference   {:.4} (closed form {closed_mean:.4})", mean(&c) - mean(&t));
    println!("variance ratio    {:.4} (closed form {closed_ratio:.4})", sample_variance(&c) / sample_variance(&t));
    Ok(())
}
