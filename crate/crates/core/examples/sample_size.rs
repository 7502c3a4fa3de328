//! Smallest equal-allocation sizes reaching 90% power in Scenarios 1 and 3,
//! for the shortfall test and the least-squares t-test.
//!
//! `cargo run --release --example sample_size -- [reps]`

use coves::{sample_size_search, Allocation, Generator, ScenarioSpec, TestId, TestSpec};

fn main() -> coves::Result<()> {
    let reps: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    for scenario in [1, 3] {
        let generator = Generator::Scenario(ScenarioSpec::new(scenario, 1.35)?);
        for id in [TestId::Coves, TestId::Ttest] {
            let started = std::time::Instant::now();
            let r = sample_size_search(&generator, &TestSpec::new(id), 0.9, Allocation::Equal, 0.05, reps, 1, (10, 400))?;
            println!(
                "scenario {scenario} {id:>5}: m = n = {:>3}  power {:.3} ± {:.3}  ({:.1?})",
                r.n,
                r.achieved_power.rate,
                r.achieved_power.mc_se,
                started.elapsed()
            );
        }
    }
    Ok(())
}
