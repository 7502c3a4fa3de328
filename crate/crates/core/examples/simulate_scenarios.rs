//! Draw one dataset per normal-model scenario and write the first as CSV.

use coves::{sample_scenario, stats, ScenarioSpec};

fn main() -> coves::Result<()> {
    for scenario in 1..=4 {
        let spec = ScenarioSpec::new(scenario, 1.35)?;
        let data = sample_scenario(&spec, 500, 500, 1)?;
        let summary = |g: u8| {
            let z: Vec<f64> = data.group_indices(g).map(|i| data.z()[i]).collect();
            let c: Vec<f64> = data.group_indices(g).map(|i| data.c()[i]).collect();
            format!(
                "Z mean {:.3} sd {:.3}, C mean {:.3} sd {:.3}",
                stats::mean(&z),
                stats::sample_variance(&z).sqrt(),
                stats::mean(&c),
                stats::sample_variance(&c).sqrt()
            )
        };
        println!("scenario {scenario} (gamma {}):", spec.gamma);
        println!("  treatment: {}", summary(1));
        println!("  control:   {}", summary(0));
    }

    println!("\nfirst rows of a scenario 1 null dataset:");
    let data = sample_scenario(&ScenarioSpec::new(1, 0.0)?, 3, 3, 1)?;
    data.write_csv(std::io::stdout().lock())?;
    Ok(())
}
