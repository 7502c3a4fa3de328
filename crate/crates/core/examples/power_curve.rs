//! Power of the three tests against group size on the bundled stand-in for
//! the targeted study.
//!
//! `cargo run --release --example power_curve -- [reps]`

use coves::{power_curve, EmpiricalDist, Generator, TestId, TestSpec};

fn main() -> coves::Result<()> {
    let reps: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(500);
    let generator = Generator::Targeted { f: EmpiricalDist::standin_outcome(), g: EmpiricalDist::standin_baseline() };
    let sizes: Vec<(usize, usize)> = (25..=250).step_by(25).map(|n| (n, n)).collect();

    print!("{:>6}", "m=n");
    for id in [TestId::Coves, TestId::Es, TestId::Ttest] {
        print!("{:>10}", id.to_string());
    }
    println!();
    let curves: Vec<_> = [TestId::Coves, TestId::Es, TestId::Ttest]
        .iter()
        .map(|&id| power_curve(&generator, &TestSpec::new(id), &sizes, 0.05, reps, 1))
        .collect::<coves::Result<_>>()?;
    for (k, (_, n)) in sizes.iter().enumerate() {
        print!("{n:>6}");
        for c in &curves {
            print!("{:>10.3}", c[k].rate);
        }
        println!();
    }
    Ok(())
}
