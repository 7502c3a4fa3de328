mod common;

use coves::density::kde_at_zero;
use coves::{
    adjusted_quantile_curves, decompose_t, run_coves, run_es, sample_scenario, sample_targeted, Dataset,
    EmpiricalDist, ScenarioSpec, Side,
};
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

fn scenario_data(scenario: u8, eta: f64, m: usize, n: usize, seed: u64) -> Dataset {
    sample_scenario(&ScenarioSpec::new(scenario, eta).unwrap(), m, n, seed).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_is_exact(seed in any::<u64>(), tau in 0.3..0.85f64, scenario in 1u8..=4) {
        let spec = ScenarioSpec::new(scenario, 1.35).unwrap();
        let data = sample_scenario(&spec, 40, 40, seed).unwrap();
        let report = run_coves(&data, tau, Side::TwoSided).unwrap();
        let (direct, decomposed) = decompose_t(&data, &report.fit, spec.true_quantile_params(tau)).unwrap();
        prop_assert_eq!(direct, report.t_stat);
        prop_assert!((direct - decomposed).abs() <= 1e-12 * (1.0 + direct.abs()));
    }

    #[test]
    fn outcome_shift_moves_shortfalls_only(seed in any::<u64>(), k in -50.0..50.0f64) {
        let data = scenario_data(2, 1.35, 30, 35, seed);
        let a = run_coves(&data, 0.75, Side::TwoSided).unwrap();
        let b = run_coves(&data.map_outcomes(|z| z + k), 0.75, Side::TwoSided).unwrap();
        prop_assert!(close(b.coves.treatment, a.coves.treatment + k, 1e-9));
        prop_assert!(close(b.coves.control, a.coves.control + k, 1e-9));
        prop_assert!(close(a.t_stat, b.t_stat, 1e-9));
        prop_assert!(close(a.z_score, b.z_score, 1e-8));
        prop_assert!(close(a.p_value, b.p_value, 1e-8));
    }

    #[test]
    fn covariate_shift_leaves_statistic(seed in any::<u64>(), k in -20.0..20.0f64) {
        let data = scenario_data(3, 1.35, 30, 30, seed);
        let a = run_coves(&data, 0.75, Side::TwoSided).unwrap();
        let b = run_coves(&data.map_covariate(|c| c + k), 0.75, Side::TwoSided).unwrap();
        prop_assert!(close(a.fit.beta[2], b.fit.beta[2], 1e-8));
        prop_assert!(close(b.fit.beta[0], a.fit.beta[0] - k * a.fit.beta[2], 1e-8));
        prop_assert!(close(a.t_stat, b.t_stat, 1e-8));
        prop_assert!(close(a.s2, b.s2, 1e-8));
        prop_assert!(close(a.z_score, b.z_score, 1e-8));
    }

    #[test]
    fn swapping_labels_negates(seed in any::<u64>(), tau in 0.4..0.8f64) {
        let data = scenario_data(4, 1.35, 32, 28, seed);
        let a = run_coves(&data, tau, Side::TwoSided).unwrap();
        let b = run_coves(&data.swap_labels(), tau, Side::TwoSided).unwrap();
        prop_assert!(close(a.t_stat, -b.t_stat, 1e-8));
        prop_assert!(close(a.z_score, -b.z_score, 1e-8));
        prop_assert!(close(a.p_value, b.p_value, 1e-8));
        let ea = run_es(&data, tau, Side::TwoSided).unwrap();
        let eb = run_es(&data.swap_labels(), tau, Side::TwoSided).unwrap();
        prop_assert!(close(ea.z_score, -eb.z_score, 1e-8));
    }

    #[test]
    fn kde_scale_equivariance(
        xs in prop::collection::vec(-5.0..5.0f64, 1..40),
        h in 0.05..3.0f64,
        s in 0.1..10.0f64,
    ) {
        let scaled: Vec<f64> = xs.iter().map(|x| s * x).collect();
        let base = kde_at_zero(&xs, h).unwrap();
        let got = kde_at_zero(&scaled, s * h).unwrap();
        prop_assert!((got - base / s).abs() <= 1e-12 * (1.0 + base / s));
        prop_assert!(base >= 0.0);
    }

    #[test]
    fn generators_are_deterministic(seed in any::<u64>(), m in 1usize..30, n in 1usize..30, scenario in 1u8..=4) {
        let spec = ScenarioSpec::new(scenario, 1.35).unwrap();
        prop_assert_eq!(sample_scenario(&spec, m, n, seed).unwrap(), sample_scenario(&spec, m, n, seed).unwrap());
        let (f, g) = (EmpiricalDist::standin_outcome(), EmpiricalDist::standin_baseline());
        prop_assert_eq!(sample_targeted(&f, &g, m, n, seed).unwrap(), sample_targeted(&f, &g, m, n, seed).unwrap());
    }

    #[test]
    fn diagnostic_curves_obey_bound(seed in any::<u64>(), scenario in 1u8..=4) {
        let data = scenario_data(scenario, 1.35, 40, 40, seed);
        let grid = coves::diagnostics::default_grid();
        let a = adjusted_quantile_curves(&data, 0.5, &grid).unwrap();
        let b = adjusted_quantile_curves(&data, 0.9, &grid).unwrap();
        let cmax = data.c().iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let bound = (a.gamma_hat - b.gamma_hat).abs() * cmax;
        // Outcomes are adjusted in floating point before sorting.
        let zmax = data.z().iter().fold(0.0f64, |m, z| m.max(z.abs()));
        prop_assert!(a.sup_distance(&b) <= bound + 8.0 * f64::EPSILON * (zmax + bound));
        for c in [&a.curves.treatment, &a.curves.control] {
            prop_assert!(c.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}

#[test]
fn copies_give_zero_statistic() {
    let z = vec![1.3, 4.2, -0.7, 2.9, 8.1, 3.3];
    let c = vec![0.4, 1.9, -1.1, 0.0, 2.2, 1.0];
    let data = Dataset::new(
        [z.clone(), z].concat(),
        vec![1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
        [c.clone(), c].concat(),
    )
    .unwrap();
    for report in [run_coves(&data, 0.5, Side::TwoSided).unwrap(), run_es(&data, 0.5, Side::TwoSided).unwrap()] {
        assert_eq!(report.t_stat, 0.0);
        assert_eq!(report.p_value, 1.0);
    }
}

#[test]
fn constant_covariate_matches_unadjusted() {
    let data = scenario_data(1, 1.35, 25, 25, 5).map_covariate(|_| 2.0);
    let a = run_coves(&data, 0.75, Side::TwoSided).unwrap();
    let b = run_es(&data, 0.75, Side::TwoSided).unwrap();
    assert_eq!(a.t_stat, b.t_stat);
    assert_eq!(a.fit.zero_set, b.fit.zero_set);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ttest_ignores_outcome_scale(seed in any::<u64>(), s in 0.01..100.0f64) {
        let data = scenario_data(2, 1.35, 20, 20, seed);
        let a = coves::run_ttest(&data, Side::TwoSided).unwrap();
        let b = coves::run_ttest(&data.map_outcomes(|z| s * z), Side::TwoSided).unwrap();
        prop_assert!(close(a.t_stat, b.t_stat, 1e-9));
        prop_assert!(close(a.p_value, b.p_value, 1e-9));
    }

    #[test]
    fn ttest_ignores_added_covariate(seed in any::<u64>(), k in -10.0..10.0f64) {
        let data = scenario_data(3, 1.35, 20, 20, seed);
        let centered = Dataset::new(
            data.z().to_vec(),
            data.d().to_vec(),
            coves::orthogonalized_covariate(&data),
        )
        .unwrap();
        let cs = centered.c().to_vec();
        let moved = Dataset::new(
            centered.z().iter().zip(&cs).map(|(z, c)| z + k * c).collect(),
            centered.d().to_vec(),
            cs,
        )
        .unwrap();
        let a = coves::run_ttest(&centered, Side::TwoSided).unwrap();
        let b = coves::run_ttest(&moved, Side::TwoSided).unwrap();
        prop_assert!(close(a.t_stat, b.t_stat, 1e-8));
        prop_assert!(close(b.beta[2], a.beta[2] + k, 1e-8));
    }
}
