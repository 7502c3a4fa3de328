//! The eight-point fixture at τ = 0.5. Its regression quantile is not unique
//! (every optimal vertex has objective 4), so both the vertex the solver
//! returns and the lexicographically first optimal vertex are pinned. All
//! expected values were computed by separate hand arithmetic.

mod common;

use approx::assert_relative_eq;
use coves::{
    adjusted_outcomes, coves_stat, fit_rq, orthogonalized_covariate, report_from_fit, rq_oracle, run_coves, run_es,
    Side,
};

#[test]
fn solver_vertex_chain() {
    let data = common::eight_point();
    let r = run_coves(&data, 0.5, Side::TwoSided).unwrap();
    assert_eq!(r.fit.objective, 4.0);
    assert_eq!(r.fit.beta, vec![-2.0, 0.5, 1.5]);
    assert_eq!(r.fit.residuals, vec![0.0, -0.5, -1.0, 5.5, 0.5, 0.0, -0.5, 0.0]);
    assert_eq!(adjusted_outcomes(&data, &r.fit), vec![-1.5, -2.0, -2.5, 4.0, -1.5, -2.0, -2.5, -2.0]);
    assert_eq!((r.coves.treatment, r.coves.control), (4.0, -1.5));
    assert_eq!((r.s_counts.treatment, r.s_counts.control), (1, 1));
    assert_eq!((r.v.treatment, r.v.control), (22.6875, 0.1875));
    let cbar = r.cbar.unwrap();
    assert_eq!((cbar.treatment, cbar.control), (4.0, 1.0));
    assert_eq!(r.cstar_sumsq, Some(10.0));

    let dens = r.densities.unwrap();
    assert_relative_eq!(dens.treatment.bandwidth, 0.509_009_294_723_641_1, max_relative = 1e-13);
    assert_relative_eq!(dens.control.bandwidth, 0.254_504_647_361_820_55, max_relative = 1e-13);
    assert_relative_eq!(dens.treatment.f_at_zero, 0.345_333_122_793_673_7, max_relative = 1e-13);
    assert_relative_eq!(dens.control.f_at_zero, 0.897_543_532_924_938_3, max_relative = 1e-13);
    assert_relative_eq!(r.u_f.unwrap(), 6.214_383_278_593_059_5, max_relative = 1e-13);
    assert_relative_eq!(r.s2, 6.301_371_420_165_187, max_relative = 1e-13);
    assert_eq!(r.t_stat, 5.5);
    assert_relative_eq!(r.z_score, 2.191_013_987_172_067_5, max_relative = 1e-13);
    assert_relative_eq!(r.p_value, 0.028_450_780_284_273_59, max_relative = 1e-9);
}

#[test]
fn first_optimal_vertex_chain() {
    let data = common::eight_point();
    let fit = rq_oracle(&data.design(true), 0.5).unwrap();
    assert_eq!(fit.objective, 4.0);
    assert_eq!(fit.beta, vec![-1.0, 0.0, 1.0]);
    assert_eq!(adjusted_outcomes(&data, &fit), vec![-1.0, -1.0, -1.0, 6.0, -1.0, -1.0, -1.0, 0.0]);
    assert_eq!(coves_stat(&data, &fit, 1).unwrap(), 6.0);
    assert_eq!(coves_stat(&data, &fit, 0).unwrap(), 0.0);

    let r = report_from_fit(&data, fit, Side::TwoSided).unwrap();
    assert_eq!((r.v.treatment, r.v.control), (36.75, 0.75));
    let cbar = r.cbar.unwrap();
    // Equal shortfall covariate means switch off the second variance term.
    assert_eq!((cbar.treatment, cbar.control), (4.0, 4.0));
    assert_eq!(r.s2, 9.375);
    assert_relative_eq!(r.u_f.unwrap(), 5.036_101_949_083_999, max_relative = 1e-13);
    assert_eq!(r.t_stat, 6.0);
    assert_relative_eq!(r.z_score, 1.959_591_794_226_542_6, max_relative = 1e-13);
    assert_relative_eq!(r.p_value, 0.050_043_521_248_705_09, max_relative = 1e-9);
}

#[test]
fn both_vertices_are_optimal() {
    let x = common::eight_point().design(true);
    for beta in [[-2.0, 0.5, 1.5], [-1.0, 0.0, 1.0]] {
        assert_eq!(x.objective(&beta, 0.5), 4.0);
    }
    assert_eq!(fit_rq(&x, 0.5).unwrap().objective, rq_oracle(&x, 0.5).unwrap().objective);
}

#[test]
fn orthogonalized_fixture_covariate() {
    let cs = orthogonalized_covariate(&common::eight_point());
    assert_eq!(cs, vec![-1.5, -0.5, 0.5, 1.5, -1.5, -0.5, 0.5, 1.5]);
}

#[test]
fn unadjusted_fixture_chain() {
    let r = run_es(&common::eight_point(), 0.5, Side::TwoSided).unwrap();
    assert_eq!(r.fit.objective, 8.0);
    assert_eq!((r.coves.treatment, r.coves.control), (10.0, 4.0));
    assert_eq!((r.v.treatment, r.v.control), (48.0, 3.0));
    assert_eq!(r.s2, 12.75);
    assert_eq!(r.t_stat, 6.0);
    assert!(r.cbar.is_none() && r.u_f.is_none());
    assert_relative_eq!(r.z_score, 6.0 / 12.75f64.sqrt(), max_relative = 1e-15);
}
