mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use swe_sdc::harness::{compute_error_norms, fit_slope};
use swe_sdc::sdc::{
    collocation_residual, initialize_nodes, sdc_sweep, ImexProblem, QuadratureTables,
};
use swe_sdc::sht::TransformPlan;
use swe_sdc::swe::ShallowWater;

use common::{earth, random_field, random_state, rel_diff};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transform_roundtrip(r in 1usize..40, seed in any::<u64>()) {
        let plan = TransformPlan::new(r).unwrap();
        let x = random_field(r, 1.0, &mut StdRng::seed_from_u64(seed));
        let mut back = plan.grid_to_spectral(&plan.spectral_to_grid(&x).unwrap()).unwrap();
        back.axpy(-1.0, &x);
        prop_assert!(back.norm_inf() < 1e-12 * x.norm_inf());
    }

    #[test]
    fn implicit_solve_inverts(beta in 0.0f64..3600.0, nu in 0.0f64..1e6, seed in any::<u64>()) {
        let sw = ShallowWater::new(Arc::new(TransformPlan::new(21).unwrap()), earth(nu)).unwrap();
        let rhs = random_state(21, seed);
        let x = sw.solve_implicit(beta, &rhs).unwrap();
        let mut back = x.clone();
        back.axpy(-beta, &sw.eval_f_i(&x));
        prop_assert!(rel_diff(&back, &rhs) < 1e-11);
    }

    #[test]
    fn error_norms_nonnegative_and_symmetric(a in any::<u64>(), b in any::<u64>()) {
        let plan = TransformPlan::new(12).unwrap();
        let (x, y) = (random_state(12, a), random_state(12, b));
        let xy = compute_error_norms(&x, &y, &plan).unwrap();
        let yx = compute_error_norms(&y, &x, &plan).unwrap();
        for (p, q) in xy.iter().zip(&yx) {
            prop_assert!(p.linf >= 0.0 && p.l2 >= 0.0 && p.l2 <= p.linf * (1.0 + 1e-12));
            prop_assert_eq!(p.linf, q.linf);
        }
    }

    #[test]
    fn slope_fit_recovers_exponents(p in 0.5f64..9.0, c in 1e-12f64..1e3) {
        let pts: Vec<_> = [3.0, 7.0, 20.0, 55.0].iter().map(|&dt: &f64| (dt, c * dt.powf(p))).collect();
        prop_assert!((fit_slope(&pts).unwrap() - p).abs() < 1e-9);
    }
}

/// Repeated sweeps on the shallow-water problem converge to the collocation
/// solution: the residual falls by orders of magnitude.
#[test]
fn sweeps_reduce_collocation_residual() {
    let sw = ShallowWater::new(Arc::new(TransformPlan::new(21).unwrap()), earth(1e5)).unwrap();
    let tables = QuadratureTables::new(5).unwrap();
    let theta = random_state(21, 5);
    let mut s = initialize_nodes(&sw, &theta, tables.node_count()).unwrap();
    let dt = 600.0;
    let mut first = None;
    for _ in 0..12 {
        sdc_sweep(&sw, &mut s, &tables, dt, None).unwrap();
        let r = collocation_residual(&s, &tables, dt)
            .unwrap()
            .into_iter()
            .fold(0.0, f64::max);
        first.get_or_insert(r);
    }
    let last = collocation_residual(&s, &tables, dt)
        .unwrap()
        .into_iter()
        .fold(0.0, f64::max);
    assert!(
        last < 1e-6 * first.unwrap(),
        "{last:e} vs {:e}",
        first.unwrap()
    );
}
