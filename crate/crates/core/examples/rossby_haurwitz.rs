//! Rossby-Haurwitz wave: the wavenumber-4 pattern drifts in longitude at the
//! non-divergent phase speed. Tracks the phase of the (4, 5) vorticity
//! coefficient.
//!
//! cargo run --release --example rossby_haurwitz

use std::sync::Arc;

use swe_sdc::harness::{Integrator, RunConfig};
use swe_sdc::sht::TransformPlan;
use swe_sdc::testcases::{TestCaseKind, TestCaseSpec, EARTH};

fn main() -> swe_sdc::Result<()> {
    let tc = TestCaseSpec::new(TestCaseKind::RossbyHaurwitz, 1e5);
    let rh = tc.rossby_haurwitz;
    let (rf, dt, hours) = (42, 600.0, 24);
    let cfg = RunConfig::sdc(tc, rf, 3, 4, dt, hours as f64 * 3600.0);
    let plan = Arc::new(TransformPlan::new(rf)?);
    let stepper = Integrator::new(&cfg, plan.clone())?;
    let mut state = tc.initial_state(&plan, &EARTH)?;

    let c = rh.phase_speed(EARTH.omega);
    let m = rh.wavenumber as usize;
    println!(
        "phase speed {c:.4e} rad/s ({:.2} deg/day)",
        c.to_degrees() * 86400.0
    );
    let arg0 = state.zeta.get(m, m + 1).arg();
    let mut unwrapped = 0.0;
    let mut last = arg0;
    for step in 1..=cfg.steps()? {
        state = stepper.step(&state, dt)?;
        let a = state.zeta.get(m, m + 1).arg();
        let mut d = a - last;
        d -= (d / std::f64::consts::TAU).round() * std::f64::consts::TAU;
        unwrapped += d;
        last = a;
        if step % 36 == 0 {
            let t = step as f64 * dt;
            let observed = -unwrapped / (m as f64 * t);
            println!(
                "t = {:>3} h  drift {:+.4e} rad/s  (ratio {:.3})",
                step / 6,
                observed,
                observed / c
            );
        }
    }
    Ok(())
}
