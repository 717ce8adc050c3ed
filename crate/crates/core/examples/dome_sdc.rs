//! One hour of the Gaussian dome with SDC(3,4), the counted work, and the
//! geopotential max-spectrum before and after.
//!
//! cargo run --release --example dome_sdc

use swe_sdc::harness::{max_spectrum, run_simulation, RunConfig};
use swe_sdc::sht::TransformPlan;
use swe_sdc::testcases::{TestCaseKind, TestCaseSpec, EARTH};

fn main() -> swe_sdc::Result<()> {
    let tc = TestCaseSpec::new(TestCaseKind::GaussianDome, 1e5);
    let cfg = RunConfig::sdc(tc, 63, 3, 4, 240.0, 3600.0);
    let out = run_simulation(&cfg)?;
    println!(
        "{}: {} steps, {:.3} s in the stepping loop",
        cfg.label(),
        out.steps,
        out.wallclock_s
    );
    println!(
        "solves {}, F_I evaluations {}, F_E evaluations {} (model: {})",
        out.cost.fine.solves,
        out.cost.fine.implicit_evals,
        out.cost.fine.explicit_evals,
        if out.cost.counts_match() {
            "matches"
        } else {
            "differs"
        }
    );

    let plan = TransformPlan::new(cfg.rf)?;
    let before = max_spectrum(&tc.initial_state(&plan, &EARTH)?.phi);
    let after = max_spectrum(&out.state.phi);
    println!("  n0   |Phi_n0| t=0   |Phi_n0| t=1h");
    for n0 in (0..=cfg.rf).step_by(7) {
        println!(
            "{n0:>4}   {:.3e}     {:.3e}",
            before.values[n0], after.values[n0]
        );
    }
    Ok(())
}
