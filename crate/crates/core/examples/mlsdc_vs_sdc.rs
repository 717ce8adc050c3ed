//! MLSDC(3,2,2,1/2) against SDC(3,4) on the Gaussian dome: error against a
//! common SDC(5,8) reference, wall-clock, and per-level work.
//!
//! cargo run --release --example mlsdc_vs_sdc

use swe_sdc::harness::{compute_error_norms, reference_solution, run_from, RunConfig};
use swe_sdc::testcases::{TestCaseKind, TestCaseSpec};

fn main() -> swe_sdc::Result<()> {
    let tc = TestCaseSpec::new(TestCaseKind::GaussianDome, 1e5);
    let (rf, dt, t_end) = (63, 300.0, 3600.0);
    let reference = reference_solution(&RunConfig::sdc(tc, rf, 5, 8, dt, t_end), 30.0)?;

    for cfg in [
        RunConfig::sdc(tc, rf, 3, 4, dt, t_end),
        RunConfig::mlsdc(tc, rf, 0.5, 3, 2, 2, dt, t_end),
    ] {
        let out = run_from(&cfg, reference.plan.clone(), &reference.initial)?;
        let err = compute_error_norms(&out.state, &reference.state, &reference.plan)?;
        let c = &out.cost;
        println!("{:<18} {:.3} s", cfg.label(), out.wallclock_s);
        println!(
            "  fine   solves {:>4}  evals {:>4}",
            c.fine.solves, c.fine.implicit_evals
        );
        println!(
            "  coarse solves {:>4}  evals {:>4}  (R_c = {})",
            c.coarse.solves,
            c.coarse.implicit_evals,
            cfg.coarse_truncation()
        );
        for v in err {
            println!("  {:<5} L_inf {:.3e}  L_2 {:.3e}", v.var, v.linf, v.l2);
        }
        if c.theoretical_speedup != 1.0 {
            println!(
                "  theoretical speedup over SDC(3,4): {:.3}",
                c.theoretical_speedup
            );
        }
    }
    Ok(())
}
