//! Predicted operation counts and the theoretical MLSDC speedup for a few
//! hierarchies and truncations.
//!
//! cargo run --release --example cost_model

use swe_sdc::harness::{predicted_counts, theoretical_speedup, RunConfig};
use swe_sdc::testcases::{TestCaseKind, TestCaseSpec};

fn main() -> swe_sdc::Result<()> {
    println!("theoretical speedup of MLSDC(M_f+1, M_c+1, N_ML, alpha) over SDC with 2 N_ML sweeps");
    println!("{:>22} {:>8} {:>8} {:>8}", "", "R=63", "R=256", "R=1024");
    for (mf, mc, n_ml, alpha) in [
        (2, 1, 2, 0.5),
        (4, 2, 4, 0.5),
        (2, 1, 2, 0.25),
        (4, 2, 4, 0.8),
        (2, 2, 2, 1.0),
    ] {
        let row: Vec<String> = [63.0, 256.0, 1024.0]
            .iter()
            .map(|&r| {
                format!(
                    "{:>8.3}",
                    theoretical_speedup(mf, mc, 2 * n_ml, n_ml, alpha, r)
                )
            })
            .collect();
        println!(
            "{:>22} {}",
            format!("MLSDC({},{},{},{alpha})", mf + 1, mc + 1, n_ml),
            row.join(" ")
        );
    }

    let tc = TestCaseSpec::new(TestCaseKind::GaussianDome, 1e5);
    println!("\nper-step counts (solves / F_I evals / F_E evals)");
    for cfg in [
        RunConfig::sdc(tc, 63, 3, 4, 60.0, 60.0),
        RunConfig::sdc(tc, 63, 5, 8, 60.0, 60.0),
        RunConfig::mlsdc(tc, 63, 0.5, 3, 2, 2, 60.0, 60.0),
        RunConfig::mlsdc(tc, 63, 0.5, 5, 3, 4, 60.0, 60.0),
        RunConfig::irk2(tc, 63, 60.0, 60.0),
    ] {
        let (f, c) = predicted_counts(&cfg, 1)?;
        println!(
            "{:<18} fine {:>2}/{:>2}/{:>2}   coarse {:>2}/{:>2}/{:>2}",
            cfg.label(),
            f.solves,
            f.implicit_evals,
            f.explicit_evals,
            c.solves,
            c.implicit_evals,
            c.explicit_evals
        );
    }
    Ok(())
}
