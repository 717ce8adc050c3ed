//! Temporal refinement of SDC(3,4), MLSDC(3,2,2,1/2) and IMEX-RK2 on the
//! dome at T31, with fitted slopes and an errors CSV.
//!
//! cargo run --release --example convergence [-- out_dir]

use std::path::PathBuf;

use swe_sdc::harness::{
    convergence_study, reference_solution, write_error_csv, FitWindow, RunConfig,
};
use swe_sdc::testcases::{TestCaseKind, TestCaseSpec};

fn main() -> swe_sdc::Result<()> {
    let out = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "convergence-out".into()),
    );
    std::fs::create_dir_all(&out).map_err(|source| swe_sdc::Error::Io {
        path: out.clone(),
        source,
    })?;

    let tc = TestCaseSpec::new(TestCaseKind::GaussianDome, 1e5);
    let (rf, t_end) = (31, 3600.0);
    let dts = [1800.0, 900.0, 450.0, 225.0];
    let reference = reference_solution(&RunConfig::sdc(tc, rf, 5, 8, 1.0, t_end), 225.0 / 4.0)?;

    let mut reports = Vec::new();
    for cfg in [
        RunConfig::irk2(tc, rf, 1.0, t_end),
        RunConfig::sdc(tc, rf, 3, 4, 1.0, t_end),
        RunConfig::mlsdc(tc, rf, 0.5, 3, 2, 2, 1.0, t_end),
    ] {
        let study = convergence_study(&cfg, &dts, &reference)?;
        print!("{:<18}", study.label);
        for (dt, e) in study.points("zeta") {
            print!(" {dt:>6}:{e:.2e}");
        }
        let slope = study
            .slope("zeta", FitWindow::default())
            .unwrap_or(f64::NAN);
        println!("  slope {slope:.2}");
        reports.extend(study.reports());
    }
    write_error_csv(&reports, &out.join("errors.csv"))?;
    println!("wrote {}", out.join("errors.csv").display());
    Ok(())
}
