//! Configure a run from `key = value` text, the same format the command-line
//! `--config` flag reads, then print the settings back.
//!
//! cargo run --release --example config_file_run

use std::path::Path;

use swe_sdc::harness::{parse_config_str, run_simulation, RunConfig};

const CONFIG: &str = "
# steady jet, two-level
testcase = jet
scheme = mlsdc
rf = 31
alpha = 0.5
nodes-fine = 5
nodes-coarse = 3
iters = 4
dt = 600
tend = 7200
nu = 1e5
";

fn main() -> swe_sdc::Result<()> {
    let mut cfg = RunConfig::default();
    cfg.apply(&parse_config_str(CONFIG, Path::new("inline"))?)?;
    cfg.validate()?;
    let out = run_simulation(&cfg)?;
    println!(
        "{} finished {} steps; counts match model: {}",
        cfg.label(),
        out.steps,
        out.cost.counts_match()
    );
    for (k, v) in cfg.settings() {
        println!("{k} = {v}");
    }
    Ok(())
}
