//! Experiment driver: runs, error norms, refinement studies, cost accounting and CSV output.

mod config;
mod cost;
mod csv_io;
mod irk2;
mod norms;
mod run;
mod study;

pub use config::{parse_config_str, read_config_file, RunConfig, Scheme};
pub use cost::{
    predicted_counts, theoretical_speedup, theoretical_speedup_for, CostReport, LevelCounts,
};
pub use csv_io::{
    parse_cost_csv, read_cost_csv, write_cost_csv, write_error_csv, write_metadata,
    write_spectrum_csv,
};
pub use irk2::irk2_timestep;
pub use norms::{
    compute_error_norms, max_spectrum, ErrorReport, Norm, SpectrumReport, VarError, VARIABLES,
};
pub use run::{run_from, run_simulation, Integrator, RunOutput};
pub use study::{
    convergence_study, convergence_study_repeated, fit_slope, observed_speedup, reference_solution,
    ConvergenceStudy, FitWindow, Reference, StudyEntry,
};
