use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use swe_sdc::harness::{
    compute_error_norms, convergence_study, max_spectrum, observed_speedup, read_config_file,
    reference_solution, run_simulation, write_cost_csv, write_error_csv, write_metadata,
    write_spectrum_csv, ConvergenceStudy, FitWindow, Norm, RunConfig, Scheme, VARIABLES,
};
use swe_sdc::{Error, Result};

#[derive(Parser)]
#[command(
    name = "swe-sdc",
    version,
    about = "Shallow-water SDC/MLSDC experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one configuration and write cost, spectrum and metadata files.
    Run(Common),
    /// Temporal refinement study against an SDC(5,8) reference.
    Converge {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        study: StudyArgs,
    },
    /// Max-spectrum of a variable at t_end (or of the initial state with --initial).
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "zeta", value_parser = VARIABLES)]
        var: String,
        #[arg(long)]
        initial: bool,
    },
    /// Theoretical and observed speedup of MLSDC over SDC with twice the iterations.
    Speedup {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        study: StudyArgs,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    testcase: Option<String>,
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    rf: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    nodes_fine: Option<String>,
    #[arg(long)]
    nodes_coarse: Option<String>,
    #[arg(long)]
    iters: Option<String>,
    #[arg(long)]
    dt: Option<String>,
    #[arg(long)]
    tend: Option<String>,
    #[arg(long)]
    nu: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct StudyArgs {
    /// Comma-separated step sizes in seconds.
    #[arg(long, value_delimiter = ',', required = true)]
    dts: Vec<f64>,
    /// Reference step; defaults to a quarter of the smallest step.
    #[arg(long)]
    dt_ref: Option<f64>,
    /// Fit window in dt, as `lo,hi`.
    #[arg(long, value_parser = parse_pair)]
    fit: Option<(f64, f64)>,
    #[arg(long, default_value = "zeta", value_parser = VARIABLES)]
    var: String,
}

impl Common {
    fn config(&self) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            cfg.apply(&read_config_file(path)?)?;
        }
        let flags = [
            ("testcase", &self.testcase),
            ("scheme", &self.scheme),
            ("rf", &self.rf),
            ("alpha", &self.alpha),
            ("nodes-fine", &self.nodes_fine),
            ("nodes-coarse", &self.nodes_coarse),
            ("iters", &self.iters),
            ("dt", &self.dt),
            ("tend", &self.tend),
            ("nu", &self.nu),
            ("out", &self.out),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                cfg.set(k, v)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn out_dir(cfg: &RunConfig) -> Result<&Path> {
    let dir = cfg.output_dir.as_path();
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    Ok(dir)
}

fn study(cfg: &RunConfig, args: &StudyArgs) -> Result<ConvergenceStudy> {
    let min = args.dts.iter().copied().fold(f64::INFINITY, f64::min);
    let reference = reference_solution(cfg, args.dt_ref.unwrap_or(min / 4.0))?;
    convergence_study(cfg, &args.dts, &reference)
}

fn window(args: &StudyArgs) -> FitWindow {
    args.fit
        .as_ref()
        .map_or_else(FitWindow::default, |&(lo, hi)| FitWindow::dt(lo, hi))
}

fn parse_pair(text: &str) -> std::result::Result<(f64, f64), String> {
    let bad = || format!("expected `lo,hi`, got '{text}'");
    let (lo, hi) = text.split_once(',').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > 0.0 && hi >= lo {
        Ok((lo, hi))
    } else {
        Err(bad())
    }
}

fn print_study(s: &ConvergenceStudy, var: &str) {
    for e in &s.entries {
        match (&e.report, e.unstable_step) {
            (Some(r), _) => {
                let v = r.var(var).expect("known variable");
                println!(
                    "{:>10.3} {:>12} linf={:.3e} l2={:.3e} t={:.3}s",
                    e.dt, s.label, v.linf, v.l2, r.wallclock_s
                );
            }
            (None, step) => println!(
                "{:>10.3} {:>12} unstable at step {}",
                e.dt,
                s.label,
                step.unwrap_or(0)
            ),
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(common) => {
            let cfg = common.config()?;
            let out = run_simulation(&cfg)?;
            let dir = out_dir(&cfg)?;
            write_cost_csv(&out.cost, &dir.join("cost.csv"))?;
            write_spectrum_csv(&max_spectrum(&out.state.zeta), &dir.join("spectrum.csv"))?;
            write_metadata(&dir.join("run.cfg"), &cfg.settings())?;
            println!(
                "{}: {} steps in {:.3} s, fine solves {}, coarse solves {}",
                cfg.label(),
                out.steps,
                out.wallclock_s,
                out.cost.fine.solves,
                out.cost.coarse.solves
            );
        }
        Command::Converge {
            common,
            study: args,
        } => {
            let cfg = common.config()?;
            let s = study(&cfg, &args)?;
            print_study(&s, &args.var);
            match s.slope(&args.var, window(&args)) {
                Some(p) => println!("fitted slope ({}): {p:.3}", args.var),
                None => println!("fitted slope ({}): not enough stable points", args.var),
            }
            let dir = out_dir(&cfg)?;
            write_error_csv(&s.reports(), &dir.join("errors.csv"))?;
            write_metadata(&dir.join("run.cfg"), &cfg.settings())?;
        }
        Command::Spectrum {
            common,
            var,
            initial,
        } => {
            let cfg = common.config()?;
            let plan = swe_sdc::sht::TransformPlan::new(cfg.rf)?;
            let state = if initial {
                cfg.testcase
                    .initial_state(&plan, &swe_sdc::testcases::EARTH)?
            } else {
                run_simulation(&cfg)?.state
            };
            let coeffs = match var.as_str() {
                "phi" => &state.phi,
                "zeta" => &state.zeta,
                "delta" => &state.delta,
                other => return Err(Error::Usage(format!("unknown variable '{other}'"))),
            };
            let dir = out_dir(&cfg)?;
            write_spectrum_csv(&max_spectrum(coeffs), &dir.join("spectrum.csv"))?;
            write_metadata(&dir.join("run.cfg"), &cfg.settings())?;
            if !initial {
                let zero = swe_sdc::swe::PrognosticState::zeros(cfg.rf);
                let norms = compute_error_norms(&state, &zero, &plan)?;
                for v in norms {
                    println!("{}: max {:.6e}, rms {:.6e}", v.var, v.linf, v.l2);
                }
            }
        }
        Command::Speedup {
            common,
            study: args,
        } => {
            let mut ml = common.config()?;
            ml.scheme = Scheme::Mlsdc;
            ml.validate()?;
            let sdc = RunConfig {
                scheme: Scheme::Sdc,
                iterations: 2 * ml.iterations,
                ..ml.clone()
            };
            let min = args.dts.iter().copied().fold(f64::INFINITY, f64::min);
            let reference = reference_solution(&ml, args.dt_ref.unwrap_or(min / 4.0))?;
            let a = convergence_study(&sdc, &args.dts, &reference)?;
            let b = convergence_study(&ml, &args.dts, &reference)?;
            print_study(&a, &args.var);
            print_study(&b, &args.var);
            let mut cost = run_simulation(&ml.with_dt(args.dts[0]))?.cost;
            cost.observed_speedup =
                observed_speedup(&a, &b, &args.var, Norm::L2).unwrap_or(f64::NAN);
            println!(
                "theoretical speedup {:.3}, observed {:.3}",
                cost.theoretical_speedup, cost.observed_speedup
            );
            let dir = out_dir(&ml)?;
            let mut reports = a.reports();
            reports.extend(b.reports());
            write_error_csv(&reports, &dir.join("errors.csv"))?;
            write_cost_csv(&cost, &dir.join("cost.csv"))?;
            write_metadata(&dir.join("run.cfg"), &ml.settings())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
