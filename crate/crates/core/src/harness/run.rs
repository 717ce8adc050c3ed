use std::sync::Arc;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::sdc::mlsdc::{LevelSpec, Mlsdc, SpectralTransfer};
use crate::sdc::{sdc_timestep, QuadratureTables};
use crate::sht::TransformPlan;
use crate::swe::{CounterSnapshot, PrognosticState, ShallowWater};
use crate::testcases::EARTH;

use super::config::{RunConfig, Scheme};
use super::cost::{predicted_counts, theoretical_speedup_for, CostReport};
use super::irk2::irk2_timestep;

/// A configured time stepper on the fine truncation.
#[derive(Debug)]
pub enum Integrator {
    Sdc {
        problem: ShallowWater,
        tables: QuadratureTables,
        sweeps: usize,
    },
    Mlsdc {
        solver: Box<Mlsdc<ShallowWater, SpectralTransfer>>,
        iterations: usize,
    },
    Irk2 {
        problem: ShallowWater,
    },
}

impl Integrator {
    /// `plan` must be the fine-level plan for `cfg.rf`.
    pub fn new(cfg: &RunConfig, plan: Arc<TransformPlan>) -> Result<Self> {
        cfg.validate()?;
        if plan.truncation() != cfg.rf {
            return Err(Error::usage(format!(
                "plan truncation {} differs from rf = {}",
                plan.truncation(),
                cfg.rf
            )));
        }
        let params = cfg.testcase.params(&EARTH);
        let fine = ShallowWater::new(plan, params)?;
        Ok(match cfg.scheme {
            Scheme::Irk2 => Self::Irk2 { problem: fine },
            Scheme::Sdc => Self::Sdc {
                problem: fine,
                tables: QuadratureTables::new(cfg.nodes_fine)?,
                sweeps: cfg.iterations,
            },
            Scheme::Mlsdc => {
                let rc = cfg.coarse_truncation();
                let coarse = ShallowWater::new(Arc::new(TransformPlan::new(rc)?), params)?;
                let solver = Mlsdc::new(
                    LevelSpec {
                        problem: fine,
                        tables: QuadratureTables::new(cfg.nodes_fine)?,
                    },
                    LevelSpec {
                        problem: coarse,
                        tables: QuadratureTables::new(cfg.nodes_coarse)?,
                    },
                    SpectralTransfer::new(cfg.rf, rc)?,
                )?;
                Self::Mlsdc {
                    solver: Box::new(solver),
                    iterations: cfg.iterations,
                }
            }
        })
    }

    pub fn step(&self, theta: &PrognosticState, dt: f64) -> Result<PrognosticState> {
        match self {
            Self::Sdc {
                problem,
                tables,
                sweeps,
            } => sdc_timestep(problem, tables, theta, dt, *sweeps),
            Self::Mlsdc { solver, iterations } => solver.timestep(theta, dt, *iterations),
            Self::Irk2 { problem } => irk2_timestep(problem, theta, dt),
        }
    }

    /// Fine and coarse counters (coarse is zero for single-level schemes).
    pub fn counters(&self) -> (CounterSnapshot, CounterSnapshot) {
        match self {
            Self::Sdc { problem, .. } | Self::Irk2 { problem } => {
                (problem.counters(), CounterSnapshot::default())
            }
            Self::Mlsdc { solver, .. } => (
                solver.fine.problem.counters(),
                solver.coarse.problem.counters(),
            ),
        }
    }

    pub fn reset_counters(&self) {
        match self {
            Self::Sdc { problem, .. } | Self::Irk2 { problem } => problem.reset_counters(),
            Self::Mlsdc { solver, .. } => {
                solver.fine.problem.reset_counters();
                solver.coarse.problem.reset_counters();
            }
        }
    }
}

/// Result of one run.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub state: PrognosticState,
    pub cost: CostReport,
    /// Seconds spent in the stepping loop only.
    pub wallclock_s: f64,
    pub steps: usize,
}

/// Builds the plan and initial state for `cfg` and integrates to `t_end`.
pub fn run_simulation(cfg: &RunConfig) -> Result<RunOutput> {
    cfg.validate()?;
    let plan = Arc::new(TransformPlan::new(cfg.rf)?);
    let initial = cfg.testcase.initial_state(&plan, &EARTH)?;
    run_from(cfg, plan, &initial)
}

/// Integrates from a given initial state, so studies can share the setup.
pub fn run_from(
    cfg: &RunConfig,
    plan: Arc<TransformPlan>,
    initial: &PrognosticState,
) -> Result<RunOutput> {
    let steps = cfg.steps()?;
    let integrator = Integrator::new(cfg, plan)?;
    if initial.truncation() != cfg.rf {
        return Err(Error::usage(format!(
            "initial state has R = {}, expected {}",
            initial.truncation(),
            cfg.rf
        )));
    }
    let mut state = initial.clone();
    let start = Instant::now();
    for k in 0..steps {
        state = integrator.step(&state, cfg.dt)?;
        if !state.is_finite() {
            return Err(Error::Instability {
                step: k + 1,
                time: (k + 1) as f64 * cfg.dt,
            });
        }
    }
    let wallclock_s = start.elapsed().as_secs_f64();
    let (fine, coarse) = integrator.counters();
    let (predicted_fine, predicted_coarse) = predicted_counts(cfg, steps as u64)?;
    let cost = CostReport {
        scheme: cfg.label(),
        steps: steps as u64,
        fine: fine.into(),
        coarse: coarse.into(),
        predicted_fine,
        predicted_coarse,
        theoretical_speedup: theoretical_speedup_for(cfg, 2 * cfg.iterations),
        observed_speedup: f64::NAN,
    };
    Ok(RunOutput {
        state,
        cost,
        wallclock_s,
        steps,
    })
}
