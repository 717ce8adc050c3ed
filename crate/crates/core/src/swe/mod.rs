//! Shallow-water model in vorticity-divergence form.

mod implicit;
mod operators;
mod state;

pub use implicit::ImplicitSolveContext;
pub use operators::{
    CoriolisField, CounterSnapshot, DiagnosticVelocities, EvalCounters, ExplicitTerms, ShallowWater,
};
pub use state::{ModelParams, PrognosticState};

#[cfg(test)]
pub(crate) use operators::test_support;
