//! Spectral deferred corrections on Gauss-Lobatto nodes, single and two-level.

pub mod mlsdc;
mod sweep;
mod tables;

pub use sweep::{
    collocation_residual, initialize_nodes, node_integrals, sdc_sweep, sdc_timestep, ImexProblem,
    SweepState, Vector,
};
pub use tables::{
    build_q, build_qdelta_e, build_qdelta_i, lobatto_nodes, CollocationNodes, Matrix,
    QuadratureTables,
};
