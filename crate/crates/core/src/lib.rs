//! Spectral shallow-water solver on the rotating sphere with IMEX spectral
//! deferred correction (SDC) and two-level multi-level SDC (MLSDC) time stepping.

// Index loops mirror the quadrature and recurrence formulas; `!(x > 0.0)`
// style checks are there to reject NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod harness;
pub mod sdc;
pub mod sht;
pub mod swe;
pub mod testcases;

pub use error::{Error, Result};
