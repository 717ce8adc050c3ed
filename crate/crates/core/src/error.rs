use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the solver and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// Caller supplied inconsistent arguments (mismatched sizes, bad counts, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// An iterative root search did not reach its tolerance.
    #[error("root search did not converge: {0}")]
    Convergence(String),

    /// A direct solve hit a zero pivot or a non-positive determinant.
    #[error("singular system: {0}")]
    Singular(String),

    /// A run produced NaN or Inf values.
    #[error("numerical instability detected at step {step} (t = {time} s)")]
    Instability { step: usize, time: f64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Parse { .. } => 2,
            Error::Instability { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
