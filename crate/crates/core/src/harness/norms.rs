use crate::error::{Error, Result};
use crate::sht::{SpectralCoeffs, TransformPlan};
use crate::swe::PrognosticState;

pub const VARIABLES: [&str; 3] = ["phi", "zeta", "delta"];

/// Grid-space error of one prognostic variable.
#[derive(Debug, Clone, PartialEq)]
pub struct VarError {
    pub var: String,
    pub linf: f64,
    pub l2: f64,
}

/// Which error norm a study reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    Linf,
    L2,
}

impl VarError {
    pub fn get(&self, norm: Norm) -> f64 {
        match norm {
            Norm::Linf => self.linf,
            Norm::L2 => self.l2,
        }
    }
}

/// Errors of one run against a reference.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub dt: f64,
    pub scheme: String,
    pub wallclock_s: f64,
    pub vars: Vec<VarError>,
}

impl ErrorReport {
    pub fn var(&self, name: &str) -> Option<&VarError> {
        self.vars.iter().find(|v| v.var == name)
    }
}

/// Per-variable `L_inf` (max over grid points) and area-weighted `L_2` errors.
pub fn compute_error_norms(
    state: &PrognosticState,
    reference: &PrognosticState,
    plan: &TransformPlan,
) -> Result<Vec<VarError>> {
    if state.truncation() != reference.truncation() || state.truncation() != plan.truncation() {
        return Err(Error::usage(format!(
            "truncation mismatch: state {}, reference {}, plan {}",
            state.truncation(),
            reference.truncation(),
            plan.truncation()
        )));
    }
    let diff = state - reference;
    let grid = plan.grid();
    VARIABLES
        .iter()
        .zip(diff.fields())
        .map(|(name, d)| {
            let g = plan.spectral_to_grid(d)?;
            let linf = g.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            let sq: Vec<f64> = g.iter().map(|x| x * x).collect();
            let l2 = grid.mean(&sq).max(0.0).sqrt();
            Ok(VarError {
                var: name.to_string(),
                linf,
                l2,
            })
        })
        .collect()
}

/// Max-spectrum: `max_r |xi^r_{n0}|` per total wavenumber `n0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub values: Vec<f64>,
}

pub fn max_spectrum(coeffs: &SpectralCoeffs) -> SpectrumReport {
    SpectrumReport {
        values: coeffs.max_spectrum(),
    }
}

impl SpectrumReport {
    /// Largest entry with `n0` strictly above `truncation`: the magnitude of
    /// the modes a level truncated at `truncation` cannot represent.
    pub fn truncated_band_max(&self, truncation: usize) -> f64 {
        self.values
            .iter()
            .skip(truncation + 1)
            .fold(0.0, |m, &x| m.max(x))
    }
}
