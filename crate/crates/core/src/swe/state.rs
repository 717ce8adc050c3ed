use crate::error::{Error, Result};
use crate::sht::SpectralCoeffs;

/// Physical constants of one shallow-water configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Sphere radius `a` (m).
    pub radius: f64,
    /// Rotation rate `Omega` (1/s).
    pub omega: f64,
    /// Gravitational acceleration `g` (m/s^2).
    pub gravity: f64,
    /// Diffusion coefficient `nu` (m^2/s).
    pub nu: f64,
    /// Mean fluid depth `h_bar` (m).
    pub h_bar: f64,
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.gravity > 0.0 && self.h_bar > 0.0) {
            return Err(Error::usage(
                "radius, gravity and mean depth must be positive",
            ));
        }
        if !(self.nu >= 0.0) || !self.omega.is_finite() {
            return Err(Error::usage(
                "diffusion must be non-negative and rotation finite",
            ));
        }
        Ok(())
    }

    /// Mean geopotential `g * h_bar`.
    pub fn phi_bar(&self) -> f64 {
        self.gravity * self.h_bar
    }
}

/// Spectral state `(Phi', zeta, delta)` at a common truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct PrognosticState {
    /// Geopotential perturbation `Phi - Phi_bar` (m^2/s^2).
    pub phi: SpectralCoeffs,
    /// Relative vorticity (1/s).
    pub zeta: SpectralCoeffs,
    /// Divergence (1/s).
    pub delta: SpectralCoeffs,
}

impl PrognosticState {
    pub fn zeros(truncation: usize) -> Self {
        Self {
            phi: SpectralCoeffs::zeros(truncation),
            zeta: SpectralCoeffs::zeros(truncation),
            delta: SpectralCoeffs::zeros(truncation),
        }
    }

    pub fn new(phi: SpectralCoeffs, zeta: SpectralCoeffs, delta: SpectralCoeffs) -> Result<Self> {
        let r = phi.truncation();
        if zeta.truncation() != r || delta.truncation() != r {
            return Err(Error::usage("prognostic fields must share one truncation"));
        }
        Ok(Self { phi, zeta, delta })
    }

    pub fn truncation(&self) -> usize {
        self.phi.truncation()
    }

    /// Number of complex coefficients stored over the three fields (`r >= 0` only).
    pub fn stored_len(&self) -> usize {
        3 * self.phi.len()
    }

    pub fn fields(&self) -> [&SpectralCoeffs; 3] {
        [&self.phi, &self.zeta, &self.delta]
    }

    pub fn fields_mut(&mut self) -> [&mut SpectralCoeffs; 3] {
        [&mut self.phi, &mut self.zeta, &mut self.delta]
    }

    pub fn map(&self, f: impl Fn(&SpectralCoeffs) -> SpectralCoeffs) -> Self {
        Self {
            phi: f(&self.phi),
            zeta: f(&self.zeta),
            delta: f(&self.delta),
        }
    }

    pub fn try_map(&self, f: impl Fn(&SpectralCoeffs) -> Result<SpectralCoeffs>) -> Result<Self> {
        Ok(Self {
            phi: f(&self.phi)?,
            zeta: f(&self.zeta)?,
            delta: f(&self.delta)?,
        })
    }

    pub fn truncate(&self, coarse: usize) -> Result<Self> {
        self.try_map(|x| x.truncate(coarse))
    }

    pub fn pad(&self, fine: usize) -> Result<Self> {
        self.try_map(|x| x.pad(fine))
    }

    pub fn axpy(&mut self, alpha: f64, x: &Self) {
        for (a, b) in self.fields_mut().into_iter().zip(x.fields()) {
            a.axpy(alpha, b);
        }
    }

    pub fn scale(&mut self, alpha: f64) {
        for a in self.fields_mut() {
            a.scale(alpha);
        }
    }

    /// Max modulus over all stored coefficients of all three fields.
    pub fn norm_inf(&self) -> f64 {
        self.fields()
            .iter()
            .map(|x| x.norm_inf())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.fields().iter().all(|x| x.is_finite())
    }
}

impl std::ops::Add<&PrognosticState> for &PrognosticState {
    type Output = PrognosticState;

    fn add(self, rhs: &PrognosticState) -> PrognosticState {
        let mut out = self.clone();
        out.axpy(1.0, rhs);
        out
    }
}

impl std::ops::Sub<&PrognosticState> for &PrognosticState {
    type Output = PrognosticState;

    fn sub(self, rhs: &PrognosticState) -> PrognosticState {
        let mut out = self.clone();
        out.axpy(-1.0, rhs);
        out
    }
}
