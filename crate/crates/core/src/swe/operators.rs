//! Split right-hand sides of the vorticity-divergence shallow-water equations.
//!
//! ```text
//! d/dt [Phi', zeta, delta] = L_G + L_F + N
//! L_G = [ -Phi_bar delta + nu lap Phi',  nu lap zeta,  -lap Phi' + nu lap delta ]
//! L_F = [ 0,  -f delta - V.grad f,  f zeta + k.(grad f x V) ]
//! N   = [ -div(Phi' V),  -div(zeta V),  k.curl(zeta V) - lap(V.V / 2) ]
//! ```
//!
//! `L_G` is diagonal in spectral space and is the implicit part `F_I`; the
//! explicit part `F_E = L_F + N` is evaluated pseudo-spectrally on the
//! Gaussian grid. Since `f = 2 Omega sin(phi)` varies only in latitude,
//! `V.grad f = 2 Omega V / a` and `k.(grad f x V) = -2 Omega U / a` in terms of
//! the cos-weighted velocity `(U, V)`.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use super::implicit::ImplicitSolveContext;
use super::state::{ModelParams, PrognosticState};
use crate::error::Result;
use crate::sdc::ImexProblem;
use crate::sht::{SpectralCoeffs, TransformPlan};

/// Which explicit terms are active. `Full` is the physical model; the others
/// isolate the linear dynamics for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExplicitTerms {
    #[default]
    Full,
    /// `L_F` only (no nonlinear terms).
    CoriolisOnly,
    /// `F_E = 0`.
    None,
}

/// Coriolis parameter per Gaussian latitude.
#[derive(Debug, Clone, PartialEq)]
pub struct CoriolisField {
    /// `f_j = 2 Omega mu_j` (1/s).
    pub f: Vec<f64>,
    /// Northward derivative per unit arc length `2 Omega cos(phi_j) / a` (1/(m s)).
    pub grad_f: Vec<f64>,
}

impl CoriolisField {
    pub fn new(plan: &TransformPlan, params: &ModelParams) -> Self {
        let grid = plan.grid();
        let f = grid.mu.iter().map(|mu| 2.0 * params.omega * mu).collect();
        let grad_f = (0..grid.nlat())
            .map(|j| 2.0 * params.omega * grid.cos_phi(j) / params.radius)
            .collect();
        Self { f, grad_f }
    }
}

/// Velocity diagnosed from vorticity and divergence.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticVelocities {
    /// Eastward velocity on the grid (m/s).
    pub u: Vec<f64>,
    /// Northward velocity on the grid (m/s).
    pub v: Vec<f64>,
    /// Stream function (m^2/s).
    pub psi: SpectralCoeffs,
    /// Velocity potential (m^2/s).
    pub chi: SpectralCoeffs,
}

/// Evaluation and solve counts, used to check the cost model.
#[derive(Debug, Default)]
pub struct EvalCounters {
    solves: AtomicU64,
    implicit_evals: AtomicU64,
    explicit_evals: AtomicU64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CounterSnapshot {
    pub solves: u64,
    pub implicit_evals: u64,
    pub explicit_evals: u64,
}

impl EvalCounters {
    pub fn snapshot(&self) -> CounterSnapshot {
        CounterSnapshot {
            solves: self.solves.load(Ordering::Relaxed),
            implicit_evals: self.implicit_evals.load(Ordering::Relaxed),
            explicit_evals: self.explicit_evals.load(Ordering::Relaxed),
        }
    }

    pub fn reset(&self) {
        self.solves.store(0, Ordering::Relaxed);
        self.implicit_evals.store(0, Ordering::Relaxed);
        self.explicit_evals.store(0, Ordering::Relaxed);
    }

    pub(crate) fn add_solve(&self) {
        self.solves.fetch_add(1, Ordering::Relaxed);
    }

    pub(crate) fn add_implicit(&self) {
        self.implicit_evals.fetch_add(1, Ordering::Relaxed);
    }

    pub(crate) fn add_explicit(&self) {
        self.explicit_evals.fetch_add(1, Ordering::Relaxed);
    }
}

/// Shallow-water model at one spatial resolution.
#[derive(Debug)]
pub struct ShallowWater {
    plan: Arc<TransformPlan>,
    params: ModelParams,
    coriolis: CoriolisField,
    explicit: ExplicitTerms,
    pub(crate) counters: EvalCounters,
}

/// Grid fields shared by the explicit terms.
struct GridFields {
    u_cos: Vec<f64>,
    v_cos: Vec<f64>,
    zeta: Vec<f64>,
}

impl ShallowWater {
    pub fn new(plan: Arc<TransformPlan>, params: ModelParams) -> Result<Self> {
        params.validate()?;
        let coriolis = CoriolisField::new(&plan, &params);
        Ok(Self {
            plan,
            params,
            coriolis,
            explicit: ExplicitTerms::Full,
            counters: EvalCounters::default(),
        })
    }

    pub fn with_explicit_terms(mut self, explicit: ExplicitTerms) -> Self {
        self.explicit = explicit;
        self
    }

    pub fn plan(&self) -> &Arc<TransformPlan> {
        &self.plan
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn coriolis(&self) -> &CoriolisField {
        &self.coriolis
    }

    pub fn explicit_terms(&self) -> ExplicitTerms {
        self.explicit
    }

    pub fn truncation(&self) -> usize {
        self.plan.truncation()
    }

    pub fn counters(&self) -> CounterSnapshot {
        self.counters.snapshot()
    }

    pub fn reset_counters(&self) {
        self.counters.reset();
    }

    /// Stream function, velocity potential and grid velocities from `(zeta, delta)`.
    pub fn helmholtz_velocities(&self, state: &PrognosticState) -> Result<DiagnosticVelocities> {
        let a = self.params.radius;
        let psi = state.zeta.inv_laplacian(a);
        let chi = state.delta.inv_laplacian(a);
        let (mut u, mut v) = self.plan.velocity_to_grid(&psi, &chi, a)?;
        let grid = self.plan.grid();
        for j in 0..grid.nlat() {
            let inv_cos = 1.0 / grid.cos_phi(j);
            let row = j * grid.nlon..(j + 1) * grid.nlon;
            u[row.clone()].iter_mut().for_each(|x| *x *= inv_cos);
            v[row].iter_mut().for_each(|x| *x *= inv_cos);
        }
        Ok(DiagnosticVelocities { u, v, psi, chi })
    }

    fn cos_velocity(&self, state: &PrognosticState) -> Result<(Vec<f64>, Vec<f64>)> {
        let a = self.params.radius;
        self.plan.velocity_to_grid(
            &state.zeta.inv_laplacian(a),
            &state.delta.inv_laplacian(a),
            a,
        )
    }

    /// Gravity-wave and diffusion terms; diagonal per spectral mode.
    pub fn eval_l_g(&self, state: &PrognosticState) -> PrognosticState {
        let a = self.params.radius;
        let nu = self.params.nu;
        let phi_bar = self.params.phi_bar();
        let lap_phi = state.phi.laplacian(a);
        let mut phi = lap_phi.clone();
        phi.scale(nu);
        phi.axpy(-phi_bar, &state.delta);
        let mut zeta = state.zeta.laplacian(a);
        zeta.scale(nu);
        let mut delta = state.delta.laplacian(a);
        delta.scale(nu);
        delta.axpy(-1.0, &lap_phi);
        PrognosticState { phi, zeta, delta }
    }

    /// Coriolis terms.
    pub fn eval_l_f(&self, state: &PrognosticState) -> Result<PrognosticState> {
        let (u_cos, v_cos) = self.cos_velocity(state)?;
        let zeta = self.plan.spectral_to_grid(&state.zeta)?;
        let delta = self.plan.spectral_to_grid(&state.delta)?;
        let (dz, dd) = self.coriolis_tendency(&u_cos, &v_cos, &zeta, &delta)?;
        Ok(PrognosticState {
            phi: SpectralCoeffs::zeros(self.truncation()),
            zeta: dz,
            delta: dd,
        })
    }

    fn coriolis_tendency(
        &self,
        u_cos: &[f64],
        v_cos: &[f64],
        zeta: &[f64],
        delta: &[f64],
    ) -> Result<(SpectralCoeffs, SpectralCoeffs)> {
        let grid = self.plan.grid();
        let nlon = grid.nlon;
        // grad_f / cos(phi) = 2 Omega / a turns the cos-weighted (U, V) into (u, v) grad f.
        let two_omega_over_a = 2.0 * self.params.omega / self.params.radius;
        let mut gz = vec![0.0; grid.len()];
        let mut gd = vec![0.0; grid.len()];
        for j in 0..grid.nlat() {
            let f = self.coriolis.f[j];
            for k in j * nlon..(j + 1) * nlon {
                gz[k] = -f * delta[k] - two_omega_over_a * v_cos[k];
                gd[k] = f * zeta[k] - two_omega_over_a * u_cos[k];
            }
        }
        Ok((
            self.plan.grid_to_spectral(&gz)?,
            self.plan.grid_to_spectral(&gd)?,
        ))
    }

    /// Nonlinear advection and kinetic-energy terms.
    pub fn eval_n(&self, state: &PrognosticState) -> Result<PrognosticState> {
        let (u_cos, v_cos) = self.cos_velocity(state)?;
        let zeta = self.plan.spectral_to_grid(&state.zeta)?;
        let phi = self.plan.spectral_to_grid(&state.phi)?;
        self.nonlinear_tendency(&GridFields { u_cos, v_cos, zeta }, &phi)
    }

    fn nonlinear_tendency(&self, g: &GridFields, phi: &[f64]) -> Result<PrognosticState> {
        let a = self.params.radius;
        let grid = self.plan.grid();
        let nlon = grid.nlon;
        let n = grid.len();
        let mut phi_u = vec![0.0; n];
        let mut phi_v = vec![0.0; n];
        let mut zeta_u = vec![0.0; n];
        let mut zeta_v = vec![0.0; n];
        let mut kinetic = vec![0.0; n];
        for j in 0..grid.nlat() {
            let mu = grid.mu[j];
            let inv = 0.5 / (1.0 - mu * mu);
            for k in j * nlon..(j + 1) * nlon {
                let (uc, vc) = (g.u_cos[k], g.v_cos[k]);
                phi_u[k] = phi[k] * uc;
                phi_v[k] = phi[k] * vc;
                zeta_u[k] = g.zeta[k] * uc;
                zeta_v[k] = g.zeta[k] * vc;
                kinetic[k] = (uc * uc + vc * vc) * inv;
            }
        }
        let mut dphi = self.plan.divergence_to_spectral(&phi_u, &phi_v, a)?;
        dphi.scale(-1.0);
        let mut dzeta = self.plan.divergence_to_spectral(&zeta_u, &zeta_v, a)?;
        dzeta.scale(-1.0);
        let mut ddelta = self.plan.curl_to_spectral(&zeta_u, &zeta_v, a)?;
        ddelta.axpy(-1.0, &self.plan.grid_to_spectral(&kinetic)?.laplacian(a));
        Ok(PrognosticState {
            phi: dphi,
            zeta: dzeta,
            delta: ddelta,
        })
    }

    /// Implicit right-hand side `F_I = L_G`.
    pub fn eval_f_i(&self, state: &PrognosticState) -> PrognosticState {
        self.eval_l_g(state)
    }

    /// Explicit right-hand side `F_E = L_F + N`, sharing the grid fields of both terms.
    pub fn eval_f_e(&self, state: &PrognosticState) -> Result<PrognosticState> {
        let big_r = self.truncation();
        if self.explicit == ExplicitTerms::None {
            return Ok(PrognosticState::zeros(big_r));
        }
        let (u_cos, v_cos) = self.cos_velocity(state)?;
        let zeta = self.plan.spectral_to_grid(&state.zeta)?;
        let delta = self.plan.spectral_to_grid(&state.delta)?;
        let (cz, cd) = self.coriolis_tendency(&u_cos, &v_cos, &zeta, &delta)?;
        if self.explicit == ExplicitTerms::CoriolisOnly {
            return Ok(PrognosticState {
                phi: SpectralCoeffs::zeros(big_r),
                zeta: cz,
                delta: cd,
            });
        }
        let phi = self.plan.spectral_to_grid(&state.phi)?;
        let mut out = self.nonlinear_tendency(&GridFields { u_cos, v_cos, zeta }, &phi)?;
        out.zeta.axpy(1.0, &cz);
        out.delta.axpy(1.0, &cd);
        Ok(out)
    }
}

impl ImexProblem for ShallowWater {
    type State = PrognosticState;

    fn f_implicit(&self, x: &PrognosticState) -> Result<PrognosticState> {
        self.counters.add_implicit();
        Ok(self.eval_f_i(x))
    }

    fn f_explicit(&self, x: &PrognosticState) -> Result<PrognosticState> {
        self.counters.add_explicit();
        self.eval_f_e(x)
    }

    fn solve_implicit(&self, beta: f64, rhs: &PrognosticState) -> Result<PrognosticState> {
        self.counters.add_solve();
        ImplicitSolveContext::new(&self.params, rhs.truncation(), beta)?.solve(rhs)
    }
}
