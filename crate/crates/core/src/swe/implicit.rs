//! Solves `(I - beta L_G) x = b` mode by mode.
//!
//! With `lambda_s = -s(s+1)/a^2` and `c = 1 - beta nu lambda_s`, each degree
//! decouples into `c zeta = b_zeta` and the 2x2 system
//!
//! ```text
//! c Phi' + beta Phi_bar delta = b_Phi
//! beta lambda Phi' + c delta  = b_delta
//! ```
//!
//! whose determinant `c^2 - beta^2 lambda Phi_bar` is positive for `beta >= 0`.

use super::state::{ModelParams, PrognosticState};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ImplicitSolveContext {
    beta: f64,
    params: ModelParams,
    lambdas: Vec<f64>,
}

impl ImplicitSolveContext {
    pub fn new(params: &ModelParams, truncation: usize, beta: f64) -> Result<Self> {
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::usage(format!(
                "implicit weight must be finite and >= 0, got {beta}"
            )));
        }
        let inv_a2 = 1.0 / (params.radius * params.radius);
        let lambdas = (0..=truncation)
            .map(|s| -((s * (s + 1)) as f64) * inv_a2)
            .collect();
        Ok(Self {
            beta,
            params: *params,
            lambdas,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn solve(&self, rhs: &PrognosticState) -> Result<PrognosticState> {
        let big_r = rhs.truncation();
        if big_r + 1 != self.lambdas.len() {
            return Err(Error::usage(format!(
                "solve context built for R = {}, state has R = {big_r}",
                self.lambdas.len() - 1
            )));
        }
        let beta = self.beta;
        let phi_bar = self.params.phi_bar();
        let nu = self.params.nu;
        let mut out = rhs.clone();
        for r in 0..=big_r {
            for k in 0..=big_r - r {
                let lambda = self.lambdas[r + k];
                let c = 1.0 - beta * nu * lambda;
                let det = c * c - beta * beta * lambda * phi_bar;
                let bp = rhs.phi.block(r)[k];
                let bd = rhs.delta.block(r)[k];
                out.zeta.block_mut(r)[k] /= c;
                out.phi.block_mut(r)[k] = (bp * c - bd * (beta * phi_bar)) / det;
                out.delta.block_mut(r)[k] = (bd * c - bp * (beta * lambda)) / det;
            }
        }
        Ok(out)
    }
}
