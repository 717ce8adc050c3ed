//! Two-stage IMEX Runge-Kutta baseline: trapezoidal rule for `F_I`, Heun for `F_E`.
//!
//! ```text
//! Y1 = theta
//! Y2 - dt/2 F_I(Y2) = theta + dt F_E(Y1) + dt/2 F_I(Y1)
//! theta_next = theta + dt/2 [F_E(Y1) + F_E(Y2)] + dt/2 [F_I(Y1) + F_I(Y2)]
//! ```
//!
//! Both tableaux share the abscissae `c = (0, 1)`, so the pair is second order.
//! For `F_E = 0` the update reduces to `Y2` and the stability function is
//! `(1 + z/2) / (1 - z/2)`.

use crate::error::Result;
use crate::sdc::{ImexProblem, Vector};

pub fn irk2_timestep<P: ImexProblem>(problem: &P, theta: &P::State, dt: f64) -> Result<P::State> {
    let fi1 = problem.f_implicit(theta)?;
    let fe1 = problem.f_explicit(theta)?;
    let mut rhs = theta.clone();
    rhs.axpy(dt, &fe1);
    rhs.axpy(0.5 * dt, &fi1);
    let y2 = problem.solve_implicit(0.5 * dt, &rhs)?;
    let fi2 = problem.f_implicit(&y2)?;
    let fe2 = problem.f_explicit(&y2)?;
    let mut out = theta.clone();
    for f in [&fe1, &fe2, &fi1, &fi2] {
        out.axpy(0.5 * dt, f);
    }
    Ok(out)
}
