//! IMEX SDC sweep, collocation residual and single-level time step.
//!
//! One sweep updates node `m+1` from
//!
//! ```text
//! Theta^{m+1} - dt qI_{m+1,m+1} F_I(Theta^{m+1}) =
//!     Theta^0
//!   + dt sum_{j<=m}   qE_{m+1,j} [F_E(Theta^j_new) - F_E(Theta^j_old)]
//!   + dt sum_{1<=j<=m} qI_{m+1,j} [F_I(Theta^j_new) - F_I(Theta^j_old)]
//!   - dt qI_{m+1,m+1} F_I(Theta^{m+1}_old)
//!   + dt sum_j q_{m+1,j} [F_I + F_E](Theta^j_old)
//!   + tau^{m+1}
//! ```
//!
//! where `tau` is the coarse-level FAS correction (absent on the finest level).

use super::tables::QuadratureTables;
use crate::error::{Error, Result};

/// Linear-space operations the integrators need.
pub trait Vector: Clone {
    /// `self += alpha * x`.
    fn axpy(&mut self, alpha: f64, x: &Self);
    fn scale(&mut self, alpha: f64);
    fn norm_inf(&self) -> f64;

    fn zeroed(&self) -> Self {
        let mut z = self.clone();
        z.scale(0.0);
        z
    }
}

impl Vector for f64 {
    fn axpy(&mut self, alpha: f64, x: &Self) {
        *self += alpha * x;
    }

    fn scale(&mut self, alpha: f64) {
        *self *= alpha;
    }

    fn norm_inf(&self) -> f64 {
        self.abs()
    }
}

impl Vector for num_complex::Complex64 {
    fn axpy(&mut self, alpha: f64, x: &Self) {
        *self += x * alpha;
    }

    fn scale(&mut self, alpha: f64) {
        *self *= alpha;
    }

    fn norm_inf(&self) -> f64 {
        self.norm()
    }
}

impl Vector for crate::swe::PrognosticState {
    fn axpy(&mut self, alpha: f64, x: &Self) {
        crate::swe::PrognosticState::axpy(self, alpha, x);
    }

    fn scale(&mut self, alpha: f64) {
        crate::swe::PrognosticState::scale(self, alpha);
    }

    fn norm_inf(&self) -> f64 {
        crate::swe::PrognosticState::norm_inf(self)
    }
}

/// `d theta/dt = F_I(theta) + F_E(theta)` with a cheap solver for `F_I`.
pub trait ImexProblem {
    type State: Vector;

    fn f_implicit(&self, x: &Self::State) -> Result<Self::State>;
    fn f_explicit(&self, x: &Self::State) -> Result<Self::State>;
    /// Solves `x - beta F_I(x) = rhs`.
    fn solve_implicit(&self, beta: f64, rhs: &Self::State) -> Result<Self::State>;
}

/// Node states and cached tendencies of one time step.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepState<S> {
    pub theta: Vec<S>,
    pub f_i: Vec<S>,
    pub f_e: Vec<S>,
    /// Sweeps applied since initialization.
    pub k: usize,
}

impl<S: Vector> SweepState<S> {
    pub fn node_count(&self) -> usize {
        self.theta.len()
    }

    /// State at the last node.
    pub fn end_state(&self) -> &S {
        self.theta.last().expect("at least two nodes")
    }
}

/// Copies `theta0` to every node and evaluates both tendencies once.
pub fn initialize_nodes<P: ImexProblem>(
    problem: &P,
    theta0: &P::State,
    node_count: usize,
) -> Result<SweepState<P::State>> {
    let fi = problem.f_implicit(theta0)?;
    let fe = problem.f_explicit(theta0)?;
    Ok(SweepState {
        theta: vec![theta0.clone(); node_count],
        f_i: vec![fi; node_count],
        f_e: vec![fe; node_count],
        k: 0,
    })
}

/// `dt sum_j q[m][j] (F_I + F_E)_j` for every node `m`.
pub fn node_integrals<S: Vector>(q: &[Vec<f64>], f_i: &[S], f_e: &[S], dt: f64) -> Vec<S> {
    q.iter()
        .map(|row| {
            let mut acc = f_i[0].zeroed();
            for (j, &w) in row.iter().enumerate() {
                if w != 0.0 {
                    acc.axpy(dt * w, &f_i[j]);
                    acc.axpy(dt * w, &f_e[j]);
                }
            }
            acc
        })
        .collect()
}

fn check_shape<S>(s: &SweepState<S>, tables: &QuadratureTables) -> Result<()> {
    let n = tables.node_count();
    if s.theta.len() != n || s.f_i.len() != n || s.f_e.len() != n {
        return Err(Error::usage(format!(
            "sweep state has {} nodes, tables expect {n}",
            s.theta.len()
        )));
    }
    Ok(())
}

/// One IMEX SDC sweep. `tau`, when given, is added to every node update.
pub fn sdc_sweep<P: ImexProblem>(
    problem: &P,
    s: &mut SweepState<P::State>,
    tables: &QuadratureTables,
    dt: f64,
    tau: Option<&[P::State]>,
) -> Result<()> {
    check_shape(s, tables)?;
    let n = tables.node_count();
    if let Some(t) = tau {
        if t.len() != n {
            return Err(Error::usage(format!(
                "tau has {} nodes, expected {n}",
                t.len()
            )));
        }
    }
    let integrals = node_integrals(&tables.q, &s.f_i, &s.f_e, dt);
    let old_i = s.f_i.clone();
    let old_e = s.f_e.clone();
    for m in 0..n - 1 {
        let next = m + 1;
        let qi = &tables.q_delta_i[next];
        let qe = &tables.q_delta_e[next];
        let mut rhs = s.theta[0].clone();
        rhs.axpy(1.0, &integrals[next]);
        for j in 0..=m {
            if qe[j] != 0.0 {
                rhs.axpy(dt * qe[j], &s.f_e[j]);
                rhs.axpy(-dt * qe[j], &old_e[j]);
            }
            if j >= 1 && qi[j] != 0.0 {
                rhs.axpy(dt * qi[j], &s.f_i[j]);
                rhs.axpy(-dt * qi[j], &old_i[j]);
            }
        }
        let beta = dt * qi[next];
        rhs.axpy(-beta, &old_i[next]);
        if let Some(t) = tau {
            rhs.axpy(1.0, &t[next]);
        }
        let x = problem.solve_implicit(beta, &rhs)?;
        s.f_i[next] = problem.f_implicit(&x)?;
        s.f_e[next] = problem.f_explicit(&x)?;
        s.theta[next] = x;
    }
    s.k += 1;
    Ok(())
}

/// Per-node `|Theta^0 + dt (Q F)_m - Theta^m|_inf` using the cached tendencies.
pub fn collocation_residual<S: Vector>(
    s: &SweepState<S>,
    tables: &QuadratureTables,
    dt: f64,
) -> Result<Vec<f64>> {
    check_shape(s, tables)?;
    let integrals = node_integrals(&tables.q, &s.f_i, &s.f_e, dt);
    Ok(integrals
        .into_iter()
        .zip(&s.theta)
        .map(|(mut r, theta)| {
            r.axpy(1.0, &s.theta[0]);
            r.axpy(-1.0, theta);
            r.norm_inf()
        })
        .collect())
}

/// Initialize, apply exactly `sweeps` sweeps and return the last-node state.
pub fn sdc_timestep<P: ImexProblem>(
    problem: &P,
    tables: &QuadratureTables,
    theta_n: &P::State,
    dt: f64,
    sweeps: usize,
) -> Result<P::State> {
    if sweeps == 0 {
        return Err(Error::usage("SDC needs at least one sweep"));
    }
    let mut s = initialize_nodes(problem, theta_n, tables.node_count())?;
    for _ in 0..sweeps {
        sdc_sweep(problem, &mut s, tables, dt, None)?;
    }
    Ok(s.theta.pop().expect("at least two nodes"))
}
