//! Two-level multi-level SDC with a full approximation scheme (FAS) correction.
//!
//! One iteration:
//!
//! 1. sweep on the fine level;
//! 2. restrict the fine node states (time injection, then spectral
//!    truncation) and re-evaluate the coarse tendencies there;
//! 3. form `tau_c = dt [R(Q_f F_f) - Q_c F_c(R Theta_f)]` and sweep once on the
//!    coarse level with `tau_c` added to each node update;
//! 4. interpolate the coarse changes of the states and of both tendencies
//!    back to the fine level and add them, without evaluating anything on
//!    the fine level. The fine caches are then only approximately consistent
//!    with the fine states; the next fine sweep uses them as they are.

use super::sweep::{initialize_nodes, node_integrals, sdc_sweep, ImexProblem, SweepState, Vector};
use super::tables::{Matrix, QuadratureTables};
use crate::error::{Error, Result};
use crate::swe::PrognosticState;

/// Spatial restriction and interpolation between the two levels.
pub trait SpaceTransfer<S> {
    fn restrict(&self, fine: &S) -> Result<S>;
    fn interpolate(&self, coarse: &S) -> Result<S>;
}

/// Both levels share one spatial discretization.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityTransfer;

impl<S: Clone> SpaceTransfer<S> for IdentityTransfer {
    fn restrict(&self, fine: &S) -> Result<S> {
        Ok(fine.clone())
    }

    fn interpolate(&self, coarse: &S) -> Result<S> {
        Ok(coarse.clone())
    }
}

/// Spectral truncation to `coarse` and zero padding back to `fine`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectralTransfer {
    pub fine: usize,
    pub coarse: usize,
}

impl SpectralTransfer {
    pub fn new(fine: usize, coarse: usize) -> Result<Self> {
        if coarse > fine {
            return Err(Error::usage(format!(
                "coarse truncation {coarse} exceeds fine {fine}"
            )));
        }
        Ok(Self { fine, coarse })
    }
}

impl SpaceTransfer<PrognosticState> for SpectralTransfer {
    fn restrict(&self, fine: &PrognosticState) -> Result<PrognosticState> {
        if fine.truncation() != self.fine {
            return Err(Error::usage(format!(
                "expected R = {}, got {}",
                self.fine,
                fine.truncation()
            )));
        }
        fine.truncate(self.coarse)
    }

    fn interpolate(&self, coarse: &PrognosticState) -> Result<PrognosticState> {
        if coarse.truncation() != self.coarse {
            return Err(Error::usage(format!(
                "expected R = {}, got {}",
                self.coarse,
                coarse.truncation()
            )));
        }
        coarse.pad(self.fine)
    }
}

/// Time and space transfer operators.
#[derive(Debug, Clone)]
pub struct TransferOps<T> {
    /// `pi_fc[i][j] = L^j_f(t^i_c)`.
    pub pi_fc: Matrix,
    /// `pi_cf[i][j] = L^j_c(t^i_f)`.
    pub pi_cf: Matrix,
    pub space: T,
}

fn combine<S: Vector>(weights: &[f64], xs: &[S]) -> S {
    // Exact selection rows (nested nodes) copy without rounding.
    if let Some(j) = weights.iter().position(|&w| w == 1.0) {
        if weights.iter().enumerate().all(|(k, &w)| k == j || w == 0.0) {
            return xs[j].clone();
        }
    }
    let mut acc = xs[0].zeroed();
    for (w, x) in weights.iter().zip(xs) {
        if *w != 0.0 {
            acc.axpy(*w, x);
        }
    }
    acc
}

/// Snaps Lagrange weights within rounding of 0 or 1 so nested nodes inject exactly.
fn snap(x: f64) -> f64 {
    if x.abs() < 1e-14 {
        0.0
    } else if (x - 1.0).abs() < 1e-14 {
        1.0
    } else {
        x
    }
}

impl<T> TransferOps<T> {
    pub fn new(fine: &QuadratureTables, coarse: &QuadratureTables, space: T) -> Self {
        let (nf, nc) = (&fine.nodes, &coarse.nodes);
        let pi_fc = nc
            .taus()
            .iter()
            .map(|&t| (0..nf.len()).map(|j| snap(nf.lagrange(j, t))).collect())
            .collect();
        let pi_cf = nf
            .taus()
            .iter()
            .map(|&t| (0..nc.len()).map(|j| snap(nc.lagrange(j, t))).collect())
            .collect();
        Self {
            pi_fc,
            pi_cf,
            space,
        }
    }

    /// Time restriction by `pi_fc`, then spatial restriction of every node.
    pub fn restrict_state<S: Vector>(&self, fine: &[S]) -> Result<Vec<S>>
    where
        T: SpaceTransfer<S>,
    {
        if fine.len() != self.pi_fc[0].len() {
            return Err(Error::usage(format!(
                "expected {} fine nodes, got {}",
                self.pi_fc[0].len(),
                fine.len()
            )));
        }
        self.pi_fc
            .iter()
            .map(|row| self.space.restrict(&combine(row, fine)))
            .collect()
    }

    /// Spatial interpolation of every node, then time interpolation by `pi_cf`.
    pub fn interpolate_correction<S: Vector>(&self, coarse: &[S]) -> Result<Vec<S>>
    where
        T: SpaceTransfer<S>,
    {
        if coarse.len() != self.pi_cf[0].len() {
            return Err(Error::usage(format!(
                "expected {} coarse nodes, got {}",
                self.pi_cf[0].len(),
                coarse.len()
            )));
        }
        let padded = coarse
            .iter()
            .map(|x| self.space.interpolate(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.pi_cf.iter().map(|row| combine(row, &padded)).collect())
    }
}

/// One level of the hierarchy: a problem at some resolution and its node tables.
#[derive(Debug)]
pub struct LevelSpec<P> {
    pub problem: P,
    pub tables: QuadratureTables,
}

/// Two-level hierarchy.
#[derive(Debug)]
pub struct Mlsdc<P, T> {
    pub fine: LevelSpec<P>,
    pub coarse: LevelSpec<P>,
    pub transfer: TransferOps<T>,
}

/// FAS correction per coarse node:
/// `tau_c = dt [R(Q_f F_f) - Q_c F_c]` with `F_c` the coarse caches at the restricted states.
pub fn compute_fas<S: Vector, T: SpaceTransfer<S>>(
    transfer: &TransferOps<T>,
    fine_tables: &QuadratureTables,
    coarse_tables: &QuadratureTables,
    fine: &SweepState<S>,
    coarse: &SweepState<S>,
    dt: f64,
) -> Result<Vec<S>> {
    let fine_int = node_integrals(&fine_tables.q, &fine.f_i, &fine.f_e, dt);
    let mut tau = transfer.restrict_state(&fine_int)?;
    let coarse_int = node_integrals(&coarse_tables.q, &coarse.f_i, &coarse.f_e, dt);
    for (t, c) in tau.iter_mut().zip(&coarse_int) {
        t.axpy(-1.0, c);
    }
    Ok(tau)
}

/// One coarse sweep with the FAS term added to every node update.
pub fn coarse_sweep_with_tau<P: ImexProblem>(
    problem: &P,
    s: &mut SweepState<P::State>,
    tables: &QuadratureTables,
    dt: f64,
    tau: &[P::State],
) -> Result<()> {
    sdc_sweep(problem, s, tables, dt, Some(tau))
}

/// Fine and coarse node states for one time step.
pub type LevelStates<S> = (SweepState<S>, SweepState<S>);

impl<P, T> Mlsdc<P, T>
where
    P: ImexProblem,
    T: SpaceTransfer<P::State>,
{
    pub fn new(fine: LevelSpec<P>, coarse: LevelSpec<P>, space: T) -> Result<Self> {
        let (nf, nc) = (fine.tables.node_count(), coarse.tables.node_count());
        if nc > nf {
            return Err(Error::usage(format!(
                "coarse level has more nodes ({nc}) than fine ({nf})"
            )));
        }
        for t in coarse.tables.nodes.taus() {
            if !fine.tables.nodes.taus().contains(t) {
                return Err(Error::usage(
                    "coarse nodes must be a subset of the fine nodes",
                ));
            }
        }
        let transfer = TransferOps::new(&fine.tables, &coarse.tables, space);
        Ok(Self {
            fine,
            coarse,
            transfer,
        })
    }

    /// Fine and coarse sweep states at the start of a step. The coarse first
    /// node holds the restricted initial value, evaluated once; the other
    /// coarse nodes are filled by the first iteration.
    pub fn initialize(&self, theta_n: &P::State) -> Result<LevelStates<P::State>> {
        let fine = initialize_nodes(&self.fine.problem, theta_n, self.fine.tables.node_count())?;
        let theta_c = self.transfer.space.restrict(theta_n)?;
        let coarse = initialize_nodes(
            &self.coarse.problem,
            &theta_c,
            self.coarse.tables.node_count(),
        )?;
        Ok((fine, coarse))
    }

    /// Steps A to D of one iteration.
    pub fn iteration(
        &self,
        fine: &mut SweepState<P::State>,
        coarse: &mut SweepState<P::State>,
        dt: f64,
    ) -> Result<()> {
        let (ft, ct) = (&self.fine.tables, &self.coarse.tables);
        sdc_sweep(&self.fine.problem, fine, ft, dt, None)?;

        let restricted = self.transfer.restrict_state(&fine.theta)?;
        for (m, x) in restricted.into_iter().enumerate().skip(1) {
            coarse.f_i[m] = self.coarse.problem.f_implicit(&x)?;
            coarse.f_e[m] = self.coarse.problem.f_explicit(&x)?;
            coarse.theta[m] = x;
        }
        let saved = coarse.clone();

        let tau = compute_fas(&self.transfer, ft, ct, fine, coarse, dt)?;
        coarse_sweep_with_tau(&self.coarse.problem, coarse, ct, dt, &tau)?;

        let diff = |new: &[P::State], old: &[P::State]| -> Result<Vec<P::State>> {
            let d: Vec<P::State> = new
                .iter()
                .zip(old)
                .map(|(a, b)| {
                    let mut x = a.clone();
                    x.axpy(-1.0, b);
                    x
                })
                .collect();
            self.transfer.interpolate_correction(&d)
        };
        let d_theta = diff(&coarse.theta, &saved.theta)?;
        let d_fi = diff(&coarse.f_i, &saved.f_i)?;
        let d_fe = diff(&coarse.f_e, &saved.f_e)?;
        for m in 1..fine.node_count() {
            fine.theta[m].axpy(1.0, &d_theta[m]);
            fine.f_i[m].axpy(1.0, &d_fi[m]);
            fine.f_e[m].axpy(1.0, &d_fe[m]);
        }
        Ok(())
    }

    /// Initialize and run exactly `iterations` iterations; returns the last fine node.
    pub fn timestep(&self, theta_n: &P::State, dt: f64, iterations: usize) -> Result<P::State> {
        if iterations == 0 {
            return Err(Error::usage("MLSDC needs at least one iteration"));
        }
        let (mut fine, mut coarse) = self.initialize(theta_n)?;
        for _ in 0..iterations {
            self.iteration(&mut fine, &mut coarse, dt)?;
        }
        Ok(fine.theta.pop().expect("at least two nodes"))
    }
}

#[cfg(test)]
mod tests {
    use super::super::sweep::test_problems::{logistic_exact, Dahlquist, Logistic};
    use super::super::sweep::{collocation_residual, sdc_timestep};
    use super::*;
    use num_complex::Complex64;

    fn scalar_mlsdc<P: ImexProblem>(
        fine: P,
        coarse: P,
        nf: usize,
        nc: usize,
    ) -> Mlsdc<P, IdentityTransfer> {
        Mlsdc::new(
            LevelSpec {
                problem: fine,
                tables: QuadratureTables::new(nf).unwrap(),
            },
            LevelSpec {
                problem: coarse,
                tables: QuadratureTables::new(nc).unwrap(),
            },
            IdentityTransfer,
        )
        .unwrap()
    }

    #[test]
    fn time_transfer_matrices() {
        let t5 = QuadratureTables::new(5).unwrap();
        let t3 = QuadratureTables::new(3).unwrap();
        let ops = TransferOps::new(&t5, &t3, IdentityTransfer);
        assert_eq!(
            ops.pi_fc,
            vec![
                vec![1.0, 0.0, 0.0, 0.0, 0.0],
                vec![0.0, 0.0, 1.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0, 0.0, 1.0]
            ]
        );
        for row in ops.pi_cf.iter().chain(&ops.pi_fc) {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        }
        // pi_fc pi_cf = I on coarse nodes.
        for i in 0..3 {
            for j in 0..3 {
                let v: f64 = (0..5).map(|k| ops.pi_fc[i][k] * ops.pi_cf[k][j]).sum();
                assert!((v - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
        let t2 = QuadratureTables::new(2).unwrap();
        let ops = TransferOps::new(&t3, &t2, IdentityTransfer);
        assert_eq!(ops.pi_fc, vec![vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]]);
        assert_eq!(
            ops.pi_cf,
            vec![vec![1.0, 0.0], vec![0.5, 0.5], vec![0.0, 1.0]]
        );
    }

    #[test]
    fn time_interpolation_reproduces_polynomials() {
        let t5 = QuadratureTables::new(5).unwrap();
        let t3 = QuadratureTables::new(3).unwrap();
        let ops = TransferOps::new(&t5, &t3, IdentityTransfer);
        let poly = |t: f64| 1.0 - 2.0 * t + 3.0 * t * t;
        let fine: Vec<f64> = t5.nodes.taus().iter().map(|&t| poly(t)).collect();
        let back = ops
            .interpolate_correction(&ops.restrict_state(&fine).unwrap())
            .unwrap();
        for (a, b) in back.iter().zip(&fine) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!(ops.restrict_state(&[1.0, 2.0]).is_err());
        assert!(ops.interpolate_correction(&[1.0]).is_err());
        assert_eq!(ops.interpolate_correction(&[0.0; 3]).unwrap(), vec![0.0; 5]);
    }

    #[test]
    fn degenerate_hierarchy_equals_doubled_sdc() {
        let li = Complex64::new(-2.0, 3.0);
        let le = Complex64::new(-0.3, 1.0);
        let ml = scalar_mlsdc(Dahlquist::new(li, le), Dahlquist::new(li, le), 3, 3);
        let sdc = Dahlquist::new(li, le);
        let mut a = Complex64::new(1.0, 0.0);
        let mut b = a;
        for _ in 0..10 {
            a = ml.timestep(&a, 0.1, 2).unwrap();
            b = sdc_timestep(&sdc, &ml.fine.tables, &b, 0.1, 4).unwrap();
            assert!((a - b).norm() < 1e-12 * b.norm().max(1.0));
        }
        let ml = scalar_mlsdc(Logistic, Logistic, 5, 5);
        let (mut x, mut y) = (0.6, 0.6);
        for _ in 0..10 {
            x = ml.timestep(&x, 0.3, 3).unwrap();
            y = sdc_timestep(&Logistic, &ml.fine.tables, &y, 0.3, 6).unwrap();
        }
        assert!((x - y).abs() < 1e-12);
    }

    #[test]
    fn identical_levels_give_zero_tau() {
        let ml = scalar_mlsdc(Logistic, Logistic, 3, 3);
        let (mut fine, mut coarse) = ml.initialize(&0.7).unwrap();
        sdc_sweep(&Logistic, &mut fine, &ml.fine.tables, 0.2, None).unwrap();
        for m in 1..3 {
            coarse.theta[m] = fine.theta[m];
            coarse.f_i[m] = fine.f_i[m];
            coarse.f_e[m] = fine.f_e[m];
        }
        let tau = compute_fas(
            &ml.transfer,
            &ml.fine.tables,
            &ml.coarse.tables,
            &fine,
            &coarse,
            0.2,
        )
        .unwrap();
        assert!(tau.iter().all(|t| t.abs() < 1e-15));
    }

    #[test]
    fn fas_identity_on_random_nodes() {
        // A_c(R theta) - tau_c = R A_f(theta) with A(theta) = theta - dt Q F(theta).
        let ml = scalar_mlsdc(Logistic, Logistic, 5, 3);
        let dt = 0.37;
        let theta = vec![0.4, 0.91, -0.2, 0.33, 1.7];
        let eval = |x: &f64| {
            (
                Logistic.f_implicit(x).unwrap(),
                Logistic.f_explicit(x).unwrap(),
            )
        };
        let fine = SweepState {
            theta: theta.clone(),
            f_i: theta.iter().map(|x| eval(x).0).collect(),
            f_e: theta.iter().map(|x| eval(x).1).collect(),
            k: 0,
        };
        let rt = ml.transfer.restrict_state(&theta).unwrap();
        let coarse = SweepState {
            theta: rt.clone(),
            f_i: rt.iter().map(|x| eval(x).0).collect(),
            f_e: rt.iter().map(|x| eval(x).1).collect(),
            k: 0,
        };
        let tau = compute_fas(
            &ml.transfer,
            &ml.fine.tables,
            &ml.coarse.tables,
            &fine,
            &coarse,
            dt,
        )
        .unwrap();
        let a = |s: &SweepState<f64>, q: &Matrix| -> Vec<f64> {
            node_integrals(q, &s.f_i, &s.f_e, dt)
                .iter()
                .zip(&s.theta)
                .map(|(i, t)| t - i)
                .collect()
        };
        let a_f = ml
            .transfer
            .restrict_state(&a(&fine, &ml.fine.tables.q))
            .unwrap();
        let a_c = a(&coarse, &ml.coarse.tables.q);
        for m in 0..3 {
            assert!((a_c[m] - tau[m] - a_f[m]).abs() < 1e-12);
        }
    }

    #[test]
    fn manufactured_fixed_point_of_coarse_sweep() {
        // tau = Theta* - Theta0 - dt Q F(Theta*) makes Theta* stationary.
        let t = QuadratureTables::new(3).unwrap();
        let dt = 0.5;
        let target = [0.3, -0.4, 0.8];
        let fi: Vec<f64> = target.iter().map(|x| -x).collect();
        let fe: Vec<f64> = target.iter().map(|x| -x * x).collect();
        let integ = node_integrals(&t.q, &fi, &fe, dt);
        let tau: Vec<f64> = (0..3).map(|m| target[m] - target[0] - integ[m]).collect();
        let mut s = SweepState {
            theta: target.to_vec(),
            f_i: fi,
            f_e: fe,
            k: 0,
        };
        coarse_sweep_with_tau(&Logistic, &mut s, &t, dt, &tau).unwrap();
        for (a, b) in s.theta.iter().zip(target) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn fine_collocation_solution_is_preserved() {
        let ml = scalar_mlsdc(Logistic, Logistic, 5, 3);
        let dt = 0.25;
        let (mut fine, mut coarse) = ml.initialize(&0.5).unwrap();
        for _ in 0..60 {
            sdc_sweep(&Logistic, &mut fine, &ml.fine.tables, dt, None).unwrap();
        }
        let converged = fine.clone();
        assert!(collocation_residual(&fine, &ml.fine.tables, dt)
            .unwrap()
            .iter()
            .all(|&r| r < 1e-15));
        ml.iteration(&mut fine, &mut coarse, dt).unwrap();
        for (a, b) in fine.theta.iter().zip(&converged.theta) {
            assert!((a - b).abs() < 1e-11);
        }
    }

    #[test]
    fn return_step_leaves_caches_dirty() {
        let ml = scalar_mlsdc(Logistic, Logistic, 5, 3);
        let (mut fine, mut coarse) = ml.initialize(&0.9).unwrap();
        ml.iteration(&mut fine, &mut coarse, 0.8).unwrap();
        let fresh = Logistic.f_explicit(&fine.theta[1]).unwrap();
        assert!((fresh - fine.f_e[1]).abs() > 1e-8);
    }

    #[test]
    fn mlsdc_converges_with_expected_order() {
        let ml = scalar_mlsdc(Logistic, Logistic, 3, 2);
        let y0 = 0.8;
        let errs: Vec<f64> = [4usize, 8, 16]
            .iter()
            .map(|&n| {
                let dt = 1.0 / n as f64;
                let mut y = y0;
                for _ in 0..n {
                    y = ml.timestep(&y, dt, 2).unwrap();
                }
                (y - logistic_exact(y0, 1.0)).abs()
            })
            .collect();
        let order = (errs[0] / errs[2]).log2() / 2.0;
        assert!(order > 3.5, "order {order}");
    }

    #[test]
    fn rejects_non_nested_levels() {
        let r = Mlsdc::new(
            LevelSpec {
                problem: Logistic,
                tables: QuadratureTables::new(3).unwrap(),
            },
            LevelSpec {
                problem: Logistic,
                tables: QuadratureTables::new(5).unwrap(),
            },
            IdentityTransfer,
        );
        assert!(r.is_err());
        assert!(SpectralTransfer::new(10, 11).is_err());
    }
}
