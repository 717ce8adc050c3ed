//! Temporal refinement studies against a shared reference run.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sht::TransformPlan;
use crate::swe::PrognosticState;
use crate::testcases::EARTH;

use super::config::RunConfig;
use super::norms::{compute_error_norms, ErrorReport, Norm};
use super::run::run_from;

/// High-accuracy solution shared by every run of a study.
#[derive(Debug, Clone)]
pub struct Reference {
    pub dt: f64,
    pub label: String,
    pub state: PrognosticState,
    pub plan: Arc<TransformPlan>,
    pub initial: PrognosticState,
}

/// SDC(5,8) at `dt_ref` on the case, truncation and horizon of `base`.
pub fn reference_solution(base: &RunConfig, dt_ref: f64) -> Result<Reference> {
    let cfg = RunConfig::sdc(base.testcase, base.rf, 5, 8, dt_ref, base.t_end);
    cfg.validate()?;
    let plan = Arc::new(TransformPlan::new(base.rf)?);
    let initial = base.testcase.initial_state(&plan, &EARTH)?;
    let out = run_from(&cfg, plan.clone(), &initial)?;
    Ok(Reference {
        dt: dt_ref,
        label: cfg.label(),
        state: out.state,
        plan,
        initial,
    })
}

/// One run of a study: either an error report or the step at which it blew up.
#[derive(Debug, Clone)]
pub struct StudyEntry {
    pub dt: f64,
    pub report: Option<ErrorReport>,
    pub unstable_step: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ConvergenceStudy {
    pub label: String,
    pub reference_label: String,
    pub reference_dt: f64,
    pub entries: Vec<StudyEntry>,
}

/// Range of step sizes and errors admitted to a slope fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitWindow {
    pub dt_min: f64,
    pub dt_max: f64,
    pub err_min: f64,
    pub err_max: f64,
}

impl Default for FitWindow {
    fn default() -> Self {
        Self {
            dt_min: 0.0,
            dt_max: f64::INFINITY,
            err_min: 0.0,
            err_max: f64::INFINITY,
        }
    }
}

impl FitWindow {
    pub fn dt(lo: f64, hi: f64) -> Self {
        Self {
            dt_min: lo,
            dt_max: hi,
            ..Self::default()
        }
    }

    fn admits(&self, dt: f64, err: f64) -> bool {
        dt >= self.dt_min * (1.0 - 1e-12)
            && dt <= self.dt_max * (1.0 + 1e-12)
            && err >= self.err_min
            && err <= self.err_max
    }
}

impl ConvergenceStudy {
    /// `(dt, L_inf error)` of `var` for the stable runs, in run order.
    pub fn points(&self, var: &str) -> Vec<(f64, f64)> {
        self.entries
            .iter()
            .filter_map(|e| {
                e.report
                    .as_ref()
                    .and_then(|r| r.var(var))
                    .map(|v| (e.dt, v.linf))
            })
            .collect()
    }

    /// `(error, wall-clock)` of `var` for the stable runs.
    pub fn cost_points(&self, var: &str, norm: Norm) -> Vec<(f64, f64)> {
        self.entries
            .iter()
            .filter_map(|e| {
                e.report
                    .as_ref()
                    .and_then(|r| r.var(var).map(|v| (v.get(norm), r.wallclock_s)))
            })
            .collect()
    }

    pub fn slope(&self, var: &str, window: FitWindow) -> Option<f64> {
        let pts: Vec<_> = self
            .points(var)
            .into_iter()
            .filter(|&(dt, e)| window.admits(dt, e))
            .collect();
        fit_slope(&pts)
    }

    /// Slopes between neighbouring step sizes, keyed by the larger one.
    pub fn local_slopes(&self, var: &str) -> Vec<(f64, f64)> {
        let mut pts = self.points(var);
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        pts.windows(2)
            .filter(|w| w[0].1 > 0.0 && w[1].1 > 0.0)
            .map(|w| (w[1].0, (w[1].1 / w[0].1).ln() / (w[1].0 / w[0].0).ln()))
            .collect()
    }

    pub fn reports(&self) -> Vec<ErrorReport> {
        self.entries
            .iter()
            .filter_map(|e| e.report.clone())
            .collect()
    }

    /// Largest step size that completed, if any.
    pub fn largest_stable_dt(&self) -> Option<f64> {
        self.entries
            .iter()
            .filter(|e| e.report.is_some())
            .map(|e| e.dt)
            .reduce(f64::max)
    }
}

/// Runs `base` at every `dt` and compares with `reference`. Runs that hit a
/// numerical instability are recorded and kept out of the fits.
pub fn convergence_study(
    base: &RunConfig,
    dts: &[f64],
    reference: &Reference,
) -> Result<ConvergenceStudy> {
    convergence_study_repeated(base, dts, reference, 1)
}

/// As `convergence_study`, repeating every stable run `repeats` times and
/// keeping the shortest wall-clock. Results of the repeats are identical.
pub fn convergence_study_repeated(
    base: &RunConfig,
    dts: &[f64],
    reference: &Reference,
    repeats: usize,
) -> Result<ConvergenceStudy> {
    if base.rf != reference.plan.truncation() {
        return Err(Error::usage(
            "study and reference use different truncations",
        ));
    }
    let mut entries = Vec::with_capacity(dts.len());
    for &dt in dts {
        if dt <= reference.dt {
            return Err(Error::usage(format!(
                "dt = {dt} is not larger than the reference step {}",
                reference.dt
            )));
        }
        let cfg = base.with_dt(dt);
        cfg.validate()?;
        match run_from(&cfg, reference.plan.clone(), &reference.initial) {
            Ok(out) => {
                let mut wallclock_s = out.wallclock_s;
                for _ in 1..repeats {
                    wallclock_s = wallclock_s.min(
                        run_from(&cfg, reference.plan.clone(), &reference.initial)?.wallclock_s,
                    );
                }
                let vars = compute_error_norms(&out.state, &reference.state, &reference.plan)?;
                let report = ErrorReport {
                    dt,
                    scheme: cfg.label(),
                    wallclock_s,
                    vars,
                };
                entries.push(StudyEntry {
                    dt,
                    report: Some(report),
                    unstable_step: None,
                });
            }
            Err(Error::Instability { step, .. }) => entries.push(StudyEntry {
                dt,
                report: None,
                unstable_step: Some(step),
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(ConvergenceStudy {
        label: base.label(),
        reference_label: reference.label.clone(),
        reference_dt: reference.dt,
        entries,
    })
}

/// Least-squares slope of `log err` against `log dt`; `None` with fewer
/// than two usable points.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(dt, e)| dt > 0.0 && e > 0.0 && e.is_finite())
        .map(|&(dt, e)| (dt.ln(), e.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

/// Log-log interpolation of wall-clock at error `target` along a curve
/// sorted by error.
fn time_at(curve: &[(f64, f64)], target: f64) -> Option<f64> {
    let lt = target.ln();
    curve.windows(2).find_map(|w| {
        let (e0, e1) = (w[0].0.ln(), w[1].0.ln());
        // Endpoints come back through exp(ln(x)) and may miss by an ulp.
        let tol = 1e-12 * (1.0 + lt.abs());
        if lt < e0.min(e1) - tol || lt > e0.max(e1) + tol {
            return None;
        }
        let s = if e1 == e0 {
            0.0
        } else {
            ((lt - e0) / (e1 - e0)).clamp(0.0, 1.0)
        };
        Some((w[0].1.ln() * (1.0 - s) + w[1].1.ln() * s).exp())
    })
}

/// `time(baseline) / time(candidate)` at matched error of `var`, averaged
/// geometrically over five errors spread across the range both curves
/// cover. `None` without an overlap.
pub fn observed_speedup(
    baseline: &ConvergenceStudy,
    candidate: &ConvergenceStudy,
    var: &str,
    norm: Norm,
) -> Option<f64> {
    let prep = |s: &ConvergenceStudy| {
        let mut c: Vec<_> = s
            .cost_points(var, norm)
            .into_iter()
            .filter(|p| p.0 > 0.0 && p.1 > 0.0)
            .collect();
        c.sort_by(|a, b| a.0.total_cmp(&b.0));
        c
    };
    let (a, b) = (prep(baseline), prep(candidate));
    if a.len() < 2 || b.len() < 2 {
        return None;
    }
    let lo = a[0].0.max(b[0].0);
    let hi = a[a.len() - 1].0.min(b[b.len() - 1].0);
    if lo > hi {
        return None;
    }
    let k = 5;
    let mut acc = 0.0;
    for i in 0..k {
        let t = (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (k - 1) as f64).exp();
        acc += (time_at(&a, t)? / time_at(&b, t)?).ln();
    }
    Some((acc / k as f64).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::norms::VarError;

    fn synthetic(label: &str, pts: &[(f64, f64, f64)]) -> ConvergenceStudy {
        ConvergenceStudy {
            label: label.into(),
            reference_label: "ref".into(),
            reference_dt: 1.0,
            entries: pts
                .iter()
                .map(|&(dt, err, time)| StudyEntry {
                    dt,
                    report: Some(ErrorReport {
                        dt,
                        scheme: label.into(),
                        wallclock_s: time,
                        vars: vec![VarError {
                            var: "zeta".into(),
                            linf: err,
                            l2: err,
                        }],
                    }),
                    unstable_step: None,
                })
                .collect(),
        }
    }

    #[test]
    fn fit_recovers_power_law() {
        let pts: Vec<_> = [10.0, 20.0, 40.0, 80.0]
            .iter()
            .map(|&dt: &f64| (dt, 3e-9 * dt.powi(4)))
            .collect();
        assert!((fit_slope(&pts).unwrap() - 4.0).abs() < 0.01);
        assert!(fit_slope(&pts[..1]).is_none());
    }

    #[test]
    fn window_and_instability_exclusion() {
        let mut s = synthetic(
            "x",
            &[(10.0, 1e-8, 1.0), (20.0, 1.6e-7, 1.0), (40.0, 1e-2, 1.0)],
        );
        s.entries.push(StudyEntry {
            dt: 80.0,
            report: None,
            unstable_step: Some(3),
        });
        assert!((s.slope("zeta", FitWindow::dt(10.0, 20.0)).unwrap() - 4.0).abs() < 1e-12);
        assert_eq!(s.points("zeta").len(), 3);
        assert_eq!(s.largest_stable_dt(), Some(40.0));
        assert_eq!(s.local_slopes("zeta").len(), 2);
    }

    #[test]
    fn speedup_on_shifted_cost_curve() {
        // Same error curve, candidate twice as fast.
        let a = synthetic(
            "a",
            &[(10.0, 1e-8, 8.0), (20.0, 1e-6, 4.0), (40.0, 1e-4, 2.0)],
        );
        let b = synthetic(
            "b",
            &[(10.0, 1e-8, 4.0), (20.0, 1e-6, 2.0), (40.0, 1e-4, 1.0)],
        );
        assert!((observed_speedup(&a, &b, "zeta", Norm::Linf).unwrap() - 2.0).abs() < 1e-12);
        // Irrational endpoints must survive the log round trip.
        let d = synthetic("d", &[(10.0, 1.0 / 3.0, 2.0), (20.0, 0.7, 1.0)]);
        let e = synthetic("e", &[(10.0, 1.0 / 3.0, 1.0), (20.0, 0.7, 0.5)]);
        assert!((observed_speedup(&d, &e, "zeta", Norm::L2).unwrap() - 2.0).abs() < 1e-12);
        let c = synthetic("c", &[(10.0, 1.0, 1.0), (20.0, 2.0, 1.0)]);
        assert!(observed_speedup(&a, &c, "zeta", Norm::L2).is_none());
    }
}
