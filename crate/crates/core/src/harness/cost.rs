//! Work accounting: closed-form solve/evaluation counts and the theoretical speedup.

use crate::error::{Error, Result};
use crate::swe::CounterSnapshot;

use super::config::{RunConfig, Scheme};

/// Ratio of single-level SDC cost to two-level MLSDC cost when the implicit
/// solve and both evaluations scale like one spectral transform,
/// `~ (R + 1)^3 / 3 + (R + 1)^2 (R + 2) / 2` per level. `m_f`, `m_c` count
/// subintervals, not nodes.
pub fn theoretical_speedup(
    m_f: usize,
    m_c: usize,
    n_s: usize,
    n_ml: usize,
    alpha: f64,
    r_f: f64,
) -> f64 {
    let ratio = n_s as f64 / n_ml as f64;
    let coarse =
        alpha * alpha * 5.0 * (r_f + 1.0 / alpha) * m_c as f64 / (3.0 * (r_f + 1.0) * m_f as f64);
    ratio / (1.0 + coarse)
}

/// Per-level operation counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LevelCounts {
    pub solves: u64,
    pub implicit_evals: u64,
    pub explicit_evals: u64,
}

impl From<CounterSnapshot> for LevelCounts {
    fn from(c: CounterSnapshot) -> Self {
        Self {
            solves: c.solves,
            implicit_evals: c.implicit_evals,
            explicit_evals: c.explicit_evals,
        }
    }
}

/// Counts for `steps` steps of the configured scheme. Each step starts with
/// one evaluation of both tendencies at its initial value on each level; a
/// sweep then costs one solve and one evaluation of each kind per node,
/// and MLSDC re-evaluates the restricted coarse nodes once per iteration.
pub fn predicted_counts(cfg: &RunConfig, steps: u64) -> Result<(LevelCounts, LevelCounts)> {
    let n = cfg.iterations as u64;
    let per = |solves: u64, evals: u64| LevelCounts {
        solves: solves * steps,
        implicit_evals: evals * steps,
        explicit_evals: evals * steps,
    };
    let intervals = |nodes: usize| -> Result<u64> {
        if nodes < 2 {
            return Err(Error::usage(format!(
                "need at least two nodes, got {nodes}"
            )));
        }
        Ok(nodes as u64 - 1)
    };
    Ok(match cfg.scheme {
        Scheme::Irk2 => (per(1, 2), LevelCounts::default()),
        Scheme::Sdc => {
            let m = intervals(cfg.nodes_fine)?;
            (per(n * m, n * m + 1), LevelCounts::default())
        }
        Scheme::Mlsdc => {
            let (mf, mc) = (intervals(cfg.nodes_fine)?, intervals(cfg.nodes_coarse)?);
            (per(n * mf, n * mf + 1), per(n * mc, 2 * n * mc + 1))
        }
    })
}

const COUNT_FIELDS: [[&str; 3]; 4] = [
    ["fine_solves", "fine_implicit_evals", "fine_explicit_evals"],
    [
        "coarse_solves",
        "coarse_implicit_evals",
        "coarse_explicit_evals",
    ],
    [
        "predicted_fine_solves",
        "predicted_fine_implicit_evals",
        "predicted_fine_explicit_evals",
    ],
    [
        "predicted_coarse_solves",
        "predicted_coarse_implicit_evals",
        "predicted_coarse_explicit_evals",
    ],
];

/// Counted and predicted work of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub scheme: String,
    pub steps: u64,
    pub fine: LevelCounts,
    pub coarse: LevelCounts,
    pub predicted_fine: LevelCounts,
    pub predicted_coarse: LevelCounts,
    pub theoretical_speedup: f64,
    /// Set by speedup studies; NaN when not measured.
    pub observed_speedup: f64,
}

impl CostReport {
    pub fn counts_match(&self) -> bool {
        self.fine == self.predicted_fine && self.coarse == self.predicted_coarse
    }

    /// `(field, value)` pairs in a fixed order.
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![
            ("scheme", self.scheme.clone()),
            ("steps", self.steps.to_string()),
        ];
        for (names, c) in COUNT_FIELDS.iter().zip([
            &self.fine,
            &self.coarse,
            &self.predicted_fine,
            &self.predicted_coarse,
        ]) {
            out.push((names[0], c.solves.to_string()));
            out.push((names[1], c.implicit_evals.to_string()));
            out.push((names[2], c.explicit_evals.to_string()));
        }
        out.push((
            "theoretical_speedup",
            format!("{:.16e}", self.theoretical_speedup),
        ));
        out.push((
            "observed_speedup",
            format!("{:.16e}", self.observed_speedup),
        ));
        out
    }

    pub fn from_fields<'a>(fields: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let mut r = CostReport {
            scheme: String::new(),
            steps: 0,
            fine: LevelCounts::default(),
            coarse: LevelCounts::default(),
            predicted_fine: LevelCounts::default(),
            predicted_coarse: LevelCounts::default(),
            theoretical_speedup: f64::NAN,
            observed_speedup: f64::NAN,
        };
        for (k, v) in fields {
            let bad = || Error::usage(format!("invalid value '{v}' for {k}"));
            let int = || v.parse::<u64>().map_err(|_| bad());
            let float = || v.parse::<f64>().map_err(|_| bad());
            match k {
                "scheme" => r.scheme = v.to_string(),
                "steps" => r.steps = int()?,
                "fine_solves" => r.fine.solves = int()?,
                "fine_implicit_evals" => r.fine.implicit_evals = int()?,
                "fine_explicit_evals" => r.fine.explicit_evals = int()?,
                "coarse_solves" => r.coarse.solves = int()?,
                "coarse_implicit_evals" => r.coarse.implicit_evals = int()?,
                "coarse_explicit_evals" => r.coarse.explicit_evals = int()?,
                "predicted_fine_solves" => r.predicted_fine.solves = int()?,
                "predicted_fine_implicit_evals" => r.predicted_fine.implicit_evals = int()?,
                "predicted_fine_explicit_evals" => r.predicted_fine.explicit_evals = int()?,
                "predicted_coarse_solves" => r.predicted_coarse.solves = int()?,
                "predicted_coarse_implicit_evals" => r.predicted_coarse.implicit_evals = int()?,
                "predicted_coarse_explicit_evals" => r.predicted_coarse.explicit_evals = int()?,
                "theoretical_speedup" => r.theoretical_speedup = float()?,
                "observed_speedup" => r.observed_speedup = float()?,
                other => return Err(Error::usage(format!("unknown cost field '{other}'"))),
            }
        }
        Ok(r)
    }
}

/// Theoretical speedup of `cfg` over SDC with `reference_sweeps` sweeps on
/// the same fine nodes; 1 for non-MLSDC schemes.
pub fn theoretical_speedup_for(cfg: &RunConfig, reference_sweeps: usize) -> f64 {
    match cfg.scheme {
        Scheme::Mlsdc => theoretical_speedup(
            cfg.nodes_fine - 1,
            cfg.nodes_coarse - 1,
            reference_sweeps,
            cfg.iterations,
            cfg.alpha,
            cfg.rf as f64,
        ),
        _ => 1.0,
    }
}
