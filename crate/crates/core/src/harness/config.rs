use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::testcases::{TestCaseKind, TestCaseSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Sdc,
    Mlsdc,
    Irk2,
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sdc" => Ok(Self::Sdc),
            "mlsdc" => Ok(Self::Mlsdc),
            "irk2" | "rk2" => Ok(Self::Irk2),
            other => Err(Error::usage(format!(
                "unknown scheme '{other}' (sdc, mlsdc, irk2)"
            ))),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Sdc => "sdc",
            Self::Mlsdc => "mlsdc",
            Self::Irk2 => "irk2",
        })
    }
}

/// Everything needed to reproduce one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub testcase: TestCaseSpec,
    pub scheme: Scheme,
    /// Fine (or only) spectral truncation.
    pub rf: usize,
    /// Coarse-to-fine truncation ratio; the coarse truncation is `floor(alpha rf)`.
    pub alpha: f64,
    pub nodes_fine: usize,
    pub nodes_coarse: usize,
    /// `N_S` for SDC, `N_ML` for MLSDC; ignored by IRK2.
    pub iterations: usize,
    pub dt: f64,
    pub t_end: f64,
    pub output_dir: PathBuf,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            testcase: TestCaseSpec::new(TestCaseKind::GaussianDome, 1e5),
            scheme: Scheme::Sdc,
            rf: 63,
            alpha: 0.5,
            nodes_fine: 3,
            nodes_coarse: 2,
            iterations: 4,
            dt: 120.0,
            t_end: 3600.0,
            output_dir: PathBuf::from("out"),
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn sdc(
        testcase: TestCaseSpec,
        rf: usize,
        nodes: usize,
        sweeps: usize,
        dt: f64,
        t_end: f64,
    ) -> Self {
        Self {
            testcase,
            scheme: Scheme::Sdc,
            rf,
            nodes_fine: nodes,
            iterations: sweeps,
            dt,
            t_end,
            ..Self::default()
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn mlsdc(
        testcase: TestCaseSpec,
        rf: usize,
        alpha: f64,
        nodes_fine: usize,
        nodes_coarse: usize,
        iterations: usize,
        dt: f64,
        t_end: f64,
    ) -> Self {
        Self {
            testcase,
            scheme: Scheme::Mlsdc,
            rf,
            alpha,
            nodes_fine,
            nodes_coarse,
            iterations,
            dt,
            t_end,
            ..Self::default()
        }
    }

    pub fn irk2(testcase: TestCaseSpec, rf: usize, dt: f64, t_end: f64) -> Self {
        Self {
            testcase,
            scheme: Scheme::Irk2,
            rf,
            dt,
            t_end,
            ..Self::default()
        }
    }

    pub fn with_dt(&self, dt: f64) -> Self {
        Self { dt, ..self.clone() }
    }

    pub fn coarse_truncation(&self) -> usize {
        (self.alpha * self.rf as f64 + 1e-9).floor() as usize
    }

    /// Number of steps, checking that `t_end` is a whole multiple of `dt`.
    pub fn steps(&self) -> Result<usize> {
        let n = (self.t_end / self.dt).round();
        if n < 1.0 || (n * self.dt - self.t_end).abs() > 1e-9 * self.t_end {
            return Err(Error::usage(format!(
                "t_end = {} must be a positive whole multiple of dt = {}",
                self.t_end, self.dt
            )));
        }
        Ok(n as usize)
    }

    /// Short scheme label such as `SDC(3,4)` or `MLSDC(3,2,2,0.5)`.
    pub fn label(&self) -> String {
        match self.scheme {
            Scheme::Sdc => format!("SDC({},{})", self.nodes_fine, self.iterations),
            Scheme::Mlsdc => {
                format!(
                    "MLSDC({},{},{},{})",
                    self.nodes_fine, self.nodes_coarse, self.iterations, self.alpha
                )
            }
            Scheme::Irk2 => "IMEX-RK2".to_string(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::usage(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.t_end >= self.dt) {
            return Err(Error::usage(format!(
                "t_end = {} is shorter than dt = {}",
                self.t_end, self.dt
            )));
        }
        self.steps()?;
        if self.rf == 0 {
            return Err(Error::usage("truncation must be at least 1"));
        }
        if !(self.testcase.nu >= 0.0) {
            return Err(Error::usage("diffusion must be non-negative"));
        }
        match self.scheme {
            Scheme::Irk2 => {}
            Scheme::Sdc => {
                check_nodes(self.nodes_fine)?;
                if self.iterations == 0 {
                    return Err(Error::usage("SDC needs at least one sweep"));
                }
            }
            Scheme::Mlsdc => {
                check_nodes(self.nodes_fine)?;
                check_nodes(self.nodes_coarse)?;
                if self.nodes_coarse > self.nodes_fine {
                    return Err(Error::usage(
                        "coarse level cannot have more nodes than the fine level",
                    ));
                }
                if self.iterations == 0 {
                    return Err(Error::usage("MLSDC needs at least one iteration"));
                }
                if !(self.alpha > 0.0 && self.alpha <= 1.0) {
                    return Err(Error::usage(format!(
                        "alpha must lie in (0, 1], got {}",
                        self.alpha
                    )));
                }
                if self.coarse_truncation() == 0 {
                    return Err(Error::usage("coarse truncation rounds to zero"));
                }
            }
        }
        Ok(())
    }

    /// Applies `key = value` settings (keys as in the command-line flags).
    pub fn apply(&mut self, settings: &BTreeMap<String, String>) -> Result<()> {
        for (key, value) in settings {
            self.set(key, value)?;
        }
        Ok(())
    }

    /// Settings in the form `apply` accepts; applying them to a default
    /// config reproduces `self`.
    pub fn settings(&self) -> Vec<(&'static str, String)> {
        let tc = &self.testcase;
        vec![
            ("testcase", tc.kind.to_string()),
            ("scheme", self.scheme.to_string()),
            ("rf", self.rf.to_string()),
            ("alpha", format!("{:?}", self.alpha)),
            ("nodes-fine", self.nodes_fine.to_string()),
            ("nodes-coarse", self.nodes_coarse.to_string()),
            ("iters", self.iterations.to_string()),
            ("dt", format!("{:?}", self.dt)),
            ("tend", format!("{:?}", self.t_end)),
            ("nu", format!("{:?}", tc.nu)),
            ("out", self.output_dir.display().to_string()),
            ("seed", self.seed.to_string()),
            ("dome-sharpness", format!("{:?}", tc.dome.sharpness)),
            ("jet-umax", format!("{:?}", tc.jet.u_max)),
            ("bump-height", format!("{:?}", tc.bump.h_hat)),
        ]
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::usage(format!("invalid value '{value}' for {what}"));
        let float = |what: &str| value.parse::<f64>().map_err(|_| bad(what));
        let int = |what: &str| value.parse::<usize>().map_err(|_| bad(what));
        match key.replace('_', "-").as_str() {
            "testcase" => self.testcase.kind = value.parse()?,
            "scheme" => self.scheme = value.parse()?,
            "rf" => self.rf = int("rf")?,
            "alpha" => self.alpha = float("alpha")?,
            "nodes-fine" => self.nodes_fine = int("nodes-fine")?,
            "nodes-coarse" => self.nodes_coarse = int("nodes-coarse")?,
            "iters" => self.iterations = int("iters")?,
            "dt" => self.dt = float("dt")?,
            "tend" => self.t_end = float("tend")?,
            "nu" => self.testcase.nu = float("nu")?,
            "out" => self.output_dir = PathBuf::from(value),
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            "dome-sharpness" => self.testcase.dome.sharpness = float("dome-sharpness")?,
            "jet-umax" => self.testcase.jet.u_max = float("jet-umax")?,
            "bump-height" => self.testcase.bump.h_hat = float("bump-height")?,
            other => return Err(Error::usage(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }
}

fn check_nodes(n: usize) -> Result<()> {
    if matches!(n, 2 | 3 | 5) {
        Ok(())
    } else {
        Err(Error::usage(format!(
            "node count must be 2, 3 or 5, got {n}"
        )))
    }
}

/// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
pub fn parse_config_str(text: &str, path: &Path) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            path: path.to_path_buf(),
            message: format!("line {}: expected 'key = value'", lineno + 1),
        })?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || v.is_empty() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                message: format!("line {}: empty key or value", lineno + 1),
            });
        }
        out.insert(k.to_string(), v.to_string());
    }
    Ok(out)
}

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_str(&text, path)
}
