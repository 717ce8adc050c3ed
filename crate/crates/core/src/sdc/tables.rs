//! Gauss-Lobatto collocation nodes and the SDC weight matrices.

use crate::error::{Error, Result};
use crate::sht::GaussLegendre;

/// Node positions `tau_m` on `[0, 1]`, with `t^{n,m} = t^n + dt tau_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CollocationNodes {
    taus: Vec<f64>,
}

impl CollocationNodes {
    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    /// Number of nodes `M + 1`.
    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }

    /// Number of subintervals `M`.
    pub fn intervals(&self) -> usize {
        self.taus.len() - 1
    }

    /// Lagrange basis polynomial `L^j` for these nodes evaluated at `t`.
    pub fn lagrange(&self, j: usize, t: f64) -> f64 {
        let tj = self.taus[j];
        self.taus
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, &tk)| (t - tk) / (tj - tk))
            .product()
    }
}

/// Gauss-Lobatto nodes mapped to `[0, 1]`. Only 2, 3 and 5 nodes are
/// supported; these nest (2 in 3, 3 in 5), which the level transfer relies on.
pub fn lobatto_nodes(count: usize) -> Result<CollocationNodes> {
    let taus = match count {
        2 => vec![0.0, 1.0],
        3 => vec![0.0, 0.5, 1.0],
        5 => {
            let h = 0.5 * (3.0f64 / 7.0).sqrt();
            vec![0.0, 0.5 - h, 0.5, 0.5 + h, 1.0]
        }
        n => {
            return Err(Error::usage(format!(
                "unsupported node count {n}, expected 2, 3 or 5"
            )))
        }
    };
    Ok(CollocationNodes { taus })
}

pub type Matrix = Vec<Vec<f64>>;

/// `Q[m][j] = integral of L^j from 0 to tau_m`.
pub fn build_q(nodes: &CollocationNodes) -> Matrix {
    let n = nodes.len();
    let gl = GaussLegendre::new(n).expect("small Gauss-Legendre rule");
    nodes
        .taus()
        .iter()
        .map(|&t| {
            (0..n)
                .map(|j| {
                    if t == 0.0 {
                        0.0
                    } else {
                        gl.integrate(0.0, t, |x| nodes.lagrange(j, x))
                    }
                })
                .collect()
        })
        .collect()
}

/// Implicit weights: `U^T` from `B^T = L U` (no pivoting), where `B` is `Q`
/// without its zero first row and first column.
pub fn build_qdelta_i(q: &Matrix) -> Result<Matrix> {
    let n = q.len();
    let m = n - 1;
    // u starts as B^T and is reduced in place to U.
    let mut u: Matrix = (0..m)
        .map(|i| (0..m).map(|j| q[j + 1][i + 1]).collect())
        .collect();
    for k in 0..m {
        let pivot = u[k][k];
        if pivot.abs() < 1e-14 {
            return Err(Error::Singular(format!(
                "zero pivot at {k} in implicit weight factorization"
            )));
        }
        for i in k + 1..m {
            let l = u[i][k] / pivot;
            for j in k..m {
                u[i][j] -= l * u[k][j];
            }
        }
    }
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..m {
        for j in 0..=i {
            out[i + 1][j + 1] = u[j][i];
        }
    }
    Ok(out)
}

/// Explicit forward-Euler weights: `QE[m+1][j] = tau_{j+1} - tau_j` for `j <= m`.
pub fn build_qdelta_e(nodes: &CollocationNodes) -> Matrix {
    let t = nodes.taus();
    let n = t.len();
    let mut out = vec![vec![0.0; n]; n];
    for m in 1..n {
        for j in 0..m {
            out[m][j] = t[j + 1] - t[j];
        }
    }
    out
}

/// `Q` together with the low-order implicit and explicit weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureTables {
    pub nodes: CollocationNodes,
    pub q: Matrix,
    pub q_delta_i: Matrix,
    pub q_delta_e: Matrix,
}

impl QuadratureTables {
    pub fn new(count: usize) -> Result<Self> {
        let nodes = lobatto_nodes(count)?;
        let q = build_q(&nodes);
        let q_delta_i = build_qdelta_i(&q)?;
        let q_delta_e = build_qdelta_e(&nodes);
        Ok(Self {
            nodes,
            q,
            q_delta_i,
            q_delta_e,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}
