//! Gaussian longitude-latitude grid.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const MAX_NEWTON_ITERS: usize = 100;
const ROOT_TOL: f64 = 1e-14;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes sorted increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Evaluates `(P_n(x), P_n'(x))` by the three-term recurrence.
pub fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let nf = n as f64;
    let dp = nf * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

impl GaussLegendre {
    /// Computes the `n`-point rule. Each root of `P_n` is seeded from its
    /// asymptotic location, which lies inside the bracket between neighbouring
    /// Chebyshev-like estimates, and polished by Newton iteration.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::usage("Gauss-Legendre rule needs at least one node"));
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let half = n.div_ceil(2);
        for i in 0..half {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut converged = false;
            for _ in 0..MAX_NEWTON_ITERS {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= ROOT_TOL * x.abs().max(1.0) {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::Convergence(format!(
                    "Legendre root {i} of degree {n} after {MAX_NEWTON_ITERS} Newton steps"
                )));
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // x is the i-th largest root; mirror it to the negative side.
            nodes[n - 1 - i] = x;
            nodes[i] = -x;
            weights[n - 1 - i] = w;
            weights[i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(Self { nodes, weights })
    }

    /// Integrates `f` over `[lo, hi]` with this rule.
    pub fn integrate(&self, lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

/// Equispaced longitudes times Gaussian latitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianGrid {
    /// Number of longitudes `lambda_i = 2 pi i / nlon`.
    pub nlon: usize,
    /// Gaussian latitudes `mu_j = sin(phi_j)`, increasing (south to north).
    pub mu: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussianGrid {
    pub fn new(nlon: usize, nlat: usize) -> Result<Self> {
        if nlon == 0 {
            return Err(Error::usage("grid needs at least one longitude"));
        }
        let gl = GaussLegendre::new(nlat)?;
        Ok(Self {
            nlon,
            mu: gl.nodes,
            weights: gl.weights,
        })
    }

    pub fn nlat(&self) -> usize {
        self.mu.len()
    }

    pub fn len(&self) -> usize {
        self.nlon * self.nlat()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Longitude of column `i`.
    pub fn lambda(&self, i: usize) -> f64 {
        2.0 * PI * i as f64 / self.nlon as f64
    }

    /// Latitude `phi_j` in radians.
    pub fn phi(&self, j: usize) -> f64 {
        self.mu[j].asin()
    }

    /// `cos(phi_j) = sqrt(1 - mu_j^2)`.
    pub fn cos_phi(&self, j: usize) -> f64 {
        (1.0 - self.mu[j] * self.mu[j]).sqrt()
    }

    /// Builds a grid field (latitude-major: index `j * nlon + i`) from a
    /// function of `(lambda, phi)`.
    pub fn sample(&self, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len());
        for j in 0..self.nlat() {
            let phi = self.phi(j);
            for i in 0..self.nlon {
                out.push(f(self.lambda(i), phi));
            }
        }
        out
    }

    /// Area-weighted integral `(1/nlon) sum_ij w_j x_ij`; equals `2 * mean`.
    pub fn weighted_sum(&self, field: &[f64]) -> f64 {
        field
            .chunks(self.nlon)
            .zip(&self.weights)
            .map(|(row, &w)| w * row.iter().sum::<f64>())
            .sum::<f64>()
            / self.nlon as f64
    }

    /// Area-weighted mean of a grid field.
    pub fn mean(&self, field: &[f64]) -> f64 {
        0.5 * self.weighted_sum(field)
    }
}

/// Smallest integer `>= n` whose only prime factors are 2, 3 and 5.
pub fn fft_friendly(n: usize) -> usize {
    let mut m = n.max(1);
    loop {
        let mut k = m;
        for p in [2, 3, 5] {
            while k.is_multiple_of(p) {
                k /= p;
            }
        }
        if k == 1 {
            return m;
        }
        m += 1;
    }
}

/// Default alias-free grid dimensions `(nlon, nlat)` for triangular truncation `R`.
pub fn dealiased_dims(truncation: usize) -> (usize, usize) {
    let n = 3 * truncation + 1;
    (fft_friendly(n), n.div_ceil(2))
}
