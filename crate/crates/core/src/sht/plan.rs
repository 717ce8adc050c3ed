//! Spherical-harmonic transform between the Gaussian grid and spectral space.
//!
//! Grid fields are stored latitude-major (`j * nlon + i`) with latitudes
//! increasing from south to north. Vector fields enter and leave the transform
//! in cos-weighted form `(U, V) = (u cos(phi), v cos(phi))`, which is smooth at
//! the poles and polynomial in `mu` for band-limited flows.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::coeffs::SpectralCoeffs;
use super::grid::{dealiased_dims, GaussianGrid};
use super::legendre;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Precomputed Legendre tables and FFT plans for one truncation and grid.
///
/// Immutable after construction; every transform allocates its own scratch.
#[derive(Clone)]
pub struct TransformPlan {
    grid: GaussianGrid,
    truncation: usize,
    /// `p[r][j * (R + 1 - r) + (s - r)] = P^r_s(mu_j)`.
    p: Vec<Vec<f64>>,
    /// Same layout, `(1 - mu_j^2) dP^r_s/dmu`.
    h: Vec<Vec<f64>>,
    fft_forward: Arc<dyn Fft<f64>>,
    fft_inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for TransformPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TransformPlan")
            .field("truncation", &self.truncation)
            .field("nlon", &self.grid.nlon)
            .field("nlat", &self.grid.nlat())
            .finish()
    }
}

impl TransformPlan {
    /// Plan on the default alias-free grid for truncation `R`.
    pub fn new(truncation: usize) -> Result<Self> {
        let (nlon, nlat) = dealiased_dims(truncation);
        Self::with_grid(truncation, nlon, nlat)
    }

    pub fn with_grid(truncation: usize, nlon: usize, nlat: usize) -> Result<Self> {
        if nlon <= 2 * truncation {
            return Err(Error::usage(format!(
                "{nlon} longitudes cannot resolve zonal wavenumber {truncation}"
            )));
        }
        if nlat <= truncation {
            return Err(Error::usage(format!(
                "{nlat} Gaussian latitudes cannot resolve degree {truncation}"
            )));
        }
        let grid = GaussianGrid::new(nlon, nlat)?;
        let mut p = Vec::with_capacity(truncation + 1);
        let mut h = Vec::with_capacity(truncation + 1);
        for r in 0..=truncation {
            let n = truncation + 1 - r;
            let mut pr = vec![0.0; nlat * n];
            let mut hr = vec![0.0; nlat * n];
            for (j, &mu) in grid.mu.iter().enumerate() {
                legendre::column_with_derivative(
                    r,
                    truncation,
                    mu,
                    &mut pr[j * n..(j + 1) * n],
                    &mut hr[j * n..(j + 1) * n],
                );
            }
            p.push(pr);
            h.push(hr);
        }
        let mut planner = FftPlanner::new();
        let fft_forward = planner.plan_fft_forward(nlon);
        let fft_inverse = planner.plan_fft_inverse(nlon);
        Ok(Self {
            grid,
            truncation,
            p,
            h,
            fft_forward,
            fft_inverse,
        })
    }

    pub fn grid(&self) -> &GaussianGrid {
        &self.grid
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `P^r_s(mu_j)` from the precomputed table.
    pub fn legendre(&self, r: usize, s: usize, j: usize) -> f64 {
        let n = self.truncation + 1 - r;
        self.p[r][j * n + (s - r)]
    }

    fn check_grid(&self, field: &[f64]) -> Result<()> {
        if field.len() != self.grid.len() {
            return Err(Error::usage(format!(
                "grid field has {} values, plan grid is {}x{}",
                field.len(),
                self.grid.nlon,
                self.grid.nlat()
            )));
        }
        Ok(())
    }

    fn check_coeffs(&self, x: &SpectralCoeffs) -> Result<()> {
        if x.truncation() > self.truncation {
            return Err(Error::usage(format!(
                "coefficients at R = {} exceed plan truncation R = {}",
                x.truncation(),
                self.truncation
            )));
        }
        Ok(())
    }

    /// Zonal Fourier coefficients `(1/I) sum_i x(lambda_i) e^{-i r lambda_i}`
    /// for `r = 0..=R`, stored `[j * (R + 1) + r]`.
    fn fourier_analysis(&self, field: &[f64]) -> Vec<Complex64> {
        let nlon = self.grid.nlon;
        let stride = self.truncation + 1;
        let scale = 1.0 / nlon as f64;
        let mut row = vec![ZERO; nlon];
        let mut scratch = vec![ZERO; self.fft_forward.get_inplace_scratch_len()];
        let mut out = vec![ZERO; self.grid.nlat() * stride];
        for (j, chunk) in field.chunks_exact(nlon).enumerate() {
            for (dst, &v) in row.iter_mut().zip(chunk) {
                *dst = Complex64::new(v, 0.0);
            }
            self.fft_forward
                .process_with_scratch(&mut row, &mut scratch);
            for r in 0..stride {
                out[j * stride + r] = row[r] * scale;
            }
        }
        out
    }

    /// Inverse of `fourier_analysis`, filling in the conjugate half.
    fn fourier_synthesis(&self, fourier: &[Complex64]) -> Vec<f64> {
        let nlon = self.grid.nlon;
        let stride = self.truncation + 1;
        let mut row = vec![ZERO; nlon];
        let mut scratch = vec![ZERO; self.fft_inverse.get_inplace_scratch_len()];
        let mut out = Vec::with_capacity(self.grid.len());
        for j in 0..self.grid.nlat() {
            row.fill(ZERO);
            let f = &fourier[j * stride..(j + 1) * stride];
            row[0] = Complex64::new(f[0].re, 0.0);
            for r in 1..stride {
                row[r] = f[r];
                row[nlon - r] = f[r].conj();
            }
            self.fft_inverse
                .process_with_scratch(&mut row, &mut scratch);
            out.extend(row.iter().map(|c| c.re));
        }
        out
    }

    /// Projects weighted Fourier data onto the Legendre functions:
    /// `xi^r_s = sum_j pw[j, r] P^r_s(mu_j) + hw[j, r] H^r_s(mu_j)`.
    fn legendre_analysis(&self, pw: &[Complex64], hw: Option<&[Complex64]>) -> SpectralCoeffs {
        let big_r = self.truncation;
        let stride = big_r + 1;
        let mut out = SpectralCoeffs::zeros(big_r);
        for r in 0..=big_r {
            let n = big_r + 1 - r;
            let ptab = &self.p[r];
            let htab = &self.h[r];
            let block = out.block_mut(r);
            for j in 0..self.grid.nlat() {
                let a = pw[j * stride + r];
                let prow = &ptab[j * n..(j + 1) * n];
                match hw {
                    Some(hw) => {
                        let b = hw[j * stride + r];
                        let hrow = &htab[j * n..(j + 1) * n];
                        for ((acc, &pv), &hv) in block.iter_mut().zip(prow).zip(hrow) {
                            acc.re += a.re * pv + b.re * hv;
                            acc.im += a.im * pv + b.im * hv;
                        }
                    }
                    None => {
                        for (acc, &pv) in block.iter_mut().zip(prow) {
                            acc.re += a.re * pv;
                            acc.im += a.im * pv;
                        }
                    }
                }
            }
        }
        out.enforce_real_zonal();
        out
    }

    /// Evaluates `sum_s (x P^r_s + y H^r_s)` at every latitude, per zonal wavenumber.
    fn legendre_synthesis(
        &self,
        x: Option<&SpectralCoeffs>,
        y: Option<&SpectralCoeffs>,
    ) -> Vec<Complex64> {
        let big_r = self.truncation;
        let stride = big_r + 1;
        let nlat = self.grid.nlat();
        let mut out = vec![ZERO; nlat * stride];
        let rmax = x
            .iter()
            .chain(y.iter())
            .map(|c| c.truncation())
            .max()
            .unwrap_or(0);
        for r in 0..=rmax {
            let n = big_r + 1 - r;
            let xb = x.filter(|c| r <= c.truncation()).map(|c| c.block(r));
            let yb = y.filter(|c| r <= c.truncation()).map(|c| c.block(r));
            for j in 0..nlat {
                let mut acc = ZERO;
                if let Some(xb) = xb {
                    let prow = &self.p[r][j * n..j * n + xb.len()];
                    for (c, &pv) in xb.iter().zip(prow) {
                        acc.re += c.re * pv;
                        acc.im += c.im * pv;
                    }
                }
                if let Some(yb) = yb {
                    let hrow = &self.h[r][j * n..j * n + yb.len()];
                    for (c, &hv) in yb.iter().zip(hrow) {
                        acc.re += c.re * hv;
                        acc.im += c.im * hv;
                    }
                }
                out[j * stride + r] = acc;
            }
        }
        out
    }

    /// Forward transform: longitudinal DFT followed by Gaussian quadrature in latitude.
    pub fn grid_to_spectral(&self, field: &[f64]) -> Result<SpectralCoeffs> {
        self.check_grid(field)?;
        let mut f = self.fourier_analysis(field);
        self.weight_rows(&mut f, |j| self.grid.weights[j]);
        Ok(self.legendre_analysis(&f, None))
    }

    /// Inverse transform; coefficients of lower truncation are implicitly zero-padded.
    pub fn spectral_to_grid(&self, x: &SpectralCoeffs) -> Result<Vec<f64>> {
        self.check_coeffs(x)?;
        Ok(self.fourier_synthesis(&self.legendre_synthesis(Some(x), None)))
    }

    /// Cos-weighted velocity `(U, V)` of `V = k x grad(psi) + grad(chi)`:
    ///
    /// ```text
    /// U = (1/a) [ -(1 - mu^2) dpsi/dmu + dchi/dlambda ]
    /// V = (1/a) [  dpsi/dlambda + (1 - mu^2) dchi/dmu ]
    /// ```
    pub fn velocity_to_grid(
        &self,
        psi: &SpectralCoeffs,
        chi: &SpectralCoeffs,
        radius: f64,
    ) -> Result<(Vec<f64>, Vec<f64>)> {
        self.check_coeffs(psi)?;
        self.check_coeffs(chi)?;
        let inv_a = 1.0 / radius;
        let stride = self.truncation + 1;
        let p_psi = self.legendre_synthesis(Some(psi), None);
        let h_psi = self.legendre_synthesis(None, Some(psi));
        let p_chi = self.legendre_synthesis(Some(chi), None);
        let h_chi = self.legendre_synthesis(None, Some(chi));
        let mut fu = vec![ZERO; p_psi.len()];
        let mut fv = vec![ZERO; p_psi.len()];
        for k in 0..fu.len() {
            let im = Complex64::new(0.0, (k % stride) as f64);
            fu[k] = (-h_psi[k] + im * p_chi[k]) * inv_a;
            fv[k] = (im * p_psi[k] + h_chi[k]) * inv_a;
        }
        Ok((self.fourier_synthesis(&fu), self.fourier_synthesis(&fv)))
    }

    /// Spectral coefficients of `div(A, B)` where `(A, B)` is a cos-weighted
    /// vector field on the grid. The latitudinal derivative is moved onto the
    /// basis functions by integration by parts.
    pub fn divergence_to_spectral(
        &self,
        a: &[f64],
        b: &[f64],
        radius: f64,
    ) -> Result<SpectralCoeffs> {
        self.vector_analysis(a, b, radius, false)
    }

    /// Spectral coefficients of `k . curl(A, B)` for a cos-weighted vector field.
    pub fn curl_to_spectral(&self, a: &[f64], b: &[f64], radius: f64) -> Result<SpectralCoeffs> {
        self.vector_analysis(a, b, radius, true)
    }

    fn vector_analysis(
        &self,
        a: &[f64],
        b: &[f64],
        radius: f64,
        curl: bool,
    ) -> Result<SpectralCoeffs> {
        self.check_grid(a)?;
        self.check_grid(b)?;
        let stride = self.truncation + 1;
        let fa = self.fourier_analysis(a);
        let fb = self.fourier_analysis(b);
        let mut pw = vec![ZERO; fa.len()];
        let mut hw = vec![ZERO; fa.len()];
        for j in 0..self.grid.nlat() {
            let mu = self.grid.mu[j];
            let c = self.grid.weights[j] / (radius * (1.0 - mu * mu));
            for r in 0..stride {
                let k = j * stride + r;
                let im = Complex64::new(0.0, r as f64);
                if curl {
                    pw[k] = im * fb[k] * c;
                    hw[k] = fa[k] * c;
                } else {
                    pw[k] = im * fa[k] * c;
                    hw[k] = -fb[k] * c;
                }
            }
        }
        Ok(self.legendre_analysis(&pw, Some(&hw)))
    }

    fn weight_rows(&self, f: &mut [Complex64], w: impl Fn(usize) -> f64) {
        let stride = self.truncation + 1;
        for (j, row) in f.chunks_exact_mut(stride).enumerate() {
            let wj = w(j);
            for c in row {
                *c *= wj;
            }
        }
    }

    /// Gaussian-weighted energy `(1/I) sum_ij w_j x_ij^2` of a grid field.
    pub fn grid_energy(&self, field: &[f64]) -> f64 {
        let sq: Vec<f64> = field.iter().map(|x| x * x).collect();
        self.grid.weighted_sum(&sq)
    }
}
