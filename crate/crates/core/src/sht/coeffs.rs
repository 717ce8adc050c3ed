//! Triangular-truncated spherical-harmonic coefficient arrays.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients `xi^r_s` for `0 <= r <= s <= R` of one real scalar field.
///
/// Negative zonal wavenumbers are never stored: `xi^{-r}_s = conj(xi^r_s)`.
/// Storage is zonal-wavenumber major, so the block for `r` is contiguous in `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoeffs {
    truncation: usize,
    data: Vec<Complex64>,
}

/// Number of stored coefficients for truncation `R`.
pub const fn coeff_count(truncation: usize) -> usize {
    (truncation + 1) * (truncation + 2) / 2
}

/// Start of the zonal-wavenumber-`r` block.
#[inline]
pub(crate) const fn block_offset(truncation: usize, r: usize) -> usize {
    r * (truncation + 1) - r * r.saturating_sub(1) / 2
}

impl SpectralCoeffs {
    pub fn zeros(truncation: usize) -> Self {
        Self {
            truncation,
            data: vec![Complex64::new(0.0, 0.0); coeff_count(truncation)],
        }
    }

    pub fn from_vec(truncation: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != coeff_count(truncation) {
            return Err(Error::usage(format!(
                "expected {} coefficients for R = {truncation}, got {}",
                coeff_count(truncation),
                data.len()
            )));
        }
        let mut out = Self { truncation, data };
        out.enforce_real_zonal();
        Ok(out)
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn index(&self, r: usize, s: usize) -> usize {
        debug_assert!(r <= s && s <= self.truncation);
        block_offset(self.truncation, r) + (s - r)
    }

    #[inline]
    pub fn get(&self, r: usize, s: usize) -> Complex64 {
        self.data[self.index(r, s)]
    }

    /// Sets one coefficient. For `r = 0` the imaginary part is dropped so the
    /// represented field stays real.
    pub fn set(&mut self, r: usize, s: usize, value: Complex64) {
        let idx = self.index(r, s);
        self.data[idx] = if r == 0 {
            Complex64::new(value.re, 0.0)
        } else {
            value
        };
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    /// Coefficients of zonal wavenumber `r`, indexed by `s - r`.
    pub fn block(&self, r: usize) -> &[Complex64] {
        let start = block_offset(self.truncation, r);
        &self.data[start..start + self.truncation + 1 - r]
    }

    pub fn block_mut(&mut self, r: usize) -> &mut [Complex64] {
        let start = block_offset(self.truncation, r);
        let end = start + self.truncation + 1 - r;
        &mut self.data[start..end]
    }

    /// Iterates `(r, s, value)` over stored coefficients.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        let big_r = self.truncation;
        (0..=big_r).flat_map(move |r| (r..=big_r).map(move |s| (r, s, self.get(r, s))))
    }

    /// Zonal coefficients of a real field are real.
    pub(crate) fn enforce_real_zonal(&mut self) {
        for c in self.block_mut(0) {
            c.im = 0.0;
        }
    }

    /// Keeps the entries with `r <= R_c` and `s <= R_c`.
    pub fn truncate(&self, coarse: usize) -> Result<Self> {
        if coarse > self.truncation {
            return Err(Error::usage(format!(
                "cannot truncate R = {} to larger R = {coarse}",
                self.truncation
            )));
        }
        let mut out = Self::zeros(coarse);
        for r in 0..=coarse {
            let n = coarse + 1 - r;
            out.block_mut(r).copy_from_slice(&self.block(r)[..n]);
        }
        Ok(out)
    }

    /// Embeds into truncation `R_f >= R`, zero elsewhere (transpose of `truncate`).
    pub fn pad(&self, fine: usize) -> Result<Self> {
        if fine < self.truncation {
            return Err(Error::usage(format!(
                "cannot pad R = {} to smaller R = {fine}",
                self.truncation
            )));
        }
        let mut out = Self::zeros(fine);
        for r in 0..=self.truncation {
            let src = self.block(r);
            out.block_mut(r)[..src.len()].copy_from_slice(src);
        }
        Ok(out)
    }

    /// Multiplies every degree-`s` coefficient by `factor(s)`.
    pub fn scale_by_degree(&self, factor: impl Fn(usize) -> f64) -> Self {
        let mut out = self.clone();
        for r in 0..=self.truncation {
            for (k, c) in out.block_mut(r).iter_mut().enumerate() {
                *c *= factor(r + k);
            }
        }
        out
    }

    /// `-s(s+1)/a^2` applied per degree.
    pub fn laplacian(&self, radius: f64) -> Self {
        let inv_a2 = 1.0 / (radius * radius);
        self.scale_by_degree(|s| -((s * (s + 1)) as f64) * inv_a2)
    }

    /// Inverse Laplacian with the `s = 0` (global-mean) mode set to zero.
    pub fn inv_laplacian(&self, radius: f64) -> Self {
        let a2 = radius * radius;
        self.scale_by_degree(|s| {
            if s == 0 {
                0.0
            } else {
                -a2 / (s * (s + 1)) as f64
            }
        })
    }

    /// `self += alpha * x`.
    pub fn axpy(&mut self, alpha: f64, x: &Self) {
        debug_assert_eq!(self.truncation, x.truncation);
        for (a, b) in self.data.iter_mut().zip(&x.data) {
            *a += b * alpha;
        }
    }

    pub fn scale(&mut self, alpha: f64) {
        for a in &mut self.data {
            *a *= alpha;
        }
    }

    pub fn norm_inf(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Sum of `|xi^r_s|^2` counting each `r >= 1` coefficient twice (its conjugate twin).
    pub fn energy(&self) -> f64 {
        self.iter()
            .map(|(r, _, c)| {
                if r == 0 {
                    c.norm_sqr()
                } else {
                    2.0 * c.norm_sqr()
                }
            })
            .sum()
    }

    /// Real inner product matching `energy` (`<x, x> = energy(x)`).
    pub fn dot(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.truncation, other.truncation);
        (0..=self.truncation)
            .flat_map(|r| {
                let mult = if r == 0 { 1.0 } else { 2.0 };
                self.block(r)
                    .iter()
                    .zip(other.block(r))
                    .map(move |(a, b)| mult * (a * b.conj()).re)
            })
            .sum()
    }

    /// Per total wavenumber `s`, the largest `|xi^r_s|` over `r <= s`.
    pub fn max_spectrum(&self) -> Vec<f64> {
        let mut out = vec![0.0f64; self.truncation + 1];
        for (_, s, c) in self.iter() {
            out[s] = out[s].max(c.norm());
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for SpectralCoeffs {
    type Output = Complex64;

    fn index(&self, (r, s): (usize, usize)) -> &Complex64 {
        &self.data[self.index(r, s)]
    }
}
