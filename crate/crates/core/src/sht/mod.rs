//! Global spherical-harmonic transform on a Gaussian grid with triangular truncation.

mod coeffs;
mod grid;
pub mod legendre;
mod plan;

pub use coeffs::{coeff_count, SpectralCoeffs};
pub use grid::{
    dealiased_dims, fft_friendly, legendre_with_derivative, GaussLegendre, GaussianGrid,
};
pub use plan::TransformPlan;
