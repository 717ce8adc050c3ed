#![allow(dead_code)]

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use swe_sdc::sht::SpectralCoeffs;
use swe_sdc::swe::{ModelParams, PrognosticState};
use swe_sdc::testcases::EARTH;

/// Coefficients with amplitude `amp / (1 + s)^2`; `r = 0` entries are real
/// so the field is real on the grid.
pub fn random_field(truncation: usize, amp: f64, rng: &mut StdRng) -> SpectralCoeffs {
    let mut x = SpectralCoeffs::zeros(truncation);
    for r in 0..=truncation {
        for s in r..=truncation {
            let im = if r == 0 {
                0.0
            } else {
                rng.gen_range(-1.0..1.0)
            };
            let decay = amp / (1.0 + s as f64).powi(2);
            x.set(r, s, Complex64::new(rng.gen_range(-1.0..1.0), im) * decay);
        }
    }
    x
}

/// Random state with geopotential, vorticity and divergence at realistic
/// magnitudes and zero global-mean vorticity and divergence.
pub fn random_state(truncation: usize, seed: u64) -> PrognosticState {
    let mut rng = StdRng::seed_from_u64(seed);
    let phi = random_field(truncation, 5e3, &mut rng);
    let mut zeta = random_field(truncation, 1e-4, &mut rng);
    let mut delta = random_field(truncation, 1e-5, &mut rng);
    zeta.set(0, 0, Complex64::new(0.0, 0.0));
    delta.set(0, 0, Complex64::new(0.0, 0.0));
    PrognosticState::new(phi, zeta, delta).unwrap()
}

pub fn earth(nu: f64) -> ModelParams {
    EARTH.params(nu, 10_000.0)
}

pub fn rel_diff(a: &PrognosticState, b: &PrognosticState) -> f64 {
    (a - b).norm_inf() / b.norm_inf().max(f64::MIN_POSITIVE)
}
