//! Spherical-harmonic transforms: roundtrip, Parseval, and the rotational wind
//! recovered from a vorticity field.
//!
//! cargo run --release --example spectral_transform

use num_complex::Complex64;
use swe_sdc::sht::{SpectralCoeffs, TransformPlan};
use swe_sdc::testcases::EARTH;

fn main() -> swe_sdc::Result<()> {
    let r = 42;
    let plan = TransformPlan::new(r)?;
    let grid = plan.grid();
    println!("T{r}: {} x {} Gaussian grid", grid.nlon, grid.nlat());

    // A field with a few modes; r = 0 coefficients are real.
    let mut x = SpectralCoeffs::zeros(r);
    x.set(0, 3, Complex64::new(1.5, 0.0));
    x.set(4, 9, Complex64::new(0.3, -0.7));
    x.set(17, 40, Complex64::new(-0.05, 0.02));
    let g = plan.spectral_to_grid(&x)?;
    let mut back = plan.grid_to_spectral(&g)?;
    back.axpy(-1.0, &x);
    println!("roundtrip max error      {:.2e}", back.norm_inf());

    let sq: Vec<f64> = g.iter().map(|v| v * v).collect();
    println!("area mean of square      {:.15}", grid.mean(&sq));
    println!("half coefficient energy  {:.15}", x.energy() / 2.0);

    // Solid-body rotation: zeta = 2 u0 sin(phi) / a is the single mode (0, 1).
    let u0 = 20.0;
    let zeta = plan.grid_to_spectral(&grid.sample(|_, phi| 2.0 * u0 * phi.sin() / EARTH.radius))?;
    let psi = zeta.inv_laplacian(EARTH.radius);
    let (u_cos, _) = plan.velocity_to_grid(&psi, &SpectralCoeffs::zeros(r), EARTH.radius)?;
    let mut err = 0.0f64;
    for j in 0..grid.nlat() {
        let c = grid.cos_phi(j);
        for i in 0..grid.nlon {
            err = err.max((u_cos[j * grid.nlon + i] / c - u0 * c).abs());
        }
    }
    println!("solid-body wind error    {err:.2e} m/s");
    Ok(())
}
