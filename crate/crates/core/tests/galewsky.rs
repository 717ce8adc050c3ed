use swe_sdc::harness::{run_simulation, RunConfig};
use swe_sdc::sht::SpectralCoeffs;
use swe_sdc::testcases::{TestCaseKind, TestCaseSpec};

fn wave_fraction(z: &SpectralCoeffs) -> f64 {
    let high: f64 = z
        .iter()
        .filter(|(r, _, _)| *r > 4)
        .map(|(_, _, c)| 2.0 * c.norm_sqr())
        .sum();
    high / z.energy()
}

/// Six days of the perturbed jet: the instability breaks the zonal flow and a
/// substantial share of the vorticity variance ends up in r > 4.
#[test]
fn perturbed_jet_breaks_within_six_days() {
    let tc = TestCaseSpec::new(TestCaseKind::BarotropicInstability, 1e5);
    let day1 = run_simulation(&RunConfig::mlsdc(tc, 63, 0.5, 3, 2, 2, 300.0, 86_400.0)).unwrap();
    let early = wave_fraction(&day1.state.zeta);
    let day6 = run_simulation(&RunConfig::mlsdc(
        tc,
        63,
        0.5,
        3,
        2,
        2,
        300.0,
        6.0 * 86_400.0,
    ))
    .unwrap();
    let late = wave_fraction(&day6.state.zeta);
    assert!(early < 1e-3, "{early}");
    assert!(late > 0.1, "{late}");
}
