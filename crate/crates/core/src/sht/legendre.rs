//! Normalized associated Legendre functions.
//!
//! `P^r_s` is orthonormal on `mu in [-1, 1]` (so `P^0_0 = 1/sqrt(2)`), without
//! the Condon-Shortley phase. Values are generated by the three-term recurrence
//! in degree at fixed order, seeded by the closed-form sectoral value
//!
//! ```text
//! P^r_r(mu)     = sqrt(prod_{k=1..r} (2k+1)/(2k)) (1 - mu^2)^{r/2} / sqrt(2)
//! P^r_{s+1}(mu) = (mu P^r_s - eps^r_s P^r_{s-1}) / eps^r_{s+1}
//! eps^r_s       = sqrt((s^2 - r^2) / (4 s^2 - 1))
//! ```
//!
//! and the derivative form `H^r_s = (1 - mu^2) dP^r_s/dmu` follows from
//! `H^r_s = -s eps^r_{s+1} P^r_{s+1} + (s+1) eps^r_s P^r_{s-1}`.

/// `eps^r_s` recurrence coefficient.
#[inline]
pub fn epsilon(r: usize, s: usize) -> f64 {
    if s < r || s == 0 {
        return 0.0;
    }
    let (r, s) = (r as f64, s as f64);
    ((s * s - r * r) / (4.0 * s * s - 1.0)).sqrt()
}

/// Sectoral value `P^r_r(mu)`.
pub fn sectoral(r: usize, mu: f64) -> f64 {
    let cos_phi = (1.0 - mu * mu).max(0.0).sqrt();
    let mut p = std::f64::consts::FRAC_1_SQRT_2;
    for k in 1..=r {
        let k = k as f64;
        p *= ((2.0 * k + 1.0) / (2.0 * k)).sqrt() * cos_phi;
    }
    p
}

/// Fills `out[s - r] = P^r_s(mu)` for `s = r..=s_max`.
pub fn column(r: usize, s_max: usize, mu: f64, out: &mut [f64]) {
    debug_assert!(s_max >= r && out.len() > s_max - r);
    out[0] = sectoral(r, mu);
    if s_max == r {
        return;
    }
    out[1] = mu * out[0] / epsilon(r, r + 1);
    for s in r + 1..s_max {
        let k = s - r;
        out[k + 1] = (mu * out[k] - epsilon(r, s) * out[k - 1]) / epsilon(r, s + 1);
    }
}

/// `P^r_s(mu)` for a single degree.
pub fn value(r: usize, s: usize, mu: f64) -> f64 {
    let mut buf = vec![0.0; s - r + 1];
    column(r, s, mu, &mut buf);
    buf[s - r]
}

/// Fills `p[s - r] = P^r_s(mu)` and `h[s - r] = (1 - mu^2) dP^r_s/dmu` for `s = r..=s_max`.
pub fn column_with_derivative(r: usize, s_max: usize, mu: f64, p: &mut [f64], h: &mut [f64]) {
    let mut ext = vec![0.0; s_max - r + 2];
    column(r, s_max + 1, mu, &mut ext);
    for s in r..=s_max {
        let k = s - r;
        let below = if k == 0 { 0.0 } else { ext[k - 1] };
        p[k] = ext[k];
        h[k] =
            -(s as f64) * epsilon(r, s + 1) * ext[k + 1] + (s as f64 + 1.0) * epsilon(r, s) * below;
    }
}
