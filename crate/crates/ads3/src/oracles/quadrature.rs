//! Radial `L^2` norms by numerical quadrature, for comparison with the Beta closed form.

use quadrature::double_exponential;

/// `tanh^{2k} t cosh^{-4m} t sinh 2t`, evaluated in log form.
fn radial_integrand(m: u32, k: u32, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    // beyond this the integrand is below e^{-700}
    if t > 350.0 {
        return 0.0;
    }
    let ln_tanh = t.tanh().ln();
    let ln_cosh = t.cosh().ln();
    let ln_sinh2 = (2.0 * t).sinh().ln();
    (2.0 * k as f64 * ln_tanh - 4.0 * m as f64 * ln_cosh + ln_sinh2).exp()
}

/// Quadrature value and error estimate of `int_0^inf tanh^{2k} t cosh^{-4m} t sinh 2t dt`.
///
/// The half line is mapped to `[0, 1)` by `t = u / (1 - u)` and integrated by tanh-sinh.
pub fn radial_norm_quadrature(m: u32, k: u32) -> (f64, f64) {
    let out = double_exponential::integrate(
        |u| {
            let w = 1.0 - u;
            radial_integrand(m, k, u / w) / (w * w)
        },
        0.0,
        1.0,
        1e-14,
    );
    (out.integral, out.error_estimate)
}

/// Largest relative gap between quadrature and `B(k + 1, 2m - 1)` over `m in 1..=m_max`,
/// `k in 0..=k_max`.
pub fn radial_norm_sweep(m_max: u32, k_max: u32) -> f64 {
    let mut worst: f64 = 0.0;
    for m in 1..=m_max {
        for k in 0..=k_max {
            let closed = ads3_core::SphericalParams::new(m, k)
                .and_then(|p| p.l2_radial_norm_sq())
                .expect("m >= 1");
            let (q, _) = radial_norm_quadrature(m, k);
            worst = worst.max((q - closed).abs() / closed);
        }
    }
    worst
}
