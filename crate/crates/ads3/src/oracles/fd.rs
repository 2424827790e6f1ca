//! Central-difference checks of the ambient Laplacian `d1^2 + d2^2 - d3^2 - d4^2` on R^{2,2}.

use ads3_core::eigen::SphericalParams;
use ads3_core::{AdS3Point, Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdConfig {
    pub h: f64,
    /// Number of random points used by the sampled checks.
    pub points: usize,
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig { h: 1e-3, points: 100 }
    }
}

impl FdConfig {
    pub fn new(h: f64, points: usize) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidArgument("step size must be positive"));
        }
        Ok(FdConfig { h, points })
    }
}

/// A second-order central-difference Laplacian and the local curvature scale `sum |d_i^2 F|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdLaplacian {
    pub value: f64,
    pub scale: f64,
}

impl FdLaplacian {
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.value.abs() / self.scale
        } else {
            self.value.abs()
        }
    }
}

pub fn quadratic_form(x: &[f64; 4]) -> f64 {
    x[0] * x[0] + x[1] * x[1] - x[2] * x[2] - x[3] * x[3]
}

/// Central second differences `(F(x + h e_i) - 2F(x) + F(x - h e_i)) / h^2`, `i = 1..4`.
///
/// Fails with `NearCone` when `Q(x) < 10 h |x|`, where the stencil could cross the cone.
pub fn second_differences<F>(f: F, x: &[f64; 4], cfg: &FdConfig) -> Result<[f64; 4]>
where
    F: Fn(&[f64; 4]) -> f64,
{
    let q = quadratic_form(x);
    let euclid = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(q >= 10.0 * cfg.h * euclid) {
        return Err(Error::NearCone { q });
    }
    let h = cfg.h;
    let f0 = f(x);
    Ok(core::array::from_fn(|i| {
        let (mut up, mut down) = (*x, *x);
        up[i] += h;
        down[i] -= h;
        (f(&up) - 2.0 * f0 + f(&down)) / (h * h)
    }))
}

fn signed_sum(d: &[f64; 4]) -> f64 {
    d[0] + d[1] - d[2] - d[3]
}

/// `d1^2 F + d2^2 F - d3^2 F - d4^2 F` at `x` with step `cfg.h`.
pub fn fd_ambient_laplacian<F>(f: F, x: &[f64; 4], cfg: &FdConfig) -> Result<FdLaplacian>
where
    F: Fn(&[f64; 4]) -> f64,
{
    let d = second_differences(f, x, cfg)?;
    Ok(FdLaplacian { value: signed_sum(&d), scale: d.iter().map(|v| v.abs()).sum() })
}

/// `z1^{-(k+2m)} z2^k` with `z1 = x1 + i x2`, `z2 = x4 + i x3`, written out independently of
/// the eigenfunction module.
pub fn ambient_monomial(m: u32, k: u32, x: &[f64; 4]) -> Complex64 {
    let z1 = Complex64::new(x[0], x[1]);
    let z2 = Complex64::new(x[3], x[2]);
    z2.powi(k as i32) * z1.powi(-((k + 2 * m) as i32))
}

/// Residual `|box_H psi - lambda_m psi| / (1 + |psi|)` at `x`, maximized over real and imaginary parts.
///
/// `psi` is extended to `Q > 0` by `F(y) = Q(y)^{-m} psi(y / sqrt Q(y))`. The radial part of the
/// ambient Laplacian acts on `r^{-2m}` by `(-2m)^2 + 2(-2m) = lambda_m`, so on the quadric
/// `box_H psi - lambda_m psi = -box F`, and only the finite-difference term remains.
pub fn laplacian_eigen_check(p: &SphericalParams, x: &AdS3Point, cfg: &FdConfig) -> Result<f64> {
    let m = p.m() as f64;
    let extension = |y: &[f64; 4]| -> Complex64 {
        let q = quadratic_form(y);
        let r = q.sqrt();
        let point = AdS3Point::from_four_vector([y[0] / r, y[1] / r, y[2] / r, y[3] / r])
            .expect("stencil points are normalized onto the quadric");
        p.psi(&point) * q.powf(-m)
    };
    let v = x.four_vector();
    let psi = p.psi(x).norm();
    let re = fd_ambient_laplacian(|y| extension(y).re, &v, cfg)?;
    let im = fd_ambient_laplacian(|y| extension(y).im, &v, cfg)?;
    Ok(re.value.abs().max(im.value.abs()) / (1.0 + psi))
}

/// Result of [`harmonicity_sweep`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HarmonicityReport {
    /// Largest `|box Re G|, |box Im G|` relative to `sum_i |d_i^2 G|` at step `h`, for the
    /// complex monomial `G`. The complex scale does not vanish where the real or imaginary part
    /// happens to be flat.
    pub max_relative: f64,
    /// Range of `sum |box F|_h / sum |box F|_{h/2}` over the `(m, k, Re/Im)` fields.
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub evaluations: usize,
}

/// Random points in `[-1.5, 1.5]^4` with `Q >= 0.5`.
pub fn sample_positive_points(count: usize, seed: u64) -> Vec<[f64; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x: [f64; 4] = core::array::from_fn(|_| rng.random_range(-1.5..1.5));
        if quadratic_form(&x) >= 0.5 {
            out.push(x);
        }
    }
    out
}

/// Box of `Re` and `Im` of the monomial, and `sum_i |d_i^2|` of the complex monomial.
fn complex_laplacian(m: u32, k: u32, x: &[f64; 4], cfg: &FdConfig) -> Result<(Complex64, f64)> {
    let re = second_differences(|y| ambient_monomial(m, k, y).re, x, cfg)?;
    let im = second_differences(|y| ambient_monomial(m, k, y).im, x, cfg)?;
    let scale = (0..4).map(|i| re[i].hypot(im[i])).sum();
    Ok((Complex64::new(signed_sum(&re), signed_sum(&im)), scale))
}

/// Finite-difference harmonicity of `Re` and `Im` of `z1^{-(k+2m)} z2^k` for `m in ms`, `k in ks`.
pub fn harmonicity_sweep(ms: &[u32], ks: &[u32], cfg: &FdConfig, seed: u64) -> Result<HarmonicityReport> {
    let points = sample_positive_points(cfg.points, seed);
    let half = FdConfig { h: cfg.h / 2.0, ..*cfg };
    let mut report =
        HarmonicityReport { max_relative: 0.0, min_ratio: f64::INFINITY, max_ratio: 0.0, evaluations: 0 };
    for &m in ms {
        for &k in ks {
            // [Re, Im] sums of |box| at h and h/2
            let (mut coarse, mut fine) = ([0.0; 2], [0.0; 2]);
            for x in &points {
                let (a, scale) = complex_laplacian(m, k, x, cfg)?;
                let (b, _) = complex_laplacian(m, k, x, &half)?;
                for (part, (va, vb)) in [(a.re, b.re), (a.im, b.im)].into_iter().enumerate() {
                    report.max_relative = report.max_relative.max(va.abs() / scale);
                    coarse[part] += va.abs();
                    fine[part] += vb.abs();
                    report.evaluations += 1;
                }
            }
            for part in 0..2 {
                let ratio = coarse[part] / fine[part];
                report.min_ratio = report.min_ratio.min(ratio);
                report.max_ratio = report.max_ratio.max(ratio);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ads3_core::psl2::CartanCoords;

    #[test]
    fn quadratic_test_fields() {
        let cfg = FdConfig::default();
        let x = [1.5, 0.2, 0.3, 0.1];
        let lap = fd_ambient_laplacian(|y| y[0] * y[0], &x, &cfg).unwrap();
        assert!((lap.value - 2.0).abs() < 1e-6);
        let lap = fd_ambient_laplacian(quadratic_form, &x, &cfg).unwrap();
        assert!((lap.value - 8.0).abs() < 1e-6);
    }

    #[test]
    fn near_cone_rejected() {
        let cfg = FdConfig::default();
        let x = [1.0, 0.0, 0.0, 0.9999];
        assert!(matches!(fd_ambient_laplacian(|y| y[0], &x, &cfg), Err(Error::NearCone { .. })));
        assert!(FdConfig::new(0.0, 1).is_err());
    }

    #[test]
    fn eigen_check_on_quadric() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cfg = FdConfig::default();
        for _ in 0..100 {
            let c = CartanCoords {
                theta1: rng.random_range(0.0..3.0),
                t: rng.random_range(0.0..1.5),
                theta2: rng.random_range(0.0..6.0),
            };
            let x = AdS3Point::new(c.to_element());
            let r = laplacian_eigen_check(&SphericalParams::new(1, 0).unwrap(), &x, &cfg).unwrap();
            assert!(r < 1e-5, "{r}");
            let r = laplacian_eigen_check(&SphericalParams::new(3, 2).unwrap(), &x, &cfg).unwrap();
            assert!(r < 1e-4, "{r}");
        }
    }

    #[test]
    fn monomials_are_harmonic_with_second_order_convergence() {
        let r = harmonicity_sweep(&[1, 2, 3, 4], &[0, 1, 2, 3, 4], &FdConfig::default(), 7).unwrap();
        assert!(r.max_relative < 1e-4, "{r:?}");
        assert!(r.min_ratio >= 3.5 && r.max_ratio <= 4.5, "{r:?}");
    }

    #[test]
    fn eigenvalue_identity() {
        for m in 1..100u32 {
            let d = -2.0 * m as f64;
            assert_eq!(d * d + 2.0 * d, SphericalParams::new(m, 0).unwrap().eigenvalue());
        }
    }
}
