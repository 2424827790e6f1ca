//! Spherical eigenfunctions `psi_{m,k}` of the AdS³ Laplacian.
//!
//! `psi_{m,k}` is the restriction to the quadric of the harmonic function
//! `F(z1, z2) = z1^{-(k+2m)} z2^k`, homogeneous of degree `-2m`. In polar coordinates
//!
//! ```text
//! psi_{m,k}(k(theta1) a(t) k(theta2)) = e^{-2i(m theta1 + (m+k) theta2)} tanh^k t cosh^{-2m} t
//! ```
//!
//! with eigenvalue `lambda_m = 4m(m-1)`. The complex conjugate family is `conj(psi_{m,k})`.

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::psl2::{AdS3Point, CartanCoords};

/// Largest admissible `k + 2m`.
pub const MAX_DEGREE: u32 = 1 << 15;

/// The index `(m, k)` of `psi_{m,k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SphericalParams {
    m: u32,
    k: u32,
}

impl SphericalParams {
    pub fn new(m: u32, k: u32) -> Result<Self> {
        if m < 1 || k as u64 + 2 * m as u64 > MAX_DEGREE as u64 {
            return Err(Error::InvalidParams { m, k });
        }
        Ok(SphericalParams { m, k })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `lambda_m = 4m(m-1)`.
    pub fn eigenvalue(&self) -> f64 {
        let m = self.m as f64;
        4.0 * m * (m - 1.0)
    }

    /// `z1^{-(k+2m)} z2^k`, evaluated as `(z2/z1)^k z1^{-2m}`.
    pub fn ambient(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        let w = z1.inv();
        powu(z2 * w, self.k) * powu(w, 2 * self.m)
    }

    pub fn psi(&self, x: &AdS3Point) -> Complex64 {
        let (z1, z2) = x.complex_pair();
        self.ambient(z1, z2)
    }

    /// The polar-coordinate form, used as an independent route to [`Self::psi`].
    pub fn psi_polar(&self, c: &CartanCoords) -> Complex64 {
        let (m, k) = (self.m as f64, self.k as f64);
        let phase = -2.0 * (m * c.theta1 + (m + k) * c.theta2);
        let radial = c.t.tanh().powi(self.k as i32) * c.t.cosh().powf(-2.0 * m);
        Complex64::from_polar(radial, phase)
    }

    pub fn re_psi(&self, x: &AdS3Point) -> f64 {
        self.psi(x).re
    }

    pub fn im_psi(&self, x: &AdS3Point) -> f64 {
        self.psi(x).im
    }

    /// `|psi(x)| = cosh^{-2m}(||x||/2) tanh^k(||x||/2)`.
    pub fn psi_abs(&self, norm_x: f64) -> f64 {
        self.ln_psi_abs(norm_x).exp()
    }

    /// Natural log of [`Self::psi_abs`]; `-inf` at the origin when `k >= 1`.
    pub fn ln_psi_abs(&self, norm_x: f64) -> f64 {
        let t = norm_x.max(0.0) / 2.0;
        let tanh_part = if self.k == 0 { 0.0 } else { self.k as f64 * t.tanh().ln() };
        tanh_part - 2.0 * self.m as f64 * ln_cosh(t)
    }

    /// `int_0^inf tanh^{2k} t cosh^{-4m} t sinh 2t dt = B(k+1, 2m-1)`.
    pub fn l2_radial_norm_sq(&self) -> Result<f64> {
        if self.m < 1 {
            return Err(Error::DivergentNorm);
        }
        // B(k+1, 2m-1) = 1 / ((2m-1) C(k+2m-1, k))
        let base = 2.0 * self.m as f64 - 1.0;
        let binom = (1..=self.k).fold(1.0, |acc, i| acc * (base + i as f64) / i as f64);
        Ok(1.0 / (base * binom))
    }
}

/// `ln cosh t`, accurate near 0 and free of overflow for large `t`.
pub fn ln_cosh(t: f64) -> f64 {
    let t = t.abs();
    if t < 1.0 {
        let s = (t / 2.0).sinh();
        (2.0 * s * s).ln_1p()
    } else {
        t + (-2.0 * t).exp().ln_1p() - core::f64::consts::LN_2
    }
}

/// `z^n` by repeated squaring.
fn powu(z: Complex64, mut n: u32) -> Complex64 {
    let mut base = z;
    let mut acc = Complex64::new(1.0, 0.0);
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base = base * base;
        n >>= 1;
    }
    acc
}
