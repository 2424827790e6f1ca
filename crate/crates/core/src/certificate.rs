//! Linear-independence certificates for `(Re psi_{m,3^j})^Gamma`, `j = 0..k-1`.
//!
//! The matrix `M[a][j]` holds the certified truncated series at the sample points `x_{a,eps}`.
//! If every entry is within `r` of the true value, the true matrix differs from `M` by at most
//! `sqrt(rows * k) r` in spectral norm, so `sigma_min(M)` exceeding that amount proves the
//! true matrix has full column rank and the `k` functions are linearly independent.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Float;

use crate::eigen::SphericalParams;
use crate::error::{Error, Result};
use crate::group::{GroupPresentation, GrowthConstants};
use crate::linalg::sigma_min_lower_bound;
use crate::psl2::AdS3Point;
use crate::series::{pow3, sample_point, CertifiedValue, SeriesOptions, SignVector, TruncatedOrbit};

/// Largest `k` accepted: `3^{k-1} + 2m` must stay below the eigenfunction degree cap.
pub const MAX_K: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateVerdict {
    Certified,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IndependenceCertificate {
    pub label: String,
    pub m: u32,
    pub k: usize,
    pub eps: f64,
    pub growth: GrowthConstants,
    pub r0: f64,
    pub sample_points: Vec<AdS3Point>,
    /// Row-major `sample_points.len() x k`.
    pub entries: Vec<CertifiedValue>,
    /// Certified lower bound on the smallest singular value of the value matrix.
    pub sigma_min: f64,
    /// `sqrt(rows * k) * max entry radius`.
    pub total_error: f64,
    pub verdict: CertificateVerdict,
}

impl IndependenceCertificate {
    pub fn rows(&self) -> usize {
        self.sample_points.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &CertifiedValue {
        &self.entries[row * self.k + col]
    }

    pub fn max_radius(&self) -> f64 {
        self.entries.iter().map(|e| e.radius).fold(0.0, f64::max)
    }
}

/// Checks `m`, `k`, `eps` and returns the parameters `(m, 3^j)` for `j < k`.
pub fn certificate_params(m: u32, k: usize, eps: f64) -> Result<Vec<SphericalParams>> {
    if k == 0 || k > MAX_K {
        return Err(Error::InvalidArgument("k must lie in 1..=10"));
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidEpsilon { eps });
    }
    (0..k).map(|j| SphericalParams::new(m, pow3(j))).collect()
}

/// The `2^k` sample points `x_{a,eps}` in sign-vector index order.
pub fn certificate_points(k: usize, eps: f64) -> Result<Vec<AdS3Point>> {
    SignVector::all(k)?.iter().map(|a| sample_point(a, eps)).collect()
}

/// One row of the certificate matrix: the certified series of each `Re psi_{m,3^j}` at `x`.
///
/// When the tail bound diverges the entry keeps the explicit sum with an infinite radius, so the
/// certificate comes out inconclusive rather than failing.
pub fn certificate_row(
    gp: &GroupPresentation,
    params: &[SphericalParams],
    x: &AdS3Point,
    growth: &GrowthConstants,
    opts: &SeriesOptions,
) -> Result<Vec<CertifiedValue>> {
    let orbit = TruncatedOrbit::new(gp, x, opts.r0, opts.budget)?;
    params
        .iter()
        .map(|p| match orbit.series_re(p, growth) {
            Err(Error::DivergentTail { .. }) => {
                let explicit = orbit.points.iter().map(|pt| p.re_psi(pt)).sum();
                Ok(CertifiedValue::new(explicit, f64::INFINITY))
            }
            other => other,
        })
        .collect()
}

/// Builds the certificate from precomputed rows, e.g. rows evaluated in parallel.
#[allow(clippy::too_many_arguments)]
pub fn assemble_certificate(
    label: &str,
    m: u32,
    k: usize,
    eps: f64,
    growth: GrowthConstants,
    r0: f64,
    sample_points: Vec<AdS3Point>,
    entries: Vec<CertifiedValue>,
) -> Result<IndependenceCertificate> {
    let rows = sample_points.len();
    if k == 0 || entries.len() != rows * k {
        return Err(Error::InvalidArgument("entries must form a rows x k matrix"));
    }
    if entries.iter().any(|e| !(e.radius >= 0.0) || !e.value.is_finite()) {
        return Err(Error::InvalidArgument("entries need finite values and nonnegative radii"));
    }
    let values: Vec<f64> = entries.iter().map(|e| e.value).collect();
    let sigma_min = sigma_min_lower_bound(rows, k, &values)?;
    let max_radius = entries.iter().map(|e| e.radius).fold(0.0, f64::max);
    let total_error = ((rows * k) as f64).sqrt() * max_radius * (1.0 + 4.0 * f64::EPSILON);
    let verdict =
        if sigma_min > total_error { CertificateVerdict::Certified } else { CertificateVerdict::Inconclusive };
    Ok(IndependenceCertificate {
        label: label.into(),
        m,
        k,
        eps,
        growth,
        r0,
        sample_points,
        entries,
        sigma_min,
        total_error,
        verdict,
    })
}

/// Evaluates every row sequentially and assembles the certificate.
pub fn independence_certificate(
    gp: &GroupPresentation,
    m: u32,
    k: usize,
    eps: f64,
    growth: &GrowthConstants,
    opts: &SeriesOptions,
) -> Result<IndependenceCertificate> {
    let params = certificate_params(m, k, eps)?;
    let points = certificate_points(k, eps)?;
    let mut entries = Vec::with_capacity(points.len() * k);
    for x in &points {
        entries.extend(certificate_row(gp, &params, x, growth, opts)?);
    }
    assemble_certificate(gp.label(), m, k, eps, *growth, opts.r0, points, entries)
}
