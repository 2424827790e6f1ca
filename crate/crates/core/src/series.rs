//! Truncated Poincaré series `sum_gamma psi(gamma^-1 x)` with certified tails, the sign-vector
//! sample points and the non-vanishing test built on them.

use alloc::vec::Vec;
use core::ops::Add;

use num_complex::Complex64;
use num_traits::Float;

use crate::eigen::{ln_cosh, SphericalParams};
use crate::error::{Error, Result};
use crate::group::{
    enumerate_ball, orbit_ball, EnumerationLimits, GroupPresentation, GrowthConstants, DEDUP_TOL,
    DEFAULT_BUDGET,
};
use crate::psl2::{AdS3Point, GroupElement};

/// A value together with a rigorous bound on its distance from the quantity it stands for.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifiedValue<T = f64> {
    pub value: T,
    pub radius: f64,
}

impl<T> CertifiedValue<T> {
    pub fn new(value: T, radius: f64) -> Self {
        CertifiedValue { value, radius }
    }
}

impl CertifiedValue<f64> {
    pub fn exact(value: f64) -> Self {
        CertifiedValue { value, radius: 0.0 }
    }

    pub fn scale(self, c: f64) -> Self {
        CertifiedValue { value: c * self.value, radius: c.abs() * self.radius }
    }

    /// Whether `x` lies in `[value - radius, value + radius]`.
    pub fn contains(&self, x: f64) -> bool {
        (x - self.value).abs() <= self.radius
    }
}

impl CertifiedValue<Complex64> {
    pub fn re(&self) -> CertifiedValue<f64> {
        CertifiedValue { value: self.value.re, radius: self.radius }
    }

    pub fn im(&self) -> CertifiedValue<f64> {
        CertifiedValue { value: self.value.im, radius: self.radius }
    }
}

impl<T: Add<Output = T>> Add for CertifiedValue<T> {
    type Output = CertifiedValue<T>;

    fn add(self, rhs: Self) -> Self {
        CertifiedValue { value: self.value + rhs.value, radius: self.radius + rhs.radius }
    }
}

/// A vector `a` in `{+1, -1}^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument("sign vector entries must be +1 or -1 and k >= 1"));
        }
        Ok(SignVector(signs))
    }

    /// `a_j = +1` where `b_j >= 0`, else `-1`.
    pub fn from_coefficients(b: &[f64]) -> Result<Self> {
        Self::new(b.iter().map(|&x| if x >= 0.0 { 1 } else { -1 }).collect())
    }

    /// The vector whose `j`-th entry is `-1` exactly when bit `j` of `index` is set.
    pub fn from_index(index: usize, k: usize) -> Result<Self> {
        Self::new((0..k).map(|j| if index >> j & 1 == 1 { -1 } else { 1 }).collect())
    }

    /// All `2^k` sign vectors, ordered by [`Self::from_index`].
    pub fn all(k: usize) -> Result<Vec<SignVector>> {
        if k == 0 || k >= usize::BITS as usize {
            return Err(Error::InvalidArgument("k out of range"));
        }
        (0..1usize << k).map(|i| Self::from_index(i, k)).collect()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn chi(s: i8) -> f64 {
    if s < 0 {
        1.0
    } else {
        0.0
    }
}

/// `theta_{a,N} = pi sum_i (chi(a_i) - chi(a_{i-1})) N^{-i}` with `a_{-1} = +1`,
/// `chi(+1) = 0`, `chi(-1) = 1`.
pub fn theta_sample(a: &SignVector, n: u32) -> Result<f64> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidN { n });
    }
    let mut prev = 1i8;
    let mut scale = 1.0;
    let mut sum = 0.0;
    for &s in a.signs() {
        sum += (chi(s) - chi(prev)) * scale;
        scale /= n as f64;
        prev = s;
    }
    Ok(core::f64::consts::PI * sum)
}

/// `x_{a,eps} = k(theta/2) a(eps) k(theta/2)^-1` with `theta = theta_{a,3}`; `||x|| = 2 eps`.
pub fn sample_point(a: &SignVector, eps: f64) -> Result<AdS3Point> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidEpsilon { eps });
    }
    let k = GroupElement::rotation(theta_sample(a, 3)? / 2.0);
    Ok(AdS3Point::new(k * GroupElement::boost(eps) * k.inverse()))
}

/// `3^j` as an exponent.
pub(crate) fn pow3(j: usize) -> u32 {
    3u32.pow(j as u32)
}

/// The coefficients `b_j cos(3^j theta_{a,3})` of `f_b`, nonnegative for matching signs.
pub fn f_b_coefficients(b: &[f64], a: &SignVector) -> Result<Vec<f64>> {
    if a.len() != b.len() || SignVector::from_coefficients(b)? != *a {
        return Err(Error::SignMismatch);
    }
    let theta = theta_sample(a, 3)?;
    Ok(b.iter().enumerate().map(|(j, bj)| bj * (pow3(j) as f64 * theta).cos()).collect())
}

/// `f_b(u) = sum_j b_j cos(3^j theta_{a,3}) u^{3^j}`.
pub fn f_b(b: &[f64], a: &SignVector, u: f64) -> Result<f64> {
    let coeffs = f_b_coefficients(b, a)?;
    Ok(eval_f(&coeffs, u))
}

fn eval_f(coeffs: &[f64], u: f64) -> f64 {
    coeffs.iter().enumerate().map(|(j, c)| c * u.powi(pow3(j) as i32)).sum()
}

/// `sum_{n >= 1} A e^{a R0 (n+1)} cosh^{-2m}(R0 n / 2)`, in closed geometric form: a bound on
/// `sum |psi(gamma x)|` over orbit points with `||gamma x|| > R0` for any `psi` dominated by
/// `cosh^{-2m}(||.|| / 2)`.
pub fn tail_bound(growth: &GrowthConstants, m: u32, r0: f64) -> Result<f64> {
    if !(r0 > 0.0) {
        return Err(Error::InvalidArgument("truncation radius must be positive"));
    }
    let ln_q = growth.a * r0 - 2.0 * m as f64 * ln_cosh(r0 / 2.0);
    if ln_q >= 0.0 || m as f64 <= growth.a {
        return Err(Error::DivergentTail { ratio: ln_q.exp() });
    }
    let q = ln_q.exp();
    let ln_tail = growth.A.ln() + growth.a * r0 + ln_q - (-q).ln_1p();
    let tail = ln_tail.exp();
    Ok(if tail > 0.0 { tail } else { f64::MIN_POSITIVE })
}

/// Floating-point envelope `10 eps (n - 1) max|summand|` for a sum of `n` terms.
pub fn rounding_allowance(n: usize, max_abs: f64) -> f64 {
    10.0 * f64::EPSILON * n.saturating_sub(1) as f64 * max_abs
}

/// Orbit points `gamma x` with `||gamma x|| <= R0`, in the deterministic ball order.
#[derive(Clone, Debug)]
pub struct TruncatedOrbit {
    pub center: AdS3Point,
    pub r0: f64,
    pub points: Vec<AdS3Point>,
    /// `||gamma x||` for each point.
    pub norms: Vec<f64>,
    /// Whether each point comes from the identity element.
    pub is_identity: Vec<bool>,
    /// The whole (finite) group is listed, so there is no tail.
    pub complete: bool,
}

impl TruncatedOrbit {
    pub fn new(gp: &GroupPresentation, x: &AdS3Point, r0: f64, budget: usize) -> Result<Self> {
        let mut ball = orbit_ball(gp, x, r0, budget)?;
        if ball.group_exhausted {
            let limits = EnumerationLimits { max_word_len: ball.max_word_len, budget };
            ball = enumerate_ball(gp, x, f64::INFINITY, limits)?;
        }
        Ok(TruncatedOrbit {
            center: *x,
            r0,
            points: ball.elements.iter().map(|e| e.pair.act(x)).collect(),
            norms: ball.elements.iter().map(|e| e.moved_norm).collect(),
            is_identity: ball.elements.iter().map(|e| e.pair.is_identity(DEDUP_TOL)).collect(),
            complete: ball.group_exhausted,
        })
    }

    /// Tail bound for functions dominated by `weight * cosh^{-2m}(||.|| / 2)`.
    pub fn tail(&self, m: u32, weight: f64, growth: &GrowthConstants) -> Result<f64> {
        if self.complete || weight == 0.0 {
            return Ok(0.0);
        }
        Ok(weight * tail_bound(growth, m, self.r0)?)
    }

    /// Certified `sum_gamma f(gamma x)` for `|f| <= weight * cosh^{-2m}(||.|| / 2)`.
    pub fn sum<F>(&self, f: F, m: u32, weight: f64, growth: &GrowthConstants, skip_identity: bool) -> Result<CertifiedValue>
    where
        F: Fn(&AdS3Point) -> f64,
    {
        let mut total = 0.0;
        let mut max_abs = 0.0_f64;
        let mut n = 0;
        for (p, &id) in self.points.iter().zip(&self.is_identity) {
            if skip_identity && id {
                continue;
            }
            let v = f(p);
            total += v;
            max_abs = max_abs.max(v.abs());
            n += 1;
        }
        let tail = self.tail(m, weight, growth)?;
        Ok(CertifiedValue::new(total, tail + rounding_allowance(n, max_abs)))
    }

    /// Certified truncated series of `psi_{m,k}`.
    pub fn series(&self, p: &SphericalParams, growth: &GrowthConstants) -> Result<CertifiedValue<Complex64>> {
        let mut total = Complex64::new(0.0, 0.0);
        let mut max_abs = 0.0_f64;
        for pt in &self.points {
            let v = p.psi(pt);
            total += v;
            max_abs = max_abs.max(v.norm());
        }
        let tail = self.tail(p.m(), 1.0, growth)?;
        // real and imaginary parts each carry the scalar envelope; the modulus needs sqrt 2 of it
        let fp = core::f64::consts::SQRT_2 * rounding_allowance(self.points.len(), max_abs);
        Ok(CertifiedValue::new(total, tail + fp))
    }

    /// Certified truncated series of `Re psi_{m,k}`.
    pub fn series_re(&self, p: &SphericalParams, growth: &GrowthConstants) -> Result<CertifiedValue> {
        self.sum(|pt| p.re_psi(pt), p.m(), 1.0, growth, false)
    }
}

/// Certified `sum_{gamma} psi_{m,k}(gamma^-1 x)` over the orbit points in `B(R0)`.
pub fn truncated_series(
    gp: &GroupPresentation,
    p: &SphericalParams,
    x: &AdS3Point,
    r0: f64,
    growth: &GrowthConstants,
    budget: usize,
) -> Result<CertifiedValue<Complex64>> {
    TruncatedOrbit::new(gp, x, r0, budget)?.series(p, growth)
}

/// Truncation radius and enumeration cap for explicit orbit sums.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesOptions {
    pub r0: f64,
    pub budget: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions { r0: 4.0, budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Inconclusive,
}

/// The quantities behind a non-vanishing verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct NonvanishingReport {
    pub verdict: Verdict,
    pub signs: SignVector,
    pub sample_point: AdS3Point,
    /// `cosh^{-2m}(eps) f_b(tanh eps)`, the identity term.
    pub main_term: f64,
    /// Shell bound on the non-identity terms, `+inf` when its ratio is not below 1.
    pub shell_bound: f64,
    /// Explicit non-identity sum in `B(R0)` plus certified tail, `+inf` if the tail diverges.
    pub numeric_bound: f64,
}

impl NonvanishingReport {
    pub fn remainder_bound(&self) -> f64 {
        self.shell_bound.min(self.numeric_bound)
    }
}

/// Number of shell terms summed explicitly before the geometric tail.
const SHELL_TERMS: usize = 64;

/// Tests `(Re psi_{m,b})^Gamma(Gamma x_{a,eps}) != 0` with `psi_{m,b} = sum_j b_j psi_{m,3^j}`.
///
/// Requires `0 < eps < eps_gamma / 4`, where `eps_gamma` is a certified lower bound on the
/// separation constant; then every non-identity orbit point lies outside `B(4 eps)` and the
/// identity term `cosh^{-2m}(eps) f_b(tanh eps)` is compared with two independent bounds on the
/// rest: the shell sum
/// `3^{k-1} A sum_{n>=1} e^{4a eps (n+1)} cosh^{-2m}(2 eps n) f_b(tanh 2 eps (n+1))`
/// and an explicit orbit sum over `B(R0)` with certified tail.
pub fn nonvanishing_check(
    gp: &GroupPresentation,
    m: u32,
    b: &[f64],
    eps: f64,
    eps_gamma: f64,
    growth: &GrowthConstants,
    opts: &SeriesOptions,
) -> Result<NonvanishingReport> {
    if !(eps > 0.0) || !(eps < eps_gamma / 4.0) {
        return Err(Error::InvalidEpsilon { eps });
    }
    let a = SignVector::from_coefficients(b)?;
    let coeffs = f_b_coefficients(b, &a)?;
    let params: Vec<SphericalParams> =
        (0..b.len()).map(|j| SphericalParams::new(m, pow3(j))).collect::<Result<_>>()?;
    let x = sample_point(&a, eps)?;
    let mf = m as f64;
    let main_term = (-2.0 * mf * ln_cosh(eps)).exp() * eval_f(&coeffs, eps.tanh());

    let shell_bound = shell_bound(&coeffs, mf, eps, growth, pow3(b.len() - 1) as f64);

    let orbit = TruncatedOrbit::new(gp, &x, opts.r0, opts.budget)?;
    let weight: f64 = b.iter().map(|v| v.abs()).sum();
    let f = |p: &AdS3Point| b.iter().zip(&params).map(|(bj, sp)| bj * sp.re_psi(p)).sum::<f64>();
    let numeric_bound = match orbit.sum(f, m, weight, growth, true) {
        Ok(v) => v.value.abs() + v.radius,
        Err(Error::DivergentTail { .. }) => f64::INFINITY,
        Err(e) => return Err(e),
    };

    let verdict = if main_term > shell_bound.min(numeric_bound) { Verdict::Verified } else { Verdict::Inconclusive };
    Ok(NonvanishingReport { verdict, signs: a, sample_point: x, main_term, shell_bound, numeric_bound })
}

fn shell_bound(coeffs: &[f64], m: f64, eps: f64, growth: &GrowthConstants, coef_factor: f64) -> f64 {
    let ln_ratio = 4.0 * growth.a * eps - 2.0 * m * ln_cosh(2.0 * eps);
    if ln_ratio >= 0.0 {
        return f64::INFINITY;
    }
    let mut sum = 0.0;
    for n in 1..=SHELL_TERMS {
        let n = n as f64;
        let ln_w = 4.0 * growth.a * eps * (n + 1.0) - 2.0 * m * ln_cosh(2.0 * eps * n);
        sum += ln_w.exp() * eval_f(coeffs, (2.0 * eps * (n + 1.0)).tanh());
    }
    // term n <= e^{4a eps} f_b(1) r^n, since cosh(n x) >= cosh(x)^n and tanh <= 1
    let r = ln_ratio.exp();
    let f1: f64 = coeffs.iter().sum();
    let tail = (4.0 * growth.a * eps).exp() * f1 * ((SHELL_TERMS + 1) as f64 * ln_ratio).exp() / (1.0 - r);
    let total = coef_factor * growth.A * (sum + tail);
    total * (1.0 + 1e-12) + f64::MIN_POSITIVE
}
