//! Explicit spectral thresholds `m(C,a,eps,s)`, `m~(C,a,delta,s)`, `m_Gamma(k)` and `eta_n`.

use num_traits::Float;

use crate::eigen::ln_cosh;
use crate::error::{Error, Result};
use crate::group::GrowthConstants;

/// Arguments `(C, a, eps, s)` of the threshold `m(C, a, eps, s)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdInputs {
    pub c: f64,
    pub a: f64,
    pub eps: f64,
    pub s: u32,
}

impl ThresholdInputs {
    pub fn new(c: f64, a: f64, eps: f64, s: u32) -> Result<Self> {
        let ok = |x: f64| x > 0.0 && x.is_finite();
        if !ok(c) || !ok(a) || s < 1 {
            return Err(Error::InvalidArgument("C and a must be positive and s >= 1"));
        }
        if !ok(eps) {
            return Err(Error::InvalidEpsilon { eps });
        }
        Ok(ThresholdInputs { c, a, eps, s })
    }
}

/// `ln(1 + e^z)` without overflow.
fn ln1p_exp(z: f64) -> f64 {
    if z > 30.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// `((ln 2) s + 2a eps + ln(1 + 2^s C e^{6a eps})) / ln cosh eps`.
pub fn m_threshold(inp: &ThresholdInputs) -> f64 {
    let s = inp.s as f64;
    let ln2 = core::f64::consts::LN_2;
    let num = ln2 * s + 2.0 * inp.a * inp.eps + ln1p_exp(s * ln2 + inp.c.ln() + 6.0 * inp.a * inp.eps);
    num / ln_cosh(inp.eps)
}

/// Result of minimizing `m(C, a, ., s)` over `(0, delta)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TildeMinimum {
    /// An upper bound on the infimum: the threshold evaluated at `argmin`.
    pub value: f64,
    /// A point of `(0, delta)` attaining `value`.
    pub argmin: f64,
}

const GRID_POINTS: usize = 400;
/// Smallest grid point as a fraction of `delta`.
const GRID_FLOOR: f64 = 1e-6;
/// The open interval is sampled up to `delta (1 - 1e-9)`.
const RIGHT_MARGIN: f64 = 1e-9;
const GOLDEN_REL_TOL: f64 = 1e-6;

/// `m~(C, a, delta, s) = inf_{0 < eps < delta} m(C, a, eps, s)`.
///
/// Minimizes over a logarithmic grid on `(0, delta)` and then refines the best cell by
/// golden-section search. The returned value is attained at `argmin`, so it is never below the
/// true infimum.
pub fn m_tilde(c: f64, a: f64, delta: f64, s: u32) -> Result<TildeMinimum> {
    ThresholdInputs::new(c, a, delta, s)?;
    let f = |eps: f64| m_threshold(&ThresholdInputs { c, a, eps, s });
    let hi = delta * (1.0 - RIGHT_MARGIN);
    let lo = delta * GRID_FLOOR;
    let ratio = (hi / lo).ln() / (GRID_POINTS - 1) as f64;
    let grid = |i: usize| if i + 1 == GRID_POINTS { hi } else { lo * (ratio * i as f64).exp() };

    let (mut best_i, mut best) = (0, f64::INFINITY);
    for i in 0..GRID_POINTS {
        let v = f(grid(i));
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let mut best_eps = grid(best_i);

    let (mut x0, mut x3) = (grid(best_i.saturating_sub(1)), grid((best_i + 1).min(GRID_POINTS - 1)));
    let invphi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut x1 = x3 - invphi * (x3 - x0);
    let mut x2 = x0 + invphi * (x3 - x0);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while (x3 - x0) > GOLDEN_REL_TOL * x3 {
        if f1 < f2 {
            x3 = x2;
            x2 = x1;
            f2 = f1;
            x1 = x3 - invphi * (x3 - x0);
            f1 = f(x1);
        } else {
            x0 = x1;
            x1 = x2;
            f1 = f2;
            x2 = x0 + invphi * (x3 - x0);
            f2 = f(x2);
        }
    }
    for (x, v) in [(x1, f1), (x2, f2)] {
        if v < best && x > 0.0 && x < delta {
            best = v;
            best_eps = x;
        }
    }
    Ok(TildeMinimum { value: best, argmin: best_eps })
}

/// The minimizing candidate behind [`m_gamma`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaThreshold {
    pub value: f64,
    /// Index into the candidate list, `None` when the value is `+inf`.
    pub candidate: Option<usize>,
    /// `argmin` of the inner `m~`: a sample radius `eps < eps_Gamma / 4` matching the threshold.
    pub eps: f64,
}

/// `m_Gamma(k) = min over (A, a) of max{ m~(3^{k-1} A, a, eps_Gamma / 4, 3^{k-1}) / 2, a }`.
///
/// `+inf` when there are no candidates or `eps_gamma = 0`.
pub fn m_gamma_detail(k: u32, candidates: &[GrowthConstants], eps_gamma: f64) -> Result<GammaThreshold> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1"));
    }
    if !(eps_gamma >= 0.0) {
        return Err(Error::InvalidEpsilon { eps: eps_gamma });
    }
    let none = GammaThreshold { value: f64::INFINITY, candidate: None, eps: f64::NAN };
    if candidates.is_empty() || eps_gamma == 0.0 {
        return Ok(none);
    }
    let s = 3u32.checked_pow(k - 1).ok_or(Error::InvalidArgument("k too large"))?;
    // the inner threshold is flat in delta past a few units; cap an infinite eps_Gamma there
    let delta = if eps_gamma.is_finite() { eps_gamma / 4.0 } else { 1e3 };
    let mut best = none;
    for (i, g) in candidates.iter().enumerate() {
        let t = m_tilde(s as f64 * g.A, g.a, delta, s)?;
        let v = (t.value / 2.0).max(g.a);
        if v < best.value {
            best = GammaThreshold { value: v, candidate: Some(i), eps: t.argmin };
        }
    }
    Ok(best)
}

pub fn m_gamma(k: u32, candidates: &[GrowthConstants], eps_gamma: f64) -> Result<f64> {
    m_gamma_detail(k, candidates, eps_gamma).map(|d| d.value)
}

/// `eta_n = arccosh(1 + 2 (sinh(r/4) sin(pi/n))^2)`.
pub fn eta(n: u32, r: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidClass { n });
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument("r must be positive"));
    }
    let x = (r / 4.0).sinh() * (core::f64::consts::PI / n as f64).sin();
    // arccosh(1 + 2x^2) = 2 asinh(x), exact where the direct form loses digits
    Ok(2.0 * x.asinh())
}
