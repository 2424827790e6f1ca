//! Exhaustive and randomized checks of the combinatorial and metric inequalities behind the
//! series estimates.
//!
//! Sample angles are rebuilt here from integer arithmetic instead of the library's floating
//! sums, and norms are taken from raw 2x2 matrices.

use core::f64::consts::PI;

use ads3_core::thresholds::eta;
use ads3_core::{GroupElement, IsometryPair, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of an inequality check: whether it held and the smallest observed slack.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckOutcome {
    pub holds: bool,
    pub margin: f64,
    pub cases: usize,
}

impl CheckOutcome {
    fn new() -> Self {
        CheckOutcome { holds: true, margin: f64::INFINITY, cases: 0 }
    }

    fn record(&mut self, margin: f64, ok: bool) {
        self.margin = self.margin.min(margin);
        self.holds &= ok;
        self.cases += 1;
    }

    fn merge(&mut self, other: &CheckOutcome) {
        self.holds &= other.holds;
        self.margin = self.margin.min(other.margin);
        self.cases += other.cases;
    }
}

/// `N^j theta_{a,N} / pi` as an exact fraction `p / N^{k-1}` reduced modulo 2, with `a` given
/// by the bits of `index` (bit `i` set means `a_i = -1`).
fn angle_numerator(index: usize, k: usize, n: u32, j: usize) -> (i128, i128) {
    let n = n as i128;
    let den = n.pow(k as u32 - 1);
    let modulus = 2 * den;
    let chi = |i: usize| ((index >> i) & 1) as i128;
    let mut num: i128 = 0;
    for i in 0..k {
        let d = chi(i) - if i == 0 { 0 } else { chi(i - 1) };
        if d == 0 {
            continue;
        }
        // d * N^{k-1+j-i} modulo 2 N^{k-1}
        let mut term = d.rem_euclid(modulus);
        for _ in 0..(k - 1 + j - i) {
            term = (term * n) % modulus;
        }
        num = (num + term) % modulus;
    }
    (num, den)
}

fn cos_pi_fraction((num, den): (i128, i128)) -> f64 {
    (PI * (num as f64 / den as f64)).cos()
}

/// `a_j cos(N^j theta_{a,N}) > 0` for every `a in {+1,-1}^k` and `j < k`.
///
/// The margin is the smallest `a_j cos(N^j theta_{a,N})`.
pub fn check_sekoi(k: usize, n: u32) -> CheckOutcome {
    assert!((1..=16).contains(&k) && n >= 3 && n % 2 == 1, "k in 1..=16 and odd N >= 3");
    let mut out = CheckOutcome::new();
    for index in 0..(1usize << k) {
        for j in 0..k {
            let sign = if (index >> j) & 1 == 1 { -1.0 } else { 1.0 };
            let v = sign * cos_pi_fraction(angle_numerator(index, k, n, j));
            out.record(v, v > 0.0);
        }
    }
    out
}

/// `|cos(3^j theta_{a,3})| >= 3^{-(k-1)}` for every `a in {+1,-1}^k` and `j < k`.
///
/// The margin is the smallest `3^{k-1} |cos(3^j theta_{a,3})| - 1`.
pub fn check_coefficient_bound(k: usize) -> CheckOutcome {
    assert!((1..=14).contains(&k), "k in 1..=14");
    let scale = 3f64.powi(k as i32 - 1);
    let mut out = CheckOutcome::new();
    for index in 0..(1usize << k) {
        for j in 0..k {
            let v = scale * cos_pi_fraction(angle_numerator(index, k, 3, j)).abs() - 1.0;
            out.record(v, v >= -1e-12);
        }
    }
    out
}

/// `sin(pi x / 2) >= x` on a uniform grid of `points` values in `[0, 1]`.
pub fn check_sine_bound(points: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    for i in 0..points {
        let x = i as f64 / (points - 1) as f64;
        let v = (PI * x / 2.0).sin() - x;
        out.record(v, v >= -1e-15);
    }
    out
}

/// Grid search for a common solution of `a_j cos(alpha + j beta) > 0`, `j < 5`, with
/// `a = (1, 1, 1, -1, 1)`.
///
/// Any arithmetic progression `m_j = m_0 + j d` and angle `theta` reduce to
/// `(alpha, beta) = (m_0 theta, d theta)` modulo `2 pi`, so the search covers all of them.
/// Finding no solution on a grid is evidence, not proof.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProgressionEvidence {
    pub grid_points: usize,
    pub solutions: usize,
    /// Largest `min_j a_j cos(alpha + j beta)` over the grid; never positive when there are
    /// no solutions.
    pub best_margin: f64,
}

pub fn arithmetic_progression_search(per_axis: usize) -> ProgressionEvidence {
    const SIGNS: [f64; 5] = [1.0, 1.0, 1.0, -1.0, 1.0];
    let step = 2.0 * PI / per_axis as f64;
    let mut ev = ProgressionEvidence { grid_points: 0, solutions: 0, best_margin: f64::NEG_INFINITY };
    for i in 0..per_axis {
        let alpha = i as f64 * step;
        for l in 0..per_axis {
            let beta = l as f64 * step;
            let margin =
                SIGNS.iter().enumerate().map(|(j, s)| s * (alpha + j as f64 * beta).cos()).fold(f64::INFINITY, f64::min);
            ev.grid_points += 1;
            if margin > 0.0 {
                ev.solutions += 1;
            }
            ev.best_margin = ev.best_margin.max(margin);
        }
    }
    ev
}

fn ln_cosh(t: f64) -> f64 {
    let t = t.abs();
    t + (-2.0 * t).exp().ln_1p() - core::f64::consts::LN_2
}

fn ln_poly(coeffs: &[f64], u: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c).ln()
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + xs.iter().map(|x| (x - hi).exp()).sum::<f64>().ln()
}

/// Explicit shells before the geometric tail.
const KOUKOU_TERMS: usize = 256;

/// `ln RHS - ln LHS` of
/// `C sum_{n>=1} e^{4a(n+1)eps} cosh(2n eps)^{-m} f(tanh 2(n+1)eps) < cosh(eps)^{-m} f(tanh eps)`.
///
/// Shells past [`KOUKOU_TERMS`] are bounded using `f(tanh .) <= f(1)` and
/// `cosh(2n eps) >= cosh(2 eps)^n`. Returns `-inf` when that tail ratio is not below 1.
pub fn koukou_log_margin(c: f64, a: f64, eps: f64, m: f64, coeffs: &[f64]) -> f64 {
    let ln_c = c.ln();
    let mut terms: Vec<f64> = (1..=KOUKOU_TERMS)
        .map(|n| {
            let n = n as f64;
            ln_c + 4.0 * a * (n + 1.0) * eps - m * ln_cosh(2.0 * n * eps)
                + ln_poly(coeffs, (2.0 * (n + 1.0) * eps).tanh())
        })
        .collect();
    let ln_r = 4.0 * a * eps - m * ln_cosh(2.0 * eps);
    if ln_r >= 0.0 {
        return f64::NEG_INFINITY;
    }
    let big_n = KOUKOU_TERMS as f64;
    terms.push(ln_c + 4.0 * a * eps + ln_poly(coeffs, 1.0) + (big_n + 1.0) * ln_r - (-ln_r.exp()).ln_1p());
    let lhs = log_sum_exp(&terms);
    let rhs = -m * ln_cosh(eps) + ln_poly(coeffs, eps.tanh());
    rhs - lhs
}

/// Checks the shell inequality for the monomials `x^j`, `j <= s`, and `random_trials` random
/// polynomials of degree `<= s` with nonnegative coefficients.
pub fn check_koukou(c: f64, a: f64, eps: f64, s: u32, m: u32, random_trials: usize, seed: u64) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    let deg = s as usize;
    let mut polys: Vec<Vec<f64>> = (0..=deg)
        .map(|j| {
            let mut p = vec![0.0; deg + 1];
            p[j] = 1.0;
            p
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_trials {
        let mut p: Vec<f64> =
            (0..=deg).map(|_| if rng.random_bool(0.5) { rng.random_range(0.0..1.0) } else { 0.0 }).collect();
        let j = rng.random_range(0..=deg);
        p[j] += 1.0;
        polys.push(p);
    }
    for p in &polys {
        let v = koukou_log_margin(c, a, eps, m as f64, p);
        out.record(v, v > 0.0);
    }
    out
}

fn mat_mul(x: [f64; 4], y: [f64; 4]) -> [f64; 4] {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

fn mat_inv(x: [f64; 4]) -> [f64; 4] {
    [x[3], -x[1], -x[2], x[0]]
}

/// `arccosh((a^2 + b^2 + c^2 + d^2) / 2)`.
fn raw_norm(x: [f64; 4]) -> f64 {
    let s = x.iter().map(|v| v * v).sum::<f64>();
    (s / 2.0).max(1.0).acosh()
}

fn raw_rotation(t: f64) -> [f64; 4] {
    [t.cos(), -t.sin(), t.sin(), t.cos()]
}

fn raw_boost(t: f64) -> [f64; 4] {
    [t.exp(), 0.0, 0.0, (-t).exp()]
}

fn random_raw(rng: &mut ChaCha8Rng, tmax: f64) -> [f64; 4] {
    let k1 = raw_rotation(rng.random_range(0.0..2.0 * PI));
    let k2 = raw_rotation(rng.random_range(0.0..2.0 * PI));
    mat_mul(mat_mul(k1, raw_boost(rng.random_range(0.0..tmax))), k2)
}

/// Fuzzes `||(g1, g2) x|| >= | ||g1|| - ||g2|| | - ||x||` with a `1e-9` slack, and checks that the
/// library's pruning bound never exceeds the true moved norm.
pub fn fuzz_displacement_inequality(trials: usize, seed: u64) -> CheckOutcome {
    const SLACK: f64 = 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = CheckOutcome::new();
    for _ in 0..trials {
        let (g1, g2, x) = (random_raw(&mut rng, 3.0), random_raw(&mut rng, 3.0), random_raw(&mut rng, 2.0));
        let moved = raw_norm(mat_mul(mat_mul(g1, x), mat_inv(g2)));
        let bound = (raw_norm(g1) - raw_norm(g2)).abs() - raw_norm(x);
        let margin = moved - bound;
        let pair = IsometryPair::new(GroupElement::from_entries(g1).unwrap(), GroupElement::from_entries(g2).unwrap());
        let point = ads3_core::AdS3Point::new(GroupElement::from_entries(x).unwrap());
        let library = ads3_core::psl2::norm_lower_bound(&pair, &point);
        let ok = margin >= -SLACK && library <= moved + SLACK;
        out.record(margin, ok);
    }
    out
}

/// `||a(r/8)^{-1} k(j pi / n) a(r/8)|| >= eta_n` for `j = 1..n-1`, with a `1e-12` slack.
///
/// Equality holds at `j = 1`, so the margin is zero up to rounding.
pub fn check_computation_lemma(n: u32, r: f64) -> Result<CheckOutcome> {
    let bound = eta(n, r)?;
    let a = raw_boost(r / 8.0);
    let mut out = CheckOutcome::new();
    for j in 1..n {
        let k = raw_rotation(j as f64 * PI / n as f64);
        let v = raw_norm(mat_mul(mat_mul(mat_inv(a), k), a)) - bound;
        out.record(v, v >= -1e-12);
    }
    Ok(out)
}

/// Runs [`check_sekoi`] for every `k <= k_max` and each `N` in `ns`.
pub fn sekoi_sweep(k_max: usize, ns: &[u32]) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    for &n in ns {
        for k in 1..=k_max {
            out.merge(&check_sekoi(k, n));
        }
    }
    out
}

/// Runs [`check_coefficient_bound`] for every `k <= k_max`.
pub fn coefficient_sweep(k_max: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new();
    for k in 1..=k_max {
        out.merge(&check_coefficient_bound(k));
    }
    out
}

/// Runs [`check_computation_lemma`] over a grid of `(n, r)`.
pub fn computation_lemma_sweep(ns: impl IntoIterator<Item = u32>, rs: &[f64]) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new();
    for n in ns {
        for &r in rs {
            out.merge(&check_computation_lemma(n, r)?);
        }
    }
    Ok(out)
}
