//! Arithmetic in `PSL(2,R)`, identified with anti-de Sitter 3-space.
//!
//! A point `x = (x1, x2, x3, x4)` of the quadric `Q(x) = x1^2 + x2^2 - x3^2 - x4^2 = 1`
//! corresponds to the matrix
//!
//! ```text
//! [ x1 + x4   -x2 + x3 ]
//! [ x2 + x3    x1 - x4 ]
//! ```
//!
//! and AdS³ is the quotient by `x ~ -x`, i.e. `PSL(2,R)`. The pseudo-distance from the
//! origin is `cosh ||x|| = x1^2 + x2^2 + x3^2 + x4^2`, which equals half the squared
//! Frobenius norm of the matrix.

use core::fmt;
use core::ops::Mul;

use num_complex::Complex64;
use num_traits::{Euclid, Float};

use crate::error::{Error, Result};
use crate::group::IsometryPair;

const DET_RENORMALIZE: f64 = 1e-13;
const DET_HARD_LIMIT: f64 = 1e-6;
/// Entries below this fraction of the largest entry do not decide the sign representative.
const SIGN_ZERO: f64 = 1e-12;

/// An element of `PSL(2,R)`, stored as a row-major determinant-one matrix with a
/// canonical sign: the first entry that is nonzero (relative to the matrix scale) is positive.
#[derive(Clone, Copy, PartialEq)]
pub struct GroupElement {
    m: [f64; 4],
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}; {:?}, {:?}]", self.m[0], self.m[1], self.m[2], self.m[3])
    }
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { m: [1.0, 0.0, 0.0, 1.0] };

    /// Builds an element from raw entries, renormalizing small determinant drift.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !det.is_finite() || (det - 1.0).abs() > DET_HARD_LIMIT {
            return Err(Error::InvalidDeterminant { det });
        }
        Ok(Self::from_sl([a, b, c, d]))
    }

    pub fn from_entries(m: [f64; 4]) -> Result<Self> {
        Self::new(m[0], m[1], m[2], m[3])
    }

    /// Caller guarantees the determinant is within the hard limit.
    pub(crate) fn from_sl(m: [f64; 4]) -> Self {
        let mut m = m;
        let det = m[0] * m[3] - m[1] * m[2];
        if (det - 1.0).abs() > DET_RENORMALIZE {
            debug_assert!(det > 0.0, "determinant collapsed: {det}");
            let s = det.sqrt();
            for e in m.iter_mut() {
                *e /= s;
            }
        }
        let scale = m.iter().fold(0.0_f64, |acc, e| acc.max(e.abs()));
        if let Some(first) = m.iter().find(|e| e.abs() > SIGN_ZERO * scale) {
            if *first < 0.0 {
                for e in m.iter_mut() {
                    *e = -*e;
                }
            }
        }
        GroupElement { m }
    }

    /// The rotation `k(theta)`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::from_sl([c, -s, s, c])
    }

    /// The diagonal element `a(t) = diag(e^t, e^-t)`.
    pub fn boost(t: f64) -> Self {
        Self::from_sl([t.exp(), 0.0, 0.0, (-t).exp()])
    }

    pub fn entries(&self) -> [f64; 4] {
        self.m
    }

    pub fn det(&self) -> f64 {
        self.m[0] * self.m[3] - self.m[1] * self.m[2]
    }

    pub fn trace(&self) -> f64 {
        self.m[0] + self.m[3]
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = other.m;
        Self::from_sl([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    pub fn inverse(&self) -> GroupElement {
        let [a, b, c, d] = self.m;
        Self::from_sl([d, -b, -c, a])
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &GroupElement) -> GroupElement {
        g.inverse().compose(self).compose(g)
    }

    /// Pseudo-distance from the origin: `arccosh((a^2 + b^2 + c^2 + d^2) / 2)`.
    ///
    /// The argument is clamped at 1, which costs up to ~1e-8 absolute accuracy for
    /// elements within rounding distance of the identity.
    pub fn norm(&self) -> f64 {
        let half_sq = self.m.iter().map(|e| e * e).sum::<f64>() / 2.0;
        half_sq.max(1.0).acosh()
    }

    /// Cartan decomposition `g = k(theta1) a(t) k(theta2)`.
    pub fn cartan(&self) -> CartanCoords {
        let (z1, z2) = complex_pair_of(&self.m);
        let t = z2.norm().asinh();
        let alpha = z1.arg();
        if t < 1e-14 {
            let theta1 = Euclid::rem_euclid(&alpha, &core::f64::consts::PI);
            return CartanCoords { theta1, t: 0.0, theta2: 0.0 };
        }
        let beta = z2.arg();
        let mut theta1 = (alpha + beta) / 2.0;
        let mut theta2 = (alpha - beta) / 2.0;
        if theta1 < 0.0 {
            theta1 += core::f64::consts::PI;
            theta2 += core::f64::consts::PI;
        } else if theta1 >= core::f64::consts::PI {
            theta1 -= core::f64::consts::PI;
            theta2 -= core::f64::consts::PI;
        }
        let theta2 = Euclid::rem_euclid(&theta2, &(2.0 * core::f64::consts::PI));
        CartanCoords { theta1, t, theta2 }
    }

    /// Distance insensitive to the sign ambiguity, relative to the larger entry scale.
    pub fn projective_distance(&self, other: &GroupElement) -> f64 {
        let mut plus = 0.0_f64;
        let mut minus = 0.0_f64;
        let mut scale = 1.0_f64;
        for (x, y) in self.m.iter().zip(other.m.iter()) {
            plus = plus.max((x - y).abs());
            minus = minus.max((x + y).abs());
            scale = scale.max(x.abs()).max(y.abs());
        }
        plus.min(minus) / scale
    }

    pub fn approx_eq(&self, other: &GroupElement, tol: f64) -> bool {
        self.projective_distance(other) <= tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&GroupElement::IDENTITY, tol)
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: GroupElement) -> GroupElement {
        self.compose(&rhs)
    }
}

impl<'a> Mul<&'a GroupElement> for &'a GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: &'a GroupElement) -> GroupElement {
        self.compose(rhs)
    }
}

/// `(z1, z2) = (x1 + i x2, x4 + i x3)` for the matrix entries of a quadric point.
///
/// With this pairing `k(theta1) a(t) k(theta2)` maps to
/// `(cosh t e^{i(theta1 + theta2)}, sinh t e^{i(theta1 - theta2)})`.
fn complex_pair_of(m: &[f64; 4]) -> (Complex64, Complex64) {
    let [a, b, c, d] = *m;
    let x1 = (a + d) / 2.0;
    let x4 = (a - d) / 2.0;
    let x3 = (b + c) / 2.0;
    let x2 = (c - b) / 2.0;
    (Complex64::new(x1, x2), Complex64::new(x4, x3))
}

/// Polar coordinates `(theta1, t, theta2)` with `theta1` in `[0, pi)` and `theta2` in `[0, 2pi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CartanCoords {
    pub theta1: f64,
    pub t: f64,
    pub theta2: f64,
}

impl CartanCoords {
    /// The `SL(2,R)` matrix `k(theta1) a(t) k(theta2)` without sign canonicalization.
    pub fn recompose(&self) -> [f64; 4] {
        let (s1, c1) = self.theta1.sin_cos();
        let (s2, c2) = self.theta2.sin_cos();
        let (ep, em) = (self.t.exp(), (-self.t).exp());
        // k1 * a
        let p = [c1 * ep, -s1 * em, s1 * ep, c1 * em];
        [
            p[0] * c2 + p[1] * s2,
            -p[0] * s2 + p[1] * c2,
            p[2] * c2 + p[3] * s2,
            -p[2] * s2 + p[3] * c2,
        ]
    }

    pub fn to_element(&self) -> GroupElement {
        GroupElement::from_sl(self.recompose())
    }
}

/// A point of AdS³ represented by its group element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdS3Point {
    element: GroupElement,
}

impl AdS3Point {
    pub const ORIGIN: AdS3Point = AdS3Point { element: GroupElement::IDENTITY };

    pub fn new(element: GroupElement) -> Self {
        AdS3Point { element }
    }

    pub fn element(&self) -> &GroupElement {
        &self.element
    }

    /// Builds a point from `(x1, x2, x3, x4)` with `Q(x) = 1` within 1e-10.
    pub fn from_four_vector(x: [f64; 4]) -> Result<Self> {
        let q = x[0] * x[0] + x[1] * x[1] - x[2] * x[2] - x[3] * x[3];
        if !q.is_finite() || (q - 1.0).abs() > 1e-10 {
            return Err(Error::NotOnQuadric { q });
        }
        let [x1, x2, x3, x4] = x;
        Ok(AdS3Point { element: GroupElement::from_sl([x1 + x4, -x2 + x3, x2 + x3, x1 - x4]) })
    }

    pub fn from_complex_pair(z1: Complex64, z2: Complex64) -> Result<Self> {
        Self::from_four_vector([z1.re, z1.im, z2.im, z2.re])
    }

    /// `(x1, x2, x3, x4)` of the canonical representative.
    pub fn four_vector(&self) -> [f64; 4] {
        let [a, b, c, d] = self.element.m;
        [(a + d) / 2.0, (c - b) / 2.0, (b + c) / 2.0, (a - d) / 2.0]
    }

    pub fn complex_pair(&self) -> (Complex64, Complex64) {
        complex_pair_of(&self.element.m)
    }

    pub fn norm(&self) -> f64 {
        self.element.norm()
    }
}

impl From<GroupElement> for AdS3Point {
    fn from(element: GroupElement) -> Self {
        AdS3Point { element }
    }
}

/// Lower bound `| ||g1|| - ||g2|| | - ||x||` on the pseudo-distance of `(g1, g2) x`.
pub fn norm_lower_bound(pair: &IsometryPair, x: &AdS3Point) -> f64 {
    let (n1, n2) = pair.mu();
    (n1 - n2).abs() - x.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element(rng: &mut ChaCha8Rng) -> GroupElement {
        let c = CartanCoords {
            theta1: rng.random_range(0.0..PI),
            t: rng.random_range(0.0..3.0),
            theta2: rng.random_range(0.0..2.0 * PI),
        };
        c.to_element()
    }

    fn frob_pm(a: [f64; 4], b: [f64; 4]) -> f64 {
        let plus: f64 = a.iter().zip(b.iter()).map(|(x, y)| (x - y) * (x - y)).sum();
        let minus: f64 = a.iter().zip(b.iter()).map(|(x, y)| (x + y) * (x + y)).sum();
        plus.min(minus).sqrt()
    }

    #[test]
    fn compose_identities() {
        let g = GroupElement::new(2.0, 1.0, 3.0, 2.0).unwrap();
        assert_eq!(GroupElement::IDENTITY.compose(&g), g);
        let ab = GroupElement::boost(0.3) * GroupElement::boost(0.9);
        assert!(ab.approx_eq(&GroupElement::boost(1.2), 1e-14));
        let kk = GroupElement::rotation(2.0) * GroupElement::rotation(2.5);
        assert!(kk.approx_eq(&GroupElement::rotation((4.5_f64).rem_euclid(PI)), 1e-14));
    }

    #[test]
    fn canonical_sign_and_det_guard() {
        let g = GroupElement::new(-2.0, -1.0, -3.0, -2.0).unwrap();
        assert_eq!(g.entries(), [2.0, 1.0, 3.0, 2.0]);
        let h = GroupElement::new(0.0, -1.0, 1.0, 0.0).unwrap();
        assert_eq!(h.entries(), [0.0, 1.0, -1.0, 0.0]);
        assert!(matches!(GroupElement::new(2.0, 0.0, 0.0, 2.0), Err(Error::InvalidDeterminant { .. })));
        let drift = GroupElement::new(1.0 + 1e-9, 0.0, 0.0, 1.0).unwrap();
        assert!((drift.det() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(GroupElement::IDENTITY.norm(), 0.0);
        assert!((GroupElement::boost(0.5).norm() - 1.0).abs() < 1e-12);
        for i in 0..50 {
            assert!(GroupElement::rotation(i as f64 * 0.37).norm() < 1e-7);
        }
        let g = GroupElement::new(2.0, 0.0, 0.0, 0.5).unwrap();
        assert!((g.norm() - 2.0 * 2f64.ln()).abs() < 1e-12);
        assert!((g.norm().cosh() - 17.0 / 8.0).abs() < 1e-12);
    }

    #[test]
    fn cartan_examples() {
        let c = GroupElement::boost(0.7).cartan();
        assert!(c.theta1.abs() < 1e-14 && (c.t - 0.7).abs() < 1e-14 && c.theta2.abs() < 1e-14);

        let (t1, t2) = (1.1, 4.0);
        let g = CartanCoords { theta1: t1, t: 1.0, theta2: t2 }.to_element();
        let c = g.cartan();
        assert!((c.theta1 - t1).abs() < 1e-12);
        assert!((c.t - 1.0).abs() < 1e-12);
        // canonical sign may flip the representative: theta2 is determined mod pi on PSL
        let d = (c.theta2 - t2).rem_euclid(PI);
        assert!(d < 1e-12 || PI - d < 1e-12);

        let r = GroupElement::rotation(2.0).cartan();
        assert_eq!(r.t, 0.0);
        assert_eq!(r.theta2, 0.0);
        assert!((r.theta1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cartan_recomposition_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let g = random_element(&mut rng);
            let c = g.cartan();
            assert!((0.0..PI).contains(&c.theta1));
            assert!((0.0..2.0 * PI).contains(&c.theta2));
            assert!(frob_pm(c.recompose(), g.entries()) < 1e-10);
        }
    }

    #[test]
    fn norm_is_twice_cartan_t_and_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let g = random_element(&mut rng);
            assert!((g.norm() - 2.0 * g.cartan().t).abs() < 1e-10);
            assert!((g.norm() - g.inverse().norm()).abs() < 1e-10);
        }
    }

    #[test]
    fn norm_subadditive() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10_000 {
            let g = random_element(&mut rng);
            let h = random_element(&mut rng);
            assert!((g * h).norm() <= g.norm() + h.norm() + 1e-10);
        }
    }

    #[test]
    fn coordinate_roundtrips() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let p = AdS3Point::new(random_element(&mut rng));
            let x = p.four_vector();
            let q = x[0] * x[0] + x[1] * x[1] - x[2] * x[2] - x[3] * x[3];
            assert!((q - 1.0).abs() < 1e-10);
            let back = AdS3Point::from_four_vector(x).unwrap();
            assert!(back.element().projective_distance(p.element()) < 1e-12);
            let (z1, z2) = p.complex_pair();
            assert!(z1.norm() > 0.0);
            let back = AdS3Point::from_complex_pair(z1, z2).unwrap();
            assert!(back.element().projective_distance(p.element()) < 1e-12);
        }
    }

    #[test]
    fn polar_form_of_complex_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..1000 {
            let c = CartanCoords {
                theta1: rng.random_range(0.0..PI),
                t: rng.random_range(0.0..2.0),
                theta2: rng.random_range(0.0..2.0 * PI),
            };
            let raw = c.recompose();
            let (z1, z2) = complex_pair_of(&raw);
            let e1 = Complex64::from_polar(c.t.cosh(), c.theta1 + c.theta2);
            let e2 = Complex64::from_polar(c.t.sinh(), c.theta1 - c.theta2);
            assert!((z1 - e1).norm() < 1e-10 && (z2 - e2).norm() < 1e-10);
        }
    }

    #[test]
    fn norm_matches_sum_of_squares() {
        let p = AdS3Point::new(CartanCoords { theta1: 0.4, t: 0.8, theta2: 2.2 }.to_element());
        let x = p.four_vector();
        let s: f64 = x.iter().map(|v| v * v).sum();
        assert!((p.norm().cosh() - s).abs() < 1e-12);
    }
}
