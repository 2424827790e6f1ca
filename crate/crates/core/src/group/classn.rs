//! Standard groups of class `n` and a translation-length Lipschitz diagnostic.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::psl2::GroupElement;

use super::enumerate::{walk_elements, EnumerationLimits};
use super::{GroupPresentation, IsometryPair, ReductionStrategy};

/// Builds `{(gamma, E)} ∪ {(E, a(r/8)^-1 k(pi/n) a(r/8))}` from Fuchsian generators.
///
/// For `n = 1` the torsion factor is omitted. The second generator has order `n` in `PSL(2,R)`
/// and spans the kernel of the first projection, whose order is recorded on the presentation.
pub fn standard_class_n(fuchsian_gens: &[GroupElement], n: u32, r: f64) -> Result<GroupPresentation> {
    if n < 1 {
        return Err(Error::InvalidClass { n });
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument("r must be positive"));
    }
    let mut gens: Vec<IsometryPair> =
        fuchsian_gens.iter().map(|g| IsometryPair::new(*g, GroupElement::IDENTITY)).collect();
    let label = if n == 1 {
        format!("Delta^(j,triv) rank {}", fuchsian_gens.len())
    } else {
        let a = GroupElement::boost(r / 8.0);
        let k = GroupElement::rotation(core::f64::consts::PI / n as f64);
        gens.push(IsometryPair::new(GroupElement::IDENTITY, k.conjugate_by(&a)));
        format!("class-{n} rank {} r={r}", fuchsian_gens.len())
    };
    Ok(GroupPresentation::new(label, gens, ReductionStrategy::HashDedup)?.with_kernel_order(n))
}

/// `2 arccosh(|tr g| / 2)` for hyperbolic `g`, else 0.
pub fn translation_length(g: &GroupElement) -> f64 {
    let t = g.trace().abs();
    if t > 2.0 {
        2.0 * (t / 2.0).acosh()
    } else {
        0.0
    }
}

/// Trace margin above 2 for a word to count as hyperbolic.
const HYPERBOLIC_MARGIN: f64 = 1e-9;

/// Largest `l(rho(w)) / l(j(w))` over freely reduced words `w` of length `<= max_word_len`
/// with `j(w)` hyperbolic, where `l` is the translation length.
///
/// This is a lower bound on the Lipschitz constant of `(j, rho)`-equivariant maps, not a certificate.
pub fn lipschitz_lower_bound(
    j_gens: &[GroupElement],
    rho_gens: &[GroupElement],
    max_word_len: usize,
) -> Result<f64> {
    if j_gens.len() != rho_gens.len() {
        return Err(Error::InvalidArgument("j and rho need the same number of generators"));
    }
    let pairs = j_gens.iter().zip(rho_gens).map(|(j, r)| IsometryPair::new(*j, *r)).collect();
    let gp = GroupPresentation::new("lipschitz", pairs, ReductionStrategy::FreeGroup)?;
    let mut best: Option<f64> = None;
    walk_elements(&gp, EnumerationLimits::new(max_word_len), |_, p| {
        if p.first.trace().abs() > 2.0 + HYPERBOLIC_MARGIN {
            let ratio = translation_length(&p.second) / translation_length(&p.first);
            best = Some(best.map_or(ratio, |b| b.max(ratio)));
        }
    })?;
    best.ok_or(Error::NoHyperbolicWords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{epsilon_upper, DEDUP_TOL};

    fn eta(n: u32, r: f64) -> f64 {
        let s = (r / 4.0).sinh() * (core::f64::consts::PI / n as f64).sin();
        (1.0 + 2.0 * s * s).acosh()
    }

    fn schottky() -> [GroupElement; 2] {
        let (c, s) = (1.0_f64.cosh(), 1.0_f64.sinh());
        [GroupElement::new(c, s, s, c).unwrap(), GroupElement::new(c, 9.0 * s, s / 9.0, c).unwrap()]
    }

    #[test]
    fn class_one_has_no_torsion_factor() {
        let gp = standard_class_n(&[GroupElement::boost(1.0)], 1, 1.0).unwrap();
        assert_eq!(gp.rank(), 1);
        assert_eq!(gp.kernel_order(), Some(1));
        assert!(gp.label().starts_with("Delta^(j,triv)"));
        assert_eq!(standard_class_n(&[], 0, 1.0).unwrap_err(), Error::InvalidClass { n: 0 });
    }

    #[test]
    fn torsion_generator_norm_and_order() {
        let gp = standard_class_n(&[GroupElement::boost(1.0)], 2, 1.0).unwrap();
        let t = gp.generators()[1].second;
        assert!(t.norm() >= eta(2, 1.0) - 1e-12);
        assert!((t * t).is_identity(DEDUP_TOL));
        let gp = standard_class_n(&[GroupElement::boost(1.0)], 5, 1.0).unwrap();
        let t = gp.generators()[1].second;
        let t5 = (0..5).fold(GroupElement::IDENTITY, |acc, _| acc * t);
        assert!(t5.is_identity(DEDUP_TOL));
    }

    #[test]
    fn epsilon_respects_class_n_lower_bound() {
        for n in 2..=4 {
            for &r in &[0.5, 1.0] {
                // ||a(r)|| = 2r >= r, so the Fuchsian factor has systole at least r.
                let gp = standard_class_n(&[GroupElement::boost(r)], n, r).unwrap();
                let lower = (eta(n, r) / 3.0).min(r / 6.0);
                assert!(epsilon_upper(&gp, 6).unwrap() >= lower - 1e-9, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn lipschitz_trivial_identity_and_conjugate() {
        let j = schottky();
        let triv = [GroupElement::IDENTITY; 2];
        assert_eq!(lipschitz_lower_bound(&j, &triv, 3).unwrap(), 0.0);
        assert!((lipschitz_lower_bound(&j, &j, 3).unwrap() - 1.0).abs() < 1e-9);
        let g = GroupElement::new(2.0, 1.0, 3.0, 2.0).unwrap();
        let conj: Vec<_> = j.iter().map(|h| h.conjugate_by(&g)).collect();
        assert!((lipschitz_lower_bound(&j, &conj, 3).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn lipschitz_needs_hyperbolic_words() {
        let k = [GroupElement::rotation(0.7)];
        assert_eq!(lipschitz_lower_bound(&k, &k, 3), Err(Error::NoHyperbolicWords));
        assert!(lipschitz_lower_bound(&k, &[], 3).is_err());
    }
}
