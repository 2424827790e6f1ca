//! The separation constant `eps_Gamma = inf (1/3) | ||g1|| - ||g2|| |` and related diagnostics.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::psl2::CartanCoords;

use super::enumerate::{walk_elements, EnumerationLimits};
use super::{GroupPresentation, IsometryPair, DEDUP_TOL};

/// Minimum gap a separating conjugation must achieve.
const SEPARATION_GAP: f64 = 1e-8;

fn nonidentity_elements(gp: &GroupPresentation, max_word_len: usize) -> Result<Vec<IsometryPair>> {
    let mut out = Vec::new();
    walk_elements(gp, EnumerationLimits::new(max_word_len), |_, p| {
        if !p.is_identity(DEDUP_TOL) {
            out.push(*p);
        }
    })?;
    Ok(out)
}

/// Smallest `| ||g1|| - ||g2|| |` over the given elements, `+inf` for none.
pub fn min_norm_gap<'a>(elements: impl IntoIterator<Item = &'a IsometryPair>) -> f64 {
    elements
        .into_iter()
        .map(|p| {
            let (a, b) = p.mu();
            (a - b).abs()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Upper bound on `eps_Gamma` from the nonidentity elements of word length `<= max_word_len`.
///
/// Returns `+inf` for the trivial group.
pub fn epsilon_upper(gp: &GroupPresentation, max_word_len: usize) -> Result<f64> {
    let max_word_len = max_word_len.max(1);
    let elems = nonidentity_elements(gp, max_word_len)?;
    Ok(min_norm_gap(&elems) / 3.0)
}

/// `systole * (1 - alpha) / 3`, valid when `||g2|| <= alpha ||g1||` and `||g1|| >= systole`
/// for every nonidentity element.
pub fn epsilon_lower_certified(alpha: f64, systole: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&alpha) || !(systole > 0.0) || !systole.is_finite() {
        return Err(Error::InvalidCertificateInput);
    }
    Ok(systole * (1.0 - alpha) / 3.0)
}

fn random_pair(rng: &mut ChaCha8Rng) -> IsometryPair {
    let mut one = || {
        CartanCoords {
            theta1: rng.random_range(0.0..core::f64::consts::PI),
            t: rng.random_range(0.0..2.0),
            theta2: rng.random_range(0.0..core::f64::consts::PI),
        }
        .to_element()
    };
    let first = one();
    let second = one();
    IsometryPair::new(first, second)
}

/// Finds `g` such that every enumerated nonidentity element of `g^-1 Gamma g` has
/// `| ||g1|| - ||g2|| | > 1e-8`. The identity is tried first; later candidates are drawn
/// from a generator seeded with `seed`.
pub fn separating_conjugation(
    gp: &GroupPresentation,
    depth: usize,
    trials: usize,
    seed: u64,
) -> Result<IsometryPair> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1"));
    }
    let elems = nonidentity_elements(gp, depth)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_gap = f64::NEG_INFINITY;
    let mut candidate = IsometryPair::IDENTITY;
    for _ in 0..=trials {
        let gap = elems
            .iter()
            .map(|e| {
                let (a, b) = e.conjugate_by(&candidate).mu();
                (a - b).abs()
            })
            .fold(f64::INFINITY, f64::min);
        if gap > SEPARATION_GAP {
            return Ok(candidate);
        }
        best_gap = best_gap.max(gap);
        candidate = random_pair(&mut rng);
    }
    Err(Error::SearchFailed { best_gap })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaReport {
    pub holds: bool,
    /// Largest `min(||g2|| / ||g1||, ||g1|| / ||g2||)` seen.
    pub worst_ratio: f64,
}

/// Checks `||g2|| <= alpha ||g1||` or `||g1|| <= alpha ||g2||` on enumerated nonidentity elements.
pub fn alpha_contraction_check(gp: &GroupPresentation, alpha: f64, max_word_len: usize) -> Result<AlphaReport> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidArgument("alpha must lie in [0, 1)"));
    }
    let elems = nonidentity_elements(gp, max_word_len)?;
    let worst_ratio = elems
        .iter()
        .map(|p| {
            let (a, b) = p.mu();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            if hi < 1e-12 {
                1.0
            } else {
                lo / hi
            }
        })
        .fold(0.0, f64::max);
    Ok(AlphaReport { holds: worst_ratio <= alpha + 1e-12, worst_ratio })
}
