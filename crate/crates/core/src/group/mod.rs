//! Finitely generated subgroups of `G = PSL(2,R) x PSL(2,R)` acting on AdS³ by
//! `x -> g1 x g2^-1`.

mod classn;
mod enumerate;
mod epsilon;
mod growth;

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::psl2::{AdS3Point, GroupElement};

pub use classn::{lipschitz_lower_bound, standard_class_n, translation_length};
pub use enumerate::{
    count, enumerate_ball, orbit_ball, walk_elements, EnumerationLimits, OrbitBall, OrbitElement,
    DEFAULT_BUDGET,
};
pub use epsilon::{
    alpha_contraction_check, epsilon_lower_certified, epsilon_upper, min_norm_gap,
    separating_conjugation, AlphaReport,
};
pub use growth::{fit_growth, GrowthConstants, GrowthProvenance};

/// Tolerance used to identify group elements.
pub const DEDUP_TOL: f64 = 1e-9;

/// An isometry `(g1, g2)` of AdS³.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsometryPair {
    pub first: GroupElement,
    pub second: GroupElement,
}

impl IsometryPair {
    pub const IDENTITY: IsometryPair =
        IsometryPair { first: GroupElement::IDENTITY, second: GroupElement::IDENTITY };

    pub fn new(first: GroupElement, second: GroupElement) -> Self {
        IsometryPair { first, second }
    }

    pub fn compose(&self, other: &IsometryPair) -> IsometryPair {
        IsometryPair { first: self.first * other.first, second: self.second * other.second }
    }

    pub fn inverse(&self) -> IsometryPair {
        IsometryPair { first: self.first.inverse(), second: self.second.inverse() }
    }

    /// `g^-1 self g`, componentwise.
    pub fn conjugate_by(&self, g: &IsometryPair) -> IsometryPair {
        IsometryPair {
            first: self.first.conjugate_by(&g.first),
            second: self.second.conjugate_by(&g.second),
        }
    }

    /// `g1 x g2^-1`.
    pub fn act(&self, x: &AdS3Point) -> AdS3Point {
        AdS3Point::new(self.first * *x.element() * self.second.inverse())
    }

    /// `(||g1||, ||g2||)`.
    pub fn mu(&self) -> (f64, f64) {
        (self.first.norm(), self.second.norm())
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.first.is_identity(tol) && self.second.is_identity(tol)
    }

    pub fn approx_eq(&self, other: &IsometryPair, tol: f64) -> bool {
        self.first.approx_eq(&other.first, tol) && self.second.approx_eq(&other.second, tol)
    }

    /// Lexicographic order on the eight matrix entries.
    pub(crate) fn entry_cmp(&self, other: &IsometryPair) -> Ordering {
        let a = self.first.entries().into_iter().chain(self.second.entries());
        let b = other.first.entries().into_iter().chain(other.second.entries());
        for (x, y) in a.zip(b) {
            match x.total_cmp(&y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

/// How words over the generators are pruned of duplicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionStrategy {
    /// Freely reduced words; assumes the generators are free.
    FreeGroup,
    /// Breadth-first with element hashing at tolerance [`DEDUP_TOL`].
    HashDedup,
}

/// A word in the letters `0..2n`: letter `i < n` is generator `i`, letter `n + i` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    /// Formats with `a..z` for generators and `A..Z` for inverses, `e` for the empty word.
    pub fn display(&self, rank: usize) -> WordDisplay<'_> {
        WordDisplay { word: self, rank }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    rank: usize,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        let rank = self.rank.max(1);
        for (pos, &l) in self.word.0.iter().enumerate() {
            let (gen, inv) = ((l as usize) % rank, (l as usize) >= rank);
            if rank <= 26 {
                let base = if inv { b'A' } else { b'a' };
                write!(f, "{}", (base + gen as u8) as char)?;
            } else {
                if pos > 0 {
                    f.write_str(".")?;
                }
                write!(f, "{}{}", if inv { "X" } else { "x" }, gen)?;
            }
        }
        Ok(())
    }
}

/// A finite generating set with its reduction strategy.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupPresentation {
    label: String,
    generators: Vec<IsometryPair>,
    letters: Vec<IsometryPair>,
    strategy: ReductionStrategy,
    kernel_order: Option<u32>,
}

impl GroupPresentation {
    pub fn new(
        label: impl Into<String>,
        generators: Vec<IsometryPair>,
        strategy: ReductionStrategy,
    ) -> Result<Self> {
        if let Some(index) = generators.iter().position(|g| g.is_identity(DEDUP_TOL)) {
            return Err(Error::IdentityGenerator { index });
        }
        let mut letters = generators.clone();
        letters.extend(generators.iter().map(IsometryPair::inverse));
        Ok(GroupPresentation { label: label.into(), generators, letters, strategy, kernel_order: None })
    }

    pub fn trivial(label: impl Into<String>) -> Self {
        GroupPresentation {
            label: label.into(),
            generators: Vec::new(),
            letters: Vec::new(),
            strategy: ReductionStrategy::HashDedup,
            kernel_order: None,
        }
    }

    /// Order of the first-projection kernel, when the presentation was built as class-n standard.
    pub fn kernel_order(&self) -> Option<u32> {
        self.kernel_order
    }

    pub(crate) fn with_kernel_order(mut self, n: u32) -> Self {
        self.kernel_order = Some(n);
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generators(&self) -> &[IsometryPair] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn strategy(&self) -> ReductionStrategy {
        self.strategy
    }

    pub fn with_strategy(mut self, strategy: ReductionStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    /// Generators followed by their inverses.
    pub fn letters(&self) -> &[IsometryPair] {
        &self.letters
    }

    pub(crate) fn inverse_letter(&self, l: u16) -> u16 {
        let n = self.generators.len() as u16;
        if l < n {
            l + n
        } else {
            l - n
        }
    }

    /// Evaluates a word as a group element.
    pub fn evaluate(&self, word: &Word) -> IsometryPair {
        word.0.iter().fold(IsometryPair::IDENTITY, |acc, &l| acc.compose(&self.letters[l as usize]))
    }

    /// Presentation of `g^-1 Gamma g`.
    pub fn conjugate_by(&self, g: &IsometryPair) -> GroupPresentation {
        let generators: Vec<_> = self.generators.iter().map(|h| h.conjugate_by(g)).collect();
        let mut letters = generators.clone();
        letters.extend(generators.iter().map(IsometryPair::inverse));
        GroupPresentation {
            label: self.label.clone(),
            generators,
            letters,
            strategy: self.strategy,
            kernel_order: self.kernel_order,
        }
    }

    /// Largest `||g1|| + ||g2||` over the letters: the most one letter can move `||w1|| - ||w2||`.
    pub fn letter_slack(&self) -> f64 {
        self.generators.iter().map(|g| {
            let (a, b) = g.mu();
            a + b
        })
        .fold(0.0, f64::max)
    }
}
