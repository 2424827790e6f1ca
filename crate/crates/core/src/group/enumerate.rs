//! Breadth-first word enumeration and pseudo-ball orbit counting.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::psl2::AdS3Point;

use super::{GroupPresentation, IsometryPair, ReductionStrategy, Word, DEDUP_TOL};

/// Default cap on visited nodes.
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// Inclusion slack for the pseudo-ball boundary.
const BALL_SLACK: f64 = 1e-9;

/// Word-length schedule tried by [`orbit_ball`].
const DEPTH_SCHEDULE: [usize; 14] = [2, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128, 192, 256];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnumerationLimits {
    pub max_word_len: usize,
    pub budget: usize,
}

impl EnumerationLimits {
    pub fn new(max_word_len: usize) -> Self {
        EnumerationLimits { max_word_len, budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitElement {
    pub word: Word,
    pub pair: IsometryPair,
    pub moved_norm: f64,
}

/// The Γ-elements moving `center` into the pseudo-ball `B(radius)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitBall {
    pub center: AdS3Point,
    pub radius: f64,
    pub elements: Vec<OrbitElement>,
    /// Every word up to `max_word_len` was accounted for and the words of exactly that
    /// length all lie provably outside the ball (or the whole group was enumerated).
    pub exhaustive: bool,
    /// The breadth-first search closed up without pruning: the group is finite and listed.
    pub group_exhausted: bool,
    pub max_word_len: usize,
    pub nodes_visited: usize,
}

impl OrbitBall {
    pub fn count(&self) -> usize {
        self.elements.len()
    }
}

pub(crate) struct WalkStats {
    pub nodes: usize,
    /// A layer produced no new nodes while nothing had been pruned.
    pub closed: bool,
}

/// Order-insensitive lookup of group elements at tolerance [`DEDUP_TOL`].
struct DedupSet {
    keys: BTreeMap<KeyF64, Vec<usize>>,
    items: Vec<IsometryPair>,
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
struct KeyF64(f64);

impl Eq for KeyF64 {}

impl Ord for KeyF64 {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Generic linear functional, made sign-blind per factor.
fn dedup_key(p: &IsometryPair) -> (f64, f64) {
    const W: [f64; 4] = [1.0, 0.618_033_988_75, 0.414_213_562_37, 0.732_050_807_57];
    let f = |e: [f64; 4]| e.iter().zip(W.iter()).map(|(x, w)| x * w).sum::<f64>().abs();
    let scale = |e: [f64; 4]| e.iter().fold(1.0_f64, |s, x| s.max(x.abs()));
    let (a, b) = (p.first.entries(), p.second.entries());
    (f(a) + f(b), 3.0 * (scale(a) + scale(b)))
}

fn max_entry(g: &crate::psl2::GroupElement) -> f64 {
    g.entries().iter().fold(1.0_f64, |s, x| s.max(x.abs()))
}

/// Whether `q` equals the element whose inverse is `p_inv`.
fn same_element(q: &IsometryPair, p_inv: &IsometryPair) -> bool {
    near_identity(&q.first, &p_inv.first) && near_identity(&q.second, &p_inv.second)
}

/// Whether `a b = +-1`, with the product formed without renormalization.
fn near_identity(a: &crate::psl2::GroupElement, b: &crate::psl2::GroupElement) -> bool {
    let ([a0, a1, a2, a3], [b0, b1, b2, b3]) = (a.entries(), b.entries());
    let prod = [a0 * b0 + a1 * b2, a0 * b1 + a1 * b3, a2 * b0 + a3 * b2, a2 * b1 + a3 * b3];
    let tol = DEDUP_TOL.max(64.0 * f64::EPSILON * max_entry(a) * max_entry(b));
    let dist = |s: f64| {
        let [p0, p1, p2, p3] = prod;
        (p0 - s).abs().max(p1.abs()).max(p2.abs()).max((p3 - s).abs())
    };
    dist(1.0).min(dist(-1.0)) <= tol
}

impl DedupSet {
    fn new() -> Self {
        DedupSet { keys: BTreeMap::new(), items: Vec::new() }
    }

    /// Inserts unless an equal element is present; returns whether it was new.
    ///
    /// Equality is tested as `q p^-1 = 1`, whose rounding grows like the product of the entry
    /// sizes; nontrivial elements of a discrete group stay a fixed distance from the identity.
    fn insert(&mut self, p: IsometryPair) -> bool {
        let (k, scale) = dedup_key(&p);
        let width = 1e-6 * scale;
        let inv = p.inverse();
        for (_, idxs) in self.keys.range(KeyF64(k - width)..=KeyF64(k + width)) {
            if idxs.iter().any(|&i| same_element(&self.items[i], &inv)) {
                return false;
            }
        }
        self.keys.entry(KeyF64(k)).or_default().push(self.items.len());
        self.items.push(p);
        true
    }
}

/// Breadth-first walk over words of length `<= max_word_len`.
///
/// `visit(word, element)` is called once per node and returns whether to expand it.
/// Nodes are visited in word order within each layer.
pub(crate) fn walk<F>(gp: &GroupPresentation, limits: EnumerationLimits, mut visit: F) -> Result<WalkStats>
where
    F: FnMut(&Word, &IsometryPair) -> bool,
{
    let letters = gp.letters();
    let mut seen = DedupSet::new();
    let dedup = gp.strategy() == ReductionStrategy::HashDedup;
    if dedup {
        seen.insert(IsometryPair::IDENTITY);
    }
    let mut layer: Vec<(Word, IsometryPair)> = alloc::vec![(Word::default(), IsometryPair::IDENTITY)];
    let mut nodes = 0usize;
    let mut pruned_any = false;
    let mut depth = 0usize;
    loop {
        let mut next = Vec::new();
        for (word, elem) in &layer {
            nodes += 1;
            if nodes > limits.budget {
                return Err(Error::BudgetExceeded { budget: limits.budget });
            }
            let expand = visit(word, elem);
            if depth >= limits.max_word_len {
                continue;
            }
            if !expand {
                pruned_any = true;
                continue;
            }
            let last = word.0.last().copied();
            for (l, letter) in letters.iter().enumerate() {
                let l = l as u16;
                if !dedup && last.is_some_and(|p| gp.inverse_letter(p) == l) {
                    continue;
                }
                let child = elem.compose(letter);
                if dedup && !seen.insert(child) {
                    continue;
                }
                let mut w = word.0.clone();
                w.push(l);
                next.push((Word(w), child));
            }
        }
        if next.is_empty() {
            let closed = !pruned_any && depth < limits.max_word_len;
            return Ok(WalkStats { nodes, closed });
        }
        depth += 1;
        layer = next;
    }
}

/// Calls `visit` on every element reachable by words of length `<= limits.max_word_len`.
pub fn walk_elements<F>(gp: &GroupPresentation, limits: EnumerationLimits, mut visit: F) -> Result<usize>
where
    F: FnMut(&Word, &IsometryPair),
{
    walk(gp, limits, |w, p| {
        visit(w, p);
        true
    })
    .map(|s| s.nodes)
}

/// Lists Γ-elements `gamma` with `||gamma x|| <= radius`, searching words up to the given length.
///
/// A word `w` is not expanded when `| ||w1|| - ||w2|| | - ||x|| - (L - |w|) * s > radius`,
/// where `s` bounds the per-letter change of `||w1|| - ||w2||`; every extension within the
/// length limit `L` then stays outside the ball.
pub fn enumerate_ball(
    gp: &GroupPresentation,
    x: &AdS3Point,
    radius: f64,
    limits: EnumerationLimits,
) -> Result<OrbitBall> {
    if !(radius >= 0.0) {
        return Err(Error::InvalidArgument("radius must be nonnegative"));
    }
    let x_norm = x.norm();
    let slack = gp.letter_slack();
    let max_len = limits.max_word_len;
    let mut elements = Vec::new();
    let mut frontier_open = false;
    let stats = walk(gp, limits, |word, pair| {
        let moved = pair.act(x).norm();
        if moved <= radius + BALL_SLACK {
            elements.push(OrbitElement { word: word.clone(), pair: *pair, moved_norm: moved });
        }
        let (n1, n2) = pair.mu();
        let gap = (n1 - n2).abs() - x_norm;
        if word.len() >= max_len {
            if gap <= radius + BALL_SLACK {
                frontier_open = true;
            }
            return false;
        }
        gap - (max_len - word.len()) as f64 * slack <= radius + BALL_SLACK
    })?;
    elements.sort_by(|a, b| a.word.cmp(&b.word).then_with(|| a.pair.entry_cmp(&b.pair)));
    Ok(OrbitBall {
        center: *x,
        radius,
        elements,
        exhaustive: stats.closed || !frontier_open,
        group_exhausted: stats.closed,
        max_word_len: max_len,
        nodes_visited: stats.nodes,
    })
}

/// Deepens the word-length limit until [`enumerate_ball`] certifies the ball.
pub fn orbit_ball(gp: &GroupPresentation, x: &AdS3Point, radius: f64, budget: usize) -> Result<OrbitBall> {
    let mut last = 0;
    for &len in DEPTH_SCHEDULE.iter() {
        let ball = enumerate_ball(gp, x, radius, EnumerationLimits { max_word_len: len, budget })?;
        if ball.exhaustive {
            return Ok(ball);
        }
        last = len;
    }
    Err(Error::IncompleteFrontier { max_word_len: last })
}

/// `N_Gamma(x, R)`, requiring a certified-complete ball.
pub fn count(gp: &GroupPresentation, x: &AdS3Point, radius: f64, budget: usize) -> Result<usize> {
    orbit_ball(gp, x, radius, budget).map(|b| b.count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psl2::GroupElement;

    fn cyclic(s: f64, strategy: ReductionStrategy) -> GroupPresentation {
        GroupPresentation::new(
            "cyclic",
            alloc::vec![IsometryPair::new(GroupElement::boost(s), GroupElement::IDENTITY)],
            strategy,
        )
        .unwrap()
    }

    #[test]
    fn trivial_group_counts_identity() {
        let gp = GroupPresentation::trivial("trivial");
        let x = AdS3Point::new(GroupElement::boost(0.5));
        let ball = orbit_ball(&gp, &x, 2.0, DEFAULT_BUDGET).unwrap();
        assert_eq!(ball.count(), 1);
        assert!(ball.group_exhausted);
        assert_eq!(count(&gp, &x, 0.5, DEFAULT_BUDGET).unwrap(), 0);
    }

    #[test]
    fn cyclic_counts_closed_form() {
        for strategy in [ReductionStrategy::FreeGroup, ReductionStrategy::HashDedup] {
            for &s in &[0.5, 1.0, 2.0] {
                let gp = cyclic(s, strategy);
                for r in 0..=20 {
                    let r = r as f64;
                    let n = count(&gp, &AdS3Point::ORIGIN, r, DEFAULT_BUDGET).unwrap();
                    assert_eq!(n, 2 * (r / (2.0 * s)).floor() as usize + 1, "s={s} R={r}");
                }
            }
        }
    }

    #[test]
    fn shallow_search_is_not_exhaustive() {
        let gp = cyclic(1.0, ReductionStrategy::FreeGroup);
        let ball = enumerate_ball(&gp, &AdS3Point::ORIGIN, 10.0, EnumerationLimits::new(3)).unwrap();
        assert!(!ball.exhaustive);
        assert!(matches!(count(&gp, &AdS3Point::ORIGIN, 10.0, 5), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn non_proper_diagonal_never_certifies() {
        let a = GroupElement::boost(1.0);
        let gp = GroupPresentation::new("diag", alloc::vec![IsometryPair::new(a, a)], ReductionStrategy::FreeGroup)
            .unwrap();
        assert!(matches!(
            orbit_ball(&gp, &AdS3Point::ORIGIN, 1.0, DEFAULT_BUDGET),
            Err(Error::IncompleteFrontier { .. })
        ));
    }

    #[test]
    fn finite_cyclic_rotation_group_is_closed() {
        let k = GroupElement::rotation(core::f64::consts::PI / 3.0);
        let gp = GroupPresentation::new(
            "z3",
            alloc::vec![IsometryPair::new(GroupElement::IDENTITY, k)],
            ReductionStrategy::HashDedup,
        )
        .unwrap();
        let ball = orbit_ball(&gp, &AdS3Point::ORIGIN, 0.1, DEFAULT_BUDGET).unwrap();
        assert!(ball.group_exhausted);
        assert_eq!(ball.count(), 3);
    }

    #[test]
    fn elements_sorted_and_inside() {
        let gp = cyclic(0.5, ReductionStrategy::FreeGroup);
        let ball = orbit_ball(&gp, &AdS3Point::new(GroupElement::boost(0.3)), 5.0, DEFAULT_BUDGET).unwrap();
        assert!(ball.elements.windows(2).all(|w| w[0].word <= w[1].word));
        assert!(ball.elements.iter().all(|e| e.moved_norm <= 5.0 + 1e-9));
    }
}
