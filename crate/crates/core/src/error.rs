use core::fmt;

/// Errors raised by the computational core.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A matrix handed in as a group element has `|det - 1|` above the hard limit.
    InvalidDeterminant { det: f64 },
    /// A point supplied as an AdS³ point is not on the quadric.
    NotOnQuadric { q: f64 },
    /// Spherical parameters outside `m >= 1`, `k + 2m <= 2^15`.
    InvalidParams { m: u32, k: u32 },
    /// Enumeration visited more nodes than the configured cap.
    BudgetExceeded { budget: usize },
    /// The word-length frontier was reached without certifying the ball.
    IncompleteFrontier { max_word_len: usize },
    /// A presentation generator equals the identity pair.
    IdentityGenerator { index: usize },
    /// Input to the certified epsilon bound is out of range.
    InvalidCertificateInput,
    /// Randomized conjugation search did not separate the norms.
    SearchFailed { best_gap: f64 },
    /// Class-n construction or eta with an out-of-range `n`.
    InvalidClass { n: u32 },
    /// No word with a hyperbolic image under `j` was enumerated.
    NoHyperbolicWords,
    /// Radial L² norm diverges (`m < 1`).
    DivergentNorm,
    /// `N` must be odd and at least 3.
    InvalidN { n: u32 },
    /// Sign vector does not match the signs of the coefficient vector.
    SignMismatch,
    /// Geometric tail ratio is not below 1, or `m <= a`.
    DivergentTail { ratio: f64 },
    /// Epsilon outside the admissible range.
    InvalidEpsilon { eps: f64 },
    /// Finite-difference stencil gets too close to the light cone `Q = 0`.
    NearCone { q: f64 },
    /// Dimension or shape mismatch in an argument.
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDeterminant { det } => write!(f, "determinant {det} too far from 1"),
            Error::NotOnQuadric { q } => write!(f, "point has Q = {q}, expected 1"),
            Error::InvalidParams { m, k } => write!(f, "invalid spherical parameters m={m}, k={k}"),
            Error::BudgetExceeded { budget } => write!(f, "enumeration budget of {budget} nodes exceeded"),
            Error::IncompleteFrontier { max_word_len } => {
                write!(f, "orbit ball not certified complete at word length {max_word_len}")
            }
            Error::IdentityGenerator { index } => write!(f, "generator {index} is the identity"),
            Error::InvalidCertificateInput => write!(f, "certified epsilon needs 0 <= alpha < 1 and systole > 0"),
            Error::SearchFailed { best_gap } => {
                write!(f, "no separating conjugation found (best gap {best_gap:e})")
            }
            Error::InvalidClass { n } => write!(f, "invalid class n = {n}"),
            Error::NoHyperbolicWords => write!(f, "no hyperbolic words at this depth"),
            Error::DivergentNorm => write!(f, "radial L2 norm diverges for m < 1"),
            Error::InvalidN { n } => write!(f, "N = {n} must be odd and >= 3"),
            Error::SignMismatch => write!(f, "sign vector does not match coefficient signs"),
            Error::DivergentTail { ratio } => write!(f, "tail bound diverges (ratio {ratio})"),
            Error::InvalidEpsilon { eps } => write!(f, "epsilon {eps} outside admissible range"),
            Error::NearCone { q } => write!(f, "stencil too close to the light cone (Q = {q})"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
