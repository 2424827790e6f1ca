//! Generalized Poincaré series of spherical eigenfunctions on quotients of anti-de Sitter
//! 3-space, with certified tail bounds and linear-independence certificates.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// Once std is anywhere in the build graph, f64's inherent math methods take precedence over
// `num_traits::Float` and its imports are reported as unused.
#![allow(unused_imports)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod certificate;
pub mod eigen;
pub mod error;
pub mod group;
pub mod linalg;
pub mod psl2;
pub mod series;
pub mod thresholds;

pub use certificate::{CertificateVerdict, IndependenceCertificate};
pub use eigen::SphericalParams;
pub use error::{Error, Result};
pub use group::{GroupPresentation, IsometryPair, ReductionStrategy, Word};
pub use series::{CertifiedValue, SeriesOptions, SignVector};
pub use psl2::{AdS3Point, CartanCoords, GroupElement};
