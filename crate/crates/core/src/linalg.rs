//! A certified lower bound on the smallest singular value of a tall matrix.

use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::Float;

use crate::error::{Error, Result};

/// Relative allowance for rounding in the Gram matrix and its Cholesky factorization.
pub const GRAM_ALLOWANCE: f64 = 1e-10;

/// Halvings of the Cholesky shift before giving up.
const MAX_SHIFT_HALVINGS: usize = 60;

/// Returns `s <= sigma_min(M)` for the row-major `rows x cols` matrix `M`, `rows >= cols`.
///
/// Columns are scaled to unit length first (`M = N D^-1`, so `sigma_min(M) >=
/// sigma_min(N) min_j |c_j|`). An eigenvalue estimate of `G = N^T N` proposes a shift `mu`, and a
/// successful Cholesky factorization of `G - mu I` proves `lambda_min(G) >= mu - 1e-10 |G|_F`.
/// The shift is halved until the factorization succeeds. Returns 0 when nothing positive can be
/// certified.
pub fn sigma_min_lower_bound(rows: usize, cols: usize, data: &[f64]) -> Result<f64> {
    if cols == 0 || data.len() != rows * cols {
        return Err(Error::InvalidArgument("matrix shape does not match data"));
    }
    if data.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("matrix entries must be finite"));
    }
    if rows < cols {
        return Ok(0.0);
    }
    let m = DMatrix::from_row_slice(rows, cols, data);
    let norms: Vec<f64> = m.column_iter().map(|c| c.norm()).collect();
    let min_norm = norms.iter().copied().fold(f64::INFINITY, f64::min);
    if !(min_norm > 0.0) {
        return Ok(0.0);
    }
    let mut n = m;
    for (j, nj) in norms.iter().enumerate() {
        n.column_mut(j).unscale_mut(*nj);
    }
    let g = n.transpose() * &n;
    let allowance = GRAM_ALLOWANCE * g.norm();
    let estimate = SymmetricEigen::new(g.clone()).eigenvalues.min();

    let mut mu = 0.999 * estimate;
    for _ in 0..MAX_SHIFT_HALVINGS {
        if mu <= allowance {
            break;
        }
        let shifted = &g - DMatrix::<f64>::identity(cols, cols) * mu;
        if shifted.cholesky().is_some() {
            let lambda = mu - allowance;
            // sqrt and the product each round by at most one ulp
            return Ok(lambda.sqrt() * min_norm * (1.0 - 4.0 * f64::EPSILON));
        }
        mu /= 2.0;
    }
    Ok(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Smallest singular value of a 2-column matrix as `sqrt(det G / lambda_max(G))`, with
    /// `det G = |u|^2 |v_perp|^2` from two passes of Gram-Schmidt.
    fn sigma_min_two_cols(rows: usize, data: &[f64]) -> f64 {
        let u: Vec<f64> = (0..rows).map(|r| data[2 * r]).collect();
        let mut v: Vec<f64> = (0..rows).map(|r| data[2 * r + 1]).collect();
        let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
        let (uu, vv, uv) = (dot(&u, &u), dot(&v, &v), dot(&u, &v));
        for _ in 0..2 {
            let c = dot(&u, &v) / uu;
            v.iter_mut().zip(&u).for_each(|(vi, ui)| *vi -= c * ui);
        }
        let det = uu * dot(&v, &v);
        let lmax = (uu + vv + ((uu - vv) * (uu - vv) + 4.0 * uv * uv).sqrt()) / 2.0;
        (det / lmax).sqrt()
    }

    #[test]
    fn identity_and_shape_errors() {
        let id = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0];
        let s = sigma_min_lower_bound(3, 3, &id).unwrap();
        assert!(s <= 1.0 && s > 0.999);
        assert!(sigma_min_lower_bound(3, 2, &id).is_err());
        assert_eq!(sigma_min_lower_bound(1, 2, &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(sigma_min_lower_bound(2, 1, &[0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn bound_is_below_and_close_to_truth() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..500 {
            let rows = rng.random_range(2..20);
            let scale: f64 = 10f64.powi(rng.random_range(-12..3));
            let data: Vec<f64> = (0..2 * rows)
                .map(|i| rng.random_range(-1.0..1.0) * if i % 2 == 0 { 1.0 } else { scale })
                .collect();
            let truth = sigma_min_two_cols(rows, &data);
            let lb = sigma_min_lower_bound(rows, 2, &data).unwrap();
            assert!(lb <= truth * (1.0 + 1e-12), "lb {lb} truth {truth}");
            if truth > 1e-3 * scale {
                assert!(lb > 0.5 * truth, "lb {lb} truth {truth}");
            }
        }
    }

    #[test]
    fn rank_deficient_gives_tiny_bound() {
        // third column is the sum of the first two
        let mut data = Vec::new();
        for r in 0..8 {
            let (x, y) = (r as f64 * 0.3 - 1.0, (r as f64).sin());
            data.extend_from_slice(&[x, y, x + y]);
        }
        let lb = sigma_min_lower_bound(8, 3, &data).unwrap();
        assert!(lb < 1e-4, "{lb}");
    }
}
