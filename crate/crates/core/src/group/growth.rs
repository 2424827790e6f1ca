//! Exponential growth constants `N_Gamma(x, R) < A e^{aR}`.

use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::psl2::AdS3Point;

use super::enumerate::orbit_ball;
use super::GroupPresentation;

/// Where a pair of growth constants came from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GrowthProvenance {
    /// Least-squares fit on probed counts. Not a proof.
    Fitted,
    UserSupplied,
    /// `A = c #(Gamma ∩ K)`, `a = 8 / (1 - alpha)` for an alpha-contractive group.
    FactDerived { alpha: f64 },
}

/// Constants `(A, a)` with `N_Gamma(x, R) < A e^{aR}`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[allow(non_snake_case)]
pub struct GrowthConstants {
    pub A: f64,
    pub a: f64,
    pub provenance: GrowthProvenance,
}

impl GrowthConstants {
    #[allow(non_snake_case)]
    pub fn user_supplied(A: f64, a: f64) -> Result<Self> {
        if !(A > 0.0 && A.is_finite() && a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidArgument("growth constants must be positive and finite"));
        }
        Ok(GrowthConstants { A, a, provenance: GrowthProvenance::UserSupplied })
    }

    /// Constants for an alpha-contractive group, with `c` the (non-explicit) counting constant
    /// and `compact_order = #(Gamma ∩ K)`.
    pub fn fact_derived(alpha: f64, c: f64, compact_order: u32) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) || !(c > 0.0 && c.is_finite()) || compact_order == 0 {
            return Err(Error::InvalidArgument("need 0 <= alpha < 1, c > 0 and a nonzero compact order"));
        }
        Ok(GrowthConstants {
            A: c * compact_order as f64,
            a: 8.0 / (1.0 - alpha),
            provenance: GrowthProvenance::FactDerived { alpha },
        })
    }

    /// `A e^{aR}`.
    pub fn bound(&self, radius: f64) -> f64 {
        self.A * (self.a * radius).exp()
    }

    /// Whether the bound is certified, as opposed to fitted.
    pub fn is_certified(&self) -> bool {
        !matches!(self.provenance, GrowthProvenance::Fitted)
    }

    /// Checks `N_Gamma(x, R) < A e^{aR}` at every radius given.
    pub fn validate(&self, gp: &GroupPresentation, x: &AdS3Point, radii: &[f64], budget: usize) -> Result<bool> {
        let Some(rmax) = radii.iter().copied().reduce(f64::max) else {
            return Ok(true);
        };
        let ball = orbit_ball(gp, x, rmax, budget)?;
        Ok(radii.iter().all(|&r| {
            let n = ball.elements.iter().filter(|e| e.moved_norm <= r).count();
            (n as f64) < self.bound(r)
        }))
    }
}

/// Smallest slope accepted from the fit.
const MIN_SLOPE: f64 = 1e-3;

/// Fits `ln N` against `R` on the grid `0, step, 2 step, ..., rmax`.
///
/// The slope is clamped below at `1e-3`. `A` is then raised until `A e^{a R_i} > N(R_{i+1})`
/// on every grid cell, so the bound also covers radii between grid points up to `rmax`.
pub fn fit_growth(
    gp: &GroupPresentation,
    x: &AdS3Point,
    rmax: f64,
    step: f64,
    budget: usize,
) -> Result<GrowthConstants> {
    if !(step > 0.0) || !(rmax >= step) || !rmax.is_finite() {
        return Err(Error::InvalidArgument("need 0 < step <= rmax"));
    }
    let ball = orbit_ball(gp, x, rmax, budget)?;
    let steps = (rmax / step).floor() as usize;
    let grid: Vec<f64> = (0..=steps).map(|i| i as f64 * step).collect();
    let counts: Vec<usize> =
        grid.iter().map(|&r| ball.elements.iter().filter(|e| e.moved_norm <= r).count()).collect();

    let pts: Vec<(f64, f64)> =
        grid.iter().zip(&counts).filter(|(_, &n)| n > 0).map(|(&r, &n)| (r, (n as f64).ln())).collect();
    let slope = if pts.len() >= 2 {
        let n = pts.len() as f64;
        let mr = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let ml = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mr) * (p.1 - ml)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mr) * (p.0 - mr)).sum();
        sxy / sxx
    } else {
        0.0
    };
    let a = slope.max(MIN_SLOPE);

    // N is nondecreasing, so on [R_i, R_{i+1}] it is at most N(R_{i+1}) while e^{aR} >= e^{aR_i}.
    let mut amp = 1.0_f64;
    for i in 0..grid.len() {
        let upper = counts[(i + 1).min(grid.len() - 1)] as f64;
        amp = amp.max(upper * (-a * grid[i]).exp());
    }
    Ok(GrowthConstants { A: amp * (1.0 + 1e-9), a, provenance: GrowthProvenance::Fitted })
}
