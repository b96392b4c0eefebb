//! Closed-form predictions for grain boundaries.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::geometry::{SurfaceKind, SurfaceSpec};
use crate::numerics::{fibonacci, NumericsError, GOLDEN_RATIO};

/// `√(2π/√5)`, the limit of the shortest neighbour distance.
pub const MIN_DISTANCE_LIMIT: f64 = 1.676_283_356_839_257_9;

/// `√(2π)`, the diagonal of a square cell of area π.
pub const MAX_DISTANCE_LIMIT: f64 = 2.506_628_274_631_000_2;

#[derive(Debug, Clone, PartialEq)]
pub enum PredictionError {
    Numerics(NumericsError),
    /// The boundary does not fit on the sphere: `P > 2πR`.
    DoesNotFit { rank: u32, ratio: f64 },
}

impl fmt::Display for PredictionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredictionError::Numerics(e) => e.fmt(f),
            PredictionError::DoesNotFit { rank, ratio } => {
                write!(f, "boundary of rank {rank} does not fit on the sphere (P/2πR = {ratio})")
            }
        }
    }
}

impl From<NumericsError> for PredictionError {
    fn from(e: NumericsError) -> Self {
        PredictionError::Numerics(e)
    }
}

fn odd_fibonacci(rank: u32) -> Result<f64, NumericsError> {
    if rank > 44 {
        return Err(NumericsError::RankOutOfRange { rank, min: 0, max: 44 });
    }
    Ok(fibonacci(2 * rank + 1)? as f64)
}

/// Perimeter `√(f_{2u+1} π)` of the ring with `f_u` dipoles, for unit cells of
/// area π.
pub fn boundary_perimeter_prediction(rank: u32) -> Result<f64, NumericsError> {
    Ok((odd_fibonacci(rank)? * PI).sqrt())
}

/// Geodesic radius of the circle whose perimeter is the predicted one.
pub fn boundary_radius(surface: &SurfaceSpec, rank: u32) -> Result<f64, PredictionError> {
    let p = boundary_perimeter_prediction(rank)?;
    let r = surface.radius;
    Ok(match surface.kind {
        SurfaceKind::Plane => p / TAU,
        SurfaceKind::Hyperbolic => r * (p / (TAU * r)).asinh(),
        SurfaceKind::Sphere => {
            let ratio = p / (TAU * r);
            if ratio > 1.0 {
                return Err(PredictionError::DoesNotFit { rank, ratio });
            }
            r * ratio.asin()
        }
    })
}

/// Predicted ratio `√(f_{2u+3}/f_{2u+1})` of consecutive plane radii.
pub fn radius_ratio_prediction(rank: u32) -> Result<f64, NumericsError> {
    Ok((odd_fibonacci(rank + 1)? / odd_fibonacci(rank)?).sqrt())
}

/// Limit width `ln τ` of hyperbolic grains, in units of `R`.
pub fn hyperbolic_width_limit() -> f64 {
    GOLDEN_RATIO.ln()
}

/// Angle `arccot(f_u/f_{u−1})` between a dipole and the radial direction.
pub fn dipole_angle_prediction(rank: u32) -> Result<f64, NumericsError> {
    if rank < 2 {
        return Err(NumericsError::RankOutOfRange { rank, min: 2, max: 90 });
    }
    Ok((fibonacci(rank - 1)? as f64).atan2(fibonacci(rank)? as f64))
}

/// Smallest plane distance between sites `f_u` apart over all `s`,
/// `√(2π f_u |f_u/τ − f_{u−1}|)`, for golden divergence.
pub fn plane_distance_minimum(rank: u32) -> Result<f64, NumericsError> {
    // |f_u/τ − f_{u−1}| = τ^{−u} exactly.
    let f = fibonacci(rank)? as f64;
    Ok((TAU * f * GOLDEN_RATIO.powi(-(rank as i32))).sqrt())
}

/// Sphere sizes `round(f_{2u+1}/π)` at which the ring with `f_u` dipoles
/// reaches the equator, for `u = 1..=u_max`.
pub fn sphere_thresholds(u_max: u32) -> Result<Vec<u64>, NumericsError> {
    if u_max > 40 {
        return Err(NumericsError::RankOutOfRange { rank: u_max, min: 1, max: 40 });
    }
    (1..=u_max)
        .map(|u| Ok((odd_fibonacci(u)? / PI).round() as u64))
        .collect()
}

fn cap_fraction(rank: u32, nu: u64) -> Result<f64, PredictionError> {
    let x = odd_fibonacci(rank)? / ((2 * nu + 1) as f64 * PI);
    if x > 1.0 {
        return Err(PredictionError::DoesNotFit { rank, ratio: x.sqrt() });
    }
    Ok(x)
}

/// Colatitude `asin √(f_{2u+1}/((2ν+1)π))` of the ring with `f_u` dipoles.
pub fn boundary_polar_angle(rank: u32, nu: u64) -> Result<f64, PredictionError> {
    Ok(cap_fraction(rank, nu)?.sqrt().asin())
}

/// Estimated first and last index (counted from the pole) of the `f_{u−1}`
/// hexagons of the ring with `f_u` dipoles on a sphere of `2ν + 1` sites.
pub fn grain_bounds_estimate(rank: u32, nu: u64) -> Result<(i64, i64), PredictionError> {
    let x = cap_fraction(rank, nu)?;
    // ν(1 − √(1 − x)) without cancellation.
    let center = nu as f64 * x / (1.0 + (1.0 - x).sqrt());
    bounds_around(rank, center)
}

/// Plane counterpart of [`grain_bounds_estimate`], its `ν → ∞` limit.
pub fn plane_grain_bounds_estimate(rank: u32) -> Result<(i64, i64), PredictionError> {
    bounds_around(rank, odd_fibonacci(rank)? / (4.0 * PI))
}

fn bounds_around(rank: u32, center: f64) -> Result<(i64, i64), PredictionError> {
    if rank < 1 {
        return Err(NumericsError::RankOutOfRange { rank, min: 1, max: 44 }.into());
    }
    let f = fibonacci(rank - 1)? as f64;
    Ok((
        ((5.0 - f) / 2.0 + center).floor() as i64,
        ((f + 3.0) / 2.0 + center).floor() as i64,
    ))
}
