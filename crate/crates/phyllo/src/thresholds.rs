//! Sphere sizes at which a new grain boundary reaches the equator.

use std::f64::consts::PI;

use phyllo_core::analysis::{boundary_polar_angle, equatorial_defects, sphere_thresholds};
use phyllo_core::fibonacci;
use phyllo_core::generator::generate_sphere;
use phyllo_core::tessellation::tessellate;
use phyllo_core::GOLDEN_DIVERGENCE;

use crate::error::CliError;

/// Largest `u_max` accepted.
pub const MAX_U: u32 = 20;
/// Smallest rank with a meaningful empirical bracket; below it the whole
/// sphere is core.
pub const MIN_EMPIRICAL_RANK: u32 = 6;
/// Samples per decade of the polar angle curves.
pub const CURVE_STEPS_PER_DECADE: usize = 20;
/// Decades of `n` covered by each curve.
pub const CURVE_DECADES: usize = 3;

/// Odd sizes scanned upward from a threshold when looking for the ring.
pub const BIRTH_SEARCH: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bracket {
    pub below: usize,
    pub defects_below: usize,
    /// First odd size at or above the threshold with equatorial defects.
    pub first: Option<usize>,
    pub defects_first: usize,
    pub threshold: u64,
}

impl Bracket {
    pub fn born(&self) -> bool {
        self.defects_below == 0 && self.first.is_some()
    }

    /// `first − threshold`.
    pub fn offset(&self) -> Option<i64> {
        self.first.map(|n| n as i64 - self.threshold as i64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdRow {
    pub u: u32,
    pub dipoles: u64,
    pub f_odd: u64,
    pub n: u64,
    pub bracket: Option<Bracket>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarCurve {
    pub u: u32,
    /// `(n, φ)` with `φ` the colatitude of the boundary, `π/2` at the equator.
    pub points: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    pub u_max: u32,
    pub rows: Vec<ThresholdRow>,
    pub curves: Vec<PolarCurve>,
}

/// Odd sphere sizes just below and just above `threshold`, at least two
/// apart from it.
pub fn bracket_sizes(threshold: u64) -> (usize, usize) {
    let t = threshold as usize;
    let below = if t % 2 == 1 { t - 2 } else { t - 3 };
    let above = if t % 2 == 1 { t + 2 } else { t + 3 };
    (below, above)
}

fn defects(n: usize, rank: u32) -> Result<usize, CliError> {
    let pattern = generate_sphere(n, GOLDEN_DIVERGENCE)?;
    let tess = tessellate(&pattern)?;
    equatorial_defects(&tess, rank).ok_or_else(|| CliError::Pattern("not a sphere".into()))
}

fn bracket(threshold: u64, rank: u32) -> Result<Bracket, CliError> {
    let (below, above) = bracket_sizes(threshold);
    let mut found = None;
    for n in (above..).step_by(2).take(BIRTH_SEARCH) {
        let count = defects(n, rank)?;
        if count > 0 {
            found = Some((n, count));
            break;
        }
    }
    Ok(Bracket {
        below,
        defects_below: defects(below, rank)?,
        first: found.map(|f| f.0),
        defects_first: found.map_or(0, |f| f.1),
        threshold,
    })
}

fn curve(u: u32, start: u64) -> PolarCurve {
    let steps = CURVE_STEPS_PER_DECADE * CURVE_DECADES;
    let mut points: Vec<(usize, f64)> = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let n = (start as f64 * 10f64.powf(k as f64 / CURVE_STEPS_PER_DECADE as f64)).round() as usize;
        let n = n | 1;
        if points.last().is_some_and(|p| p.0 >= n) {
            continue;
        }
        if let Ok(phi) = boundary_polar_angle(u, ((n - 1) / 2) as u64) {
            points.push((n, phi));
        }
    }
    PolarCurve { u, points }
}

/// Analytic thresholds for `u = 1..=u_max`. With `empirical`, each threshold
/// is checked by tessellating the odd sphere just below it (no equatorial
/// defects expected) and scanning upward for the first one with defects.
/// Spheres above `n_cap` are refused.
pub fn threshold_report(u_max: u32, empirical: bool, n_cap: usize) -> Result<ThresholdReport, CliError> {
    if u_max == 0 || u_max > MAX_U {
        return Err(CliError::Usage(format!("--u-max must be in 1..={MAX_U}, got {u_max}")));
    }
    let list = sphere_thresholds(u_max).map_err(|e| CliError::Usage(e.to_string()))?;
    if empirical && u_max >= MIN_EMPIRICAL_RANK {
        if let Some(&t) = list.last() {
            let above = bracket_sizes(t).1 + 2 * (BIRTH_SEARCH - 1);
            if above > n_cap {
                return Err(CliError::Usage(format!(
                    "empirical check needs a sphere of {above} sites, above the cap of {n_cap} (lower --u-max or raise --n-cap)"
                )));
            }
        }
    }
    let mut rows = Vec::with_capacity(list.len());
    let mut curves = Vec::with_capacity(list.len());
    for (u, &n) in (1..=u_max).zip(&list) {
        let bracket = if empirical && u >= MIN_EMPIRICAL_RANK {
            Some(bracket(n, u)?)
        } else {
            None
        };
        let f_odd = fibonacci(2 * u + 1).map_err(|e| CliError::Usage(e.to_string()))?;
        rows.push(ThresholdRow {
            u,
            dipoles: fibonacci(u).map_err(|e| CliError::Usage(e.to_string()))?,
            f_odd,
            n,
            bracket,
        });
        // Start where the ring first fits: n π ≥ f_{2u+1}.
        curves.push(curve(u, (f_odd as f64 / PI).ceil() as u64));
    }
    Ok(ThresholdReport { u_max, rows, curves })
}
