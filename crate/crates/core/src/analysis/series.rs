//! Per-site series of first-neighbour distances and cell areas, with the
//! first-order analytic distances they are compared against.

use alloc::vec::Vec;
use core::f64::consts::TAU;

#[allow(unused_imports)]
use num_traits::Float;

use crate::generator::Hemisphere;
use crate::geometry::{SurfaceKind, SurfaceSpec};
use crate::numerics::{fibonacci, NumericsError};
use crate::tessellation::Tessellation;

use super::boundaries::{unit_length, CORE_SITES};

/// Links are compared with the analytic form only while `f_u ≤ s/4`.
pub const ANALYTIC_DOMAIN: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesError {
    Numerics(NumericsError),
    /// The analytic form needs `s > 0`.
    ZeroIndex,
}

impl core::fmt::Display for SeriesError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SeriesError::Numerics(e) => e.fmt(f),
            SeriesError::ZeroIndex => f.write_str("analytic distance undefined at s = 0"),
        }
    }
}

impl From<NumericsError> for SeriesError {
    fn from(e: NumericsError) -> Self {
        SeriesError::Numerics(e)
    }
}

/// Chart radius, its derivative along the spiral and the conformal factor
/// at the real index `t`, counted from the nearest pole.
fn chart_terms(surface: &SurfaceSpec, t: f64) -> (f64, f64, f64) {
    let a = surface.a;
    match surface.kind {
        SurfaceKind::Plane => (a * t.sqrt(), a / (2.0 * t.sqrt()), 1.0),
        SurfaceKind::Hyperbolic => {
            let y = 0.5 * a * t.sqrt();
            let w = 1.0 + y * y;
            (y / w.sqrt(), a / (4.0 * t.sqrt() * w * w.sqrt()), 2.0 * surface.radius * w)
        }
        SurfaceKind::Sphere => {
            let nu = 2.0 / (a * a);
            let q = 2.0 * nu - t;
            let r = (t / q).sqrt();
            (r, nu / (r * q * q), surface.radius * q / nu)
        }
    }
}

/// First-order distance from site `s` to site `s + f_u` along the spiral,
/// `d² = f_u² Λ² (r'² + (γ_u/f_u)² r²)` with `γ_u` the reduced turn of
/// `f_u` steps. `s` is the index counted from the nearest pole. Plane
/// lengths are divided by `a`.
pub fn analytic_distance(surface: &SurfaceSpec, s: f64, rank: u32) -> Result<f64, SeriesError> {
    if !(s > 0.0) {
        return Err(SeriesError::ZeroIndex);
    }
    let f = fibonacci(rank)? as f64;
    let turns = surface.lambda * f;
    let gamma = TAU * (turns - turns.round());
    let (r, dr, conformal) = chart_terms(surface, s);
    let d = conformal * (f * f * dr * dr + gamma * gamma * r * r).sqrt();
    Ok(match surface.kind {
        SurfaceKind::Plane => d / surface.a,
        _ => d,
    })
}

/// Mean of the forward evaluation at `s` and the backward one at `s + f_u`.
pub fn averaged_distance(surface: &SurfaceSpec, s: f64, rank: u32) -> Result<f64, SeriesError> {
    let f = fibonacci(rank)? as f64;
    Ok(0.5 * (analytic_distance(surface, s, rank)? + analytic_distance(surface, s + f, rank)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceRecord {
    pub to: usize,
    /// `to − from` in global indices.
    pub delta_s: i64,
    /// `u` with `|δs| = f_u`.
    pub rank: Option<u32>,
    /// Geodesic distance, in units where the mean cell area is π.
    pub distance: f64,
    /// Averaged analytic distance, for same-hemisphere Fibonacci links.
    pub analytic: Option<f64>,
    /// Both ends are non-boundary, non-core cells.
    pub interior: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SiteRecord {
    pub s: usize,
    pub hemisphere: Hemisphere,
    /// Index counted from the pole of the site's hemisphere.
    pub local: usize,
    /// Cell area in units where the mean is π; `None` on boundary cells.
    pub area: Option<f64>,
    /// Links to neighbours further from the pole (each link is listed once).
    pub distances: Vec<DistanceRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SeriesSummary {
    pub mean_area: Option<f64>,
    /// Population standard deviation over all non-boundary cells.
    pub area_stddev: Option<f64>,
    /// The same without the core cells.
    pub area_stddev_without_core: Option<f64>,
    /// Extremes over interior links.
    pub min_distance: Option<f64>,
    pub max_distance: Option<f64>,
    /// Worst relative gap between measured and analytic distances inside the
    /// analytic domain.
    pub max_relative_error: Option<f64>,
    pub compared_links: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesReport {
    pub surface: SurfaceKind,
    pub records: Vec<SiteRecord>,
    pub summary: SeriesSummary,
}

impl SeriesReport {
    /// Interior links of one rank.
    pub fn rank_distances(&self, rank: u32) -> impl Iterator<Item = (&SiteRecord, &DistanceRecord)> {
        self.records.iter().flat_map(move |r| {
            r.distances.iter().filter(move |d| d.interior && d.rank == Some(rank)).map(move |d| (r, d))
        })
    }
}

fn mean_and_stddev(values: &[f64]) -> Option<(f64, f64)> {
    if values.is_empty() {
        return None;
    }
    let count = values.len() as f64;
    let mean = values.iter().sum::<f64>() / count;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / count;
    Some((mean, var.sqrt()))
}

fn build(tess: &Tessellation<'_>, distances: bool, areas: bool) -> SeriesReport {
    let pattern = tess.pattern;
    let surface = &pattern.surface;
    let unit = unit_length(tess);
    let n = pattern.len();
    let local: Vec<(Hemisphere, usize)> = (0..n).map(|s| pattern.local_index(s)).collect();
    let interior = |s: usize| !tess.cells[s].boundary && local[s].1 >= CORE_SITES;

    let mut summary = SeriesSummary::default();
    let mut records = Vec::with_capacity(n);
    let mut compared = 0usize;
    let mut worst: Option<f64> = None;
    let mut extremes: Option<(f64, f64)> = None;
    for s in 0..n {
        let (hemisphere, here) = local[s];
        let area = if areas { tess.cells[s].area.map(|a| a / (unit * unit)) } else { None };
        let mut list = Vec::new();
        if distances {
            for link in tess.neighbors(s) {
                let (other_hemisphere, there) = local[link.to];
                let same = other_hemisphere == hemisphere;
                let forward = if same { there > here } else { link.to > s };
                if !forward {
                    continue;
                }
                let distance = link.distance / unit;
                let inside = interior(s) && interior(link.to);
                let analytic = match link.rank {
                    Some(u) if same && here > 0 => averaged_distance(surface, here as f64, u).ok(),
                    _ => None,
                };
                if inside {
                    let (lo, hi) = extremes.unwrap_or((distance, distance));
                    extremes = Some((lo.min(distance), hi.max(distance)));
                    let step = link.delta_s.unsigned_abs() as usize;
                    if let Some(value) = analytic.filter(|_| ANALYTIC_DOMAIN * step <= here) {
                        let error = (value - distance).abs() / distance;
                        worst = Some(worst.map_or(error, |w: f64| w.max(error)));
                        compared += 1;
                    }
                }
                list.push(DistanceRecord {
                    to: link.to,
                    delta_s: link.delta_s,
                    rank: link.rank,
                    distance,
                    analytic,
                    interior: inside,
                });
            }
        }
        records.push(SiteRecord { s, hemisphere, local: here, area, distances: list });
    }
    if areas {
        let all: Vec<f64> = records.iter().filter_map(|r| r.area).collect();
        let outer: Vec<f64> =
            records.iter().filter(|r| r.local >= CORE_SITES).filter_map(|r| r.area).collect();
        if let Some((mean, sd)) = mean_and_stddev(&all) {
            summary.mean_area = Some(mean);
            summary.area_stddev = Some(sd);
        }
        summary.area_stddev_without_core = mean_and_stddev(&outer).map(|x| x.1);
    }
    if distances {
        summary.min_distance = extremes.map(|e| e.0);
        summary.max_distance = extremes.map(|e| e.1);
        summary.max_relative_error = worst;
        summary.compared_links = compared;
    }
    SeriesReport { surface: surface.kind, records, summary }
}

/// First-neighbour distances of every site, with analytic counterparts.
pub fn distance_series(tess: &Tessellation<'_>) -> SeriesReport {
    build(tess, true, false)
}

/// Cell areas of every site with their mean and spread.
pub fn area_series(tess: &Tessellation<'_>) -> SeriesReport {
    build(tess, false, true)
}

/// Distances and areas together.
pub fn full_series(tess: &Tessellation<'_>) -> SeriesReport {
    build(tess, true, true)
}
