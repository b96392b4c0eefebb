//! The full analysis of one pattern, as consumed by the exporters.

use phyllo_core::analysis::{
    boundary_perimeter_prediction, detect_grain_boundaries, dipole_angle_prediction, dipole_angles,
    full_series, grain_widths, verify_inflation, BoundaryStatus, DipoleAngles, GrainBoundary,
    InflationCheck, SeriesReport, MAX_DISTANCE_LIMIT, MIN_DISTANCE_LIMIT,
};
use phyllo_core::generator::{Hemisphere, PhylloPattern};
use phyllo_core::tessellation::{classify, tessellate, CellType, Tessellation};
use phyllo_core::SurfaceKind;

use crate::error::CliError;

/// Relative slack on the distance limits.
pub const CONFINEMENT_EPS: f64 = 0.01;
/// Largest accepted relative error of the averaged analytic distance.
pub const ANALYTIC_TOLERANCE: f64 = 0.02;
/// Largest accepted relative deviation of the mean interior area from π.
pub const AREA_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct Invariant {
    pub name: &'static str,
    pub pass: bool,
    /// Failing makes `analyze` exit with the anomaly code.
    pub hard: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryReport {
    pub boundary: GrainBoundary,
    pub angles: DipoleAngles,
    pub predicted_perimeter: Option<f64>,
    pub predicted_angle: Option<f64>,
}

#[derive(Debug)]
pub struct Analysis<'a> {
    pub tess: Tessellation<'a>,
    pub types: Vec<CellType>,
    pub boundaries: Vec<BoundaryReport>,
    pub inflation: Vec<InflationCheck>,
    pub series: SeriesReport,
    /// Grain widths per hemisphere in units of `R`; empty on the plane.
    pub widths: Vec<(Hemisphere, Vec<f64>)>,
    pub invariants: Vec<Invariant>,
}

impl Analysis<'_> {
    pub fn anomalies(&self) -> Vec<&Invariant> {
        self.invariants.iter().filter(|i| i.hard && !i.pass).collect()
    }
}

pub fn hemisphere_name(h: Hemisphere) -> &'static str {
    match h {
        Hemisphere::South => "south",
        Hemisphere::North => "north",
    }
}

pub fn status_name(s: BoundaryStatus) -> &'static str {
    match s {
        BoundaryStatus::Complete => "complete",
        BoundaryStatus::Incomplete => "incomplete",
        BoundaryStatus::Truncated => "truncated",
        BoundaryStatus::Anomalous => "anomalous",
    }
}

pub fn analyze(pattern: &PhylloPattern) -> Result<Analysis<'_>, CliError> {
    let tess = tessellate(pattern)?;
    let types = classify(&tess);
    let rings = detect_grain_boundaries(&tess);
    let inflation = verify_inflation(&rings);
    let series = full_series(&tess);
    let kind = pattern.surface.kind;
    let hemispheres: &[Hemisphere] = if kind == SurfaceKind::Sphere {
        &[Hemisphere::South, Hemisphere::North]
    } else {
        &[Hemisphere::South]
    };
    let widths = if kind == SurfaceKind::Plane {
        Vec::new()
    } else {
        let complete: Vec<GrainBoundary> = rings.iter().filter(|b| b.is_complete()).cloned().collect();
        hemispheres
            .iter()
            .map(|&h| (h, grain_widths(&complete, h, pattern.surface.radius)))
            .collect()
    };
    let boundaries: Vec<BoundaryReport> = rings
        .into_iter()
        .map(|b| BoundaryReport {
            angles: dipole_angles(&b, &tess),
            predicted_perimeter: b.rank.and_then(|u| boundary_perimeter_prediction(u).ok()),
            predicted_angle: b.rank.and_then(|u| dipole_angle_prediction(u).ok()),
            boundary: b,
        })
        .collect();
    let mut analysis = Analysis { tess, types, boundaries, inflation, series, widths, invariants: Vec::new() };
    analysis.invariants = invariants(&analysis, hemispheres);
    Ok(analysis)
}

fn invariants(a: &Analysis<'_>, hemispheres: &[Hemisphere]) -> Vec<Invariant> {
    let mut out = Vec::new();
    let kind = a.tess.pattern.surface.kind;
    if kind == SurfaceKind::Sphere {
        let charge: i64 = a.types.iter().map(|t| t.charge()).sum();
        out.push(Invariant {
            name: "sphere_charge",
            pass: charge == 12,
            hard: true,
            detail: format!("total charge {charge}"),
        });
    }

    let anomalous: Vec<String> = a
        .boundaries
        .iter()
        .filter(|b| b.boundary.status == BoundaryStatus::Anomalous)
        .map(|b| format!("{:?}", b.boundary.counts))
        .collect();
    out.push(Invariant {
        name: "fibonacci_boundaries",
        pass: anomalous.is_empty(),
        hard: true,
        detail: if anomalous.is_empty() {
            format!("{} boundaries", a.boundaries.len())
        } else {
            format!("non-Fibonacci compositions {}", anomalous.join(" "))
        },
    });

    let complete: Vec<&BoundaryReport> = a.boundaries.iter().filter(|b| b.boundary.is_complete()).collect();
    let charged = complete
        .iter()
        .filter(|b| b.boundary.members.iter().map(|&s| a.types[s].charge()).sum::<i64>() != 0)
        .count();
    out.push(Invariant {
        name: "neutral_boundaries",
        pass: charged == 0,
        hard: false,
        detail: format!("{} complete, {charged} charged", complete.len()),
    });

    let held = a.inflation.iter().filter(|c| c.holds).count();
    out.push(Invariant {
        name: "inflation",
        pass: held == a.inflation.len(),
        hard: false,
        detail: format!("{held}/{} consecutive pairs", a.inflation.len()),
    });

    let mut alternating = true;
    for &h in hemispheres {
        let signs: Vec<i8> =
            complete.iter().filter(|b| b.boundary.hemisphere == h).map(|b| b.angles.orientation).collect();
        alternating &= signs.windows(2).all(|w| w[0] != 0 && w[0] == -w[1]);
    }
    out.push(Invariant {
        name: "dipole_orientation",
        pass: alternating,
        hard: false,
        detail: "orientation alternates between consecutive complete boundaries".into(),
    });

    let summary = &a.series.summary;
    if let (Some(min), Some(max)) = (summary.min_distance, summary.max_distance) {
        let (lo, hi) = (MIN_DISTANCE_LIMIT * (1.0 - CONFINEMENT_EPS), MAX_DISTANCE_LIMIT * (1.0 + CONFINEMENT_EPS));
        out.push(Invariant {
            name: "distance_confinement",
            pass: min >= lo && max <= hi,
            hard: false,
            detail: format!("[{min:.4}, {max:.4}] within [{lo:.4}, {hi:.4}]"),
        });
    }
    if let Some(worst) = summary.max_relative_error {
        out.push(Invariant {
            name: "analytic_distance",
            pass: worst < ANALYTIC_TOLERANCE,
            hard: false,
            detail: format!("max relative error {worst:.5} over {} links", summary.compared_links),
        });
    }
    if let Some(mean) = summary.mean_area {
        let dev = mean / std::f64::consts::PI - 1.0;
        out.push(Invariant {
            name: "mean_area",
            pass: dev.abs() < AREA_TOLERANCE,
            hard: false,
            detail: format!("mean {mean:.5}, relative deviation from pi {dev:.5}"),
        });
    }
    out
}
