//! JSON documents. Every float is written with 17 significant digits and
//! non-finite values become `null`.

use std::f64::consts::TAU;
use std::str::FromStr;

use serde::ser::{Serialize, Serializer};
use serde::Deserialize;
use serde_json::Number;

use phyllo_core::generator::{Indexing, PhylloPattern};
use phyllo_core::geometry::SurfaceSpec;
use phyllo_core::SurfaceKind;

use crate::config::{Geometry, PatternParams};
use crate::error::CliError;
use crate::report::{hemisphere_name, status_name, Analysis};
use crate::thresholds::ThresholdReport;

pub const PATTERN_SCHEMA: &str = "phyllo.pattern/1";
pub const TESSELLATION_SCHEMA: &str = "phyllo.tessellation/1";
pub const ANALYSIS_SCHEMA: &str = "phyllo.analysis/1";
pub const THRESHOLDS_SCHEMA: &str = "phyllo.thresholds/1";

/// Relative agreement required between a pattern file and its regeneration.
pub const SITE_TOLERANCE: f64 = 1e-9;

/// `{:.16e}` text of a float, the form shared by the JSON and CSV writers.
pub fn f17_text(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F17(pub f64);

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match f17_text(self.0) {
            Some(text) => Number::from_str(&text).map_err(serde::ser::Error::custom)?.serialize(serializer),
            None => serializer.serialize_none(),
        }
    }
}

fn f17(x: f64) -> F17 {
    F17(x)
}

fn opt(x: Option<f64>) -> Option<F17> {
    x.map(F17)
}

/// Azimuth reduced to `[0, 2π)` for output.
pub fn reduced_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

pub fn indexing_name(indexing: Indexing) -> &'static str {
    match indexing {
        Indexing::Integer => "integer",
        Indexing::HalfInteger => "half-integer",
    }
}

#[derive(serde::Serialize)]
struct SurfaceDoc {
    kind: &'static str,
    #[serde(rename = "R")]
    radius: F17,
    a: F17,
    lambda: F17,
}

fn surface_doc(surface: &SurfaceSpec) -> SurfaceDoc {
    SurfaceDoc {
        kind: surface.kind.name(),
        radius: f17(surface.radius),
        a: f17(surface.a),
        lambda: f17(surface.lambda),
    }
}

#[derive(serde::Serialize)]
struct SiteDoc {
    s: usize,
    rho: F17,
    theta: F17,
    r: F17,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi: Option<F17>,
    #[serde(skip_serializing_if = "Option::is_none")]
    xyz: Option<[F17; 3]>,
}

#[derive(serde::Serialize)]
struct PatternDoc {
    schema: &'static str,
    surface: SurfaceDoc,
    n: usize,
    indexing: &'static str,
    sites: Vec<SiteDoc>,
}

fn to_text<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    Ok(text)
}

pub fn pattern_json(pattern: &PhylloPattern) -> Result<String, CliError> {
    let sites = pattern
        .sites
        .iter()
        .map(|site| SiteDoc {
            s: site.s,
            rho: f17(site.intrinsic.rho),
            theta: f17(reduced_angle(site.intrinsic.theta)),
            r: f17(site.chart.r),
            phi: site.intrinsic.phi.map(F17),
            xyz: site.embedded.map(|p| p.map(F17)),
        })
        .collect();
    to_text(&PatternDoc {
        schema: PATTERN_SCHEMA,
        surface: surface_doc(&pattern.surface),
        n: pattern.n,
        indexing: indexing_name(pattern.indexing),
        sites,
    })
}

#[derive(Deserialize)]
struct SurfaceIn {
    kind: String,
    #[serde(rename = "R")]
    radius: Option<f64>,
    a: f64,
    lambda: f64,
}

#[derive(Deserialize)]
struct SiteIn {
    s: usize,
    rho: f64,
    theta: f64,
    r: Option<f64>,
}

#[derive(Deserialize)]
struct PatternIn {
    schema: String,
    surface: SurfaceIn,
    n: usize,
    #[serde(default)]
    indexing: Option<String>,
    sites: Vec<SiteIn>,
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= SITE_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// Reads a pattern file. The surface header determines the pattern, which
/// is regenerated and checked site by site against the stored values.
pub fn read_pattern(text: &str, origin: &str) -> Result<PhylloPattern, CliError> {
    let doc: PatternIn = serde_json::from_str(text).map_err(|e| CliError::Parse {
        origin: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.schema != PATTERN_SCHEMA {
        return Err(CliError::Pattern(format!(
            "{origin}: schema `{}`, expected `{PATTERN_SCHEMA}`",
            doc.schema
        )));
    }
    let geometry: Geometry = doc.surface.kind.parse().map_err(|e: String| CliError::Pattern(format!("{origin}: {e}")))?;
    let half_integer = match doc.indexing.as_deref() {
        None | Some("integer") => false,
        Some("half-integer") => true,
        Some(other) => return Err(CliError::Pattern(format!("{origin}: unknown indexing `{other}`"))),
    };
    let params = PatternParams::new(geometry, doc.n, Some(doc.surface.a), doc.surface.lambda, half_integer);
    let pattern = params.generate()?;
    if let Some(radius) = doc.surface.radius {
        if !close(radius, pattern.surface.radius) {
            return Err(CliError::Pattern(format!(
                "{origin}: R = {radius} does not match the regenerated {}",
                pattern.surface.radius
            )));
        }
    }
    if doc.sites.len() != doc.n {
        return Err(CliError::Pattern(format!("{origin}: {} sites listed for n = {}", doc.sites.len(), doc.n)));
    }
    for (site, expected) in doc.sites.iter().zip(&pattern.sites) {
        let theta = reduced_angle(expected.intrinsic.theta);
        let angle_ok = close(site.theta, theta) || (site.theta - theta).abs() > TAU - SITE_TOLERANCE;
        let r_ok = match site.r {
            Some(r) => close(r, expected.chart.r),
            None => !expected.chart.r.is_finite(),
        };
        if site.s != expected.s || !close(site.rho, expected.intrinsic.rho) || !angle_ok || !r_ok {
            return Err(CliError::Pattern(format!(
                "{origin}: site {} does not match the surface parameters",
                site.s
            )));
        }
    }
    Ok(pattern)
}

#[derive(serde::Serialize)]
struct NeighborDoc {
    to: usize,
    ds: i64,
    rank: Option<u32>,
    distance: F17,
}

#[derive(serde::Serialize)]
struct CellDoc {
    s: usize,
    #[serde(rename = "type")]
    kind: &'static str,
    sides: usize,
    boundary: bool,
    area: Option<F17>,
    vertices: Vec<[F17; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    xyz: Option<Vec<[F17; 3]>>,
    neighbors: Vec<NeighborDoc>,
}

#[derive(serde::Serialize)]
struct TessellationDoc {
    schema: &'static str,
    surface: SurfaceDoc,
    n: usize,
    cells: Vec<CellDoc>,
}

pub fn tessellation_json(analysis: &Analysis<'_>) -> Result<String, CliError> {
    let tess = &analysis.tess;
    let sphere = tess.pattern.surface.kind == SurfaceKind::Sphere;
    let cells = tess
        .cells
        .iter()
        .map(|cell| CellDoc {
            s: cell.site,
            kind: analysis.types[cell.site].name(),
            sides: cell.sides,
            boundary: cell.boundary,
            area: opt(cell.area),
            vertices: cell.vertices.iter().map(|v| v.chart.map(F17)).collect(),
            xyz: sphere.then(|| {
                cell.vertices.iter().map(|v| v.embedded.unwrap_or([f64::NAN; 3]).map(F17)).collect()
            }),
            neighbors: tess
                .neighbors(cell.site)
                .iter()
                .map(|l| NeighborDoc { to: l.to, ds: l.delta_s, rank: l.rank, distance: f17(l.distance) })
                .collect(),
        })
        .collect();
    to_text(&TessellationDoc {
        schema: TESSELLATION_SCHEMA,
        surface: surface_doc(&tess.pattern.surface),
        n: tess.pattern.n,
        cells,
    })
}

#[derive(serde::Serialize)]
struct InvariantDoc {
    name: &'static str,
    pass: bool,
    hard: bool,
    detail: String,
}

#[derive(serde::Serialize)]
struct BoundaryDoc {
    rank: Option<u32>,
    hemisphere: &'static str,
    status: &'static str,
    heptagons: usize,
    hexagons: usize,
    pentagons: usize,
    others: Vec<usize>,
    s_range: [usize; 2],
    local_range: [usize; 2],
    word: String,
    dipoles: Vec<[usize; 2]>,
    dipole_angles: Vec<F17>,
    mean_abs_angle: F17,
    predicted_angle: Option<F17>,
    orientation: i8,
    mean_radius: F17,
    perimeter: F17,
    predicted_perimeter: Option<F17>,
}

#[derive(serde::Serialize)]
struct InflationDoc {
    hemisphere: &'static str,
    from_rank: u32,
    to_rank: u32,
    holds: bool,
}

#[derive(serde::Serialize)]
struct WidthsDoc {
    hemisphere: &'static str,
    widths: Vec<F17>,
}

#[derive(serde::Serialize)]
struct SummaryDoc {
    mean_area: Option<F17>,
    area_stddev: Option<F17>,
    area_stddev_without_core: Option<F17>,
    min_distance: Option<F17>,
    max_distance: Option<F17>,
    max_relative_error: Option<F17>,
    compared_links: usize,
}

#[derive(serde::Serialize)]
struct LinkDoc {
    to: usize,
    ds: i64,
    rank: Option<u32>,
    distance: F17,
    analytic: Option<F17>,
    interior: bool,
}

#[derive(serde::Serialize)]
struct SiteSeriesDoc {
    s: usize,
    hemisphere: &'static str,
    local: usize,
    #[serde(rename = "type")]
    kind: &'static str,
    area: Option<F17>,
    distances: Vec<LinkDoc>,
}

#[derive(serde::Serialize)]
struct AnalysisDoc {
    schema: &'static str,
    surface: SurfaceDoc,
    n: usize,
    invariants: Vec<InvariantDoc>,
    boundaries: Vec<BoundaryDoc>,
    inflation: Vec<InflationDoc>,
    grain_widths: Vec<WidthsDoc>,
    summary: SummaryDoc,
    sites: Vec<SiteSeriesDoc>,
}

pub fn analysis_json(analysis: &Analysis<'_>) -> Result<String, CliError> {
    let pattern = analysis.tess.pattern;
    let boundaries = analysis
        .boundaries
        .iter()
        .map(|r| {
            let b = &r.boundary;
            BoundaryDoc {
                rank: b.rank,
                hemisphere: hemisphere_name(b.hemisphere),
                status: status_name(b.status),
                heptagons: b.counts.0,
                hexagons: b.counts.1,
                pentagons: b.counts.2,
                others: b.others.clone(),
                s_range: [b.s_range.0, b.s_range.1],
                local_range: [b.local_range.0, b.local_range.1],
                word: b.word.to_string(),
                dipoles: b.dipoles.iter().map(|&(h, p)| [h, p]).collect(),
                dipole_angles: r.angles.angles.iter().copied().map(F17).collect(),
                mean_abs_angle: f17(r.angles.mean_abs),
                predicted_angle: opt(r.predicted_angle),
                orientation: r.angles.orientation,
                mean_radius: f17(b.mean_radius),
                perimeter: f17(b.perimeter),
                predicted_perimeter: opt(r.predicted_perimeter),
            }
        })
        .collect();
    let summary = &analysis.series.summary;
    let sites = analysis
        .series
        .records
        .iter()
        .map(|rec| SiteSeriesDoc {
            s: rec.s,
            hemisphere: hemisphere_name(rec.hemisphere),
            local: rec.local,
            kind: analysis.types[rec.s].name(),
            area: opt(rec.area),
            distances: rec
                .distances
                .iter()
                .map(|d| LinkDoc {
                    to: d.to,
                    ds: d.delta_s,
                    rank: d.rank,
                    distance: f17(d.distance),
                    analytic: opt(d.analytic),
                    interior: d.interior,
                })
                .collect(),
        })
        .collect();
    to_text(&AnalysisDoc {
        schema: ANALYSIS_SCHEMA,
        surface: surface_doc(&pattern.surface),
        n: pattern.n,
        invariants: analysis
            .invariants
            .iter()
            .map(|i| InvariantDoc { name: i.name, pass: i.pass, hard: i.hard, detail: i.detail.clone() })
            .collect(),
        boundaries,
        inflation: analysis
            .inflation
            .iter()
            .map(|c| InflationDoc {
                hemisphere: hemisphere_name(c.hemisphere),
                from_rank: c.from_rank,
                to_rank: c.to_rank,
                holds: c.holds,
            })
            .collect(),
        grain_widths: analysis
            .widths
            .iter()
            .map(|(h, w)| WidthsDoc { hemisphere: hemisphere_name(*h), widths: w.iter().copied().map(F17).collect() })
            .collect(),
        summary: SummaryDoc {
            mean_area: opt(summary.mean_area),
            area_stddev: opt(summary.area_stddev),
            area_stddev_without_core: opt(summary.area_stddev_without_core),
            min_distance: opt(summary.min_distance),
            max_distance: opt(summary.max_distance),
            max_relative_error: opt(summary.max_relative_error),
            compared_links: summary.compared_links,
        },
        sites,
    })
}

#[derive(serde::Serialize)]
struct BracketDoc {
    below: usize,
    defects_below: usize,
    first: Option<usize>,
    defects_first: usize,
    offset: Option<i64>,
    born: bool,
}

#[derive(serde::Serialize)]
struct ThresholdDoc {
    u: u32,
    dipoles: u64,
    f_odd: u64,
    n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    empirical: Option<BracketDoc>,
}

#[derive(serde::Serialize)]
struct CurveDoc {
    u: u32,
    points: Vec<(usize, F17)>,
}

#[derive(serde::Serialize)]
struct ThresholdsDoc {
    schema: &'static str,
    u_max: u32,
    thresholds: Vec<ThresholdDoc>,
    curves: Vec<CurveDoc>,
}

pub fn thresholds_json(report: &ThresholdReport) -> Result<String, CliError> {
    to_text(&ThresholdsDoc {
        schema: THRESHOLDS_SCHEMA,
        u_max: report.u_max,
        thresholds: report
            .rows
            .iter()
            .map(|row| ThresholdDoc {
                u: row.u,
                dipoles: row.dipoles,
                f_odd: row.f_odd,
                n: row.n,
                empirical: row.bracket.map(|b| BracketDoc {
                    below: b.below,
                    defects_below: b.defects_below,
                    first: b.first,
                    defects_first: b.defects_first,
                    offset: b.offset(),
                    born: b.born(),
                }),
            })
            .collect(),
        curves: report
            .curves
            .iter()
            .map(|c| CurveDoc { u: c.u, points: c.points.iter().map(|&(n, phi)| (n, F17(phi))).collect() })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use phyllo_core::generator::generate_plane;
    use phyllo_core::GOLDEN_DIVERGENCE;

    #[test]
    fn seventeen_digits() {
        let text = serde_json::to_string(&[F17(std::f64::consts::PI), F17(f64::INFINITY), F17(0.1)]).unwrap();
        assert_eq!(text, "[3.1415926535897931e+0,null,1.0000000000000001e-1]");
        let back: Vec<Option<f64>> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, [Some(std::f64::consts::PI), None, Some(0.1)]);
    }

    #[test]
    fn reduced_angles() {
        assert_eq!(reduced_angle(-1e-300), 0.0);
        assert!((reduced_angle(7.0) - (7.0 - TAU)).abs() < 1e-15);
    }

    #[test]
    fn pattern_round_trip() {
        let pattern = generate_plane(50, 1.0, GOLDEN_DIVERGENCE).unwrap();
        let text = pattern_json(&pattern).unwrap();
        let back = read_pattern(&text, "mem").unwrap();
        assert_eq!(back.sites.len(), 50);
        assert_eq!(pattern_json(&back).unwrap(), text);
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = read_pattern("{\n  \"schema\": 3,\n}", "bad.json").unwrap_err();
        match err {
            CliError::Parse { line, origin, .. } => {
                assert_eq!(line, 2);
                assert_eq!(origin, "bad.json");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tampered_sites_are_rejected() {
        let pattern = generate_plane(20, 1.0, GOLDEN_DIVERGENCE).unwrap();
        let mut doc: serde_json::Value = serde_json::from_str(&pattern_json(&pattern).unwrap()).unwrap();
        doc["sites"][7]["rho"] = serde_json::json!(9.0);
        let err = read_pattern(&doc.to_string(), "x").unwrap_err();
        assert!(err.to_string().contains("site 7"), "{err}");
    }
}
