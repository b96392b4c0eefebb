//! CSV tables. Column names are fixed; missing values are empty fields.

use std::io::Write;

use phyllo_core::generator::PhylloPattern;

use crate::error::CliError;
use crate::json::{f17_text, reduced_angle};
use crate::report::{hemisphere_name, status_name, Analysis};
use crate::thresholds::ThresholdReport;

pub const PATTERN_COLUMNS: [&str; 8] = ["s", "rho", "theta", "r", "phi", "x", "y", "z"];
pub const BOUNDARY_COLUMNS: [&str; 18] = [
    "hemisphere",
    "rank",
    "status",
    "heptagons",
    "hexagons",
    "pentagons",
    "others",
    "s_first",
    "s_last",
    "local_first",
    "local_last",
    "word",
    "mean_abs_angle",
    "predicted_angle",
    "orientation",
    "mean_radius",
    "perimeter",
    "predicted_perimeter",
];
pub const SITE_COLUMNS: [&str; 6] = ["s", "hemisphere", "local", "type", "sides", "area"];
pub const LINK_COLUMNS: [&str; 7] = ["s", "to", "ds", "rank", "distance", "analytic", "interior"];
pub const THRESHOLD_COLUMNS: [&str; 10] =
    ["u", "dipoles", "f_odd", "n", "below", "defects_below", "first", "defects_first", "offset", "born"];
pub const CURVE_COLUMNS: [&str; 3] = ["u", "n", "phi"];

fn num(x: f64) -> String {
    f17_text(x).unwrap_or_default()
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn writer<W: Write>(out: W, columns: &[&str]) -> Result<csv::Writer<W>, CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(columns)?;
    Ok(w)
}

pub fn write_pattern<W: Write>(pattern: &PhylloPattern, out: W) -> Result<(), CliError> {
    let mut w = writer(out, &PATTERN_COLUMNS)?;
    for site in &pattern.sites {
        let xyz = site.embedded.map(|p| p.map(num)).unwrap_or_default();
        w.write_record([
            site.s.to_string(),
            num(site.intrinsic.rho),
            num(reduced_angle(site.intrinsic.theta)),
            num(site.chart.r),
            opt_num(site.intrinsic.phi),
            xyz[0].clone(),
            xyz[1].clone(),
            xyz[2].clone(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_boundaries<W: Write>(analysis: &Analysis<'_>, out: W) -> Result<(), CliError> {
    let mut w = writer(out, &BOUNDARY_COLUMNS)?;
    for r in &analysis.boundaries {
        let b = &r.boundary;
        let others: Vec<String> = b.others.iter().map(|s| s.to_string()).collect();
        w.write_record([
            hemisphere_name(b.hemisphere).to_string(),
            opt(b.rank),
            status_name(b.status).to_string(),
            b.counts.0.to_string(),
            b.counts.1.to_string(),
            b.counts.2.to_string(),
            others.join(" "),
            b.s_range.0.to_string(),
            b.s_range.1.to_string(),
            b.local_range.0.to_string(),
            b.local_range.1.to_string(),
            b.word.to_string(),
            num(r.angles.mean_abs),
            opt_num(r.predicted_angle),
            r.angles.orientation.to_string(),
            num(b.mean_radius),
            num(b.perimeter),
            opt_num(r.predicted_perimeter),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_sites<W: Write>(analysis: &Analysis<'_>, out: W) -> Result<(), CliError> {
    let mut w = writer(out, &SITE_COLUMNS)?;
    for rec in &analysis.series.records {
        w.write_record([
            rec.s.to_string(),
            hemisphere_name(rec.hemisphere).to_string(),
            rec.local.to_string(),
            analysis.types[rec.s].name().to_string(),
            analysis.tess.cells[rec.s].sides.to_string(),
            opt_num(rec.area),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_links<W: Write>(analysis: &Analysis<'_>, out: W) -> Result<(), CliError> {
    let mut w = writer(out, &LINK_COLUMNS)?;
    for rec in &analysis.series.records {
        for d in &rec.distances {
            w.write_record([
                rec.s.to_string(),
                d.to.to_string(),
                d.delta_s.to_string(),
                opt(d.rank),
                num(d.distance),
                opt_num(d.analytic),
                d.interior.to_string(),
            ])?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_thresholds<W: Write>(report: &ThresholdReport, out: W) -> Result<(), CliError> {
    let mut w = writer(out, &THRESHOLD_COLUMNS)?;
    for row in &report.rows {
        let b = row.bracket;
        w.write_record([
            row.u.to_string(),
            row.dipoles.to_string(),
            row.f_odd.to_string(),
            row.n.to_string(),
            opt(b.map(|b| b.below)),
            opt(b.map(|b| b.defects_below)),
            opt(b.and_then(|b| b.first)),
            opt(b.map(|b| b.defects_first)),
            opt(b.and_then(|b| b.offset())),
            opt(b.map(|b| b.born())),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_curves<W: Write>(report: &ThresholdReport, out: W) -> Result<(), CliError> {
    let mut w = writer(out, &CURVE_COLUMNS)?;
    for c in &report.curves {
        for &(n, phi) in &c.points {
            w.write_record([c.u.to_string(), n.to_string(), num(phi)])?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
