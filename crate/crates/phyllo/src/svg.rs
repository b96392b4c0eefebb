//! SVG figures of a tessellation.

use std::fmt::Write;

use phyllo_core::tessellation::{CellType, Tessellation, VoronoiCell};

use crate::config::{ColorMap, Projection};
use crate::error::CliError;

/// Width and height of the figure in user units.
pub const CANVAS: f64 = 800.0;
const MARGIN: f64 = 10.0;
/// Chart radius shown by the stereographic view.
pub const STEREOGRAPHIC_EXTENT: f64 = 2.0;
const BOUNDARY_OPACITY: f64 = 0.6;

fn fill(colors: &ColorMap, sides: usize) -> &str {
    match CellType::from_sides(sides) {
        CellType::Square => &colors.square,
        CellType::Pentagon => &colors.pentagon,
        CellType::Hexagon => &colors.hexagon,
        CellType::Heptagon => &colors.heptagon,
        _ => &colors.other,
    }
}

/// Projected polygon of a closed cell, or `None` if the cell is open or not
/// visible in this projection.
fn outline(tess: &Tessellation<'_>, cell: &VoronoiCell, projection: Projection) -> Option<Vec<[f64; 2]>> {
    if cell.vertices.len() != cell.sides || cell.sides < 3 {
        return None;
    }
    let site = &tess.pattern.sites[cell.site];
    match projection {
        Projection::Orthographic => {
            let radius = tess.pattern.surface.radius;
            if site.embedded?[2] >= 0.0 {
                return None;
            }
            cell.vertices.iter().map(|v| v.embedded.map(|p| [p[0] / radius, p[1] / radius])).collect()
        }
        Projection::Stereographic => {
            if site.chart.r.is_nan() || site.chart.r > STEREOGRAPHIC_EXTENT {
                return None;
            }
            let points: Vec<[f64; 2]> = cell.vertices.iter().map(|v| v.chart).collect();
            points.iter().all(|p| p[0].is_finite() && p[1].is_finite()).then_some(points)
        }
        Projection::Disc | Projection::Poincare => Some(cell.vertices.iter().map(|v| v.chart).collect()),
    }
}

fn extent(tess: &Tessellation<'_>, projection: Projection) -> f64 {
    match projection {
        Projection::Disc => {
            let far = tess.pattern.sites.iter().map(|s| s.chart.r).fold(0.0, f64::max);
            if far > 0.0 {
                far * 1.05
            } else {
                1.0
            }
        }
        Projection::Poincare | Projection::Orthographic => 1.0,
        Projection::Stereographic => STEREOGRAPHIC_EXTENT,
    }
}

/// Draws every closed cell with the colour of its side count and marks the
/// origin with a white dot. Output depends only on the inputs.
pub fn render(tess: &Tessellation<'_>, projection: Projection, colors: &ColorMap) -> Result<String, CliError> {
    let kind = tess.pattern.surface.kind;
    if !projection.supports(crate::config::Geometry::from_kind(kind)) {
        return Err(CliError::Usage(format!(
            "projection `{}` is not available for the {} geometry",
            projection.name(),
            kind.name()
        )));
    }
    let scale = (CANVAS / 2.0 - MARGIN) / extent(tess, projection);
    let center = CANVAS / 2.0;
    let to_screen = |p: [f64; 2]| (center + scale * p[0], center - scale * p[1]);

    let mut svg = String::new();
    let fmt_err = |_| CliError::Usage("formatting failed".into());
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{CANVAS}\" height=\"{CANVAS}\" viewBox=\"0 0 {CANVAS} {CANVAS}\">"
    )
    .map_err(fmt_err)?;
    writeln!(svg, "<rect width=\"{CANVAS}\" height=\"{CANVAS}\" fill=\"#ffffff\"/>").map_err(fmt_err)?;
    writeln!(svg, "<g stroke=\"{}\" stroke-width=\"0.3\" stroke-linejoin=\"round\">", colors.stroke)
        .map_err(fmt_err)?;
    for cell in &tess.cells {
        let Some(points) = outline(tess, cell, projection) else {
            continue;
        };
        let mut list = String::new();
        for (k, p) in points.into_iter().enumerate() {
            let (x, y) = to_screen(p);
            if k > 0 {
                list.push(' ');
            }
            write!(list, "{x:.3},{y:.3}").map_err(fmt_err)?;
        }
        let opacity = if cell.boundary { format!(" fill-opacity=\"{BOUNDARY_OPACITY}\"") } else { String::new() };
        writeln!(
            svg,
            "<polygon data-s=\"{}\" points=\"{list}\" fill=\"{}\"{opacity}/>",
            cell.site,
            fill(colors, cell.sides)
        )
        .map_err(fmt_err)?;
    }
    writeln!(svg, "</g>").map_err(fmt_err)?;
    if matches!(projection, Projection::Poincare | Projection::Orthographic) {
        writeln!(
            svg,
            "<circle cx=\"{center}\" cy=\"{center}\" r=\"{:.3}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1\"/>",
            scale,
            colors.stroke
        )
        .map_err(fmt_err)?;
    }
    writeln!(
        svg,
        "<circle cx=\"{center}\" cy=\"{center}\" r=\"3\" fill=\"#ffffff\" stroke=\"{}\" stroke-width=\"0.5\"/>",
        colors.stroke
    )
    .map_err(fmt_err)?;
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use phyllo_core::generator::{generate_plane, generate_sphere};
    use phyllo_core::tessellation::tessellate;
    use phyllo_core::GOLDEN_DIVERGENCE;

    #[test]
    fn plane_polygons_match_closed_cells() {
        let pattern = generate_plane(300, 1.0, GOLDEN_DIVERGENCE).unwrap();
        let tess = tessellate(&pattern).unwrap();
        let svg = render(&tess, Projection::Disc, &ColorMap::default()).unwrap();
        let closed = tess.cells.iter().filter(|c| c.vertices.len() == c.sides).count();
        assert_eq!(svg.matches("<polygon").count(), closed);
        assert!(closed > 250);
        assert!(svg.contains("fill=\"#ffffff\" stroke"));
    }

    #[test]
    fn sphere_views() {
        let pattern = generate_sphere(401, GOLDEN_DIVERGENCE).unwrap();
        let tess = tessellate(&pattern).unwrap();
        let colors = ColorMap::default();
        let ortho = render(&tess, Projection::Orthographic, &colors).unwrap();
        let south = pattern.sites.iter().filter(|s| s.embedded.unwrap()[2] < 0.0).count();
        assert_eq!(ortho.matches("<polygon").count(), south);
        let stereo = render(&tess, Projection::Stereographic, &colors).unwrap();
        assert!(stereo.matches("<polygon").count() > south);
        assert!(matches!(render(&tess, Projection::Poincare, &colors), Err(CliError::Usage(_))));
    }
}
