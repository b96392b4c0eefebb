//! Delaunay adjacency and Voronoi cells of a phyllotactic pattern.
//!
//! The plane and the Poincaré disc are triangulated in the chart: hyperbolic
//! circles are Euclidean circles of the disc, so both surfaces share the
//! chart's Delaunay triangles. On the sphere the triangles are the faces of
//! the convex hull. Voronoi vertices are the geodesic circumcentres of the
//! triangles and cell areas are measured with the surface metric.

mod delaunay;
mod hull;

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::generator::PhylloPattern;
use crate::geometry::{
    cross3, disc_to_hyperboloid, dot3, hyperboloid_to_disc, minkowski, norm3, scale3, sub3,
    unit_angle, unit_to_stereographic, xy_distance, SurfaceKind,
};
use crate::numerics::fibonacci_rank;

pub(crate) const NONE: usize = usize::MAX;

/// Cells this many Delaunay steps from the hull (or closer) are boundary
/// cells on the open surfaces.
pub const BOUNDARY_HOPS: usize = 2;

/// Triangles with neighbour `k` across the edge opposite vertex `k`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Mesh {
    pub triangles: Vec<[usize; 3]>,
    pub neighbors: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TessellationError {
    Coincident { first: usize, second: usize },
    /// All sites are collinear (plane) or coplanar (sphere).
    Degenerate,
    TooFewSites { n: usize, min: usize },
    NonFinite { s: usize },
    BoundaryCell { s: usize },
}

impl fmt::Display for TessellationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TessellationError::Coincident { first, second } => {
                write!(f, "sites {first} and {second} coincide")
            }
            TessellationError::Degenerate => f.write_str("sites are degenerate (collinear or coplanar)"),
            TessellationError::TooFewSites { n, min } => {
                write!(f, "{n} sites are too few to tessellate, need {min}")
            }
            TessellationError::NonFinite { s } => write!(f, "site {s} has non-finite coordinates"),
            TessellationError::BoundaryCell { s } => write!(f, "cell {s} is a boundary cell"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellType {
    Square,
    Pentagon,
    Hexagon,
    Heptagon,
    Other(usize),
    Boundary,
}

impl CellType {
    pub fn from_sides(sides: usize) -> Self {
        match sides {
            4 => CellType::Square,
            5 => CellType::Pentagon,
            6 => CellType::Hexagon,
            7 => CellType::Heptagon,
            other => CellType::Other(other),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CellType::Square => "square",
            CellType::Pentagon => "pentagon",
            CellType::Hexagon => "hexagon",
            CellType::Heptagon => "heptagon",
            CellType::Other(_) => "other",
            CellType::Boundary => "boundary",
        }
    }

    /// `6 − sides`, zero for boundary cells.
    pub fn charge(self) -> i64 {
        match self {
            CellType::Square => 2,
            CellType::Pentagon => 1,
            CellType::Hexagon => 0,
            CellType::Heptagon => -1,
            CellType::Other(k) => 6 - k as i64,
            CellType::Boundary => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellVertex {
    /// Cartesian chart position; infinite if the vertex is the sphere's
    /// projection pole.
    pub chart: [f64; 2],
    /// Point on the sphere of radius `R` (sphere only).
    pub embedded: Option<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VoronoiCell {
    pub site: usize,
    /// Vertices in counterclockwise order (seen from outside on the sphere).
    /// For boundary cells only the existing vertices are listed.
    pub vertices: Vec<CellVertex>,
    pub sides: usize,
    /// Metric area; `None` for boundary cells.
    pub area: Option<f64>,
    pub boundary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeighborLink {
    pub from: usize,
    pub to: usize,
    pub delta_s: i64,
    /// Geodesic distance between the two sites.
    pub distance: f64,
    /// `u` with `|δs| = f_u` when `|δs|` is a Fibonacci number.
    pub rank: Option<u32>,
}

#[derive(Debug, Clone)]
pub struct Tessellation<'a> {
    pub pattern: &'a PhylloPattern,
    pub cells: Vec<VoronoiCell>,
    /// Neighbours of every site, sorted by target index.
    pub adjacency: Vec<Vec<NeighborLink>>,
    /// Delaunay triangles, counterclockwise in the chart (outward on the
    /// sphere).
    pub triangles: Vec<[usize; 3]>,
}

/// Builds the Delaunay/Voronoi structure of `pattern`.
pub fn tessellate(pattern: &PhylloPattern) -> Result<Tessellation<'_>, TessellationError> {
    let kind = pattern.surface.kind;
    let mesh = match kind {
        SurfaceKind::Plane | SurfaceKind::Hyperbolic => {
            let pts: Vec<[f64; 2]> = pattern.sites.iter().map(|s| s.xy).collect();
            delaunay::triangulate(&pts)?
        }
        SurfaceKind::Sphere => {
            let pts: Vec<[f64; 3]> = pattern
                .sites
                .iter()
                .map(|s| s.embedded.expect("sphere sites are embedded"))
                .collect();
            hull::spherical_hull(&pts)?
        }
    };
    Ok(build(pattern, mesh))
}

fn build(pattern: &PhylloPattern, mesh: Mesh) -> Tessellation<'_> {
    let n = pattern.n;
    let kind = pattern.surface.kind;
    let centers: Vec<Option<CellVertex>> = mesh
        .triangles
        .iter()
        .map(|&[a, b, c]| circumcenter(pattern, a, b, c))
        .collect();

    // Incident triangle of each site, chosen at the clockwise end of an open fan.
    let mut incident = alloc::vec![NONE; n];
    for (t, tri) in mesh.triangles.iter().enumerate() {
        for (i, &v) in tri.iter().enumerate() {
            let open_end = mesh.neighbors[t][(i + 2) % 3] == NONE;
            if incident[v] == NONE || open_end {
                incident[v] = t;
            }
        }
    }

    let mut fans: Vec<(Vec<usize>, bool)> = Vec::with_capacity(n);
    for v in 0..n {
        let start = incident[v];
        let mut fan = Vec::new();
        let mut open = false;
        if start != NONE {
            let mut t = start;
            loop {
                fan.push(t);
                let i = mesh.triangles[t].iter().position(|&x| x == v).expect("fan triangle holds its site");
                let next = mesh.neighbors[t][(i + 1) % 3];
                if next == NONE {
                    open = true;
                    break;
                }
                if next == start {
                    break;
                }
                t = next;
            }
        } else {
            open = true;
        }
        fans.push((fan, open));
    }

    let mut adjacency: Vec<Vec<NeighborLink>> = Vec::with_capacity(n);
    for (v, (fan, open)) in fans.iter().enumerate() {
        let mut targets: Vec<usize> = fan
            .iter()
            .map(|&t| {
                let tri = mesh.triangles[t];
                let i = tri.iter().position(|&x| x == v).unwrap();
                tri[(i + 1) % 3]
            })
            .collect();
        if *open {
            if let Some(&t) = fan.last() {
                let tri = mesh.triangles[t];
                let i = tri.iter().position(|&x| x == v).unwrap();
                targets.push(tri[(i + 2) % 3]);
            }
        }
        targets.sort_unstable();
        targets.dedup();
        adjacency.push(
            targets
                .into_iter()
                .map(|to| {
                    let delta_s = to as i64 - v as i64;
                    NeighborLink {
                        from: v,
                        to,
                        delta_s,
                        distance: site_distance(pattern, v, to),
                        rank: fibonacci_rank(delta_s.unsigned_abs()),
                    }
                })
                .collect(),
        );
    }

    // Boundary: open fans, missing circumcentres, and their vicinity.
    let mut hops = alloc::vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for (v, (fan, open)) in fans.iter().enumerate() {
        if *open || fan.iter().any(|&t| centers[t].is_none()) {
            hops[v] = 0;
            queue.push_back(v);
        }
    }
    if kind != SurfaceKind::Sphere {
        while let Some(v) = queue.pop_front() {
            if hops[v] >= BOUNDARY_HOPS {
                continue;
            }
            for link in &adjacency[v] {
                if hops[link.to] == usize::MAX {
                    hops[link.to] = hops[v] + 1;
                    queue.push_back(link.to);
                }
            }
        }
    }

    let cells = fans
        .iter()
        .enumerate()
        .map(|(v, (fan, open))| {
            let vertices: Vec<CellVertex> = fan.iter().filter_map(|&t| centers[t]).collect();
            let boundary = hops[v] != usize::MAX;
            let complete = !*open && vertices.len() == fan.len();
            let area = (!boundary && complete).then(|| polygon_area(pattern, v, &vertices));
            VoronoiCell { site: v, sides: adjacency[v].len(), vertices, area, boundary }
        })
        .collect();
    Tessellation { pattern, cells, adjacency, triangles: mesh.triangles }
}

fn site_distance(pattern: &PhylloPattern, a: usize, b: usize) -> f64 {
    let surface = &pattern.surface;
    match surface.kind {
        SurfaceKind::Sphere => {
            let r = surface.radius;
            let u = scale3(pattern.sites[a].embedded.unwrap(), 1.0 / r);
            let v = scale3(pattern.sites[b].embedded.unwrap(), 1.0 / r);
            r * unit_angle(u, v)
        }
        _ => xy_distance(surface, pattern.sites[a].xy, pattern.sites[b].xy),
    }
}

fn circumcenter(pattern: &PhylloPattern, a: usize, b: usize, c: usize) -> Option<CellVertex> {
    let sites = &pattern.sites;
    match pattern.surface.kind {
        SurfaceKind::Plane => {
            let [pa, pb, pc] = [sites[a].xy, sites[b].xy, sites[c].xy];
            Some(CellVertex { chart: planar_circumcenter(pa, pb, pc), embedded: None })
        }
        SurfaceKind::Hyperbolic => {
            let x = disc_to_hyperboloid(sites[a].xy);
            let y = disc_to_hyperboloid(sites[b].xy);
            let z = disc_to_hyperboloid(sites[c].xy);
            let w = cross3(sub3(y, x), sub3(z, x));
            let mut center = [-w[0], w[1], w[2]];
            let q = minkowski(center, center);
            if !(q < 0.0) {
                return None;
            }
            center = scale3(center, 1.0 / (-q).sqrt());
            if center[0] < 0.0 {
                center = scale3(center, -1.0);
            }
            Some(CellVertex { chart: hyperboloid_to_disc(center), embedded: None })
        }
        SurfaceKind::Sphere => {
            let r = pattern.surface.radius;
            let [pa, pb, pc] = [a, b, c].map(|i| sites[i].embedded.unwrap());
            let w = cross3(sub3(pb, pa), sub3(pc, pa));
            let unit = scale3(w, 1.0 / norm3(w));
            let chart = if unit[2] >= 1.0 {
                [f64::INFINITY; 2]
            } else {
                unit_to_stereographic(unit)
            };
            Some(CellVertex { chart, embedded: Some(scale3(unit, r)) })
        }
    }
}

fn planar_circumcenter(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> [f64; 2] {
    let (bx, by) = (b[0] - a[0], b[1] - a[1]);
    let (cx, cy) = (c[0] - a[0], c[1] - a[1]);
    let d = 2.0 * (bx * cy - by * cx);
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    [a[0] + (cy * b2 - by * c2) / d, a[1] + (bx * c2 - cx * b2) / d]
}

/// Signed area of the geodesic triangle `x, y, z` on the unit sphere.
pub(crate) fn spherical_triangle_area(x: [f64; 3], y: [f64; 3], z: [f64; 3]) -> f64 {
    let det = dot3(x, cross3(y, z));
    2.0 * det.atan2(1.0 + dot3(x, y) + dot3(y, z) + dot3(z, x))
}

/// Signed area of the geodesic triangle `x, y, z` on the unit hyperboloid.
pub(crate) fn hyperbolic_triangle_area(x: [f64; 3], y: [f64; 3], z: [f64; 3]) -> f64 {
    let det = dot3(x, cross3(y, z));
    2.0 * det.atan2(1.0 - minkowski(x, y) - minkowski(y, z) - minkowski(z, x))
}

fn polygon_area(pattern: &PhylloPattern, site: usize, vertices: &[CellVertex]) -> f64 {
    let k = vertices.len();
    let r = pattern.surface.radius;
    let total: f64 = match pattern.surface.kind {
        SurfaceKind::Plane => {
            0.5 * (0..k)
                .map(|i| {
                    let p = vertices[i].chart;
                    let q = vertices[(i + 1) % k].chart;
                    p[0] * q[1] - p[1] * q[0]
                })
                .sum::<f64>()
        }
        SurfaceKind::Hyperbolic => {
            let center = disc_to_hyperboloid(pattern.sites[site].xy);
            let lifted: Vec<[f64; 3]> = vertices.iter().map(|v| disc_to_hyperboloid(v.chart)).collect();
            r * r
                * (0..k)
                    .map(|i| hyperbolic_triangle_area(center, lifted[i], lifted[(i + 1) % k]))
                    .sum::<f64>()
        }
        SurfaceKind::Sphere => {
            let center = scale3(pattern.sites[site].embedded.unwrap(), 1.0 / r);
            let unit: Vec<[f64; 3]> = vertices.iter().map(|v| scale3(v.embedded.unwrap(), 1.0 / r)).collect();
            r * r
                * (0..k)
                    .map(|i| spherical_triangle_area(center, unit[i], unit[(i + 1) % k]))
                    .sum::<f64>()
        }
    };
    total.abs()
}

/// Per-site cell types; boundary cells are labelled [`CellType::Boundary`].
pub fn classify(tess: &Tessellation<'_>) -> Vec<CellType> {
    tess.cells
        .iter()
        .map(|c| if c.boundary { CellType::Boundary } else { CellType::from_sides(c.sides) })
        .collect()
}

impl<'a> Tessellation<'a> {
    pub fn pattern(&self) -> &'a PhylloPattern {
        self.pattern
    }

    pub fn neighbors(&self, s: usize) -> &[NeighborLink] {
        &self.adjacency[s]
    }

    /// Metric area of a non-boundary cell.
    pub fn cell_area(&self, s: usize) -> Result<f64, TessellationError> {
        self.cells[s].area.ok_or(TessellationError::BoundaryCell { s })
    }

    /// Whether a chart point lies in the cell of `s` (plane and hyperbolic).
    /// Hyperbolic cell edges are geodesics, tested in the Klein chart.
    /// `None` for open cells and on the sphere.
    pub fn contains_chart(&self, s: usize, point: [f64; 2]) -> Option<bool> {
        let cell = &self.cells[s];
        let kind = self.pattern.surface.kind;
        if cell.vertices.len() != cell.sides || kind == SurfaceKind::Sphere {
            return None;
        }
        let map = |p: [f64; 2]| match kind {
            SurfaceKind::Hyperbolic => {
                let k = 2.0 / (1.0 + p[0] * p[0] + p[1] * p[1]);
                [p[0] * k, p[1] * k]
            }
            _ => p,
        };
        let q = map(point);
        let k = cell.vertices.len();
        Some((0..k).all(|i| {
            let a = map(cell.vertices[i].chart);
            let b = map(cell.vertices[(i + 1) % k].chart);
            (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]) >= 0.0
        }))
    }

    /// Whether a point of the sphere (any radius) lies in the cell of `s`.
    pub fn contains_embedded(&self, s: usize, point: [f64; 3]) -> Option<bool> {
        let cell = &self.cells[s];
        if self.pattern.surface.kind != SurfaceKind::Sphere {
            return None;
        }
        let k = cell.vertices.len();
        Some((0..k).all(|i| {
            let a = cell.vertices[i].embedded.unwrap();
            let b = cell.vertices[(i + 1) % k].embedded.unwrap();
            dot3(point, cross3(a, b)) >= 0.0
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{generate_hyperbolic, generate_plane, generate_sphere};
    use crate::numerics::GOLDEN_DIVERGENCE;
    use core::f64::consts::PI;

    #[test]
    fn triangle_areas_match_angle_sums() {
        // Octant of the unit sphere: area π/2.
        let a = spherical_triangle_area([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]);
        assert!((a - PI / 2.0).abs() < 1e-14);
        // Hyperbolic triangle: area = π − angle sum.
        let pts = [[0.1, 0.2], [-0.4, 0.3], [0.2, -0.5]];
        let lift = pts.map(disc_to_hyperboloid);
        let area = hyperbolic_triangle_area(lift[0], lift[1], lift[2]).abs();
        let angle = |p: [f64; 3], q: [f64; 3], r: [f64; 3]| {
            // Tangent directions at p towards q and r, Minkowski-orthogonal to p.
            let tq = [q[0] + minkowski(p, q) * p[0], q[1] + minkowski(p, q) * p[1], q[2] + minkowski(p, q) * p[2]];
            let tr = [r[0] + minkowski(p, r) * p[0], r[1] + minkowski(p, r) * p[1], r[2] + minkowski(p, r) * p[2]];
            (minkowski(tq, tr) / (minkowski(tq, tq) * minkowski(tr, tr)).sqrt()).acos()
        };
        let sum = angle(lift[0], lift[1], lift[2]) + angle(lift[1], lift[2], lift[0]) + angle(lift[2], lift[0], lift[1]);
        assert!((area - (PI - sum)).abs() < 1e-12, "{area} vs {}", PI - sum);
    }

    #[test]
    fn small_plane_pattern() {
        let p = generate_plane(7, 1.0, GOLDEN_DIVERGENCE).unwrap();
        let t = tessellate(&p).unwrap();
        let neighbors: Vec<usize> = t.adjacency[0].iter().map(|l| l.to).collect();
        assert!(neighbors.iter().all(|&x| x <= 6));
        assert!(t.cells.iter().all(|c| c.boundary));
    }

    #[test]
    fn adjacency_is_symmetric() {
        let plane = generate_plane(500, 1.0, GOLDEN_DIVERGENCE).unwrap();
        let hyp = generate_hyperbolic(500, 1.0 / 20.0, GOLDEN_DIVERGENCE).unwrap();
        let sphere = generate_sphere(501, GOLDEN_DIVERGENCE).unwrap();
        for p in [&plane, &hyp, &sphere] {
            let t = tessellate(p).unwrap();
            for (s, links) in t.adjacency.iter().enumerate() {
                for l in links {
                    assert_eq!(l.from, s);
                    assert!(t.adjacency[l.to].iter().any(|m| m.to == s));
                    assert!(l.distance > 0.0);
                }
                if !t.cells[s].boundary {
                    assert_eq!(t.cells[s].sides, t.cells[s].vertices.len());
                    assert!(t.cells[s].area.unwrap() > 0.0);
                }
            }
        }
    }

    #[test]
    fn sphere_partition_and_charge() {
        for n in [101, 1351] {
            let p = generate_sphere(n, GOLDEN_DIVERGENCE).unwrap();
            let t = tessellate(&p).unwrap();
            let charge: i64 = classify(&t).iter().map(|c| c.charge()).sum();
            assert_eq!(charge, 12);
            let total: f64 = t.cells.iter().map(|c| c.area.unwrap()).sum();
            let r = p.surface.radius;
            assert!((total - 4.0 * PI * r * r).abs() < 1e-9 * total);
            assert!((total / n as f64 - PI).abs() < 1e-12);
        }
    }

    #[test]
    fn coincident_sites_are_reported() {
        let mut p = generate_plane(50, 1.0, GOLDEN_DIVERGENCE).unwrap();
        p.sites[31].xy = p.sites[17].xy;
        assert_eq!(tessellate(&p).unwrap_err(), TessellationError::Coincident { first: 17, second: 31 });
    }

    #[test]
    fn boundary_cells_have_no_area() {
        let p = generate_plane(300, 1.0, GOLDEN_DIVERGENCE).unwrap();
        let t = tessellate(&p).unwrap();
        assert_eq!(t.cell_area(299), Err(TessellationError::BoundaryCell { s: 299 }));
        assert!(t.cell_area(100).is_ok());
        assert_eq!(classify(&t)[299], CellType::Boundary);
    }
}
