//! Grain boundaries: rings of heptagon/pentagon dipoles between hexagonal
//! grains.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

#[allow(unused_imports)]
use num_traits::{Euclid, Float};

use crate::generator::Hemisphere;
use crate::geometry::{circle_perimeter, SurfaceKind};
use crate::numerics::{cyclic_gaps, fibonacci, nearest_fibonacci_rank, LsWord};
use crate::tessellation::{classify, CellType, Tessellation};

/// Sites closer than this (in hemisphere-local index) to a pole form the
/// irregular core and take no part in boundary detection.
pub const CORE_SITES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryStatus {
    /// Counts `(f_u, f_{u−1}, f_u)` with no other defects.
    Complete,
    /// Fibonacci pentagon count but a partial composition, like the
    /// `(3, 5, 8)` ring next to the core.
    Incomplete,
    /// Touches boundary or core cells, so some members may be missing.
    Truncated,
    /// Pentagon count not within one of a Fibonacci number.
    Anomalous,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrainBoundary {
    /// `u` with `f_u` closest to the pentagon count.
    pub rank: Option<u32>,
    pub hemisphere: Hemisphere,
    /// All member sites (defects and interleaved hexagons) by azimuth.
    pub members: Vec<usize>,
    pub heptagons: Vec<usize>,
    pub hexagons: Vec<usize>,
    pub pentagons: Vec<usize>,
    /// Cells with neither five, six nor seven sides.
    pub others: Vec<usize>,
    /// `(heptagons, hexagons, pentagons)`.
    pub counts: (usize, usize, usize),
    /// Edge-adjacent `(heptagon, pentagon)` pairs, ordered by azimuth.
    pub dipoles: Vec<(usize, usize)>,
    /// Singleton/pair pattern of the dipoles around the ring.
    pub word: LsWord,
    /// Global index range of the defect cells.
    pub s_range: (usize, usize),
    /// Hemisphere-local index range of the defect cells.
    pub local_range: (usize, usize),
    /// Mean geodesic distance of the members from the pole, in units where
    /// the mean cell area is π.
    pub mean_radius: f64,
    /// Perimeter of the geodesic circle of radius `mean_radius`, same units.
    pub perimeter: f64,
    pub status: BoundaryStatus,
}

impl GrainBoundary {
    pub fn is_complete(&self) -> bool {
        self.status == BoundaryStatus::Complete
    }
}

/// Length unit that brings the mean cell area to π.
pub(crate) fn unit_length(tess: &Tessellation<'_>) -> f64 {
    (tess.pattern.site_area() / PI).sqrt()
}

/// Finds every dipole ring of a tessellation, innermost first in each
/// hemisphere.
pub fn detect_grain_boundaries(tess: &Tessellation<'_>) -> Vec<GrainBoundary> {
    let pattern = tess.pattern;
    let n = pattern.len();
    let types = classify(tess);
    let local: Vec<(Hemisphere, usize)> = (0..n).map(|s| pattern.local_index(s)).collect();
    let eligible = |s: usize| types[s] != CellType::Boundary && local[s].1 >= CORE_SITES;
    let defect = |s: usize| eligible(s) && types[s] != CellType::Hexagon;

    let mut hemisphere_sites: BTreeMap<Hemisphere, Vec<usize>> = BTreeMap::new();
    for s in 0..n {
        hemisphere_sites.entry(local[s].0).or_default().push(s);
    }
    for list in hemisphere_sites.values_mut() {
        list.sort_by_key(|&s| local[s].1);
    }

    // Each ring is a block of heptagons, then hexagons, then pentagons in
    // index order. Adjacency alone merges neighbouring rings and splits the
    // sparse inner one, so the defect sequence is cut where a heptagon
    // follows a pentagon.
    let mut segments: Vec<Vec<usize>> = Vec::new();
    for list in hemisphere_sites.values() {
        let mut current: Vec<usize> = Vec::new();
        let mut seen_pentagon = false;
        for &s in list.iter().filter(|&&s| defect(s)) {
            if types[s] == CellType::Heptagon && seen_pentagon {
                segments.push(core::mem::take(&mut current));
                seen_pentagon = false;
            }
            seen_pentagon |= types[s] == CellType::Pentagon;
            current.push(s);
        }
        if !current.is_empty() {
            segments.push(current);
        }
    }

    let rings = segments;

    let unit = unit_length(tess);
    let mut out: Vec<GrainBoundary> = rings
        .into_iter()
        .map(|defects| {
            let hemisphere = local[defects[0]].0;
            let lo = defects.iter().map(|&s| local[s].1).min().unwrap();
            let hi = defects.iter().map(|&s| local[s].1).max().unwrap();
            let in_range: Vec<usize> = hemisphere_sites[&hemisphere]
                .iter()
                .copied()
                .filter(|&s| (lo..=hi).contains(&local[s].1))
                .collect();
            let truncated = in_range.iter().any(|&s| !eligible(s))
                || defects.iter().any(|&s| {
                    tess.neighbors(s).iter().any(|l| types[l.to] == CellType::Boundary)
                });
            let pick = |t: CellType| -> Vec<usize> {
                let mut list: Vec<usize> = defects.iter().copied().filter(|&s| types[s] == t).collect();
                list.sort_unstable();
                list
            };
            let heptagons = pick(CellType::Heptagon);
            let pentagons = pick(CellType::Pentagon);
            let others: Vec<usize> = defects
                .iter()
                .copied()
                .filter(|&s| !matches!(types[s], CellType::Heptagon | CellType::Pentagon))
                .collect();
            let hexagons: Vec<usize> = in_range
                .iter()
                .copied()
                .filter(|&s| eligible(s) && types[s] == CellType::Hexagon)
                .collect();
            let counts = (heptagons.len(), hexagons.len(), pentagons.len());
            let rank = nearest_fibonacci_rank(counts.2 as u64, 1);
            let complete = rank.is_some_and(|u| {
                let f = |k| fibonacci(k).unwrap_or(0) as usize;
                u >= 2 && counts == (f(u), f(u - 1), f(u))
            });
            let status = if rank.is_none() {
                BoundaryStatus::Anomalous
            } else if truncated {
                BoundaryStatus::Truncated
            } else if complete && others.is_empty() {
                BoundaryStatus::Complete
            } else {
                BoundaryStatus::Incomplete
            };

            let mut members: Vec<usize> = defects.iter().chain(hexagons.iter()).copied().collect();
            members.sort_by(|&x, &y| {
                let (ax, ay) = (pattern.sites[x].azimuth(), pattern.sites[y].azimuth());
                ax.total_cmp(&ay).then(x.cmp(&y))
            });
            let mean_radius = members.iter().map(|&s| pattern.polar_distance(s)).sum::<f64>()
                / members.len() as f64;
            let perimeter = circle_perimeter(&pattern.surface, mean_radius) / unit;
            let dipoles = match_dipoles(tess, &heptagons, &pentagons, &local);
            let word = dipole_word(tess, &dipoles);
            let s_min = defects.iter().copied().min().unwrap();
            let s_max = defects.iter().copied().max().unwrap();
            GrainBoundary {
                rank,
                hemisphere,
                members,
                heptagons,
                hexagons,
                pentagons,
                others,
                counts,
                dipoles,
                word,
                s_range: (s_min, s_max),
                local_range: (lo, hi),
                mean_radius: mean_radius / unit,
                perimeter,
                status,
            }
        })
        .collect();
    out.sort_by_key(|b| (b.hemisphere, b.local_range.0));
    out
}

/// Maximum matching of heptagons to edge-adjacent pentagons, trying the
/// most common index offset first.
fn match_dipoles(
    tess: &Tessellation<'_>,
    heptagons: &[usize],
    pentagons: &[usize],
    local: &[(Hemisphere, usize)],
) -> Vec<(usize, usize)> {
    let offset = |h: usize, p: usize| local[p].1 as i64 - local[h].1 as i64;
    let mut frequency: BTreeMap<i64, usize> = BTreeMap::new();
    let mut options: Vec<Vec<usize>> = Vec::with_capacity(heptagons.len());
    for &h in heptagons {
        let list: Vec<usize> = tess
            .neighbors(h)
            .iter()
            .filter_map(|l| pentagons.binary_search(&l.to).ok())
            .collect();
        for &k in &list {
            *frequency.entry(offset(h, pentagons[k])).or_default() += 1;
        }
        options.push(list);
    }
    for (i, &h) in heptagons.iter().enumerate() {
        options[i].sort_by_key(|&k| {
            (core::cmp::Reverse(frequency[&offset(h, pentagons[k])]), pentagons[k])
        });
    }

    let mut owner = alloc::vec![usize::MAX; pentagons.len()];
    for start in 0..heptagons.len() {
        let mut visited = alloc::vec![false; pentagons.len()];
        augment(start, &options, &mut owner, &mut visited);
    }
    let mut dipoles: Vec<(usize, usize)> = owner
        .iter()
        .enumerate()
        .filter(|&(_, &h)| h != usize::MAX)
        .map(|(k, &h)| (heptagons[h], pentagons[k]))
        .collect();
    let azimuth = |d: &(usize, usize)| midpoint_azimuth(tess, d.0, d.1);
    dipoles.sort_by(|x, y| azimuth(x).total_cmp(&azimuth(y)).then(x.cmp(y)));
    dipoles
}

fn augment(h: usize, options: &[Vec<usize>], owner: &mut [usize], visited: &mut [bool]) -> bool {
    for &k in &options[h] {
        if visited[k] {
            continue;
        }
        visited[k] = true;
        if owner[k] == usize::MAX || augment(owner[k], options, owner, visited) {
            owner[k] = h;
            return true;
        }
    }
    false
}

fn midpoint_azimuth(tess: &Tessellation<'_>, a: usize, b: usize) -> f64 {
    let sites = &tess.pattern.sites;
    let (x, y) = match (sites[a].embedded, sites[b].embedded) {
        (Some(p), Some(q)) => (p[0] + q[0], p[1] + q[1]),
        _ => (sites[a].xy[0] + sites[b].xy[0], sites[a].xy[1] + sites[b].xy[1]),
    };
    Euclid::rem_euclid(&y.atan2(x), &TAU)
}

fn dipole_word(tess: &Tessellation<'_>, dipoles: &[(usize, usize)]) -> LsWord {
    let azimuths: Vec<f64> = dipoles.iter().map(|&(h, p)| midpoint_azimuth(tess, h, p)).collect();
    LsWord::from_cyclic_gaps(&cyclic_gaps(&azimuths, TAU))
}

/// Outcome of comparing one boundary's word with the inflation of the
/// previous one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InflationCheck {
    pub hemisphere: Hemisphere,
    pub from_rank: u32,
    pub to_rank: u32,
    pub holds: bool,
}

/// Checks `word(u+1) ≅ inflate(word(u))` for consecutive complete boundaries
/// of each hemisphere.
pub fn verify_inflation(boundaries: &[GrainBoundary]) -> Vec<InflationCheck> {
    let complete: Vec<&GrainBoundary> = boundaries.iter().filter(|b| b.is_complete()).collect();
    complete
        .windows(2)
        .filter(|w| w[0].hemisphere == w[1].hemisphere)
        .filter_map(|w| {
            let (from, to) = (w[0].rank?, w[1].rank?);
            let holds = to == from + 1
                && w[0].word.inflate().is_ok_and(|inflated| inflated.equivalent(&w[1].word));
            Some(InflationCheck { hemisphere: w[0].hemisphere, from_rank: from, to_rank: to, holds })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DipoleAngles {
    /// Signed angle from the outward radial direction to the
    /// heptagon→pentagon direction, per dipole.
    pub angles: Vec<f64>,
    pub mean_abs: f64,
    /// Sign of the mean signed angle: the handedness of the ring.
    pub orientation: i8,
}

/// Angles between dipoles and the radial (meridian) direction at their
/// midpoints.
pub fn dipole_angles(boundary: &GrainBoundary, tess: &Tessellation<'_>) -> DipoleAngles {
    let sites = &tess.pattern.sites;
    let angles: Vec<f64> = boundary
        .dipoles
        .iter()
        .map(|&(h, p)| match tess.pattern.surface.kind {
            SurfaceKind::Sphere => {
                let (a, b) = (sites[h].embedded.unwrap(), sites[p].embedded.unwrap());
                sphere_angle(a, b, boundary.hemisphere)
            }
            _ => {
                let (a, b) = (sites[h].xy, sites[p].xy);
                let v = [b[0] - a[0], b[1] - a[1]];
                let m = [a[0] + b[0], a[1] + b[1]];
                (m[0] * v[1] - m[1] * v[0]).atan2(m[0] * v[0] + m[1] * v[1])
            }
        })
        .collect();
    let count = angles.len().max(1) as f64;
    let mean_abs = angles.iter().map(|x| x.abs()).sum::<f64>() / count;
    let mean = angles.iter().sum::<f64>() / count;
    let orientation = if mean > 0.0 {
        1
    } else if mean < 0.0 {
        -1
    } else {
        0
    };
    DipoleAngles { angles, mean_abs, orientation }
}

/// Angle in the tangent plane at the midpoint, measured from the meridian
/// pointing away from the hemisphere's pole, counterclockwise seen from
/// outside.
fn sphere_angle(a: [f64; 3], b: [f64; 3], hemisphere: Hemisphere) -> f64 {
    use crate::geometry::{cross3, dot3, norm3, scale3, sub3};
    let m = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
    let m = scale3(m, 1.0 / norm3(m));
    let project = |v: [f64; 3]| sub3(v, scale3(m, dot3(v, m)));
    let pole_away = match hemisphere {
        Hemisphere::South => [0.0, 0.0, 1.0],
        Hemisphere::North => [0.0, 0.0, -1.0],
    };
    let e = project(pole_away);
    let v = project(sub3(b, a));
    dot3(m, cross3(e, v)).atan2(dot3(e, v))
}

/// Number of non-hexagonal interior cells within `f_{u+2}/2` sites of the
/// equator: zero until the ring with `f_u` dipoles has room there.
pub fn equatorial_defects(tess: &Tessellation<'_>, rank: u32) -> Option<usize> {
    let nu = tess.pattern.nu()?;
    let half = fibonacci(rank + 2).ok()? as f64 / 2.0;
    let types = classify(tess);
    Some(
        (0..tess.pattern.len())
            .filter(|&s| (s as f64 - nu as f64).abs() <= half)
            .filter(|&s| !matches!(types[s], CellType::Hexagon | CellType::Boundary))
            .count(),
    )
}

/// Radial widths of the grains between consecutive boundaries of one
/// hemisphere, in units of `R` (plain lengths on the plane).
pub fn grain_widths(boundaries: &[GrainBoundary], hemisphere: Hemisphere, radius: f64) -> Vec<f64> {
    let scale = if radius.is_finite() { radius } else { 1.0 };
    let radii: Vec<f64> = boundaries
        .iter()
        .filter(|b| b.hemisphere == hemisphere && b.status != BoundaryStatus::Anomalous)
        .map(|b| b.mean_radius)
        .collect();
    radii.windows(2).map(|w| (w[1] - w[0]) / scale).collect()
}
