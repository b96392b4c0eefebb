//! Generative spirals on the plane, the hyperbolic plane and the sphere.
//!
//! Site `s` receives the azimuth `2πλs` on every surface. Its distance from
//! the origin is chosen so that the disc through it holds `s` sites of mean
//! area π: `πρ² = πa²s` on the plane, the hyperbolic circle area with
//! `R = 1/a`, and the equal-area cylinder map on the sphere.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI, TAU};
use core::fmt;

#[allow(unused_imports)]
use num_traits::{Euclid, Float};

use crate::geometry::{ChartPoint, GeometryError, IntrinsicPoint, SurfaceKind, SurfaceSpec};

/// Whether sites sit at integer or half-integer spiral parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Indexing {
    #[default]
    Integer,
    HalfInteger,
}

impl Indexing {
    fn offset(self) -> f64 {
        match self {
            Indexing::Integer => 0.0,
            Indexing::HalfInteger => 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PatternError {
    Geometry(GeometryError),
    /// A pattern needs at least one site (three on the sphere).
    TooFewSites { n: usize, min: usize },
    /// The sphere construction pairs sites around the equator.
    EvenSphereCount { n: usize },
    /// Half-integer indexing is only defined for the open surfaces.
    UnsupportedIndexing,
    /// The site is the projection pole of the stereographic chart.
    ProjectionPole { s: usize },
    SiteOutOfRange { s: usize, n: usize },
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternError::Geometry(e) => e.fmt(f),
            PatternError::TooFewSites { n, min } => write!(f, "n = {n} is below the minimum of {min} sites"),
            PatternError::EvenSphereCount { n } => write!(f, "sphere patterns need an odd n, got {n}"),
            PatternError::UnsupportedIndexing => {
                f.write_str("half-integer indexing is not defined on the sphere")
            }
            PatternError::ProjectionPole { s } => {
                write!(f, "site {s} is the projection pole of the stereographic chart")
            }
            PatternError::SiteOutOfRange { s, n } => write!(f, "site {s} out of range for n = {n}"),
        }
    }
}

impl From<GeometryError> for PatternError {
    fn from(e: GeometryError) -> Self {
        PatternError::Geometry(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Site {
    pub s: usize,
    /// Intrinsic coordinates; `theta` is the unreduced spiral angle `2πλs`.
    pub intrinsic: IntrinsicPoint,
    /// Chart coordinates; `theta` is unreduced, `r` is infinite at the
    /// sphere's projection pole.
    pub chart: ChartPoint,
    /// Cartesian chart position, computed from the reduced azimuth.
    pub xy: [f64; 2],
    /// Point of the sphere of radius `R` in space.
    pub embedded: Option<[f64; 3]>,
}

impl Site {
    /// Azimuth reduced to `[0, 2π)`.
    pub fn azimuth(&self) -> f64 {
        let theta = Euclid::rem_euclid(&self.intrinsic.theta, &TAU);
        if theta >= TAU {
            0.0
        } else {
            theta
        }
    }
}

/// Which pole a sphere site is closer to. Plane and hyperbolic sites all
/// belong to `South`, the hemisphere of the first site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hemisphere {
    South,
    North,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhylloPattern {
    pub surface: SurfaceSpec,
    pub n: usize,
    pub indexing: Indexing,
    pub sites: Vec<Site>,
}

impl PhylloPattern {
    /// `ν` with `n = 2ν + 1` on the sphere.
    pub fn nu(&self) -> Option<usize> {
        (self.surface.kind == SurfaceKind::Sphere).then_some((self.n - 1) / 2)
    }

    /// Hemisphere of site `s` and its index counted from that hemisphere's
    /// pole. The equator belongs to the south.
    pub fn local_index(&self, s: usize) -> (Hemisphere, usize) {
        match self.nu() {
            Some(nu) if s > nu => (Hemisphere::North, 2 * nu - s),
            _ => (Hemisphere::South, s),
        }
    }

    /// Geodesic distance of site `s` from the pole of its hemisphere.
    pub fn polar_distance(&self, s: usize) -> f64 {
        let rho = self.sites[s].intrinsic.rho;
        match self.local_index(s).0 {
            Hemisphere::North => PI * self.surface.radius - rho,
            Hemisphere::South => rho,
        }
    }

    /// Area per site: `πa²` on the plane and π on the curved surfaces.
    pub fn site_area(&self) -> f64 {
        match self.surface.kind {
            SurfaceKind::Plane => PI * self.surface.a * self.surface.a,
            _ => PI,
        }
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }
}

fn reduced_xy(r: f64, turns: f64) -> [f64; 2] {
    let angle = TAU * turns.fract();
    [r * angle.cos(), r * angle.sin()]
}

/// Fermat spiral `ρ = a√s`, `θ = 2πλs`.
pub fn generate_plane(n: usize, a: f64, lambda: f64) -> Result<PhylloPattern, PatternError> {
    generate(SurfaceKind::Plane, n, a, lambda, Indexing::Integer)
}

/// Hyperbolic spiral with `R = 1/a`: `cosh(ρ/R) = a²s/2 + 1`.
pub fn generate_hyperbolic(n: usize, a: f64, lambda: f64) -> Result<PhylloPattern, PatternError> {
    generate(SurfaceKind::Hyperbolic, n, a, lambda, Indexing::Integer)
}

/// Spherical spiral on `n = 2ν + 1` sites with `R = √n/2`; site `s` sits at
/// latitude `asin((s − ν)/ν)`.
pub fn generate_sphere(n: usize, lambda: f64) -> Result<PhylloPattern, PatternError> {
    generate(SurfaceKind::Sphere, n, 1.0, lambda, Indexing::Integer)
}

/// General entry point. The scale `a` is ignored on the sphere, where it is
/// fixed by `n`.
pub fn generate(
    kind: SurfaceKind,
    n: usize,
    a: f64,
    lambda: f64,
    indexing: Indexing,
) -> Result<PhylloPattern, PatternError> {
    match kind {
        SurfaceKind::Plane | SurfaceKind::Hyperbolic => {
            if n < 1 {
                return Err(PatternError::TooFewSites { n, min: 1 });
            }
            if kind == SurfaceKind::Hyperbolic && !(a > 0.0 && a <= 1.0) {
                return Err(GeometryError::InvalidParameter { name: "a", value: a }.into());
            }
            let surface = SurfaceSpec::new(kind, 1.0 / a, a, lambda)?;
            let sites = (0..n)
                .map(|s| open_site(&surface, s, s as f64 + indexing.offset()))
                .collect();
            Ok(PhylloPattern { surface, n, indexing, sites })
        }
        SurfaceKind::Sphere => {
            if indexing != Indexing::Integer {
                return Err(PatternError::UnsupportedIndexing);
            }
            if n < 3 {
                return Err(PatternError::TooFewSites { n, min: 3 });
            }
            if n.is_multiple_of(2) {
                return Err(PatternError::EvenSphereCount { n });
            }
            let nu = (n - 1) / 2;
            let radius = (n as f64).sqrt() / 2.0;
            let surface = SurfaceSpec::new(kind, radius, (2.0 / nu as f64).sqrt(), lambda)?;
            let sites = (0..n).map(|s| sphere_site(&surface, nu, s)).collect();
            Ok(PhylloPattern { surface, n, indexing, sites })
        }
    }
}

fn open_site(surface: &SurfaceSpec, s: usize, t: f64) -> Site {
    let a = surface.a;
    let turns = surface.lambda * t;
    let theta = TAU * turns;
    let (rho, r) = match surface.kind {
        SurfaceKind::Hyperbolic => {
            // With y = sinh(ρ/2R) = a√t/2 the disc radius tanh(ρ/2R) stays
            // accurate near the limit circle.
            let y = 0.5 * a * t.sqrt();
            (2.0 * surface.radius * y.asinh(), y / (1.0 + y * y).sqrt())
        }
        _ => {
            let rho = a * t.sqrt();
            (rho, rho)
        }
    };
    Site {
        s,
        intrinsic: IntrinsicPoint { rho, theta, phi: None },
        chart: ChartPoint { r, theta },
        xy: reduced_xy(r, turns),
        embedded: None,
    }
}

fn sphere_site(surface: &SurfaceSpec, nu: usize, s: usize) -> Site {
    let radius = surface.radius;
    let nu_f = nu as f64;
    let sf = s as f64;
    let turns = surface.lambda * sf;
    let theta = TAU * turns;
    let shifted = (s as f64 - nu_f) / nu_f;
    let latitude = shifted.asin();
    let colat = latitude + FRAC_PI_2;
    // sin and cos of the colatitude without going through the angle.
    let sin_c = (sf * (2.0 * nu_f - sf)).sqrt() / nu_f;
    let cos_c = -shifted;
    let r = if s == 2 * nu {
        f64::INFINITY
    } else {
        (sf / (2.0 * nu_f - sf)).sqrt()
    };
    let angle = TAU * turns.fract();
    let (sin_t, cos_t) = angle.sin_cos();
    let xy = if r.is_finite() { [r * cos_t, r * sin_t] } else { [f64::INFINITY, f64::INFINITY] };
    Site {
        s,
        intrinsic: IntrinsicPoint { rho: radius * colat, theta, phi: Some(latitude) },
        chart: ChartPoint { r, theta },
        xy,
        embedded: Some([
            radius * sin_c * cos_t,
            radius * sin_c * sin_t,
            -radius * cos_c,
        ]),
    }
}

/// Stereographic chart radius of sphere site `s` from the cap relation
/// `r = tan(½ acos(1 − a²s/2))`.
pub fn stereographic_chart(pattern: &PhylloPattern, s: usize) -> Result<f64, PatternError> {
    let nu = pattern.nu().ok_or(GeometryError::WrongSurface {
        expected: SurfaceKind::Sphere,
        found: pattern.surface.kind,
    })?;
    if s >= pattern.n {
        return Err(PatternError::SiteOutOfRange { s, n: pattern.n });
    }
    if s == 2 * nu {
        return Err(PatternError::ProjectionPole { s });
    }
    let a = pattern.surface.a;
    Ok((0.5 * (1.0 - a * a * s as f64 / 2.0).acos()).tan())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{circle_area, GeometryError};
    use crate::numerics::{GOLDEN_DIVERGENCE, GOLDEN_RATIO};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn plane_examples() {
        let p = generate_plane(10, 1.0, GOLDEN_DIVERGENCE).unwrap();
        assert_eq!(p.sites[0].intrinsic.rho, 0.0);
        assert_eq!(p.sites[1].intrinsic.rho, 1.0);
        assert!(close(p.sites[1].azimuth(), TAU / GOLDEN_RATIO, 1e-15));
        assert!(close(p.sites[1].azimuth(), 3.883222, 1e-6));
        assert_eq!(p.sites[4].intrinsic.rho, 2.0);
        assert_eq!(p.sites[4].chart.r, 2.0);
        assert!(generate_plane(0, 1.0, GOLDEN_DIVERGENCE).is_err());
        assert!(generate_plane(5, -1.0, GOLDEN_DIVERGENCE).is_err());
    }

    #[test]
    fn hyperbolic_examples() {
        let p = generate_hyperbolic(3, 1.0, GOLDEN_DIVERGENCE).unwrap();
        assert_eq!(p.sites[0].chart.r, 0.0);
        assert_eq!(p.sites[0].intrinsic.rho, 0.0);
        let rho = p.sites[2].intrinsic.rho;
        assert!(close(rho.cosh(), 2.0, 1e-14));
        assert!(close(p.sites[2].chart.r, (0.5 * 2f64.acosh()).tanh(), 1e-15));
        let p = generate_hyperbolic(3000, 0.05, GOLDEN_DIVERGENCE).unwrap();
        let r = p.sites[2999].chart.r;
        assert!(r < 1.0);
        assert!(close(r, (0.5 * (0.05f64.powi(2) * 2999.0 / 2.0 + 1.0).acosh()).tanh(), 1e-14));
        assert!(generate_hyperbolic(5, 1.5, GOLDEN_DIVERGENCE).is_err());
    }

    #[test]
    fn hyperbolic_small_s_is_flat() {
        let p = generate_hyperbolic(5, 1e-3, GOLDEN_DIVERGENCE).unwrap();
        // R = 1/a already carries the 1/a rescaling, so ρ ≈ √s.
        assert!(close(p.sites[4].intrinsic.rho, 2.0, 1e-6));
    }

    #[test]
    fn sphere_examples() {
        let p = generate_sphere(1351, GOLDEN_DIVERGENCE).unwrap();
        assert!(close(p.surface.radius, 18.3780, 1e-5));
        let nu = p.nu().unwrap();
        assert_eq!(nu, 675);
        assert_eq!(p.sites[nu].intrinsic.phi, Some(0.0));
        assert_eq!(p.sites[nu].embedded.unwrap()[2], 0.0);
        assert_eq!(p.sites[0].intrinsic.phi, Some(-FRAC_PI_2));
        assert_eq!(p.sites[2 * nu].intrinsic.phi, Some(FRAC_PI_2));
        assert_eq!(p.sites[0].embedded.unwrap()[2], -p.surface.radius);
        assert!(p.sites[2 * nu].chart.r.is_infinite());
        assert_eq!(p.local_index(2 * nu - 3), (Hemisphere::North, 3));
        assert_eq!(p.local_index(nu), (Hemisphere::South, nu));
        assert_eq!(generate_sphere(1350, GOLDEN_DIVERGENCE), Err(PatternError::EvenSphereCount { n: 1350 }));
        assert!(generate_sphere(1, GOLDEN_DIVERGENCE).is_err());
        assert_eq!(
            generate(SurfaceKind::Sphere, 11, 1.0, GOLDEN_DIVERGENCE, Indexing::HalfInteger),
            Err(PatternError::UnsupportedIndexing)
        );
    }

    #[test]
    fn sphere_axial_coordinate_is_exact() {
        let p = generate_sphere(4001, GOLDEN_DIVERGENCE).unwrap();
        let nu = p.nu().unwrap() as f64;
        let radius = p.surface.radius;
        for site in &p.sites {
            let xyz = site.embedded.unwrap();
            let expected = radius * (site.s as f64 - nu) / nu;
            assert!((xyz[2] - expected).abs() <= 1e-12 * radius);
            let norm = (xyz[0] * xyz[0] + xyz[1] * xyz[1] + xyz[2] * xyz[2]).sqrt();
            assert!(close(norm, radius, 1e-12));
        }
    }

    #[test]
    fn stereographic_chart_examples() {
        let p = generate_sphere(201, GOLDEN_DIVERGENCE).unwrap();
        assert_eq!(stereographic_chart(&p, 0), Ok(0.0));
        // a²s/2 = 1 at s = ν, the equator.
        assert!(close(stereographic_chart(&p, 100).unwrap(), 1.0, 1e-14));
        assert_eq!(stereographic_chart(&p, 200), Err(PatternError::ProjectionPole { s: 200 }));
        let last = stereographic_chart(&p, 199).unwrap();
        assert!(last > 10.0);
        let mut previous = -1.0;
        for s in 0..200 {
            let r = stereographic_chart(&p, s).unwrap();
            assert!(r > previous);
            assert!(close(r, p.sites[s].chart.r, 1e-10), "s = {s}");
            previous = r;
        }
        let plane = generate_plane(5, 1.0, GOLDEN_DIVERGENCE).unwrap();
        assert!(matches!(
            stereographic_chart(&plane, 1),
            Err(PatternError::Geometry(GeometryError::WrongSurface { .. }))
        ));
    }

    #[test]
    fn azimuth_increment() {
        for p in [
            generate_plane(2000, 1.0, GOLDEN_DIVERGENCE).unwrap(),
            generate_sphere(2001, GOLDEN_DIVERGENCE).unwrap(),
        ] {
            for pair in p.sites.windows(2) {
                let step = (pair[1].azimuth() - pair[0].azimuth()).rem_euclid(TAU);
                assert!((step - TAU * GOLDEN_DIVERGENCE).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn radius_is_monotone() {
        let plane = generate_plane(3000, 1.0, GOLDEN_DIVERGENCE).unwrap();
        let hyp = generate_hyperbolic(3000, 1.0 / 40.0, GOLDEN_DIVERGENCE).unwrap();
        for p in [&plane, &hyp] {
            assert!(p.sites.windows(2).all(|w| w[1].intrinsic.rho > w[0].intrinsic.rho));
            assert!(p.sites.windows(2).all(|w| w[1].chart.r > w[0].chart.r));
        }
        let sphere = generate_sphere(3001, GOLDEN_DIVERGENCE).unwrap();
        assert!(sphere
            .sites
            .windows(2)
            .all(|w| w[1].intrinsic.phi.unwrap() > w[0].intrinsic.phi.unwrap()));
    }

    #[test]
    fn sites_inside_a_disc_follow_its_area() {
        let plane = generate_plane(3000, 1.0, GOLDEN_DIVERGENCE).unwrap();
        let hyp = generate_hyperbolic(3000, 1.0 / 20.0, GOLDEN_DIVERGENCE).unwrap();
        for p in [&plane, &hyp] {
            for k in 1..50 {
                let rho = p.sites[2999].intrinsic.rho * k as f64 / 50.0;
                let inside = p.sites.iter().filter(|x| x.intrinsic.rho <= rho).count() as f64;
                let expected = circle_area(&p.surface, rho) / p.site_area();
                assert!((inside - expected).abs() <= 1.0 + 1e-9, "{} {inside} {expected}", p.surface.kind);
            }
        }
    }

    #[test]
    fn half_integer_indexing() {
        let p = generate(SurfaceKind::Plane, 4, 1.0, GOLDEN_DIVERGENCE, Indexing::HalfInteger).unwrap();
        assert!(close(p.sites[0].intrinsic.rho, 0.5f64.sqrt(), 1e-15));
        assert!(close(p.sites[0].intrinsic.theta, PI * GOLDEN_DIVERGENCE, 1e-15));
    }

    #[test]
    fn azimuths_are_equidistributed() {
        // Star discrepancy of {λs} decreases with n.
        let discrepancy = |n: usize| {
            let mut x: Vec<f64> = (0..n).map(|s| (GOLDEN_DIVERGENCE * s as f64).fract()).collect();
            x.sort_by(f64::total_cmp);
            x.iter()
                .enumerate()
                .map(|(i, &v)| {
                    let lo = (v - i as f64 / n as f64).abs();
                    let hi = ((i + 1) as f64 / n as f64 - v).abs();
                    lo.max(hi)
                })
                .fold(0.0, f64::max)
        };
        let values: Vec<f64> = [100, 1000, 10000].iter().map(|&n| discrepancy(n)).collect();
        assert!(values.windows(2).all(|w| w[1] < w[0]));
        assert!(values[2] < 2.0 * (10000f64).ln() / 10000.0);
    }
}
