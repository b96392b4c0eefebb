//! Charts and metrics of the three constant-curvature surfaces.
//!
//! Every surface is described by a conformal chart in polar form `(r, θ)`:
//! the identity on the plane, the Poincaré disc on the hyperbolic plane and
//! the stereographic projection of the sphere from the pole opposite to the
//! first site. Distances are evaluated in closed form.

use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::numerics::GOLDEN_DIVERGENCE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    Plane,
    Sphere,
    Hyperbolic,
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Plane => "plane",
            SurfaceKind::Sphere => "sphere",
            SurfaceKind::Hyperbolic => "hyperbolic",
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeometryError {
    /// A surface parameter is out of its domain.
    InvalidParameter { name: &'static str, value: f64 },
    /// A chart radius outside the chart, e.g. `r ≥ 1` in the Poincaré disc.
    OutsideChart { r: f64 },
    /// The operation is only defined on another surface.
    WrongSurface { expected: SurfaceKind, found: SurfaceKind },
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::InvalidParameter { name, value } => {
                write!(f, "invalid surface parameter {name} = {value}")
            }
            GeometryError::OutsideChart { r } => write!(f, "chart radius {r} lies outside the chart"),
            GeometryError::WrongSurface { expected, found } => {
                write!(f, "operation requires a {expected} surface, got {found}")
            }
        }
    }
}

/// Surface together with the parameters of the generative spiral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSpec {
    pub kind: SurfaceKind,
    /// Curvature radius `R`; infinite on the plane.
    pub radius: f64,
    /// Metric scale `a` of the spiral.
    pub a: f64,
    /// Divergence `λ` in turns.
    pub lambda: f64,
}

impl SurfaceSpec {
    pub fn new(kind: SurfaceKind, radius: f64, a: f64, lambda: f64) -> Result<Self, GeometryError> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(GeometryError::InvalidParameter { name: "a", value: a });
        }
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(GeometryError::InvalidParameter { name: "lambda", value: lambda });
        }
        let radius = match kind {
            SurfaceKind::Plane => f64::INFINITY,
            _ if radius > 0.0 && radius.is_finite() => radius,
            _ => return Err(GeometryError::InvalidParameter { name: "R", value: radius }),
        };
        Ok(SurfaceSpec { kind, radius, a, lambda })
    }

    pub fn plane(a: f64) -> Result<Self, GeometryError> {
        SurfaceSpec::new(SurfaceKind::Plane, f64::INFINITY, a, GOLDEN_DIVERGENCE)
    }

    /// Hyperbolic plane with `R = 1/a`, so that the mean area per site is π.
    pub fn hyperbolic(a: f64) -> Result<Self, GeometryError> {
        SurfaceSpec::new(SurfaceKind::Hyperbolic, 1.0 / a, a, GOLDEN_DIVERGENCE)
    }

    pub fn with_lambda(self, lambda: f64) -> Result<Self, GeometryError> {
        SurfaceSpec::new(self.kind, self.radius, self.a, lambda)
    }

    /// Gaussian curvature `κ`.
    pub fn curvature(&self) -> f64 {
        match self.kind {
            SurfaceKind::Plane => 0.0,
            SurfaceKind::Sphere => 1.0 / (self.radius * self.radius),
            SurfaceKind::Hyperbolic => -1.0 / (self.radius * self.radius),
        }
    }

    fn require(&self, expected: SurfaceKind) -> Result<(), GeometryError> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(GeometryError::WrongSurface { expected, found: self.kind })
        }
    }

    fn check_chart(&self, r: f64) -> Result<(), GeometryError> {
        let valid = match self.kind {
            SurfaceKind::Hyperbolic => (0.0..1.0).contains(&r),
            _ => r >= 0.0 && !r.is_nan(),
        };
        if valid {
            Ok(())
        } else {
            Err(GeometryError::OutsideChart { r })
        }
    }
}

/// Polar chart coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    pub r: f64,
    pub theta: f64,
}

impl ChartPoint {
    pub fn new(r: f64, theta: f64) -> Self {
        ChartPoint { r, theta }
    }

    pub fn from_xy(xy: [f64; 2]) -> Self {
        ChartPoint { r: xy[0].hypot(xy[1]), theta: xy[1].atan2(xy[0]) }
    }

    pub fn xy(&self) -> [f64; 2] {
        [self.r * self.theta.cos(), self.r * self.theta.sin()]
    }
}

/// Intrinsic polar coordinates: geodesic distance from the origin (or from
/// the first pole on the sphere) and azimuth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntrinsicPoint {
    pub rho: f64,
    pub theta: f64,
    /// Latitude in `[−π/2, π/2]`, sphere only.
    pub phi: Option<f64>,
}

/// Local length multiplier of the chart at radius `r`.
pub fn conformal_factor(surface: &SurfaceSpec, r: f64) -> Result<f64, GeometryError> {
    surface.check_chart(r)?;
    Ok(match surface.kind {
        SurfaceKind::Plane => 1.0,
        SurfaceKind::Hyperbolic => 2.0 * surface.radius / (1.0 - r * r),
        SurfaceKind::Sphere => 2.0 * surface.radius / (1.0 + r * r),
    })
}

/// Geodesic distance between two chart points.
pub fn chart_distance(surface: &SurfaceSpec, p: ChartPoint, q: ChartPoint) -> Result<f64, GeometryError> {
    surface.check_chart(p.r)?;
    surface.check_chart(q.r)?;
    if surface.kind == SurfaceKind::Sphere && (p.r.is_infinite() || q.r.is_infinite()) {
        let u = stereographic_to_unit(p);
        let v = stereographic_to_unit(q);
        return Ok(surface.radius * unit_angle(u, v));
    }
    Ok(xy_distance(surface, p.xy(), q.xy()))
}

/// Geodesic distance between two points given in Cartesian chart coordinates.
pub fn xy_distance(surface: &SurfaceSpec, p: [f64; 2], q: [f64; 2]) -> f64 {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    let chord = dx.hypot(dy);
    let p2 = p[0] * p[0] + p[1] * p[1];
    let q2 = q[0] * q[0] + q[1] * q[1];
    match surface.kind {
        SurfaceKind::Plane => chord,
        SurfaceKind::Hyperbolic => {
            2.0 * surface.radius * (chord / ((1.0 - p2) * (1.0 - q2)).sqrt()).asinh()
        }
        SurfaceKind::Sphere => {
            // Chordal distance on the unit sphere is 2|p−q|/√((1+|p|²)(1+|q|²)).
            let half = chord / ((1.0 + p2) * (1.0 + q2)).sqrt();
            2.0 * surface.radius * half.min(1.0).asin()
        }
    }
}

/// Chart point → intrinsic coordinates.
pub fn chart_to_intrinsic(surface: &SurfaceSpec, p: ChartPoint) -> Result<IntrinsicPoint, GeometryError> {
    surface.check_chart(p.r)?;
    Ok(match surface.kind {
        SurfaceKind::Plane => IntrinsicPoint { rho: p.r, theta: p.theta, phi: None },
        SurfaceKind::Hyperbolic => IntrinsicPoint {
            rho: 2.0 * surface.radius * p.r.atanh(),
            theta: p.theta,
            phi: None,
        },
        SurfaceKind::Sphere => {
            let colat = 2.0 * p.r.atan();
            IntrinsicPoint {
                rho: surface.radius * colat,
                theta: p.theta,
                phi: Some(colat - FRAC_PI_2),
            }
        }
    })
}

/// Intrinsic coordinates → chart point. On the sphere `rho` fixes the point.
pub fn intrinsic_to_chart(surface: &SurfaceSpec, p: IntrinsicPoint) -> Result<ChartPoint, GeometryError> {
    if !(p.rho >= 0.0) {
        return Err(GeometryError::InvalidParameter { name: "rho", value: p.rho });
    }
    let r = match surface.kind {
        SurfaceKind::Plane => p.rho,
        SurfaceKind::Hyperbolic => (p.rho / (2.0 * surface.radius)).tanh(),
        SurfaceKind::Sphere => {
            let colat = p.rho / surface.radius;
            if colat > PI {
                return Err(GeometryError::InvalidParameter { name: "rho", value: p.rho });
            }
            stereographic_radius(colat)
        }
    };
    surface.check_chart(r)?;
    Ok(ChartPoint { r, theta: p.theta })
}

/// Stereographic chart radius of the colatitude `c`, measured from the chart
/// origin; infinite at the projection pole.
pub fn stereographic_radius(colat: f64) -> f64 {
    if colat >= PI {
        f64::INFINITY
    } else {
        (0.5 * colat).tan()
    }
}

/// Area of a geodesic disc of radius `rho` on the hyperbolic plane.
pub fn hyperbolic_circle_area(surface: &SurfaceSpec, rho: f64) -> Result<f64, GeometryError> {
    surface.require(SurfaceKind::Hyperbolic)?;
    if !(rho >= 0.0) {
        return Err(GeometryError::InvalidParameter { name: "rho", value: rho });
    }
    // 2πR²(cosh(ρ/R) − 1) written without cancellation.
    let r = surface.radius;
    let h = (0.5 * rho / r).sinh();
    Ok(4.0 * PI * r * r * h * h)
}

/// Area of a geodesic disc on any of the three surfaces.
pub fn circle_area(surface: &SurfaceSpec, rho: f64) -> f64 {
    let r = surface.radius;
    match surface.kind {
        SurfaceKind::Plane => PI * rho * rho,
        SurfaceKind::Hyperbolic => {
            let h = (0.5 * rho / r).sinh();
            4.0 * PI * r * r * h * h
        }
        SurfaceKind::Sphere => {
            let h = (0.5 * rho / r).sin();
            4.0 * PI * r * r * h * h
        }
    }
}

/// Circumference of a geodesic circle of radius `rho`.
pub fn circle_perimeter(surface: &SurfaceSpec, rho: f64) -> f64 {
    let r = surface.radius;
    match surface.kind {
        SurfaceKind::Plane => 2.0 * PI * rho,
        SurfaceKind::Hyperbolic => 2.0 * PI * r * (rho / r).sinh(),
        SurfaceKind::Sphere => 2.0 * PI * r * (rho / r).sin(),
    }
}

/// Number of sites in a polar cap of colatitude `colat` when the sphere
/// carries `2ν + 1` sites.
pub fn sphere_cap_sites(nu: u64, colat: f64) -> f64 {
    nu as f64 * (1.0 - colat.cos())
}

pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

pub(crate) fn scale3(a: [f64; 3], k: f64) -> [f64; 3] {
    [a[0] * k, a[1] * k, a[2] * k]
}

/// Angle between two unit vectors, accurate for small and large angles.
pub(crate) fn unit_angle(u: [f64; 3], v: [f64; 3]) -> f64 {
    let d = norm3(sub3(u, v));
    let s = norm3([u[0] + v[0], u[1] + v[1], u[2] + v[2]]);
    2.0 * d.atan2(s)
}

/// Unit vector of a stereographic chart point; the chart origin maps to
/// `(0, 0, −1)` and infinity to `(0, 0, 1)`.
pub(crate) fn stereographic_to_unit(p: ChartPoint) -> [f64; 3] {
    if p.r.is_infinite() {
        return [0.0, 0.0, 1.0];
    }
    let colat = 2.0 * p.r.atan();
    let (s, c) = (colat.sin(), colat.cos());
    [s * p.theta.cos(), s * p.theta.sin(), -c]
}

/// Stereographic chart coordinates of a unit vector.
pub(crate) fn unit_to_stereographic(u: [f64; 3]) -> [f64; 2] {
    let k = 1.0 / (1.0 - u[2]);
    [u[0] * k, u[1] * k]
}

/// Unit-hyperboloid lift `(x₀, x₁, x₂)` of a Poincaré-disc point.
pub(crate) fn disc_to_hyperboloid(p: [f64; 2]) -> [f64; 3] {
    let p2 = p[0] * p[0] + p[1] * p[1];
    let k = 1.0 / (1.0 - p2);
    [(1.0 + p2) * k, 2.0 * p[0] * k, 2.0 * p[1] * k]
}

/// Poincaré-disc image of a point on the upper unit hyperboloid.
pub(crate) fn hyperboloid_to_disc(x: [f64; 3]) -> [f64; 2] {
    let k = 1.0 / (1.0 + x[0]);
    [x[1] * k, x[2] * k]
}

/// Minkowski product `−x₀y₀ + x₁y₁ + x₂y₂`.
pub(crate) fn minkowski(x: [f64; 3], y: [f64; 3]) -> f64 {
    -x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}
