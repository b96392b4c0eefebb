//! Run configuration shared by the subcommands.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use phyllo_core::generator::{generate, Indexing, PhylloPattern};
use phyllo_core::{SurfaceKind, GOLDEN_DIVERGENCE};

use crate::error::CliError;

/// Largest sphere the empirical threshold sweep tessellates by default.
pub const DEFAULT_N_CAP: usize = 25_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    Plane,
    Sphere,
    Hyperbolic,
}

impl Geometry {
    pub fn kind(self) -> SurfaceKind {
        match self {
            Geometry::Plane => SurfaceKind::Plane,
            Geometry::Sphere => SurfaceKind::Sphere,
            Geometry::Hyperbolic => SurfaceKind::Hyperbolic,
        }
    }

    pub fn from_kind(kind: SurfaceKind) -> Self {
        match kind {
            SurfaceKind::Plane => Geometry::Plane,
            SurfaceKind::Sphere => Geometry::Sphere,
            SurfaceKind::Hyperbolic => Geometry::Hyperbolic,
        }
    }

    /// Size used when `--n` is not given.
    pub fn default_n(self) -> usize {
        match self {
            Geometry::Sphere => 4001,
            _ => 3000,
        }
    }

    /// Scale used when `--a` is not given.
    pub fn default_a(self) -> f64 {
        match self {
            Geometry::Hyperbolic => 1.0 / 40.0,
            _ => 1.0,
        }
    }
}

impl FromStr for Geometry {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plane" => Ok(Geometry::Plane),
            "sphere" => Ok(Geometry::Sphere),
            "hyperbolic" => Ok(Geometry::Hyperbolic),
            other => Err(format!("unknown geometry `{other}` (plane, sphere, hyperbolic)")),
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind().name())
    }
}

/// Accepts a decimal literal or a fraction `p/q`.
pub fn parse_number(text: &str) -> Result<f64, String> {
    let value = match text.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| format!("bad numerator in `{text}`"))?;
            let q: f64 = q.trim().parse().map_err(|_| format!("bad denominator in `{text}`"))?;
            p / q
        }
        None => text.trim().parse().map_err(|_| format!("`{text}` is not a number"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{text}` is not finite"))
    }
}

/// Divergence: the keyword `golden` or a number of turns per site.
pub fn parse_lambda(text: &str) -> Result<f64, String> {
    if text == "golden" {
        Ok(GOLDEN_DIVERGENCE)
    } else {
        parse_number(text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (json, csv)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    /// Plane chart as is.
    Disc,
    /// Poincaré disc with the limit circle.
    Poincare,
    /// Sphere seen from below the south pole.
    Orthographic,
    /// Sphere chart from the north pole.
    Stereographic,
}

impl Projection {
    pub fn default_for(geometry: Geometry) -> Self {
        match geometry {
            Geometry::Plane => Projection::Disc,
            Geometry::Hyperbolic => Projection::Poincare,
            Geometry::Sphere => Projection::Orthographic,
        }
    }

    pub fn supports(self, geometry: Geometry) -> bool {
        matches!(
            (self, geometry),
            (Projection::Disc, Geometry::Plane)
                | (Projection::Poincare, Geometry::Hyperbolic)
                | (Projection::Orthographic | Projection::Stereographic, Geometry::Sphere)
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Projection::Disc => "disc",
            Projection::Poincare => "poincare",
            Projection::Orthographic => "orthographic",
            Projection::Stereographic => "stereographic",
        }
    }
}

impl FromStr for Projection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "disc" => Ok(Projection::Disc),
            "poincare" => Ok(Projection::Poincare),
            "orthographic" => Ok(Projection::Orthographic),
            "stereographic" => Ok(Projection::Stereographic),
            other => Err(format!(
                "unknown projection `{other}` (disc, poincare, orthographic, stereographic)"
            )),
        }
    }
}

/// Fill colours by cell class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorMap {
    pub square: String,
    pub pentagon: String,
    pub hexagon: String,
    pub heptagon: String,
    pub other: String,
    pub stroke: String,
}

impl Default for ColorMap {
    fn default() -> Self {
        ColorMap {
            square: "#f2d230".into(),
            pentagon: "#2a5bd7".into(),
            hexagon: "#d7342a".into(),
            heptagon: "#2a9d3a".into(),
            other: "#8c8c8c".into(),
            stroke: "#000000".into(),
        }
    }
}

/// Parameters that fully determine a pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternParams {
    pub geometry: Geometry,
    pub n: usize,
    pub a: f64,
    pub lambda: f64,
    pub indexing: Indexing,
}

impl PatternParams {
    pub fn new(geometry: Geometry, n: usize, a: Option<f64>, lambda: f64, half_integer: bool) -> Self {
        PatternParams {
            geometry,
            n,
            a: a.unwrap_or_else(|| geometry.default_a()),
            lambda,
            indexing: if half_integer { Indexing::HalfInteger } else { Indexing::Integer },
        }
    }

    pub fn generate(&self) -> Result<PhylloPattern, CliError> {
        Ok(generate(self.geometry.kind(), self.n, self.a, self.lambda, self.indexing)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Generate,
    Analyze,
    Thresholds { u_max: u32, empirical: bool, n_cap: usize },
    /// Without a projection the geometry's default view is used.
    Render { projection: Option<Projection> },
}

/// Everything one invocation needs. There is no seed: every output is a
/// pure function of this value.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: PatternParams,
    /// Pattern file to read instead of generating from `params`.
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub colors: ColorMap,
}
