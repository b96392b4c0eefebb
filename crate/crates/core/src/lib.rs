//! Phyllotactic point sets on surfaces of constant Gaussian curvature.
//!
//! Sites are placed on a generative spiral with golden divergence on the
//! Euclidean plane, on the sphere (through the equal-area cylinder map) and
//! on the hyperbolic plane (represented in the Poincaré disc). The crate
//! builds their Delaunay/Voronoi tessellations with exact predicates and
//! analyses the resulting grains and grain boundaries: dipole rings, their
//! Fibonacci composition and inflation symmetry, cell areas and first
//! neighbour distances, together with the closed-form predictions they are
//! compared against.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod numerics;
pub mod geometry;
pub mod generator;
pub mod tessellation;
pub mod analysis;

pub use analysis::{detect_grain_boundaries, distance_series, area_series, GrainBoundary, SeriesReport};
pub use generator::{generate, generate_hyperbolic, generate_plane, generate_sphere, PhylloPattern, Site};
pub use geometry::{SurfaceKind, SurfaceSpec};
pub use numerics::{fibonacci, LsWord, GOLDEN_DIVERGENCE, GOLDEN_RATIO};
pub use tessellation::{classify, tessellate, CellType, Tessellation};
