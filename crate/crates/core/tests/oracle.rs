//! Voronoi membership against a brute-force nearest-site search.

mod common;

use std::f64::consts::PI;

use common::{hyperbolic_case, plane_case, sphere_case, Outcome};
use phyllo_core::generator::generate_sphere;
use phyllo_core::tessellation::tessellate;
use phyllo_core::GOLDEN_DIVERGENCE;

fn check(outcome: Outcome, label: &str) {
    let share = outcome.share();
    assert!(share >= 0.999, "{label}: agreement {share}");
    assert_eq!(outcome.far_mismatches, 0, "{label}: mismatches away from edges");
}

#[test]
fn plane_cells_match_nearest_site() {
    for n in [20, 200] {
        check(plane_case(n), "plane");
    }
}

#[test]
fn hyperbolic_cells_match_nearest_site() {
    for (n, a) in [(200, 0.25), (200, 1.0 / 40.0), (60, 1.0)] {
        check(hyperbolic_case(n, a), "hyperbolic");
    }
}

#[test]
fn sphere_cells_match_nearest_site() {
    for n in [11, 51, 199] {
        check(sphere_case(n), "sphere");
    }
}

#[test]
fn sphere_partition_has_no_gaps() {
    let pattern = generate_sphere(199, GOLDEN_DIVERGENCE).unwrap();
    let tess = tessellate(&pattern).unwrap();
    let total: f64 = (0..pattern.len()).map(|s| tess.cell_area(s).unwrap()).sum();
    assert!((total - 4.0 * PI * pattern.surface.radius.powi(2)).abs() < 1e-9 * total);
}
