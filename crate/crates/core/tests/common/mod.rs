//! Brute-force nearest-site oracle shared by the integration tests.

use std::f64::consts::TAU;

use phyllo_core::generator::{generate_hyperbolic, generate_plane, generate_sphere, PhylloPattern};
use phyllo_core::geometry::xy_distance;
use phyllo_core::tessellation::{tessellate, Tessellation};
use phyllo_core::GOLDEN_DIVERGENCE;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const PROBES: usize = 10_000;
pub const EDGE_TOLERANCE: f64 = 1e-8;

pub enum Probe {
    Chart([f64; 2]),
    Sphere([f64; 3]),
}

fn distance(pattern: &PhylloPattern, s: usize, probe: &Probe) -> f64 {
    match probe {
        Probe::Chart(p) => xy_distance(&pattern.surface, pattern.sites[s].xy, *p),
        Probe::Sphere(p) => {
            let q = pattern.sites[s].embedded.unwrap();
            let r = pattern.surface.radius;
            let c = (p[0] * q[0] + p[1] * q[1] + p[2] * q[2]) / r;
            let x = [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]];
            let sn = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt() / r;
            r * sn.atan2(c)
        }
    }
}

fn contains(tess: &Tessellation<'_>, s: usize, probe: &Probe) -> Option<bool> {
    match probe {
        Probe::Chart(p) => tess.contains_chart(s, *p),
        Probe::Sphere(p) => tess.contains_embedded(s, *p),
    }
}

pub struct Outcome {
    pub tested: usize,
    pub agreed: usize,
    pub far_mismatches: usize,
}

/// Draws probes until `PROBES` of them fall in closed cells, and checks that
/// exactly the nearest site's cell (among it and its neighbours) contains
/// each of them.
pub fn run(pattern: &PhylloPattern, mut draw: impl FnMut(&mut StdRng) -> Probe, seed: u64) -> Outcome {
    let tess = tessellate(pattern).unwrap();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut outcome = Outcome { tested: 0, agreed: 0, far_mismatches: 0 };
    let mut attempts = 0;
    while outcome.tested < PROBES {
        attempts += 1;
        assert!(attempts < 50 * PROBES, "probe region mostly outside closed cells");
        let probe = draw(&mut rng);
        let mut order: Vec<(f64, usize)> = (0..pattern.len()).map(|s| (distance(pattern, s, &probe), s)).collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0));
        let nearest = order[0].1;
        let Some(inside) = contains(&tess, nearest, &probe) else {
            continue;
        };
        let others = tess
            .neighbors(nearest)
            .iter()
            .any(|l| contains(&tess, l.to, &probe) == Some(true));
        outcome.tested += 1;
        if inside && !others {
            outcome.agreed += 1;
        } else if order[1].0 - order[0].0 > EDGE_TOLERANCE * order[0].0.max(1.0) {
            outcome.far_mismatches += 1;
        }
    }
    outcome
}

impl Outcome {
    pub fn share(&self) -> f64 {
        self.agreed as f64 / self.tested as f64
    }
}

fn disc_probe(reach: f64) -> impl FnMut(&mut StdRng) -> Probe {
    move |rng| {
        let r = reach * rng.random::<f64>().sqrt();
        let t = rng.random_range(0.0..TAU);
        Probe::Chart([r * t.cos(), r * t.sin()])
    }
}

pub fn plane_case(n: usize) -> Outcome {
    let pattern = generate_plane(n, 1.0, GOLDEN_DIVERGENCE).unwrap();
    run(&pattern, disc_probe((n as f64).sqrt()), n as u64)
}

pub fn hyperbolic_case(n: usize, a: f64) -> Outcome {
    let pattern = generate_hyperbolic(n, a, GOLDEN_DIVERGENCE).unwrap();
    let last = pattern.sites[n - 1].xy;
    run(&pattern, disc_probe(last[0].hypot(last[1])), 7 + n as u64)
}

pub fn sphere_case(n: usize) -> Outcome {
    let pattern = generate_sphere(n, GOLDEN_DIVERGENCE).unwrap();
    let r = pattern.surface.radius;
    let draw = move |rng: &mut StdRng| {
        let z = rng.random_range(-1.0..1.0f64);
        let t = rng.random_range(0.0..TAU);
        let w = (1.0 - z * z).sqrt();
        Probe::Sphere([r * w * t.cos(), r * w * t.sin(), r * z])
    };
    run(&pattern, draw, 13 + n as u64)
}
