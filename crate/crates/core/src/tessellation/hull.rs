//! Incremental convex hull of points on a sphere.
//!
//! Every site of a spherical pattern is a hull vertex, and the hull faces
//! are the spherical Delaunay triangles. Faces are stored counterclockwise
//! seen from outside.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use robust::{orient3d, Coord3D};

use super::{Mesh, TessellationError, NONE};

fn coord(p: [f64; 3]) -> Coord3D<f64> {
    Coord3D { x: p[0], y: p[1], z: p[2] }
}

struct Builder<'p> {
    pts: &'p [[f64; 3]],
    faces: Vec<[usize; 3]>,
    adj: Vec<[usize; 3]>,
    alive: Vec<bool>,
    free: Vec<usize>,
    vertex_face: Vec<usize>,
    mark: Vec<u32>,
    stamp: u32,
    horizon_start: Vec<usize>,
}

impl<'p> Builder<'p> {
    /// Negative when `p` lies strictly outside face `f`.
    fn side(&self, f: usize, p: usize) -> f64 {
        let [a, b, c] = self.faces[f];
        orient3d(coord(self.pts[a]), coord(self.pts[b]), coord(self.pts[c]), coord(self.pts[p]))
    }

    fn new_face(&mut self, v: [usize; 3], n: [usize; 3]) -> usize {
        let f = if let Some(f) = self.free.pop() {
            self.faces[f] = v;
            self.adj[f] = n;
            self.alive[f] = true;
            self.mark[f] = 0;
            f
        } else {
            self.faces.push(v);
            self.adj.push(n);
            self.alive.push(true);
            self.mark.push(0);
            self.faces.len() - 1
        };
        for &x in &v {
            self.vertex_face[x] = f;
        }
        f
    }

    /// A face visible from `p`, found by walking across the edges whose
    /// great circle separates the current face from `p`.
    fn visible_seed(&self, p: usize, start: usize) -> Option<usize> {
        let origin = coord([0.0; 3]);
        let mut f = self.vertex_face[start];
        if f != NONE && self.alive[f] {
            'walk: for step in 0..4 * self.faces.len() + 16 {
                if self.side(f, p) < 0.0 {
                    return Some(f);
                }
                let face = self.faces[f];
                for j in 0..3 {
                    let k = (j + step) % 3;
                    let a = coord(self.pts[face[(k + 1) % 3]]);
                    let b = coord(self.pts[face[(k + 2) % 3]]);
                    let inner = orient3d(origin, a, b, coord(self.pts[face[k]]));
                    let target = orient3d(origin, a, b, coord(self.pts[p]));
                    if inner * target < 0.0 {
                        f = self.adj[f][k];
                        continue 'walk;
                    }
                }
                break;
            }
        }
        (0..self.faces.len()).find(|&f| self.alive[f] && self.side(f, p) < 0.0)
    }

    fn insert(&mut self, p: usize, start: usize) -> Result<(), usize> {
        let Some(seed) = self.visible_seed(p, start) else {
            // On or inside the hull: only possible for a repeated point.
            let close = (0..p)
                .find(|&q| self.pts[q] == self.pts[p])
                .unwrap_or(p);
            return Err(close);
        };
        self.stamp += 1;
        let stamp = self.stamp;
        let mut visible = Vec::new();
        let mut queue = VecDeque::new();
        self.mark[seed] = stamp;
        queue.push_back(seed);
        while let Some(f) = queue.pop_front() {
            visible.push(f);
            for k in 0..3 {
                let g = self.adj[f][k];
                if self.mark[g] != stamp && self.side(g, p) < 0.0 {
                    self.mark[g] = stamp;
                    queue.push_back(g);
                }
            }
        }
        // Horizon edges u→v, in the orientation of their visible face.
        let mut horizon = Vec::new();
        for &f in &visible {
            for k in 0..3 {
                let g = self.adj[f][k];
                if self.mark[g] != stamp {
                    horizon.push((self.faces[f][(k + 1) % 3], self.faces[f][(k + 2) % 3], g, f));
                }
            }
        }
        for &f in &visible {
            self.alive[f] = false;
        }
        let mut created = Vec::with_capacity(horizon.len());
        for &(u, v, outer, old) in &horizon {
            let f = self.new_face([u, v, p], [NONE, NONE, outer]);
            let slot = self.adj[outer].iter().position(|&x| x == old).expect("outer face borders the visible region");
            self.adj[outer][slot] = f;
            self.horizon_start[u] = f;
            created.push(f);
        }
        for &f in &created {
            let v = self.faces[f][1];
            let g = self.horizon_start[v];
            self.adj[f][0] = g;
            self.adj[g][1] = f;
        }
        // Recycle only now so that `outer` faces never see a reused index.
        self.free.extend_from_slice(&visible);
        Ok(())
    }
}

/// Convex hull of points on a sphere centred at the origin.
pub(crate) fn spherical_hull(pts: &[[f64; 3]]) -> Result<Mesh, TessellationError> {
    let n = pts.len();
    if n < 4 {
        return Err(TessellationError::TooFewSites { n, min: 4 });
    }
    for (i, p) in pts.iter().enumerate() {
        if !p.iter().all(|x| x.is_finite()) {
            return Err(TessellationError::NonFinite { s: i });
        }
    }
    let [a, b] = [0, 1];
    if pts[a] == pts[b] {
        return Err(TessellationError::Coincident { first: a, second: b });
    }
    let cross = |u: [f64; 3], v: [f64; 3]| {
        [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
    };
    let sub = |u: [f64; 3], v: [f64; 3]| [u[0] - v[0], u[1] - v[1], u[2] - v[2]];
    let c = (2..n)
        .find(|&i| cross(sub(pts[b], pts[a]), sub(pts[i], pts[a])) != [0.0; 3])
        .ok_or(TessellationError::Degenerate)?;
    let d = (c + 1..n)
        .find(|&i| orient3d(coord(pts[a]), coord(pts[b]), coord(pts[c]), coord(pts[i])) != 0.0)
        .ok_or(TessellationError::Degenerate)?;
    // Orient the seed tetrahedron so that d lies below (inside) face abc.
    let (b, c) = if orient3d(coord(pts[a]), coord(pts[b]), coord(pts[c]), coord(pts[d])) > 0.0 {
        (b, c)
    } else {
        (c, b)
    };
    let mut builder = Builder {
        pts,
        faces: Vec::with_capacity(2 * n),
        adj: Vec::with_capacity(2 * n),
        alive: Vec::with_capacity(2 * n),
        free: Vec::new(),
        vertex_face: alloc::vec![NONE; n],
        mark: Vec::with_capacity(2 * n),
        stamp: 0,
        horizon_start: alloc::vec![NONE; n],
    };
    // Faces abc, adb, bdc, cda with adjacency opposite each vertex.
    let f0 = builder.new_face([a, b, c], [2, 3, 1]);
    let f1 = builder.new_face([a, d, b], [2, 0, 3]);
    let f2 = builder.new_face([b, d, c], [3, 0, 1]);
    let f3 = builder.new_face([c, d, a], [1, 0, 2]);
    debug_assert_eq!([f0, f1, f2, f3], [0, 1, 2, 3]);

    let seeds = [a, b, c, d];
    let mut previous = d;
    for p in (0..n).filter(|i| !seeds.contains(i)) {
        builder
            .insert(p, previous)
            .map_err(|q| TessellationError::Coincident { first: q.min(p), second: q.max(p) })?;
        previous = p;
    }
    let mut mesh = Mesh { triangles: Vec::new(), neighbors: Vec::new() };
    let mut index = alloc::vec![NONE; builder.faces.len()];
    for f in 0..builder.faces.len() {
        if builder.alive[f] {
            index[f] = mesh.triangles.len();
            mesh.triangles.push(builder.faces[f]);
        }
    }
    for f in 0..builder.faces.len() {
        if builder.alive[f] {
            mesh.neighbors.push(builder.adj[f].map(|g| index[g]));
        }
    }
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_sphere(count: usize, seed: u64) -> Vec<[f64; 3]> {
        let mut rng = StdRng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let z: f64 = rng.random_range(-1.0..1.0);
                let t: f64 = rng.random_range(0.0..core::f64::consts::TAU);
                let s = (1.0 - z * z).sqrt();
                [s * t.cos(), s * t.sin(), z]
            })
            .collect()
    }

    fn check(pts: &[[f64; 3]], mesh: &Mesh) {
        assert_eq!(mesh.triangles.len(), 2 * pts.len() - 4);
        for (f, tri) in mesh.triangles.iter().enumerate() {
            let [a, b, c] = *tri;
            for (i, p) in pts.iter().enumerate() {
                if !tri.contains(&i) {
                    let o = orient3d(coord(pts[a]), coord(pts[b]), coord(pts[c]), coord(*p));
                    assert!(o >= 0.0, "face {f} sees point {i}");
                }
            }
            for k in 0..3 {
                let g = mesh.neighbors[f][k];
                let edge = [tri[(k + 1) % 3], tri[(k + 2) % 3]];
                let other = mesh.triangles[g];
                let j = (0..3).find(|&j| mesh.neighbors[g][j] == f).unwrap();
                assert_eq!([other[(j + 2) % 3], other[(j + 1) % 3]], edge);
            }
        }
    }

    #[test]
    fn random_points_on_sphere() {
        for (count, seed) in [(4, 1), (5, 2), (50, 3), (400, 4)] {
            let pts = random_sphere(count, seed);
            check(&pts, &spherical_hull(&pts).unwrap());
        }
    }

    #[test]
    fn octahedron_is_degenerate_but_valid() {
        let pts = [
            [0.0, 0.0, -1.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
        ];
        check(&pts, &spherical_hull(&pts).unwrap());
    }

    #[test]
    fn errors() {
        let pts = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert!(matches!(spherical_hull(&pts), Err(TessellationError::TooFewSites { .. })));
        let mut pts = random_sphere(10, 9);
        pts[7] = pts[3];
        assert_eq!(spherical_hull(&pts), Err(TessellationError::Coincident { first: 3, second: 7 }));
        let flat = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, -1.0, 0.0]];
        assert_eq!(spherical_hull(&flat), Err(TessellationError::Degenerate));
    }
}
