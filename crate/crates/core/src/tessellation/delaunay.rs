//! Incremental planar Delaunay triangulation with exact predicates.
//!
//! Points are inserted in the given order. A point inside the current hull
//! is located by a visibility walk and splits its triangle (or edge); a point
//! outside is joined to every hull edge it sees. Lawson flips restore the
//! empty-circle property after each insertion.

use alloc::vec::Vec;

use robust::{incircle, orient2d, Coord};

use super::{Mesh, TessellationError, NONE};

#[derive(Clone, Copy)]
struct Tri {
    v: [usize; 3],
    n: [usize; 3],
}

struct Builder<'p> {
    pts: &'p [[f64; 2]],
    tris: Vec<Tri>,
    hull_next: Vec<usize>,
    hull_prev: Vec<usize>,
    hull_tri: Vec<usize>,
    last: usize,
    stack: Vec<(usize, usize)>,
}

fn coord(p: [f64; 2]) -> Coord<f64> {
    Coord { x: p[0], y: p[1] }
}

enum Location {
    Inside(usize),
    OnEdge(usize, usize),
    Outside(usize, usize),
}

impl<'p> Builder<'p> {
    fn orient(&self, a: usize, b: usize, c: usize) -> f64 {
        orient2d(coord(self.pts[a]), coord(self.pts[b]), coord(self.pts[c]))
    }

    fn set_neighbor(&mut self, t: usize, old: usize, new: usize) {
        if t == NONE {
            return;
        }
        let tri = &mut self.tris[t];
        for k in 0..3 {
            if tri.n[k] == old {
                tri.n[k] = new;
                return;
            }
        }
        unreachable!("triangle {t} is not adjacent to {old}");
    }

    /// Records `t` as the owner of its hull edges.
    fn claim_hull(&mut self, t: usize) {
        let tri = self.tris[t];
        for k in 0..3 {
            if tri.n[k] == NONE {
                self.hull_tri[tri.v[(k + 1) % 3]] = t;
            }
        }
    }

    fn push(&mut self, tri: Tri) -> usize {
        self.tris.push(tri);
        self.tris.len() - 1
    }

    fn locate_from(&self, start: usize, p: usize) -> Option<Result<Location, usize>> {
        let mut t = start;
        let limit = 4 * self.tris.len() + 16;
        for step in 0..limit {
            let tri = self.tris[t];
            let mut next = NONE;
            let mut zero = [false; 3];
            for j in 0..3 {
                // Rotate the starting edge to avoid cycling on degenerate walks.
                let k = (j + step) % 3;
                let o = self.orient(tri.v[(k + 1) % 3], tri.v[(k + 2) % 3], p);
                if o < 0.0 {
                    if tri.n[k] == NONE {
                        return Some(Ok(Location::Outside(t, k)));
                    }
                    if next == NONE {
                        next = tri.n[k];
                    }
                } else if o == 0.0 {
                    zero[k] = true;
                }
            }
            if next == NONE {
                let zeros = zero.iter().filter(|&&z| z).count();
                return Some(match zeros {
                    0 => Ok(Location::Inside(t)),
                    1 => Ok(Location::OnEdge(t, zero.iter().position(|&z| z).unwrap())),
                    _ => {
                        let k = (0..3).find(|&k| self.pts[tri.v[k]] == self.pts[p]).unwrap_or(0);
                        Err(tri.v[k])
                    }
                });
            }
            t = next;
        }
        None
    }

    fn locate(&self, p: usize) -> Result<Location, usize> {
        if let Some(found) = self.locate_from(self.last, p) {
            return found;
        }
        // The walk did not terminate; fall back to an exhaustive search.
        for t in 0..self.tris.len() {
            let tri = self.tris[t];
            let o: [f64; 3] =
                core::array::from_fn(|k| self.orient(tri.v[(k + 1) % 3], tri.v[(k + 2) % 3], p));
            if o.iter().all(|&x| x >= 0.0) {
                return self.locate_from(t, p).expect("walk from the containing triangle stops");
            }
            for k in 0..3 {
                if o[k] < 0.0 && tri.n[k] == NONE {
                    return Ok(Location::Outside(t, k));
                }
            }
        }
        unreachable!("point {p} is neither inside nor outside the hull")
    }

    fn insert(&mut self, p: usize) -> Result<(), usize> {
        match self.locate(p)? {
            Location::Inside(t) => self.split_triangle(t, p),
            Location::OnEdge(t, k) => self.split_edge(t, k, p),
            Location::Outside(t, k) => self.attach_outside(t, k, p),
        }
        self.legalize();
        Ok(())
    }

    fn split_triangle(&mut self, t: usize, p: usize) {
        let Tri { v: [a, b, c], n: [na, nb, nc] } = self.tris[t];
        let t0 = t;
        let t1 = self.tris.len();
        let t2 = t1 + 1;
        self.tris[t0] = Tri { v: [p, b, c], n: [na, t1, t2] };
        self.push(Tri { v: [p, c, a], n: [nb, t2, t0] });
        self.push(Tri { v: [p, a, b], n: [nc, t0, t1] });
        self.set_neighbor(nb, t, t1);
        self.set_neighbor(nc, t, t2);
        for x in [t0, t1, t2] {
            self.claim_hull(x);
            self.stack.push((x, 0));
        }
        self.last = t0;
    }

    fn split_edge(&mut self, t: usize, k: usize, p: usize) {
        let tri = self.tris[t];
        let c = tri.v[k];
        let a = tri.v[(k + 1) % 3];
        let b = tri.v[(k + 2) % 3];
        let u = tri.n[k];
        let n_bc = tri.n[(k + 1) % 3];
        let n_ca = tri.n[(k + 2) % 3];
        let ta = t;
        let tb = self.tris.len();
        self.push(Tri { v: [p, b, c], n: [n_bc, ta, NONE] });
        self.tris[ta] = Tri { v: [p, c, a], n: [n_ca, NONE, tb] };
        self.set_neighbor(n_bc, t, tb);
        if u == NONE {
            self.hull_next[a] = p;
            self.hull_prev[p] = a;
            self.hull_next[p] = b;
            self.hull_prev[b] = p;
            for x in [ta, tb] {
                self.claim_hull(x);
                self.stack.push((x, 0));
            }
        } else {
            let ut = self.tris[u];
            let j = (0..3).find(|&j| ut.n[j] == t).expect("adjacency is symmetric");
            let d = ut.v[j];
            let n_ad = ut.n[(j + 1) % 3];
            let n_db = ut.n[(j + 2) % 3];
            let ua = u;
            let ub = self.tris.len();
            self.tris[ua] = Tri { v: [p, a, d], n: [n_ad, ub, ta] };
            self.push(Tri { v: [p, d, b], n: [n_db, tb, ua] });
            self.set_neighbor(n_db, u, ub);
            self.tris[ta].n[1] = ua;
            self.tris[tb].n[2] = ub;
            for x in [ta, tb, ua, ub] {
                self.claim_hull(x);
                self.stack.push((x, 0));
            }
        }
        self.last = ta;
    }

    fn attach_outside(&mut self, t: usize, k: usize, p: usize) {
        let tri = self.tris[t];
        let a = tri.v[(k + 1) % 3];
        // Extend the visible chain of hull edges in both directions.
        let mut first = a;
        while self.orient(self.hull_prev[first], first, p) < 0.0 {
            first = self.hull_prev[first];
        }
        let mut last = a;
        while self.orient(last, self.hull_next[last], p) < 0.0 {
            last = self.hull_next[last];
        }
        let mut x = first;
        let mut previous = NONE;
        let mut first_new = NONE;
        while x != last {
            let y = self.hull_next[x];
            let owner = self.hull_tri[x];
            let created = self.push(Tri { v: [y, x, p], n: [previous, NONE, owner] });
            // `owner` may carry several hull edges; close only x→y.
            let slot = (0..3)
                .find(|&k| self.tris[owner].n[k] == NONE && self.tris[owner].v[(k + 1) % 3] == x)
                .expect("hull edge owner is up to date");
            self.tris[owner].n[slot] = created;
            if previous != NONE {
                self.tris[previous].n[1] = created;
            } else {
                first_new = created;
            }
            self.stack.push((created, 2));
            previous = created;
            x = y;
        }
        self.hull_next[first] = p;
        self.hull_prev[p] = first;
        self.hull_next[p] = last;
        self.hull_prev[last] = p;
        self.hull_tri[first] = first_new;
        self.hull_tri[p] = previous;
        self.last = previous;
    }

    fn legalize(&mut self) {
        while let Some((t, k)) = self.stack.pop() {
            let tri = self.tris[t];
            let u = tri.n[k];
            if u == NONE {
                continue;
            }
            let ut = self.tris[u];
            let j = (0..3).find(|&j| ut.n[j] == t).expect("adjacency is symmetric");
            let q = ut.v[j];
            let (v0, v1, v2) = (tri.v[k], tri.v[(k + 1) % 3], tri.v[(k + 2) % 3]);
            let inside = incircle(
                coord(self.pts[v0]),
                coord(self.pts[v1]),
                coord(self.pts[v2]),
                coord(self.pts[q]),
            );
            if inside <= 0.0 {
                continue;
            }
            // Rotate so that t = (x, a, b) with the shared edge a→b.
            let (x, a, b) = (v0, v1, v2);
            let n_bx = tri.n[(k + 1) % 3];
            let n_xa = tri.n[(k + 2) % 3];
            let n_aq = ut.n[(j + 1) % 3];
            let n_qb = ut.n[(j + 2) % 3];
            self.tris[t] = Tri { v: [x, a, q], n: [n_aq, u, n_xa] };
            self.tris[u] = Tri { v: [x, q, b], n: [n_qb, n_bx, t] };
            self.set_neighbor(n_aq, u, t);
            self.set_neighbor(n_bx, t, u);
            self.claim_hull(t);
            self.claim_hull(u);
            // Every queued edge faces the new point, so only the two edges
            // opposite it can have become illegal.
            self.stack.push((t, 0));
            self.stack.push((u, 0));
        }
    }
}

/// Delaunay triangulation of `pts`, inserted in index order.
pub(crate) fn triangulate(pts: &[[f64; 2]]) -> Result<Mesh, TessellationError> {
    let n = pts.len();
    if n < 3 {
        return Err(TessellationError::TooFewSites { n, min: 3 });
    }
    for (i, p) in pts.iter().enumerate() {
        if !(p[0].is_finite() && p[1].is_finite()) {
            return Err(TessellationError::NonFinite { s: i });
        }
    }
    // Seed with the first non-degenerate triple; skipped points follow it.
    let a = 0;
    let b = 1;
    if pts[a] == pts[b] {
        return Err(TessellationError::Coincident { first: a, second: b });
    }
    let c = (2..n)
        .find(|&i| orient2d(coord(pts[a]), coord(pts[b]), coord(pts[i])) != 0.0)
        .ok_or(TessellationError::Degenerate)?;
    let mut order: Vec<usize> = Vec::with_capacity(n);
    order.extend(2..c);
    order.extend(c + 1..n);
    let (b, c) = if orient2d(coord(pts[a]), coord(pts[b]), coord(pts[c])) > 0.0 { (b, c) } else { (c, b) };

    let mut builder = Builder {
        pts,
        tris: Vec::with_capacity(2 * n),
        hull_next: alloc::vec![NONE; n],
        hull_prev: alloc::vec![NONE; n],
        hull_tri: alloc::vec![NONE; n],
        last: 0,
        stack: Vec::new(),
    };
    builder.tris.push(Tri { v: [a, b, c], n: [NONE; 3] });
    for (x, y) in [(a, b), (b, c), (c, a)] {
        builder.hull_next[x] = y;
        builder.hull_prev[y] = x;
        builder.hull_tri[x] = 0;
    }
    // Collinear points skipped before `c` are inserted once a triangle exists.
    order.sort_by_key(|&i| (i >= c, i));
    for p in order {
        builder
            .insert(p)
            .map_err(|existing| TessellationError::Coincident { first: existing.min(p), second: existing.max(p) })?;
    }
    Ok(Mesh {
        triangles: builder.tris.iter().map(|t| t.v).collect(),
        neighbors: builder.tris.iter().map(|t| t.n).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn check(pts: &[[f64; 2]], mesh: &Mesh) {
        for (t, tri) in mesh.triangles.iter().enumerate() {
            let [a, b, c] = *tri;
            assert!(orient2d(coord(pts[a]), coord(pts[b]), coord(pts[c])) > 0.0, "triangle {t} not CCW");
            for k in 0..3 {
                let u = mesh.neighbors[t][k];
                if u != NONE {
                    assert!(mesh.neighbors[u].contains(&t));
                }
            }
            for (i, &p) in pts.iter().enumerate() {
                if !tri.contains(&i) {
                    assert!(incircle(coord(pts[a]), coord(pts[b]), coord(pts[c]), coord(p)) <= 0.0);
                }
            }
        }
        // Euler: triangles = 2n − 2 − hull size.
        let hull = mesh.neighbors.iter().flatten().filter(|&&u| u == NONE).count();
        assert_eq!(mesh.triangles.len(), 2 * pts.len() - 2 - hull);
    }

    #[test]
    fn random_points() {
        let mut rng = StdRng::seed_from_u64(7);
        for size in [3usize, 4, 10, 60, 300] {
            let pts: Vec<[f64; 2]> = (0..size).map(|_| [rng.random::<f64>(), rng.random::<f64>()]).collect();
            check(&pts, &triangulate(&pts).unwrap());
        }
    }

    #[test]
    fn grid_with_cocircular_points() {
        let pts: Vec<[f64; 2]> = (0..64).map(|i| [(i % 8) as f64, (i / 8) as f64]).collect();
        check(&pts, &triangulate(&pts).unwrap());
    }

    #[test]
    fn collinear_prefix() {
        let mut pts: Vec<[f64; 2]> = (0..6).map(|i| [i as f64, 0.0]).collect();
        pts.push([2.5, 1.0]);
        pts.push([2.5, -1.0]);
        check(&pts, &triangulate(&pts).unwrap());
    }

    #[test]
    fn degenerate_inputs() {
        let line: Vec<[f64; 2]> = (0..5).map(|i| [i as f64, 2.0 * i as f64]).collect();
        assert_eq!(triangulate(&line), Err(TessellationError::Degenerate));
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]];
        assert_eq!(triangulate(&pts), Err(TessellationError::Coincident { first: 1, second: 4 }));
        assert!(triangulate(&pts[..2]).is_err());
    }
}
