//! Lower convex hull of lifted points by incremental insertion, with an
//! extra vertex at vertical infinity so that the hull of `P ∪ {+∞ẑ}` is
//! exactly the lower hull of `P` closed off by vertical walls.
//!
//! The lower-hull edges are the adjacencies of the (unclipped) power
//! diagram; points strictly above the lower hull own empty cells.

use std::collections::HashMap;

/// Index of the vertex at vertical infinity.
const INF: usize = usize::MAX;

#[derive(Debug, Clone)]
pub(crate) struct HullAdjacency {
    pub neighbors: Vec<Vec<usize>>,
    pub on_hull: Vec<bool>,
}

fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn norm3(a: [f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

fn cross2(u: [f64; 2], v: [f64; 2]) -> f64 {
    u[0] * v[1] - u[1] * v[0]
}

fn xy(p: [f64; 3]) -> [f64; 2] {
    [p[0], p[1]]
}

const REL_EPS: f64 = 1e-13;

struct Hull<'a> {
    pts: &'a [[f64; 3]],
    faces: Vec<[usize; 3]>,
    alive: Vec<bool>,
    edge_face: HashMap<(usize, usize), usize>,
}

impl Hull<'_> {
    fn visible(&self, f: usize, q: usize) -> bool {
        let mut v = self.faces[f];
        // rotate so that the infinite vertex, if any, comes last
        while v[0] == INF || v[1] == INF {
            v = [v[1], v[2], v[0]];
        }
        let qp = self.pts[q];
        if v[2] == INF {
            let (u, w) = (xy(self.pts[v[0]]), xy(self.pts[v[1]]));
            let d = [w[0] - u[0], w[1] - u[1]];
            let e = [qp[0] - u[0], qp[1] - u[1]];
            let tol = REL_EPS * d[0].hypot(d[1]) * e[0].hypot(e[1]);
            cross2(d, e) < -tol
        } else {
            let a = self.pts[v[0]];
            let e1 = sub3(self.pts[v[1]], a);
            let e2 = sub3(self.pts[v[2]], a);
            let e3 = sub3(qp, a);
            let n = [
                e1[1] * e2[2] - e1[2] * e2[1],
                e1[2] * e2[0] - e1[0] * e2[2],
                e1[0] * e2[1] - e1[1] * e2[0],
            ];
            let det = n[0] * e3[0] + n[1] * e3[1] + n[2] * e3[2];
            det > REL_EPS * norm3(e1) * norm3(e2) * norm3(e3)
        }
    }

    fn add_face(&mut self, v: [usize; 3]) {
        let id = self.faces.len();
        self.faces.push(v);
        self.alive.push(true);
        for k in 0..3 {
            self.edge_face.insert((v[k], v[(k + 1) % 3]), id);
        }
    }

    fn insert(&mut self, q: usize) {
        let visible: Vec<usize> = (0..self.faces.len())
            .filter(|&f| self.alive[f] && self.visible(f, q))
            .collect();
        if visible.is_empty() {
            return;
        }
        let mut horizon = Vec::new();
        for &f in &visible {
            let v = self.faces[f];
            for k in 0..3 {
                let (a, b) = (v[k], v[(k + 1) % 3]);
                match self.edge_face.get(&(b, a)) {
                    Some(&g) if self.alive[g] && !visible.contains(&g) => horizon.push((a, b)),
                    _ => {}
                }
            }
        }
        for &f in &visible {
            self.alive[f] = false;
            let v = self.faces[f];
            for k in 0..3 {
                let key = (v[k], v[(k + 1) % 3]);
                if self.edge_face.get(&key) == Some(&f) {
                    self.edge_face.remove(&key);
                }
            }
        }
        for (a, b) in horizon {
            self.add_face([a, b, q]);
        }
    }

    fn is_closed(&self) -> bool {
        self.faces.iter().zip(&self.alive).filter(|(_, &a)| a).all(|(v, _)| {
            (0..3).all(|k| {
                self.edge_face
                    .get(&(v[(k + 1) % 3], v[k]))
                    .is_some_and(|&g| self.alive[g])
            })
        })
    }
}

/// Adjacency of the lower hull of `pts`, or `None` when the projected points
/// are fewer than three or collinear (no initial triangle) or the hull came
/// out inconsistent.
pub(crate) fn lower_hull_adjacency(pts: &[[f64; 3]]) -> Option<HullAdjacency> {
    let n = pts.len();
    if n < 3 {
        return None;
    }
    let a = (0..n).min_by(|&i, &j| {
        pts[i][0]
            .total_cmp(&pts[j][0])
            .then(pts[i][1].total_cmp(&pts[j][1]))
            .then(pts[i][2].total_cmp(&pts[j][2]))
    })?;
    let d2 = |i: usize| {
        let (dx, dy) = (pts[i][0] - pts[a][0], pts[i][1] - pts[a][1]);
        dx * dx + dy * dy
    };
    let b = (0..n).max_by(|&i, &j| d2(i).total_cmp(&d2(j)))?;
    let ab = [pts[b][0] - pts[a][0], pts[b][1] - pts[a][1]];
    let area = |i: usize| cross2(ab, [pts[i][0] - pts[a][0], pts[i][1] - pts[a][1]]);
    let mut c = (0..n).max_by(|&i, &j| area(i).abs().total_cmp(&area(j).abs()))?;
    let len_ab = ab[0].hypot(ab[1]);
    if area(c).abs() <= 1e-12 * len_ab * len_ab {
        return None;
    }
    let mut b = b;
    if area(c) < 0.0 {
        std::mem::swap(&mut b, &mut c);
    }

    let mut hull = Hull {
        pts,
        faces: Vec::with_capacity(4 * n),
        alive: Vec::with_capacity(4 * n),
        edge_face: HashMap::with_capacity(6 * n),
    };
    hull.add_face([a, c, b]);
    hull.add_face([a, b, INF]);
    hull.add_face([b, c, INF]);
    hull.add_face([c, a, INF]);
    for q in 0..n {
        if q != a && q != b && q != c {
            hull.insert(q);
        }
    }
    if !hull.is_closed() {
        return None;
    }

    let mut neighbors = vec![Vec::new(); n];
    let mut on_hull = vec![false; n];
    for (v, _) in hull.faces.iter().zip(&hull.alive).filter(|(_, &a)| a) {
        for k in 0..3 {
            let (p, q) = (v[k], v[(k + 1) % 3]);
            if p != INF {
                on_hull[p] = true;
            }
            if p != INF && q != INF {
                neighbors[p].push(q);
                neighbors[q].push(p);
            }
        }
    }
    for list in &mut neighbors {
        list.sort_unstable();
        list.dedup();
    }
    Some(HullAdjacency { neighbors, on_hull })
}
