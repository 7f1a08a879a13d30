//! The planar subdivision produced by the clipped power diagram.

use std::collections::HashMap;
use std::f64::consts::PI;

use super::cell::{RawCell, RawPiece};
use super::ClipRegion;

/// Vertices closer than this are merged.
pub const MERGE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// A straight piece of the bisector between `left` and `right`.
    Bisector,
    /// A piece of the clip boundary: an arc of the unit circle (counterclockwise
    /// from `vertices[0]` to `vertices[1]`) or a side of the clip rectangle.
    Clip,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub vertices: [usize; 2],
    /// The cell that traverses `vertices[0] → vertices[1]` counterclockwise.
    pub left: usize,
    /// The cell on the other side; `None` for clip-boundary edges.
    pub right: Option<usize>,
    pub kind: EdgeKind,
}

/// Use of an edge in a cell boundary; `reversed` when traversed `v1 → v0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeRef {
    pub edge: usize,
    pub reversed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    /// Boundary edges in counterclockwise order.
    pub boundary: Vec<EdgeRef>,
    /// The cell is the entire clip region (single effective site).
    pub whole: bool,
}

impl Cell {
    pub fn is_empty(&self) -> bool {
        !self.whole && self.boundary.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanarSubdivision {
    pub vertices: Vec<[f64; 2]>,
    pub edges: Vec<Edge>,
    /// One cell per input site, in input order.
    pub cells: Vec<Cell>,
    pub clip: ClipRegion,
}

struct VertexMerger {
    buckets: HashMap<(i64, i64), Vec<usize>>,
    vertices: Vec<[f64; 2]>,
}

impl VertexMerger {
    fn key(p: [f64; 2]) -> (i64, i64) {
        (
            (p[0] / MERGE_TOLERANCE).floor() as i64,
            (p[1] / MERGE_TOLERANCE).floor() as i64,
        )
    }

    fn index(&mut self, p: [f64; 2]) -> usize {
        let (kx, ky) = Self::key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(list) = self.buckets.get(&(kx + dx, ky + dy)) {
                    for &v in list {
                        let q = self.vertices[v];
                        if (p[0] - q[0]).hypot(p[1] - q[1]) <= MERGE_TOLERANCE {
                            return v;
                        }
                    }
                }
            }
        }
        let id = self.vertices.len();
        self.vertices.push(p);
        self.buckets.entry((kx, ky)).or_default().push(id);
        id
    }
}

fn ccw_angle(from: [f64; 2], to: [f64; 2]) -> f64 {
    let a = to[1].atan2(to[0]) - from[1].atan2(from[0]);
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

pub(crate) fn assemble(raw: Vec<RawCell>, clip: ClipRegion) -> PlanarSubdivision {
    let mut merger = VertexMerger {
        buckets: HashMap::new(),
        vertices: Vec::new(),
    };
    let mut edges: Vec<Edge> = Vec::new();
    let mut bisector_index: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    let mut cells = Vec::with_capacity(raw.len());
    for (i, rc) in raw.into_iter().enumerate() {
        let pieces: Vec<RawPiece> = match rc {
            RawCell::Empty => {
                cells.push(Cell { boundary: Vec::new(), whole: false });
                continue;
            }
            RawCell::Whole => {
                cells.push(Cell { boundary: Vec::new(), whole: true });
                continue;
            }
            RawCell::Pieces(p) => p,
        };
        let mut boundary = Vec::with_capacity(pieces.len());
        let mut big_arc = false;
        for piece in &pieces {
            let u = merger.index(piece.from);
            let v = merger.index(piece.to);
            if u == v {
                if piece.neighbor.is_none()
                    && clip == ClipRegion::UnitDisk
                    && ccw_angle(piece.from, piece.to) > PI
                {
                    big_arc = true;
                }
                continue;
            }
            match piece.neighbor {
                Some(j) => {
                    let key = (i.min(j), i.max(j), u.min(v), u.max(v));
                    if let Some(&e) = bisector_index.get(&key) {
                        boundary.push(EdgeRef { edge: e, reversed: edges[e].vertices[0] != u });
                    } else {
                        let e = edges.len();
                        edges.push(Edge {
                            vertices: [u, v],
                            left: i,
                            right: Some(j),
                            kind: EdgeKind::Bisector,
                        });
                        bisector_index.insert(key, e);
                        boundary.push(EdgeRef { edge: e, reversed: false });
                    }
                }
                None => {
                    let e = edges.len();
                    edges.push(Edge {
                        vertices: [u, v],
                        left: i,
                        right: None,
                        kind: EdgeKind::Clip,
                    });
                    boundary.push(EdgeRef { edge: e, reversed: false });
                }
            }
        }
        let whole = boundary.is_empty() && big_arc;
        cells.push(Cell { boundary, whole });
    }
    PlanarSubdivision {
        vertices: merger.vertices,
        edges,
        cells,
        clip,
    }
}

impl PlanarSubdivision {
    /// Ordered endpoints of a boundary edge as traversed by its cell.
    pub fn oriented(&self, r: EdgeRef) -> (usize, usize) {
        let [a, b] = self.edges[r.edge].vertices;
        if r.reversed {
            (b, a)
        } else {
            (a, b)
        }
    }

    /// Counterclockwise vertex cycle of cell `i` (empty for empty or whole cells).
    pub fn cell_vertices(&self, i: usize) -> Vec<usize> {
        self.cells[i].boundary.iter().map(|&r| self.oriented(r).0).collect()
    }

    pub fn cell_is_empty(&self, i: usize) -> bool {
        self.cells[i].is_empty()
    }

    /// Sorted list of cells whose boundary passes through each vertex.
    pub fn vertex_cells(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (i, cell) in self.cells.iter().enumerate() {
            for &r in &cell.boundary {
                let (a, b) = self.oriented(r);
                out[a].push(i);
                out[b].push(i);
            }
        }
        for list in &mut out {
            list.sort_unstable();
            list.dedup();
        }
        out
    }

    /// Whether vertex `v` lies on the clip boundary.
    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.clip.on_boundary(self.vertices[v])
    }

    /// Interior vertices incident to at least three cells.
    pub fn voronoi_vertices(&self) -> Vec<(usize, Vec<usize>)> {
        self.vertex_cells()
            .into_iter()
            .enumerate()
            .filter(|(v, cells)| cells.len() >= 3 && !self.is_boundary_vertex(*v))
            .collect()
    }

    /// Pairs `(i, j)`, `i < j`, of cells sharing a bisector edge of positive length.
    pub fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter_map(|e| {
                let j = e.right?;
                let [a, b] = e.vertices;
                let (p, q) = (self.vertices[a], self.vertices[b]);
                ((p[0] - q[0]).hypot(p[1] - q[1]) > 0.0).then(|| (e.left.min(j), e.left.max(j)))
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The bisector edge shared by cells `i` and `j`, if any.
    pub fn shared_edge(&self, i: usize, j: usize) -> Option<usize> {
        self.edges.iter().position(|e| {
            e.kind == EdgeKind::Bisector
                && e.right.is_some()
                && ((e.left == i && e.right == Some(j)) || (e.left == j && e.right == Some(i)))
        })
    }

    /// Signed "insideness" of `x` for cell `i`: the minimum over the straight
    /// boundary pieces of the distance to the left of the piece. Positive
    /// inside, negative outside; `+∞` for a whole cell, `−∞` for an empty one.
    pub fn cell_depth(&self, i: usize, x: [f64; 2]) -> f64 {
        let cell = &self.cells[i];
        if cell.whole {
            return f64::INFINITY;
        }
        if cell.boundary.is_empty() {
            return f64::NEG_INFINITY;
        }
        let mut depth = f64::INFINITY;
        for &r in &cell.boundary {
            if self.edges[r.edge].kind == EdgeKind::Clip && self.clip == ClipRegion::UnitDisk {
                continue;
            }
            let (a, b) = self.oriented(r);
            let (p, q) = (self.vertices[a], self.vertices[b]);
            let d = [q[0] - p[0], q[1] - p[1]];
            let len = d[0].hypot(d[1]);
            let side = (d[0] * (x[1] - p[1]) - d[1] * (x[0] - p[0])) / len;
            depth = depth.min(side);
        }
        depth
    }

    /// The cell containing `x`, choosing the deepest candidate near edges.
    /// Returns `None` outside the clip region.
    pub fn locate(&self, x: [f64; 2]) -> Option<usize> {
        if !self.clip.contains(x) {
            return None;
        }
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.cells.len() {
            let d = self.cell_depth(i, x);
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((i, d));
            }
        }
        best.filter(|&(_, d)| d > f64::NEG_INFINITY).map(|(i, _)| i)
    }

    /// Area of cell `i`, including circular segments for arc edges.
    pub fn cell_area(&self, i: usize) -> f64 {
        let cell = &self.cells[i];
        if cell.whole {
            return self.clip.area();
        }
        let mut area = 0.0;
        for &r in &cell.boundary {
            let (a, b) = self.oriented(r);
            let (p, q) = (self.vertices[a], self.vertices[b]);
            area += 0.5 * (p[0] * q[1] - p[1] * q[0]);
            if self.edges[r.edge].kind == EdgeKind::Clip && self.clip == ClipRegion::UnitDisk {
                let theta = ccw_angle(p, q);
                area += 0.5 * (theta - theta.sin());
            }
        }
        area
    }

    /// Canonical description used for structural comparison: sorted bisector
    /// edges as (cell pair, endpoint coordinates in sorted order).
    fn edge_signature(&self) -> Vec<(usize, usize, [f64; 2], [f64; 2])> {
        let mut sig: Vec<_> = self
            .edges
            .iter()
            .filter_map(|e| {
                let j = e.right?;
                let (mut p, mut q) = (self.vertices[e.vertices[0]], self.vertices[e.vertices[1]]);
                if (q[0], q[1]) < (p[0], p[1]) {
                    std::mem::swap(&mut p, &mut q);
                }
                Some((e.left.min(j), e.left.max(j), p, q))
            })
            .collect();
        sig.sort_by(|a, b| {
            (a.0, a.1)
                .cmp(&(b.0, b.1))
                .then(a.2[0].total_cmp(&b.2[0]))
                .then(a.2[1].total_cmp(&b.2[1]))
        });
        sig
    }

    /// Same cells, same adjacency, and bisector-edge endpoints within `tol`.
    pub fn approx_eq(&self, other: &PlanarSubdivision, tol: f64) -> bool {
        if self.cells.len() != other.cells.len() || self.clip != other.clip {
            return false;
        }
        if (0..self.cells.len()).any(|i| self.cells[i].is_empty() != other.cells[i].is_empty()) {
            return false;
        }
        let (a, b) = (self.edge_signature(), other.edge_signature());
        let close = |p: [f64; 2], q: [f64; 2]| (p[0] - q[0]).abs() <= tol && (p[1] - q[1]).abs() <= tol;
        a.len() == b.len()
            && a.iter().zip(&b).all(|(x, y)| {
                x.0 == y.0 && x.1 == y.1 && ((close(x.2, y.2) && close(x.3, y.3)) || (close(x.2, y.3) && close(x.3, y.2)))
            })
    }

    /// Largest displacement between matching vertices, if the two
    /// subdivisions have the same combinatorics.
    pub fn max_vertex_displacement(&self, other: &PlanarSubdivision) -> Option<f64> {
        let (a, b) = (self.edge_signature(), other.edge_signature());
        if a.len() != b.len() || a.iter().zip(&b).any(|(x, y)| (x.0, x.1) != (y.0, y.1)) {
            return None;
        }
        let d = |p: [f64; 2], q: [f64; 2]| (p[0] - q[0]).hypot(p[1] - q[1]);
        Some(
            a.iter()
                .zip(&b)
                .map(|(x, y)| (d(x.2, y.2).max(d(x.3, y.3))).min(d(x.2, y.3).max(d(x.3, y.2))))
                .fold(0.0, f64::max),
        )
    }
}
