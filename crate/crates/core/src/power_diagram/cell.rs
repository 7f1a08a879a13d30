//! Construction of a single power cell: convex half-plane clipping with
//! labelled edges, then intersection with the clip region.
//!
//! Vertices are recomputed canonically from the labels of their two
//! incident edges (bisector/bisector, bisector/box side, bisector/circle),
//! always from the bisector of the sorted index pair or triple. Neighbouring
//! cells therefore produce bit-identical shared vertices.

use super::{ClipRegion, WeightedSite};

/// Edge label of a polygon under construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Label {
    Site(usize),
    Side(u8),
}

/// Oriented line `n·x + c = 0` with unit normal; `n·x + c ≤ 0` is "inside".
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct HalfPlane {
    pub n: [f64; 2],
    pub c: f64,
}

impl HalfPlane {
    #[inline]
    pub fn eval(&self, x: [f64; 2]) -> f64 {
        self.n[0] * x[0] + self.n[1] * x[1] + self.c
    }

    fn negate(self) -> Self {
        HalfPlane {
            n: [-self.n[0], -self.n[1]],
            c: -self.c,
        }
    }
}

pub(crate) enum Constraint {
    Line(HalfPlane),
    /// Concentric spheres: the constraint keeps everything or nothing.
    All,
    Nothing,
}

/// `pd_a(x) − pd_b(x) = 2x·(c_b − c_a) + ‖c_a‖² − ‖c_b‖² − w_a + w_b`, for `a < b`,
/// normalized by the length of its gradient.
fn canonical_raw(sites: &[WeightedSite], a: usize, b: usize) -> ([f64; 2], f64) {
    let (sa, sb) = (&sites[a], &sites[b]);
    let n = [2.0 * (sb.c[0] - sa.c[0]), 2.0 * (sb.c[1] - sa.c[1])];
    let c = (sa.c[0] * sa.c[0] + sa.c[1] * sa.c[1]) - (sb.c[0] * sb.c[0] + sb.c[1] * sb.c[1]) - sa.w
        + sb.w;
    (n, c)
}

/// Half-plane where site `i` beats site `j`.
pub(crate) fn constraint(sites: &[WeightedSite], i: usize, j: usize) -> Constraint {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    let (n, c) = canonical_raw(sites, a, b);
    let len = n[0].hypot(n[1]);
    if len == 0.0 {
        // pd_a − pd_b is the constant c
        let a_wins = c <= 0.0;
        return if a_wins == (i == a) {
            Constraint::All
        } else {
            Constraint::Nothing
        };
    }
    let h = HalfPlane {
        n: [n[0] / len, n[1] / len],
        c: c / len,
    };
    Constraint::Line(if i == a { h } else { h.negate() })
}

/// The canonical (sorted-pair) bisector line, if the centres differ.
pub(crate) fn canonical_line(sites: &[WeightedSite], i: usize, j: usize) -> Option<HalfPlane> {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    match constraint(sites, a, b) {
        Constraint::Line(h) => Some(h),
        _ => None,
    }
}

fn intersect(h1: &HalfPlane, h2: &HalfPlane) -> Option<[f64; 2]> {
    let det = h1.n[0] * h2.n[1] - h1.n[1] * h2.n[0];
    if det.abs() < 1e-12 {
        return None;
    }
    Some([
        (h1.n[1] * h2.c - h2.n[1] * h1.c) / det,
        (h2.n[0] * h1.c - h1.n[0] * h2.c) / det,
    ])
}

/// Axis-aligned box with sides 0 = bottom, 1 = right, 2 = top, 3 = left.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BoxSides {
    pub min: [f64; 2],
    pub max: [f64; 2],
}

impl BoxSides {
    fn corners(&self) -> [[f64; 2]; 4] {
        [
            [self.min[0], self.min[1]],
            [self.max[0], self.min[1]],
            [self.max[0], self.max[1]],
            [self.min[0], self.max[1]],
        ]
    }

    /// Intersection of a line with side `s`, with the side coordinate exact.
    fn hit(&self, h: &HalfPlane, s: u8) -> Option<[f64; 2]> {
        match s {
            0 | 2 => {
                let y = if s == 0 { self.min[1] } else { self.max[1] };
                (h.n[0].abs() > 1e-12).then(|| [-(h.c + h.n[1] * y) / h.n[0], y])
            }
            _ => {
                let x = if s == 1 { self.max[0] } else { self.min[0] };
                (h.n[1].abs() > 1e-12).then(|| [x, -(h.c + h.n[0] * x) / h.n[1]])
            }
        }
    }
}

pub(crate) struct Polygon {
    pub pts: Vec<[f64; 2]>,
    /// `labels[k]` labels the edge `pts[k] → pts[k+1]`.
    pub labels: Vec<Label>,
}

const ON_LINE: f64 = 1e-13;

/// Sutherland-Hodgman step against one labelled half-plane.
fn clip(poly: &Polygon, h: &HalfPlane, label: Label) -> Polygon {
    let m = poly.pts.len();
    let mut out = Polygon {
        pts: Vec::with_capacity(m + 1),
        labels: Vec::with_capacity(m + 1),
    };
    let vals: Vec<f64> = poly.pts.iter().map(|&p| h.eval(p)).collect();
    for k in 0..m {
        let (p, q) = (poly.pts[k], poly.pts[(k + 1) % m]);
        let (hp, hq) = (vals[k], vals[(k + 1) % m]);
        let p_in = hp <= ON_LINE;
        let q_in = hq <= ON_LINE;
        if p_in {
            if !q_in && hp >= -ON_LINE {
                // p sits on the line and the edge leaves: the clip line continues from p
                out.pts.push(p);
                out.labels.push(label);
                continue;
            }
            out.pts.push(p);
            out.labels.push(poly.labels[k]);
            if !q_in {
                let t = hp / (hp - hq);
                out.pts.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
                out.labels.push(label);
            }
        } else if q_in && hq < -ON_LINE {
            let t = hp / (hp - hq);
            out.pts.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
            out.labels.push(poly.labels[k]);
        }
    }
    if out.pts.len() < 3 {
        out.pts.clear();
        out.labels.clear();
    }
    out
}

/// Canonical intersection point of the edges labelled `l1`, `l2` in cell `i`.
fn canonical_vertex(
    sites: &[WeightedSite],
    bx: &BoxSides,
    i: usize,
    l1: Label,
    l2: Label,
    approx: [f64; 2],
) -> [f64; 2] {
    match (l1, l2) {
        (Label::Site(j), Label::Site(k)) => {
            let mut t = [i, j, k];
            t.sort_unstable();
            let pairs = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])];
            let lines: Vec<HalfPlane> = pairs
                .iter()
                .filter_map(|&(a, b)| canonical_line(sites, a, b))
                .collect();
            let mut best: Option<(f64, [f64; 2])> = None;
            for x in 0..lines.len() {
                for y in x + 1..lines.len() {
                    let det = (lines[x].n[0] * lines[y].n[1] - lines[x].n[1] * lines[y].n[0]).abs();
                    if best.is_none_or(|(d, _)| det > d) {
                        if let Some(p) = intersect(&lines[x], &lines[y]) {
                            best = Some((det, p));
                        }
                    }
                }
            }
            best.map_or(approx, |(_, p)| p)
        }
        (Label::Site(j), Label::Side(s)) | (Label::Side(s), Label::Site(j)) => canonical_line(sites, i, j)
            .and_then(|h| bx.hit(&h, s))
            .unwrap_or(approx),
        (Label::Side(s), Label::Side(t)) => {
            let c = bx.corners();
            // sides s and t meet at the corner they share
            match (s.min(t), s.max(t)) {
                (0, 1) => c[1],
                (1, 2) => c[2],
                (2, 3) => c[3],
                (0, 3) => c[0],
                _ => approx,
            }
        }
    }
}

/// Intersection point of the canonical bisector `(i, j)` with the unit
/// circle that lies nearest to `approx`.
fn canonical_circle_hit(sites: &[WeightedSite], i: usize, j: usize, approx: [f64; 2]) -> [f64; 2] {
    let Some(h) = canonical_line(sites, i, j) else {
        return approx;
    };
    let h2 = 1.0 - h.c * h.c;
    if h2 <= 0.0 {
        return approx;
    }
    let r = h2.sqrt();
    let foot = [-h.c * h.n[0], -h.c * h.n[1]];
    let dir = [-h.n[1], h.n[0]];
    let p = [foot[0] - r * dir[0], foot[1] - r * dir[1]];
    let q = [foot[0] + r * dir[0], foot[1] + r * dir[1]];
    let d = |a: [f64; 2]| (a[0] - approx[0]).hypot(a[1] - approx[1]);
    if d(p) <= d(q) {
        p
    } else {
        q
    }
}

/// One boundary piece of a finished cell, in counterclockwise order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct RawPiece {
    pub from: [f64; 2],
    pub to: [f64; 2],
    /// Neighbouring site, or `None` for a piece of the clip boundary.
    pub neighbor: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum RawCell {
    Empty,
    Whole,
    Pieces(Vec<RawPiece>),
}

/// Cell `i` clipped against the candidate neighbours and the clip region.
pub(crate) fn build_cell(
    sites: &[WeightedSite],
    i: usize,
    candidates: impl IntoIterator<Item = usize>,
    clip_region: &ClipRegion,
) -> RawCell {
    let bx = match *clip_region {
        ClipRegion::UnitDisk => BoxSides { min: [-1.5, -1.5], max: [1.5, 1.5] },
        ClipRegion::Rect { min, max } => BoxSides { min, max },
    };
    let mut poly = Polygon {
        pts: bx.corners().to_vec(),
        labels: vec![Label::Side(0), Label::Side(1), Label::Side(2), Label::Side(3)],
    };
    for j in candidates {
        if j == i {
            continue;
        }
        match constraint(sites, i, j) {
            Constraint::All => {}
            Constraint::Nothing => return RawCell::Empty,
            Constraint::Line(h) => poly = clip(&poly, &h, Label::Site(j)),
        }
        if poly.pts.is_empty() {
            return RawCell::Empty;
        }
    }
    let m = poly.pts.len();
    let pts: Vec<[f64; 2]> = (0..m)
        .map(|k| {
            let prev = poly.labels[(k + m - 1) % m];
            canonical_vertex(sites, &bx, i, prev, poly.labels[k], poly.pts[k])
        })
        .collect();
    poly.pts = pts;

    match clip_region {
        ClipRegion::Rect { .. } => {
            let pieces = (0..m)
                .map(|k| RawPiece {
                    from: poly.pts[k],
                    to: poly.pts[(k + 1) % m],
                    neighbor: match poly.labels[k] {
                        Label::Site(j) => Some(j),
                        Label::Side(_) => None,
                    },
                })
                .filter(|p| p.from != p.to)
                .collect::<Vec<_>>();
            if pieces.len() < 3 {
                RawCell::Empty
            } else {
                RawCell::Pieces(pieces)
            }
        }
        ClipRegion::UnitDisk => intersect_with_disk(sites, i, &poly),
    }
}

/// Segment of the chord piece of edge `p → q` inside the open unit disk.
fn chord_interval(p: [f64; 2], q: [f64; 2]) -> Option<(f64, f64)> {
    let d = [q[0] - p[0], q[1] - p[1]];
    let a = d[0] * d[0] + d[1] * d[1];
    if a == 0.0 {
        return None;
    }
    let b = p[0] * d[0] + p[1] * d[1];
    let c = p[0] * p[0] + p[1] * p[1] - 1.0;
    let disc = b * b - a * c;
    if disc <= 0.0 {
        return None;
    }
    let r = disc.sqrt();
    let t0 = ((-b - r) / a).max(0.0);
    let t1 = ((-b + r) / a).min(1.0);
    (t1 > t0).then_some((t0, t1))
}

fn intersect_with_disk(sites: &[WeightedSite], i: usize, poly: &Polygon) -> RawCell {
    struct Chord {
        from: [f64; 2],
        to: [f64; 2],
        neighbor: usize,
        exits: bool,
    }
    let m = poly.pts.len();
    let mut chords = Vec::new();
    for k in 0..m {
        let Label::Site(j) = poly.labels[k] else {
            continue;
        };
        let (p, q) = (poly.pts[k], poly.pts[(k + 1) % m]);
        let Some((t0, t1)) = chord_interval(p, q) else {
            continue;
        };
        let at = |t: f64| [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])];
        let from = if t0 > 0.0 { canonical_circle_hit(sites, i, j, at(t0)) } else { p };
        let (to, exits) = if t1 < 1.0 {
            (canonical_circle_hit(sites, i, j, at(t1)), true)
        } else {
            (q, false)
        };
        chords.push(Chord { from, to, neighbor: j, exits });
    }
    if chords.is_empty() {
        // either the polygon swallows the disk or misses it
        let contains_origin = (0..m).all(|k| match poly.labels[k] {
            Label::Site(j) => match constraint(sites, i, j) {
                Constraint::Line(h) => h.c <= 0.0,
                Constraint::All => true,
                Constraint::Nothing => false,
            },
            Label::Side(_) => true,
        });
        return if contains_origin { RawCell::Whole } else { RawCell::Empty };
    }
    let mut pieces = Vec::with_capacity(2 * chords.len());
    for (idx, ch) in chords.iter().enumerate() {
        pieces.push(RawPiece {
            from: ch.from,
            to: ch.to,
            neighbor: Some(ch.neighbor),
        });
        if ch.exits {
            let next = &chords[(idx + 1) % chords.len()];
            pieces.push(RawPiece {
                from: ch.to,
                to: next.from,
                neighbor: None,
            });
        }
    }
    RawCell::Pieces(pieces)
}
