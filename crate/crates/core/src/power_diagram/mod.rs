//! Hyperbolic Voronoi diagrams in the Klein disk as clipped power diagrams.
//!
//! A Klein site `k` is replaced by the sphere
//!
//! ```text
//! c = k / (2√(1−‖k‖²)),   w = ‖k‖²/(4(1−‖k‖²)) − 1/√(1−‖k‖²)
//! ```
//!
//! whose power bisectors coincide with the Klein bisectors. The power diagram
//! is the vertical projection of the lower convex hull of the lifted points
//! `(c, ‖c‖² − w)`; each cell is then cut out by half-plane clipping against
//! its hull neighbours and intersected with the unit disk.

mod cell;
mod hull;
mod subdivision;

pub use subdivision::{Cell, Edge, EdgeKind, EdgeRef, PlanarSubdivision, MERGE_TOLERANCE};

use crate::hyperbolic::{KleinPoint, LineCoeffs, DISK_LIMIT};
use crate::{Error, Result};

/// A sphere `(c, w)`: centre and squared-radius weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedSite {
    pub c: [f64; 2],
    pub w: f64,
    pub origin_index: usize,
}

impl WeightedSite {
    pub fn new(c: [f64; 2], w: f64, origin_index: usize) -> Result<Self> {
        if !c[0].is_finite() || !c[1].is_finite() || !w.is_finite() {
            return Err(Error::NonFinite("weighted site"));
        }
        Ok(WeightedSite { c, w, origin_index })
    }

    /// Height of the lifted point `(c, ‖c‖² − w)`.
    pub fn lifted_height(&self) -> f64 {
        self.c[0] * self.c[0] + self.c[1] * self.c[1] - self.w
    }
}

/// The plane `z = a·x + b` in lifted space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPlane {
    pub a: [f64; 2],
    pub b: f64,
}

impl PolarPlane {
    pub fn height(&self, x: [f64; 2]) -> f64 {
        self.a[0] * x[0] + self.a[1] * x[1] + self.b
    }
}

/// Region the diagram is clipped to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClipRegion {
    /// The open unit disk (Klein model).
    UnitDisk,
    /// An axis-aligned rectangle.
    Rect { min: [f64; 2], max: [f64; 2] },
}

impl ClipRegion {
    pub fn contains(&self, x: [f64; 2]) -> bool {
        match *self {
            ClipRegion::UnitDisk => x[0] * x[0] + x[1] * x[1] < 1.0,
            ClipRegion::Rect { min, max } => {
                x[0] >= min[0] && x[0] <= max[0] && x[1] >= min[1] && x[1] <= max[1]
            }
        }
    }

    pub fn on_boundary(&self, x: [f64; 2]) -> bool {
        const TOL: f64 = 1e-9;
        match *self {
            ClipRegion::UnitDisk => (x[0].hypot(x[1]) - 1.0).abs() <= TOL,
            ClipRegion::Rect { min, max } => {
                let scale = 1.0 + max[0].abs().max(max[1].abs()).max(min[0].abs()).max(min[1].abs());
                let t = TOL * scale;
                (x[0] - min[0]).abs() <= t
                    || (x[0] - max[0]).abs() <= t
                    || (x[1] - min[1]).abs() <= t
                    || (x[1] - max[1]).abs() <= t
            }
        }
    }

    pub fn area(&self) -> f64 {
        match *self {
            ClipRegion::UnitDisk => std::f64::consts::PI,
            ClipRegion::Rect { min, max } => (max[0] - min[0]) * (max[1] - min[1]),
        }
    }
}

/// How cells find the sites that can bound them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Neighbours from the lower convex hull of the lifted sites.
    #[default]
    Lifting,
    /// Every cell is clipped against every other site.
    HalfPlane,
}

pub fn site_to_sphere(k: KleinPoint, index: usize) -> Result<WeightedSite> {
    let n2 = k.norm_sq();
    if !n2.is_finite() {
        return Err(Error::NonFinite("klein point"));
    }
    if n2.sqrt() >= DISK_LIMIT {
        return Err(Error::OutOfDomain(k.u, k.v));
    }
    let gap = 1.0 - n2;
    let root = gap.sqrt();
    WeightedSite::new(
        [k.u / (2.0 * root), k.v / (2.0 * root)],
        n2 / (4.0 * gap) - 1.0 / root,
        index,
    )
}

/// `‖x − c‖² − w`.
pub fn power_distance(s: &WeightedSite, x: [f64; 2]) -> f64 {
    let (dx, dy) = (x[0] - s.c[0], x[1] - s.c[1]);
    dx * dx + dy * dy - s.w
}

/// The locus `pd(s1, x) = pd(s2, x)`:
/// `2x·(c₂ − c₁) + ‖c₁‖² − ‖c₂‖² − w₁ + w₂ = 0`.
pub fn power_bisector(s1: &WeightedSite, s2: &WeightedSite) -> Result<LineCoeffs> {
    if s1.c == s2.c {
        return Err(if s1.w == s2.w {
            Error::DuplicateSphere(s1.origin_index, s2.origin_index)
        } else {
            Error::InvalidArgument("concentric spheres have no power bisector".into())
        });
    }
    let n1 = s1.c[0] * s1.c[0] + s1.c[1] * s1.c[1];
    let n2 = s2.c[0] * s2.c[0] + s2.c[1] * s2.c[1];
    LineCoeffs::new(
        2.0 * (s2.c[0] - s1.c[0]),
        2.0 * (s2.c[1] - s1.c[1]),
        n1 - n2 - s1.w + s2.w,
    )
}

/// `z = 2c·x − c·c + w`.
pub fn polar_plane(s: &WeightedSite) -> PolarPlane {
    PolarPlane {
        a: [2.0 * s.c[0], 2.0 * s.c[1]],
        b: -(s.c[0] * s.c[0] + s.c[1] * s.c[1]) + s.w,
    }
}

fn check_sites(sites: &[WeightedSite]) -> Result<()> {
    if sites.is_empty() {
        return Err(Error::EmptyInput);
    }
    for s in sites {
        WeightedSite::new(s.c, s.w, s.origin_index)?;
    }
    let mut order: Vec<usize> = (0..sites.len()).collect();
    let key = |i: usize| (sites[i].c[0], sites[i].c[1], sites[i].w);
    order.sort_by(|&a, &b| {
        let (x, y) = (key(a), key(b));
        x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)).then(x.2.total_cmp(&y.2))
    });
    for w in order.windows(2) {
        if key(w[0]) == key(w[1]) {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(Error::DuplicateSphere(a, b));
        }
    }
    Ok(())
}

/// Power diagram of `sites` clipped to the open unit disk.
///
/// Cell `i` is `{x ∈ 𝔻 : pd(sᵢ, x) ≤ pd(sⱼ, x) ∀j}`; cells may be empty.
pub fn clipped_power_diagram(sites: &[WeightedSite]) -> Result<PlanarSubdivision> {
    power_diagram(sites, ClipRegion::UnitDisk, Method::Lifting)
}

/// Power diagram clipped to `clip`, built by the requested method.
///
/// [`Method::Lifting`] falls back to [`Method::HalfPlane`] when the lifted
/// hull is degenerate (fewer than three sites or collinear centres).
pub fn power_diagram(sites: &[WeightedSite], clip: ClipRegion, method: Method) -> Result<PlanarSubdivision> {
    check_sites(sites)?;
    if let ClipRegion::Rect { min, max } = clip {
        if !(min[0] < max[0] && min[1] < max[1]) || ![min[0], min[1], max[0], max[1]].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidArgument("clip rectangle is empty".into()));
        }
    }
    let n = sites.len();
    let hull = match method {
        Method::Lifting => lifted_adjacency(sites),
        Method::HalfPlane => None,
    };
    let raw = (0..n)
        .map(|i| match &hull {
            Some(h) if !h.on_hull[i] => cell::RawCell::Empty,
            Some(h) => cell::build_cell(sites, i, h.neighbors[i].iter().copied(), &clip),
            None => cell::build_cell(sites, i, 0..n, &clip),
        })
        .collect();
    Ok(subdivision::assemble(raw, clip))
}

/// Lower-hull adjacency of the lifted sites, or `None` if degenerate.
fn lifted_adjacency(sites: &[WeightedSite]) -> Option<hull::HullAdjacency> {
    let pts: Vec<[f64; 3]> = sites
        .iter()
        .map(|s| [s.c[0], s.c[1], s.lifted_height()])
        .collect();
    hull::lower_hull_adjacency(&pts)
}
