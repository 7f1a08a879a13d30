//! Voronoi diagrams of Cauchy generators.
//!
//! Under the Fisher-Rao distance, KL, √KL, chi-square and the forward flat
//! divergence, the nearest-generator map is the same: each is a strictly
//! increasing function of `‖λ − λᵢ‖²/sᵢ` for a fixed query `λ`. All five kinds
//! therefore share one hyperbolic diagram, built once in the Klein disk. The
//! reverse flat divergence is `(π/s)‖λ − λᵢ‖²` with `s` the query scale,
//! whose argmin is the ordinary Euclidean nearest neighbour.

mod classify;
mod delaunay;
mod verify;

pub use classify::{classify_nearest, estimate_location_scale, quantile, Classification};
pub use delaunay::{delaunay_complex, delaunay_complex_in, euclidean_delaunay_complex, DelaunayComplex};
pub use verify::{
    count_chord_crossings, verify_empty_sphere, verify_fisher_orthogonality, EmptySphereReport,
    FisherOrthogonalityReport, OrthogonalityCrossing, EMPTY_SPHERE_TOLERANCE, ORTHOGONALITY_TOLERANCE,
};

use crate::divergences::{CauchyParam, DivergenceKind};
use crate::hyperbolic::KleinPoint;
use crate::power_diagram::{power_diagram, site_to_sphere, ClipRegion, Method, PlanarSubdivision, WeightedSite};
use crate::{Error, Result};

/// Coordinate system of a diagram's subdivision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinates {
    /// Klein disk coordinates (hyperbolic kinds).
    Klein,
    /// Raw `(l, s)` coordinates (reverse flat divergence).
    LocationScale,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CauchyVoronoiDiagram {
    pub generators: Vec<CauchyParam>,
    pub kind: DivergenceKind,
    pub subdivision: PlanarSubdivision,
    pub coordinates: Coordinates,
}

impl CauchyVoronoiDiagram {
    /// Position of a parameter in the subdivision's coordinates.
    pub fn project(&self, x: CauchyParam) -> [f64; 2] {
        match self.coordinates {
            Coordinates::Klein => KleinPoint::from_cauchy(x).to_array(),
            Coordinates::LocationScale => [x.location(), x.scale()],
        }
    }

    /// Generator positions in the subdivision's coordinates.
    pub fn site_points(&self) -> Vec<[f64; 2]> {
        self.generators.iter().map(|&g| self.project(g)).collect()
    }

    /// Index of the cell containing `x`, or `None` outside the clip region.
    pub fn locate(&self, x: CauchyParam) -> Option<usize> {
        self.subdivision.locate(self.project(x))
    }

    /// The same diagram relabelled with another hyperbolic kind; the
    /// subdivision is shared, not rebuilt.
    pub fn with_kind(&self, kind: DivergenceKind) -> Result<CauchyVoronoiDiagram> {
        if kind.is_hyperbolic() != self.kind.is_hyperbolic() {
            return cauchy_voronoi(&self.generators, kind);
        }
        Ok(CauchyVoronoiDiagram {
            kind,
            ..self.clone()
        })
    }
}

fn check_generators(generators: &[CauchyParam]) -> Result<()> {
    if generators.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut order: Vec<usize> = (0..generators.len()).collect();
    let key = |i: usize| (generators[i].location(), generators[i].scale());
    order.sort_by(|&a, &b| key(a).0.total_cmp(&key(b).0).then(key(a).1.total_cmp(&key(b).1)));
    for w in order.windows(2) {
        if key(w[0]) == key(w[1]) {
            return Err(Error::DuplicateGenerator(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    Ok(())
}

/// Window for the reverse flat diagram: the generators' bounding box doubled
/// about its centre (each extent at least 1), kept in `s ≥ 0`.
pub fn flat_reverse_window(generators: &[CauchyParam]) -> ClipRegion {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for g in generators {
        let p = [g.location(), g.scale()];
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let mut min = [0.0; 2];
    let mut max = [0.0; 2];
    for k in 0..2 {
        let centre = 0.5 * (lo[k] + hi[k]);
        let extent = (hi[k] - lo[k]).max(1.0);
        min[k] = centre - extent;
        max[k] = centre + extent;
    }
    min[1] = min[1].max(0.0);
    ClipRegion::Rect { min, max }
}

/// Voronoi diagram of `generators` under `kind`.
pub fn cauchy_voronoi(generators: &[CauchyParam], kind: DivergenceKind) -> Result<CauchyVoronoiDiagram> {
    cauchy_voronoi_with(generators, kind, Method::Lifting)
}

pub fn cauchy_voronoi_with(
    generators: &[CauchyParam],
    kind: DivergenceKind,
    method: Method,
) -> Result<CauchyVoronoiDiagram> {
    check_generators(generators)?;
    let (subdivision, coordinates) = if kind.is_hyperbolic() {
        let sites = generators
            .iter()
            .enumerate()
            .map(|(i, &g)| site_to_sphere(KleinPoint::from_cauchy(g), i))
            .collect::<Result<Vec<_>>>()?;
        (power_diagram(&sites, ClipRegion::UnitDisk, method)?, Coordinates::Klein)
    } else {
        let sites = generators
            .iter()
            .enumerate()
            .map(|(i, g)| WeightedSite::new([g.location(), g.scale()], 0.0, i))
            .collect::<Result<Vec<_>>>()?;
        let clip = flat_reverse_window(generators);
        (power_diagram(&sites, clip, method)?, Coordinates::LocationScale)
    };
    Ok(CauchyVoronoiDiagram {
        generators: generators.to_vec(),
        kind,
        subdivision,
        coordinates,
    })
}
