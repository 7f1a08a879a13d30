//! Dual complexes of Cauchy Voronoi diagrams.

use super::{CauchyVoronoiDiagram, Coordinates};
use crate::hyperbolic::{geodesic, uhp_to_disk, GeodesicSegment, KleinPoint, Model, UhpPoint};
use crate::{Error, Result};

/// Generators joined when their cells share an edge, and triangles at
/// shared Voronoi vertices. In the hyperbolic case this need not
/// triangulate the convex hull of the generators.
#[derive(Debug, Clone, PartialEq)]
pub struct DelaunayComplex {
    /// Generators with non-empty cells.
    pub sites: Vec<usize>,
    /// Sorted pairs `i < j`.
    pub edges: Vec<(usize, usize)>,
    /// Sorted triples.
    pub triangles: Vec<[usize; 3]>,
    /// Model the geodesics are expressed in.
    pub model: Model,
    /// One geodesic per edge, in the same order.
    pub geodesics: Vec<GeodesicSegment>,
}

fn point_in(model: Model, d: &CauchyVoronoiDiagram, i: usize) -> [f64; 2] {
    let g = d.generators[i];
    match model {
        Model::Klein => KleinPoint::from_cauchy(g).to_array(),
        Model::PoincareDisk => uhp_to_disk(UhpPoint::from(g)).to_array(),
        Model::Uhp => [g.location(), g.scale()],
    }
}

fn build(d: &CauchyVoronoiDiagram, model: Model) -> Result<DelaunayComplex> {
    let sub = &d.subdivision;
    let sites: Vec<usize> = (0..sub.cells.len()).filter(|&i| !sub.cell_is_empty(i)).collect();
    let edges = sub.adjacent_pairs();
    let pts = d.site_points();
    let mut triangles = Vec::new();
    for (v, cells) in sub.voronoi_vertices() {
        if cells.len() == 3 {
            triangles.push([cells[0], cells[1], cells[2]]);
            continue;
        }
        // more than three cells meet: fan over the sites ordered by angle
        let c = sub.vertices[v];
        let mut ring = cells.clone();
        ring.sort_by(|&a, &b| {
            let ang = |i: usize| (pts[i][1] - c[1]).atan2(pts[i][0] - c[0]);
            ang(a).total_cmp(&ang(b))
        });
        for k in 1..ring.len() - 1 {
            let mut t = [ring[0], ring[k], ring[k + 1]];
            t.sort_unstable();
            triangles.push(t);
        }
    }
    triangles.sort_unstable();
    triangles.dedup();
    let geodesics = edges
        .iter()
        .map(|&(i, j)| geodesic(model, point_in(model, d, i), point_in(model, d, j)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DelaunayComplex {
        sites,
        edges,
        triangles,
        model,
        geodesics,
    })
}

/// Delaunay complex of a hyperbolic diagram, geodesics in the Klein model.
pub fn delaunay_complex(d: &CauchyVoronoiDiagram) -> Result<DelaunayComplex> {
    delaunay_complex_in(d, Model::Klein)
}

/// Delaunay complex of a hyperbolic diagram with geodesics in `model`.
pub fn delaunay_complex_in(d: &CauchyVoronoiDiagram, model: Model) -> Result<DelaunayComplex> {
    if d.coordinates != Coordinates::Klein {
        return Err(Error::NotHyperbolic);
    }
    build(d, model)
}

/// Ordinary Delaunay triangulation dual to the reverse flat (Euclidean)
/// diagram; geodesics are straight segments in `(l, s)` coordinates.
pub fn euclidean_delaunay_complex(d: &CauchyVoronoiDiagram) -> Result<DelaunayComplex> {
    if d.coordinates != Coordinates::LocationScale {
        return Err(Error::InvalidArgument("diagram is hyperbolic; use delaunay_complex".into()));
    }
    let mut c = build(d, Model::Uhp)?;
    for g in &mut c.geodesics {
        g.shape = crate::hyperbolic::GeodesicShape::Straight;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divergences::{CauchyParam, DivergenceKind};
    use crate::voronoi::cauchy_voronoi;

    fn p(l: f64, s: f64) -> CauchyParam {
        CauchyParam::new(l, s).unwrap()
    }

    #[test]
    fn pair_gives_single_edge() {
        let d = cauchy_voronoi(&[p(0.0, 1.0), p(1.0, 1.0)], DivergenceKind::KL).unwrap();
        let c = delaunay_complex(&d).unwrap();
        assert_eq!(c.edges, vec![(0, 1)]);
        assert!(c.triangles.is_empty());
        assert_eq!(c.geodesics.len(), 1);
    }

    #[test]
    fn generic_triple_gives_triangle() {
        let d = cauchy_voronoi(&[p(-1.0, 1.0), p(1.0, 1.0), p(0.0, 3.0)], DivergenceKind::FisherRao).unwrap();
        let c = delaunay_complex_in(&d, Model::PoincareDisk).unwrap();
        assert_eq!(c.edges, vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(c.triangles, vec![[0, 1, 2]]);
        assert_eq!(c.model, Model::PoincareDisk);
    }

    #[test]
    fn flat_reverse_is_rejected() {
        let d = cauchy_voronoi(&[p(0.0, 1.0), p(1.0, 1.0)], DivergenceKind::FlatReverse).unwrap();
        assert_eq!(delaunay_complex(&d), Err(Error::NotHyperbolic));
        let c = euclidean_delaunay_complex(&d).unwrap();
        assert_eq!(c.edges, vec![(0, 1)]);
    }
}
