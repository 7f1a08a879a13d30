//! Executable checks of the empty-sphere property and of the Fisher
//! orthogonality between Delaunay geodesics and Voronoi bisectors.

use super::{CauchyVoronoiDiagram, Coordinates, DelaunayComplex};
use crate::hyperbolic::{dist_klein, klein_bisector, klein_to_uhp, KleinPoint};
use crate::{Error, Result};

pub const EMPTY_SPHERE_TOLERANCE: f64 = 1e-9;
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct EmptySphereReport {
    pub vertices_checked: usize,
    /// `max over vertices of (circumradius − nearest non-defining site)`;
    /// non-positive when the property holds.
    pub max_slack: f64,
    /// Largest spread of distances from a vertex to its own defining sites.
    pub max_radius_spread: f64,
    pub worst_vertex: Option<usize>,
    pub passed: bool,
}

/// At every interior Voronoi vertex, the hyperbolic circle through its
/// defining generators must contain no other generator.
///
/// Generators are re-read from `d.generators`, so moving one after
/// construction is detected.
pub fn verify_empty_sphere(d: &CauchyVoronoiDiagram, _c: &DelaunayComplex) -> Result<EmptySphereReport> {
    if d.coordinates != Coordinates::Klein {
        return Err(Error::NotHyperbolic);
    }
    let sub = &d.subdivision;
    let sites: Vec<KleinPoint> = d.generators.iter().map(|&g| KleinPoint::from_cauchy(g)).collect();
    let mut report = EmptySphereReport {
        vertices_checked: 0,
        max_slack: f64::NEG_INFINITY,
        max_radius_spread: 0.0,
        worst_vertex: None,
        passed: true,
    };
    for (v, cells) in sub.voronoi_vertices() {
        let x = sub.vertices[v];
        let x = KleinPoint { u: x[0], v: x[1] };
        let radii: Vec<f64> = cells.iter().map(|&i| dist_klein(x, sites[i])).collect();
        let r = radii.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let r_min = radii.iter().copied().fold(f64::INFINITY, f64::min);
        report.max_radius_spread = report.max_radius_spread.max(r - r_min);
        let nearest_other = (0..sites.len())
            .filter(|i| !cells.contains(i))
            .map(|i| dist_klein(x, sites[i]))
            .fold(f64::INFINITY, f64::min);
        // with no other generator the slack is the defining sites' own spread
        let slack = if nearest_other.is_finite() { r - nearest_other } else { r - r_min };
        report.vertices_checked += 1;
        if slack > report.max_slack {
            report.max_slack = slack;
            report.worst_vertex = Some(v);
        }
    }
    if report.vertices_checked == 0 {
        report.max_slack = 0.0;
    }
    report.passed = report.max_slack <= EMPTY_SPHERE_TOLERANCE;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthogonalityCrossing {
    pub edge: (usize, usize),
    /// Crossing point in `(l, s)` coordinates.
    pub point: [f64; 2],
    pub abs_cos: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FisherOrthogonalityReport {
    pub crossings: Vec<OrthogonalityCrossing>,
    /// Delaunay edges whose geodesic misses the shared Voronoi edge.
    pub skipped: usize,
    pub max_abs_cos: f64,
    pub passed: bool,
}

/// Intersection parameter `(t, u)` of segments `a + t(b − a)` and `c + u(d − c)`.
fn segment_intersection(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> Option<(f64, f64)> {
    let r = [b[0] - a[0], b[1] - a[1]];
    let s = [d[0] - c[0], d[1] - c[1]];
    let den = r[0] * s[1] - r[1] * s[0];
    if den == 0.0 {
        return None;
    }
    let q = [c[0] - a[0], c[1] - a[1]];
    let t = (q[0] * s[1] - q[1] * s[0]) / den;
    let u = (q[0] * r[1] - q[1] * r[0]) / den;
    ((0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u)).then_some((t, u))
}

fn uhp(p: [f64; 2]) -> Result<[f64; 2]> {
    Ok(klein_to_uhp(KleinPoint::new(p[0], p[1])?)?.to_array())
}

/// Upper half-plane tangent of the Klein line through `x` with direction
/// `dir`, by central differences with a hyperbolic step of about `1e-4`
/// (smaller steps lose more to rounding in the model map than they gain).
fn uhp_tangent(x: [f64; 2], dir: [f64; 2]) -> Result<[f64; 2]> {
    let len = dir[0].hypot(dir[1]);
    let h = 1e-4 * (1.0 - (x[0] * x[0] + x[1] * x[1]));
    let step = [h * dir[0] / len, h * dir[1] / len];
    let f = uhp([x[0] + step[0], x[1] + step[1]])?;
    let b = uhp([x[0] - step[0], x[1] - step[1]])?;
    Ok([(f[0] - b[0]) / (2.0 * h), (f[1] - b[1]) / (2.0 * h)])
}

/// For every Delaunay edge, where the Klein chord between the generators
/// crosses their shared Voronoi edge, compare the tangents of the mapped
/// geodesic and bisector in the upper half-plane. The Fisher metric is
/// conformal there, so Fisher orthogonality is Euclidean orthogonality.
pub fn verify_fisher_orthogonality(
    d: &CauchyVoronoiDiagram,
    c: &DelaunayComplex,
) -> Result<FisherOrthogonalityReport> {
    if d.coordinates != Coordinates::Klein {
        return Err(Error::NotHyperbolic);
    }
    let sub = &d.subdivision;
    let pts = d.site_points();
    let mut report = FisherOrthogonalityReport {
        crossings: Vec::new(),
        skipped: 0,
        max_abs_cos: 0.0,
        passed: true,
    };
    for &(i, j) in &c.edges {
        let Some(e) = sub.shared_edge(i, j) else {
            report.skipped += 1;
            continue;
        };
        let [va, vb] = sub.edges[e].vertices;
        let (p, q) = (sub.vertices[va], sub.vertices[vb]);
        let Some((t, _)) = segment_intersection(pts[i], pts[j], p, q) else {
            report.skipped += 1;
            continue;
        };
        let x = [
            pts[i][0] + t * (pts[j][0] - pts[i][0]),
            pts[i][1] + t * (pts[j][1] - pts[i][1]),
        ];
        let g = uhp_tangent(x, [pts[j][0] - pts[i][0], pts[j][1] - pts[i][1]])?;
        // direction from the bisector line itself: short edges have noisy endpoints
        let line = klein_bisector(KleinPoint::new(pts[i][0], pts[i][1])?, KleinPoint::new(pts[j][0], pts[j][1])?)?;
        let b = uhp_tangent(x, [-line.b, line.a])?;
        let cos = (g[0] * b[0] + g[1] * b[1]).abs() / (g[0].hypot(g[1]) * b[0].hypot(b[1]));
        report.max_abs_cos = report.max_abs_cos.max(cos);
        report.crossings.push(OrthogonalityCrossing {
            edge: (i, j),
            point: uhp(x)?,
            abs_cos: cos,
        });
    }
    report.passed = report.max_abs_cos <= ORTHOGONALITY_TOLERANCE;
    Ok(report)
}

/// Number of pairs of Delaunay chords (Klein model) that cross away from a
/// shared endpoint. Zero for a planar complex.
pub fn count_chord_crossings(d: &CauchyVoronoiDiagram, c: &DelaunayComplex) -> usize {
    let pts = d.site_points();
    let mut count = 0;
    for (k, &(a, b)) in c.edges.iter().enumerate() {
        for &(x, y) in &c.edges[k + 1..] {
            if a == x || a == y || b == x || b == y {
                continue;
            }
            if let Some((t, u)) = segment_intersection(pts[a], pts[b], pts[x], pts[y]) {
                if t > 1e-12 && t < 1.0 - 1e-12 && u > 1e-12 && u < 1.0 - 1e-12 {
                    count += 1;
                }
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divergences::{CauchyParam, DivergenceKind};
    use crate::voronoi::{cauchy_voronoi, delaunay_complex};

    fn p(l: f64, s: f64) -> CauchyParam {
        CauchyParam::new(l, s).unwrap()
    }

    #[test]
    fn symmetric_pair_is_orthogonal_at_top_of_semicircle() {
        let d = cauchy_voronoi(&[p(-1.0, 1.0), p(1.0, 1.0)], DivergenceKind::FisherRao).unwrap();
        let c = delaunay_complex(&d).unwrap();
        let r = verify_fisher_orthogonality(&d, &c).unwrap();
        assert_eq!(r.crossings.len(), 1);
        let x = r.crossings[0].point;
        assert!(x[0].abs() < 1e-12 && (x[1] - 2f64.sqrt()).abs() < 1e-12);
        assert!(r.max_abs_cos <= 1e-9, "{}", r.max_abs_cos);
    }

    #[test]
    fn scale_pair_crosses_at_geometric_mean() {
        let d = cauchy_voronoi(&[p(0.0, 1.0), p(0.0, 4.0)], DivergenceKind::FisherRao).unwrap();
        let c = delaunay_complex(&d).unwrap();
        let r = verify_fisher_orthogonality(&d, &c).unwrap();
        assert_eq!(r.crossings.len(), 1);
        let x = r.crossings[0].point;
        assert!(x[0].abs() < 1e-12 && (x[1] - 2.0).abs() < 1e-12);
        assert!(r.passed);
    }

    #[test]
    fn three_sites_have_zero_slack() {
        let d = cauchy_voronoi(&[p(-1.0, 1.0), p(1.0, 1.0), p(0.0, 3.0)], DivergenceKind::KL).unwrap();
        let c = delaunay_complex(&d).unwrap();
        let r = verify_empty_sphere(&d, &c).unwrap();
        assert_eq!(r.vertices_checked, 1);
        assert!(r.max_slack.abs() < 1e-12);
        assert!(r.max_radius_spread < 1e-12);
        assert!(r.passed);
        assert_eq!(count_chord_crossings(&d, &c), 0);
    }
}
