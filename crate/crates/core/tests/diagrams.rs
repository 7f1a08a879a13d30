use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cauchy_voronoi::divergences::{CauchyParam, DivergenceKind};
use cauchy_voronoi::hyperbolic::KleinPoint;
use cauchy_voronoi::oracle::{brute_force_labels, brute_force_labels_with, random_param, GridSpec};
use cauchy_voronoi::power_diagram::{
    power_diagram, power_distance, site_to_sphere, ClipRegion, EdgeKind, Method, WeightedSite,
};
use cauchy_voronoi::voronoi::*;

fn generators(n: usize, seed: u64) -> Vec<CauchyParam> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_param(&mut r, (-5.0, 5.0), (0.2, 5.0))).collect()
}

fn spheres(g: &[CauchyParam]) -> Vec<WeightedSite> {
    g.iter()
        .enumerate()
        .map(|(i, &c)| site_to_sphere(KleinPoint::from_cauchy(c), i).unwrap())
        .collect()
}

#[test]
fn lifting_and_half_plane_agree() {
    for seed in 0..10 {
        let s = spheres(&generators(40, seed));
        let a = power_diagram(&s, ClipRegion::UnitDisk, Method::Lifting).unwrap();
        let b = power_diagram(&s, ClipRegion::UnitDisk, Method::HalfPlane).unwrap();
        assert!(a.approx_eq(&b, 1e-12), "seed {seed}");
    }
}

#[test]
fn common_weight_shift_changes_nothing() {
    let s = spheres(&generators(30, 1));
    let shifted: Vec<_> = s
        .iter()
        .map(|x| WeightedSite::new(x.c, x.w + 3.25, x.origin_index).unwrap())
        .collect();
    let a = power_diagram(&s, ClipRegion::UnitDisk, Method::Lifting).unwrap();
    let b = power_diagram(&shifted, ClipRegion::UnitDisk, Method::Lifting).unwrap();
    assert!(a.max_vertex_displacement(&b).unwrap() <= 1e-10);
}

#[test]
fn vertices_are_equidistant_in_power() {
    let s = spheres(&generators(50, 2));
    let sub = power_diagram(&s, ClipRegion::UnitDisk, Method::Lifting).unwrap();
    let vs = sub.voronoi_vertices();
    assert!(!vs.is_empty());
    for (v, cells) in vs {
        let x = sub.vertices[v];
        let pd: Vec<f64> = cells.iter().map(|&i| power_distance(&s[i], x)).collect();
        let min_all = s.iter().map(|t| power_distance(t, x)).fold(f64::INFINITY, f64::min);
        for p in &pd {
            assert!((p - pd[0]).abs() <= 1e-9 * (1.0 + pd[0].abs()));
            assert!(p - min_all <= 1e-9 * (1.0 + min_all.abs()));
        }
    }
}

#[test]
fn cells_are_convex_and_tile_the_disk() {
    let d = cauchy_voronoi(&generators(60, 3), DivergenceKind::KL).unwrap();
    let sub = &d.subdivision;
    let mut total = 0.0;
    for i in 0..sub.cells.len() {
        let vs = sub.cell_vertices(i);
        for k in 0..vs.len() {
            let (a, b, c) = (sub.vertices[vs[k]], sub.vertices[vs[(k + 1) % vs.len()]], sub.vertices[vs[(k + 2) % vs.len()]]);
            let turn = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
            assert!(turn >= -1e-12, "cell {i} turns clockwise");
        }
        total += sub.cell_area(i);
    }
    assert!((total - PI).abs() < 1e-9, "{total}");
    // every bisector edge is shared by exactly two non-empty cells
    for e in &sub.edges {
        match e.kind {
            EdgeKind::Bisector => assert!(e.right.is_some()),
            EdgeKind::Clip => assert!(e.right.is_none()),
        }
    }
}

#[test]
fn euclidean_window_is_tiled() {
    let g = generators(40, 4);
    let d = cauchy_voronoi(&g, DivergenceKind::FlatReverse).unwrap();
    let total: f64 = (0..g.len()).map(|i| d.subdivision.cell_area(i)).sum();
    assert!((total - d.subdivision.clip.area()).abs() < 1e-9 * d.subdivision.clip.area());
    let c = euclidean_delaunay_complex(&d).unwrap();
    assert_eq!(count_chord_crossings(&d, &c), 0);
}

#[test]
fn located_cells_match_brute_force() {
    let g = generators(25, 5);
    let grid = GridSpec::new((-7.0, 7.0), (0.02, 8.0), 80, 80).unwrap();
    let d = cauchy_voronoi(&g, DivergenceKind::ChiSquare).unwrap();
    let labels = brute_force_labels(&g, DivergenceKind::ChiSquare, &grid).unwrap();
    for i in 0..grid.len() {
        if !labels.excluded[i] {
            assert_eq!(d.locate(grid.point(i)), Some(labels.labels[i]), "{}", grid.point(i));
        }
    }
}

#[test]
fn monotone_transforms_keep_the_labels() {
    let g = generators(20, 6);
    let grid = GridSpec::new((-6.0, 6.0), (0.1, 6.0), 60, 60).unwrap();
    let base = brute_force_labels(&g, DivergenceKind::KL, &grid).unwrap();
    let transformed = brute_force_labels_with(&g, DivergenceKind::KL, &grid, |a, x| {
        let v = DivergenceKind::KL.evaluate(a, x);
        v.exp_m1() + v.sqrt()
    })
    .unwrap();
    assert!(base.disagreements(&transformed).is_empty());
}

#[test]
fn nested_scales_give_a_planar_complex() {
    let eps = 1e-3;
    let mut g: Vec<CauchyParam> = (0..10).map(|k| CauchyParam::new(k as f64 * eps, 1.0).unwrap()).collect();
    g.push(CauchyParam::new(0.0, 100.0).unwrap());
    let d = cauchy_voronoi(&g, DivergenceKind::FisherRao).unwrap();
    let c = delaunay_complex(&d).unwrap();
    assert_eq!(count_chord_crossings(&d, &c), 0);
    assert!(verify_empty_sphere(&d, &c).unwrap().passed);
    assert!(!c.edges.is_empty());
    for &(i, j) in &c.edges {
        assert!(d.subdivision.shared_edge(i, j).is_some());
    }
}

#[test]
fn empty_sphere_negative_control() {
    let mut d = cauchy_voronoi(&generators(30, 7), DivergenceKind::FisherRao).unwrap();
    let c = delaunay_complex(&d).unwrap();
    assert!(verify_empty_sphere(&d, &c).unwrap().passed);
    // nudge a generator towards a Voronoi vertex it does not define
    let (v, cells) = d.subdivision.voronoi_vertices()[3].clone();
    let x = d.subdivision.vertices[v];
    let m = (0..d.generators.len()).find(|i| !cells.contains(i)).unwrap();
    let k = KleinPoint::from_cauchy(d.generators[cells[0]]);
    let moved = KleinPoint::new(0.5 * (x[0] + k.u), 0.5 * (x[1] + k.v)).unwrap();
    d.generators[m] = moved.to_cauchy().unwrap();
    let r = verify_empty_sphere(&d, &c).unwrap();
    assert!(!r.passed && r.max_slack > 1e-3, "{r:?}");
}

#[test]
fn orthogonality_on_random_instances() {
    for seed in 10..15 {
        let d = cauchy_voronoi(&generators(40, seed), DivergenceKind::FisherRao).unwrap();
        let c = delaunay_complex(&d).unwrap();
        let r = verify_fisher_orthogonality(&d, &c).unwrap();
        assert!(r.passed, "seed {seed}: {}", r.max_abs_cos);
        assert_eq!(r.crossings.len() + r.skipped, c.edges.len());
    }
}

#[test]
fn adjacency_is_the_same_in_every_model() {
    use cauchy_voronoi::hyperbolic::Model;
    let d = cauchy_voronoi(&generators(24, 8), DivergenceKind::FisherRao).unwrap();
    let edges: Vec<_> = Model::ALL.iter().map(|&m| delaunay_complex_in(&d, m).unwrap().edges).collect();
    assert!(edges.windows(2).all(|w| w[0] == w[1]));
}
