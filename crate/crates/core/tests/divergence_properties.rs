use std::f64::consts::{PI, SQRT_2};

use cauchy_voronoi::divergences::*;
use cauchy_voronoi::oracle::quadrature::{
    integrate_chernoff, integrate_f_divergence, integrate_f_divergence_with, FGenerator, Tolerance,
};
use proptest::prelude::*;

fn param() -> impl Strategy<Value = CauchyParam> {
    (-5.0f64..5.0, 0.1f64..5.0).prop_map(|(l, s)| CauchyParam::new(l, s).unwrap())
}

proptest! {
    #[test]
    fn symmetric_and_nonnegative(a in param(), b in param()) {
        for f in [kl, chi_square, fisher_rao, sqrt_kl] {
            prop_assert!(f(a, b) >= 0.0);
            prop_assert!((f(a, b) - f(b, a)).abs() <= 1e-12 * (1.0 + f(a, b)));
        }
        prop_assert_eq!(kl(a, a), 0.0);
        prop_assert_eq!(fisher_rao(a, a), 0.0);
        prop_assert!((chernoff_coefficient_3(a, a) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn everything_is_a_function_of_chi_square(a in param(), b in param()) {
        let delta = chi_square(a, b);
        prop_assert!((fisher_rao(a, b) - convert_chi_to_fr(delta).unwrap()).abs() <= 1e-12 * (1.0 + fisher_rao(a, b)));
        let via_fr = convert_fr_to_kl(fisher_rao(a, b)).unwrap();
        prop_assert!((kl(a, b) - via_fr).abs() <= 1e-9 * (1.0 + kl(a, b)));
        prop_assert!((flat_divergence(a, b) - 2.0 * PI * b.scale() * delta).abs() <= 1e-9 * (1.0 + delta));
    }

    #[test]
    fn location_scale_invariance(a in param(), b in param(), shift in -3.0f64..3.0, scale in 0.2f64..4.0) {
        let m = |x: CauchyParam| CauchyParam::new(scale * x.location() + shift, scale * x.scale()).unwrap();
        for f in [kl, chi_square, fisher_rao] {
            prop_assert!((f(a, b) - f(m(a), m(b))).abs() <= 1e-9 * (1.0 + f(a, b)));
        }
    }

    #[test]
    fn dual_coordinates_round_trip(a in param()) {
        let back = from_natural(to_natural(a)).unwrap();
        prop_assert!((back.location() - a.location()).abs() <= 1e-12 * (1.0 + a.location().abs()));
        prop_assert!((back.scale() - a.scale()).abs() <= 1e-12 * a.scale());
        let back = from_dual(to_dual(a)).unwrap();
        prop_assert!((back.location() - a.location()).abs() <= 1e-12 * (1.0 + a.location().abs()));
        prop_assert!((back.scale() - a.scale()).abs() <= 1e-9 * a.scale());
        prop_assert!(fenchel_young_gap(to_natural(a), to_dual(a)).abs() <= 1e-9);
    }

    #[test]
    fn fenchel_young_gap_is_nonnegative(a in param(), b in param()) {
        prop_assert!(fenchel_young_gap(to_natural(a), to_dual(b)) >= -1e-9);
    }
}

// The stated factor 2/(πs) in the conformal relation between the pulled-back
// flat metric and the Fisher metric does not hold; the factor is 4πs.
#[test]
fn flat_metric_is_4_pi_s_times_fisher() {
    for (l, s) in [(0.0, 1.0), (-2.0, 0.3), (3.5, 4.0), (1.0, 0.1)] {
        let a = CauchyParam::new(l, s).unwrap();
        let g = flat_metric(a);
        let f = fisher_metric(a).scale(4.0 * PI * s);
        for i in 0..2 {
            for j in 0..2 {
                assert!((g.get(i, j) - f.get(i, j)).abs() <= 1e-12 * g.max_abs(), "{l} {s}");
            }
        }
        // the pullback is 2π/s times the identity
        assert!((g.get(0, 0) - 2.0 * PI / s).abs() <= 1e-12 * g.max_abs());
    }
}

// The witness √t(u)/u behind the metric-transform argument decreases from
// 1/√2, which is the direction the subadditivity argument actually needs.
#[test]
fn sqrt_kl_witness_is_nonincreasing() {
    let w = |u: f64| convert_fr_to_kl(u).unwrap().sqrt() / u;
    assert!((w(1e-6) - 1.0 / SQRT_2).abs() < 1e-9);
    let mut prev = w(1e-3);
    for k in 2..=10_000 {
        let cur = w(k as f64 * 1e-3);
        assert!(cur <= prev * (1.0 + 4.0 * f64::EPSILON), "u = {}", k as f64 * 1e-3);
        prev = cur;
    }
    // subadditive on a few spot checks
    for (x, y) in [(0.1, 0.2), (1.0, 3.0), (5.0, 5.0)] {
        let t = |u: f64| convert_fr_to_kl(u).unwrap().sqrt();
        assert!(t(x + y) <= t(x) + t(y));
    }
}

#[test]
fn table_row_matches_reference_values() {
    let (a, b) = (CauchyParam::new(0.0, 1.0).unwrap(), CauchyParam::new(0.0, 2.0).unwrap());
    assert!((chi_square(a, b) - 0.25).abs() < 1e-15);
    assert!((fisher_rao(a, b) - 0.4901).abs() < 5e-5);
    assert!((kl(a, b) - 0.11778).abs() < 5e-6);
    assert!((sqrt_kl(a, b) - 0.34320).abs() < 5e-6);
    assert!((flat_divergence(a, b) - PI).abs() < 1e-12);
    assert!((flat_divergence_reverse(a, b) - PI / 2.0).abs() < 1e-12);
}

#[test]
fn general_chernoff_matches_quadrature() {
    let (a, b) = (CauchyParam::new(-1.0, 0.5).unwrap(), CauchyParam::new(2.0, 3.0).unwrap());
    for alpha in [-2.0, -1.0, 2.0, 3.0] {
        let closed = chernoff_coefficient(alpha, a, b).unwrap();
        let q = integrate_chernoff(alpha, a, b).unwrap().value;
        assert!((closed - q).abs() <= 1e-8 * closed, "alpha {alpha}: {closed} vs {q}");
    }
}

#[test]
fn halving_tolerance_stays_within_error_estimate() {
    let (a, b) = (CauchyParam::new(0.3, 0.2).unwrap(), CauchyParam::new(4.0, 2.5).unwrap());
    let tol = Tolerance::default();
    let coarse = integrate_f_divergence_with(FGenerator::KL, a, b, tol).unwrap();
    let fine = integrate_f_divergence_with(FGenerator::KL, a, b, tol.halved()).unwrap();
    assert!((coarse.value - fine.value).abs() <= coarse.error_estimate.max(1e-15));
    assert!((integrate_f_divergence(FGenerator::KL, a, b).unwrap().value - kl(a, b)).abs() < 1e-9);
}
