use std::f64::consts::SQRT_2;

use cauchy_voronoi::divergences::{fisher_rao, CauchyParam};
use cauchy_voronoi::hyperbolic::*;
use proptest::prelude::*;

fn uhp() -> impl Strategy<Value = UhpPoint> {
    (-5.0f64..5.0, 0.1f64..5.0).prop_map(|(x, y)| UhpPoint::new(x, y).unwrap())
}

proptest! {
    #[test]
    fn round_trips(p in uhp()) {
        let back = disk_to_uhp(uhp_to_disk(p)).unwrap();
        prop_assert!((back.x - p.x).abs() <= 1e-9 * (1.0 + p.x.abs()) && (back.y - p.y).abs() <= 1e-9 * p.y);
        let back = klein_to_uhp(uhp_to_klein(p)).unwrap();
        prop_assert!((back.x - p.x).abs() <= 1e-8 * (1.0 + p.x.abs()) && (back.y - p.y).abs() <= 1e-8 * p.y);
    }

    #[test]
    fn distances_agree_across_models(p in uhp(), q in uhp()) {
        let d = dist_uhp(p, q);
        prop_assert!((dist_disk(uhp_to_disk(p), uhp_to_disk(q)) - d).abs() <= 1e-9 * (1.0 + d));
        prop_assert!((dist_klein(uhp_to_klein(p), uhp_to_klein(q)) - d).abs() <= 1e-9 * (1.0 + d));
        let (a, b) = (CauchyParam::new(p.x, p.y).unwrap(), CauchyParam::new(q.x, q.y).unwrap());
        prop_assert!((SQRT_2 * fisher_rao(a, b) - d).abs() <= 1e-9 * (1.0 + d));
    }

    #[test]
    fn klein_bisector_is_equidistant(p in uhp(), q in uhp(), t in 0.05f64..0.95) {
        prop_assume!(dist_uhp(p, q) > 1e-3);
        let (kp, kq) = (uhp_to_klein(p), uhp_to_klein(q));
        let line = klein_bisector(kp, kq).unwrap();
        let (a, b) = line.unit_disk_chord().unwrap();
        let x = KleinPoint::new(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])).unwrap();
        let (dp, dq) = (dist_klein(x, kp), dist_klein(x, kq));
        prop_assert!((dp - dq).abs() <= 1e-7 * (1.0 + dp));
    }

    #[test]
    fn geodesics_stay_on_their_curve(p in uhp(), q in uhp()) {
        prop_assume!(dist_uhp(p, q) > 1e-3);
        let g = geodesic(Model::Uhp, p.to_array(), q.to_array()).unwrap();
        let mid = g.point_at(0.5);
        let m = UhpPoint::new(mid[0], mid[1]).unwrap();
        let total = dist_uhp(p, q);
        prop_assert!((dist_uhp(p, m) + dist_uhp(m, q) - total).abs() <= 1e-7 * (1.0 + total));
    }
}
