//! Property tests of the geometric primitives.

use std::f64::consts::{PI, TAU};

use diskpath::geometry::{
    angular_separation, ccw_sweep, common_tangents, entry_points, normalize_angle, point_segment_distance,
    tangents_from_point, Disk, Point,
};
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -50.0..50.0f64
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

proptest! {
    #[test]
    fn normalized_angles_land_in_range(a in -1e4..1e4f64) {
        let n = normalize_angle(a);
        prop_assert!((0.0..TAU).contains(&n));
        let turns = (a - n) / TAU;
        prop_assert!((turns - turns.round()).abs() < 1e-9);
    }

    #[test]
    fn sweeps_in_both_directions_cover_the_circle(a in -10.0..10.0f64, b in -10.0..10.0f64) {
        let total = ccw_sweep(a, b) + ccw_sweep(b, a);
        prop_assert!(total.abs() < 1e-9 || (total - TAU).abs() < 1e-9);
        let sep = angular_separation(a, b);
        prop_assert!((0.0..=PI + 1e-12).contains(&sep));
        prop_assert!((sep - angular_separation(b, a)).abs() < 1e-12);
    }

    #[test]
    fn segment_distance_is_bounded_by_endpoints(c in point(), p in point(), q in point()) {
        let d = point_segment_distance(c, p, q);
        prop_assert!(d <= c.dist(p) + 1e-12);
        prop_assert!(d <= c.dist(q) + 1e-12);
        prop_assert!(d >= 0.0);
    }

    #[test]
    fn tangent_points_touch_the_boundary_at_right_angles(
        center in point(), r in 0.1..5.0f64, dir in 0.0..TAU, extra in 0.01..20.0f64,
    ) {
        let disk = Disk::new(0, center, r, 1.0);
        let p = center + Point::polar(dir) * (r + extra);
        let touches = tangents_from_point(p, &disk);
        prop_assert_eq!(touches.len(), 2);
        for t in touches {
            prop_assert!((t.dist(center) - r).abs() < 1e-9 * (1.0 + r));
            let radial = (t - center).unit();
            let along = (p - t).unit();
            prop_assert!(radial.dot(along).abs() < 1e-7);
        }
    }

    #[test]
    fn entry_points_interpolate_between_radial_and_tangent(
        r in 0.2..3.0f64, dist in 0.05..10.0f64, mult in 0.0..=1.0f64,
    ) {
        let center = Point::new(0.0, 0.0);
        let p = Point::new(r + dist, 0.0);
        let entries = entry_points(p, center, r, mult);
        prop_assert!(!entries.is_empty());
        for e in entries {
            prop_assert!((e.norm() - r).abs() < 1e-9 * (1.0 + r));
            // The approach line stays tangent to the inner circle of radius mult·R.
            let inner = mult * r;
            let line_dist = point_segment_distance(center, p, p + (e - p) * 1e6);
            prop_assert!(line_dist <= inner + 1e-7 * (1.0 + r));
        }
    }

    #[test]
    fn common_tangents_touch_both_disks(
        r1 in 0.1..3.0f64, r2 in 0.1..3.0f64, gap in 0.01..10.0f64, dir in 0.0..TAU,
    ) {
        let a = Disk::new(0, Point::new(0.0, 0.0), r1, f64::INFINITY);
        let b = Disk::new(1, Point::polar(dir) * (r1 + r2 + gap), r2, f64::INFINITY);
        let pairs = common_tangents(&a, &b);
        prop_assert_eq!(pairs.len(), 4);
        for (p, q) in pairs {
            prop_assert!((p.dist(a.center) - r1).abs() < 1e-8);
            prop_assert!((q.dist(b.center) - r2).abs() < 1e-8);
            let line = q - p;
            prop_assert!(line.unit().dot((p - a.center).unit()).abs() < 1e-6);
            prop_assert!(line.unit().dot((q - b.center).unit()).abs() < 1e-6);
        }
    }
}
