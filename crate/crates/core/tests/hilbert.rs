use std::f64::consts::{LN_10, TAU};

use polymetric::hilbert::{
    chord_endpoints, hilbert_dist, hilbert_dist_with, hilbert_parallel_profile,
    nonuniqueness_witness, ConvexDomain,
};
use polymetric::Point2;
use proptest::prelude::*;

fn in_disc() -> impl Strategy<Value = Point2> {
    (0.0..0.9f64, 0.0..TAU).prop_map(|(r, a)| Point2::new(r * a.cos(), r * a.sin()))
}

/// Hyperbolic distance in the Klein model, `cosh d = (1 − ⟨x, y⟩) / √((1 − |x|²)(1 − |y|²))`;
/// needs no chord endpoints.
fn klein_oracle(x: Point2, y: Point2) -> f64 {
    let num = 1.0 - x.dot(y);
    let den = ((1.0 - x.norm_sq()) * (1.0 - y.norm_sq())).sqrt();
    (num / den).max(1.0).acosh()
}

proptest! {
    #[test]
    fn disc_distance_is_the_klein_metric(x in in_disc(), y in in_disc()) {
        prop_assume!(x.dist(y) > 1e-2);
        let d = hilbert_dist(&ConvexDomain::Disc, x, y).unwrap();
        let want = klein_oracle(x, y);
        prop_assert!((d - want).abs() <= 1e-9 * (1.0 + want), "{d} vs {want}");
    }

    #[test]
    fn full_log_convention_doubles(x in in_disc(), y in in_disc()) {
        prop_assume!(x.dist(y) > 1e-6);
        let half = hilbert_dist_with(&ConvexDomain::Disc, x, y, true).unwrap();
        let full = hilbert_dist_with(&ConvexDomain::Disc, x, y, false).unwrap();
        prop_assert!((full - 2.0 * half).abs() <= 1e-12 * (1.0 + full));
    }

    #[test]
    fn chord_endpoints_lie_on_the_square(
        x in (-0.45..0.45f64, -0.45..0.45f64), y in (-0.45..0.45f64, -0.45..0.45f64),
    ) {
        let (x, y) = (Point2::new(x.0, x.1), Point2::new(y.0, y.1));
        prop_assume!(x.dist(y) > 1e-6);
        let square = ConvexDomain::square(0.5).unwrap();
        let (a, b) = chord_endpoints(&square, x, y).unwrap();
        for p in [a, b] {
            prop_assert!(square.signed_distance(p).abs() < 1e-12);
            prop_assert!((p - x).cross(y - x).abs() < 1e-12);
        }
        let d = hilbert_dist(&square, x, y).unwrap();
        prop_assert!((d - hilbert_dist(&square, y, x).unwrap()).abs() <= 1e-12 * (1.0 + d));
    }
}

#[test]
fn collinear_points_in_the_square_are_additive() {
    let square = ConvexDomain::square(0.5).unwrap();
    let (x, y) = (Point2::new(-0.3, 0.1), Point2::new(0.35, -0.05));
    for k in 1..10 {
        let z = x.lerp(y, k as f64 / 10.0);
        let defect = hilbert_dist(&square, x, z).unwrap() + hilbert_dist(&square, z, y).unwrap()
            - hilbert_dist(&square, x, y).unwrap();
        assert!(defect.abs() < 1e-12);
    }
}

#[test]
fn parallel_rays_diverge_in_the_disc() {
    let steps: Vec<f64> = (2..=8).map(|k| 10f64.powi(-k)).collect();
    let a = Point2::new(0.2f64.cos(), -0.2f64.sin());
    let b = Point2::new(0.2f64.cos(), 0.2f64.sin());
    let profile = hilbert_parallel_profile(&ConvexDomain::Disc, a, b, Point2::new(1.0, 0.0), &steps).unwrap();
    for w in profile.windows(2) {
        assert!(w[1].value - w[0].value >= 0.4 * LN_10);
    }
}

#[test]
fn square_has_many_geodesics_and_the_disc_one() {
    let (x, y) = (Point2::new(-0.25, -0.2), Point2::new(0.25, 0.2));
    let found = nonuniqueness_witness(&ConvexDomain::square(0.5).unwrap(), x, y, 100).unwrap();
    assert!(found.is_found());
    assert!(!nonuniqueness_witness(&ConvexDomain::Disc, x, y, 100).unwrap().is_found());
}

#[test]
fn rejects_points_outside() {
    let square = ConvexDomain::square(0.5).unwrap();
    assert!(hilbert_dist(&square, Point2::new(0.0, 0.0), Point2::new(0.6, 0.0)).is_err());
    assert!(hilbert_dist(&ConvexDomain::Disc, Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)).is_err());
}
