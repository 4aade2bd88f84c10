mod common;

use std::f64::consts::TAU;

use polymetric::{BoundaryPoint, Containment, ConvexPolygon, CurveFamily, DiskPoint, Error};
use proptest::prelude::*;

fn rotated_square(family: CurveFamily, h: f64, alpha: f64) -> (ConvexPolygon, Vec<[f64; 2]>) {
    let coords: Vec<[f64; 2]> = common::square(h)
        .into_iter()
        .map(|[x, y]| [x * alpha.cos() - y * alpha.sin(), x * alpha.sin() + y * alpha.cos()])
        .collect();
    (ConvexPolygon::from_coords(family, &coords).unwrap(), coords)
}

proptest! {
    #[test]
    fn supports_are_extreme_vertex_projections(
        chords in any::<bool>(), alpha in 0.0..TAU, t in 0.0..TAU,
    ) {
        let family = if chords { CurveFamily::Chords } else { CurveFamily::Poincare };
        let (poly, coords) = rotated_square(family, 0.45, alpha);
        let theta = BoundaryPoint::new(t);
        let (near, far) = poly.supports(theta).offsets();
        let offsets: Vec<f64> = coords
            .iter()
            .map(|&v| common::cw(t, common::other_endpoint(family, v, t)))
            .collect();
        let lo = offsets.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = offsets.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!((near - lo).abs() < 1e-9, "{near} vs {lo}");
        prop_assert!((far - hi).abs() < 1e-9, "{far} vs {hi}");
    }

    #[test]
    fn interior_samples_are_inside(chords in any::<bool>(), seed in 0u64..1000) {
        use rand::SeedableRng;
        let family = if chords { CurveFamily::Chords } else { CurveFamily::Poincare };
        let poly = ConvexPolygon::square(family, 0.5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            prop_assert_eq!(poly.contains(poly.sample_interior(&mut rng)), Containment::Inside);
        }
    }
}

#[test]
fn containment_of_simple_points() {
    for family in CurveFamily::ALL {
        let poly = ConvexPolygon::square(family, 0.5).unwrap();
        assert_eq!(poly.contains(DiskPoint::origin()), Containment::Inside);
        assert_eq!(poly.contains(common::dp(0.7, 0.0)), Containment::Outside);
        assert_eq!(poly.contains(common::dp(0.5, 0.5)), Containment::Boundary);
    }
}

#[test]
fn side_points_lie_on_their_sides() {
    for family in CurveFamily::ALL {
        let poly = ConvexPolygon::square(family, 0.5).unwrap();
        for i in 0..poly.len() {
            let z = poly.side_point(i, 0.3).unwrap();
            assert!(poly.on_side(i, z));
            assert_eq!(poly.contains(z), Containment::Boundary);
        }
    }
}

#[test]
fn rejects_degenerate_input() {
    let err = ConvexPolygon::from_coords(CurveFamily::Chords, &[[0.0, 0.0], [0.1, 0.0]]);
    assert!(matches!(err, Err(Error::InvalidPolygon(_))));
    let err = ConvexPolygon::from_coords(CurveFamily::Chords, &[[0.0, 0.0], [1.2, 0.0], [0.0, 0.3]]);
    assert!(err.is_err());
}
