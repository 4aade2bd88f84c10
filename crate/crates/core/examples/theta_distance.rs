//! One term of the series: the cross-ratio pseudo-distance seen from a
//! single boundary point.
//!
//!     cargo run --example theta_distance

use polymetric::metric::theta_distance;
use polymetric::{BoundaryPoint, ConvexPolygon, CurveFamily, DiskPoint};

fn main() -> polymetric::Result<()> {
    let x = DiskPoint::new(0.0, 0.0)?;
    let y = DiskPoint::new(0.0, 0.25)?;
    for family in CurveFamily::ALL {
        let poly = ConvexPolygon::square(family, 0.5)?;
        for angle in [0.0, 0.5, 1.0, 1.5707963267948966] {
            let theta = BoundaryPoint::new(angle);
            let d = theta_distance(family, &poly.supports(theta), x, y)?;
            println!("{family:>8} theta {angle:.4}: d = {d:.6}");
        }
    }
    // seen from θ = 0 both points project into a band of the square, so the
    // term is positive; seen along the y-axis they share a curve and it is 0
    Ok(())
}
