//! Where the family curve from a boundary point through an interior point
//! lands, for chords and for Poincaré geodesics.
//!
//!     cargo run --example projections

use std::f64::consts::PI;

use polymetric::{BoundaryPoint, CurveFamily, DiskPoint};

fn main() -> polymetric::Result<()> {
    let x = DiskPoint::new(0.3, 0.2)?;
    println!("x = ({}, {})", x.x(), x.y());
    println!("{:>8} {:>12} {:>12}", "theta", "chords", "poincare");
    for k in 0..8 {
        let theta = BoundaryPoint::new(k as f64 * PI / 4.0);
        let c = CurveFamily::Chords.other_endpoint(x, theta);
        let p = CurveFamily::Poincare.other_endpoint(x, theta);
        println!("{:>8.4} {:>12.6} {:>12.6}", theta.angle(), c.angle(), p.angle());
    }

    // the curve through two points, and a point between them on it
    let y = DiskPoint::new(-0.4, 0.1)?;
    for family in CurveFamily::ALL {
        let curve = family.curve_through(x, y)?;
        let mid = family.segment_point(x, y, 0.5)?;
        println!(
            "{family}: endpoints {} -> {}, midpoint ({:.6}, {:.6})",
            curve.endpoints.0, curve.endpoints.1, mid.x(), mid.y()
        );
    }
    Ok(())
}
