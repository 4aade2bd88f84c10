//! Supporting curves of a polygon: for each boundary point θ, the nearest
//! and farthest projections of the polygon along the family.
//!
//!     cargo run --example supports

use std::f64::consts::TAU;

use polymetric::{BoundaryPoint, ConvexPolygon, CurveFamily};

fn main() -> polymetric::Result<()> {
    let coords = [[0.6, -0.1], [0.3, 0.5], [-0.4, 0.4], [-0.5, -0.3], [0.1, -0.6]];
    for family in CurveFamily::ALL {
        let poly = ConvexPolygon::from_coords(family, &coords)?;
        println!("{family}: {} sides", poly.len());
        for k in 0..6 {
            let theta = BoundaryPoint::new(k as f64 * TAU / 6.0);
            let s = poly.supports(theta);
            let (near, far) = s.offsets();
            println!(
                "  theta {:.4}: xi {} ({:?}), eta {} ({:?}), clockwise offsets {near:.6}..{far:.6}",
                theta.angle(), s.xi, s.touch_xi, s.eta, s.touch_eta
            );
        }
    }
    Ok(())
}
