//! The planar variant: pseudo-distances from strips between parallel
//! support lines, summed over directions.
//!
//!     cargo run --example plane_strips

use polymetric::plane::{plane_pseudo_dist, DirectionScheme, PlaneContext};
use polymetric::{PlanarPolygon, Point2, Truncation};

fn main() -> polymetric::Result<()> {
    let square = PlanarPolygon::new(vec![
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(1.0, 1.0),
        Point2::new(0.0, 1.0),
    ])?;
    let (x, y) = (Point2::new(0.25, 0.5), Point2::new(0.75, 0.5));
    println!(
        "horizontal strip: {:.12} (log 9 = {:.12})",
        plane_pseudo_dist(&square, 0.0, x, y)?,
        9f64.ln()
    );

    let scheme = DirectionScheme::for_polygon(&square, 512, 0.9)?;
    let ctx = PlaneContext::new(square, scheme, Truncation::default())?;
    let d = ctx.dist(x, y)?;
    println!("series: {:.10} (+/- {:.1e}, {} terms)", d.value, d.bound, d.terms);
    let z = Point2::new(0.4, 0.5);
    let w = Point2::new(0.4, 0.7);
    println!("defect on the segment {:+.2e}", ctx.additivity_defect(x, z, y)?.defect);
    println!("defect off it         {:+.2e}", ctx.additivity_defect(x, w, y)?.defect);

    let steps: Vec<f64> = (2..=6).map(|k| 10f64.powi(-k)).collect();
    let profile = ctx.ray_profile(x, 0, Point2::new(0.5, 0.0), &steps)?;
    println!("expected per-decade growth {:.4}", ctx.expected_decade_increment(0).unwrap());
    for p in profile {
        println!("  step {:.0e}: d = {:.6}", p.step, p.value);
    }
    Ok(())
}
