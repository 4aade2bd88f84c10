//! Family curves are geodesics: distances add up along them and fail to
//! add up anywhere else.
//!
//!     cargo run --example geodesics

use polymetric::{ConvexPolygon, CurveFamily, DiskPoint, MetricContext};

fn main() -> polymetric::Result<()> {
    let x = DiskPoint::new(-0.3, -0.1)?;
    let y = DiskPoint::new(0.3, 0.2)?;
    for family in CurveFamily::ALL {
        let ctx = MetricContext::with_defaults(ConvexPolygon::square(family, 0.5)?, 0.9)?;
        println!("{family}");
        for s in ctx.geodesic_sample(x, y, 5)? {
            println!("  ({:+.4}, {:+.4})  d(x, .) = {:.8}", s.point.x(), s.point.y(), s.distance);
        }
        let on = family.segment_point(x, y, 0.3)?;
        let off = DiskPoint::new(on.x(), on.y() + 0.05)?;
        println!("  defect on the curve  {:+.2e}", ctx.additivity_defect(x, on, y)?.defect);
        println!("  defect 0.05 above it {:+.2e}", ctx.additivity_defect(x, off, y)?.defect);
    }
    Ok(())
}
