//! Completeness: walking straight at a side, the distance grows like
//! log(1/step) with slope set by the weights of the side's endpoints.
//!
//!     cargo run --example ray_blowup

use std::f64::consts::LN_10;

use polymetric::polygon::EDGE_TIE_EPS;
use polymetric::{ConvexPolygon, CurveFamily, DiskPoint, MetricContext};

fn main() -> polymetric::Result<()> {
    let steps: Vec<f64> = (1..=8).map(|k| 10f64.powi(-k)).collect();
    for family in CurveFamily::ALL {
        let ctx = MetricContext::with_defaults(ConvexPolygon::square(family, 0.5)?, 0.9)?;
        let target = ctx.polygon().side_point(0, 0.4)?;
        let x = DiskPoint::new(-0.1, 0.05)?;
        let (a, b) = ctx.polygon().side_curve(0).endpoints;
        let w = |p| ctx.scheme().weights()[ctx.scheme().index_of(p, EDGE_TIE_EPS).unwrap()];
        println!("{family}: expected per-decade growth {:.4}", (w(a) + w(b)) * LN_10);
        let profile = ctx.ray_profile(x, 0, target, &steps)?;
        for pair in profile.windows(2) {
            println!(
                "  step {:.0e}: d = {:.6}  (+{:.4})",
                pair[1].step,
                pair[1].value,
                pair[1].value - pair[0].value
            );
        }
    }
    Ok(())
}
