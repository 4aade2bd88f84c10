//! The metric itself: a weighted series of pseudo-distances, truncated
//! adaptively with a certified tail bound.
//!
//!     cargo run --example series_metric [r]

use polymetric::{ConvexPolygon, CurveFamily, DiskPoint, MetricContext};

fn main() -> polymetric::Result<()> {
    let r: f64 = std::env::args().nth(1).map_or(0.9, |s| s.parse().expect("ratio"));
    let pts = [(0.0, 0.0), (0.0, 0.25), (0.3, -0.2), (-0.35, 0.1)];
    for family in CurveFamily::ALL {
        let ctx = MetricContext::with_defaults(ConvexPolygon::square(family, 0.5)?, r)?;
        println!(
            "{family}: {} scheme points ({} required), r = {r}",
            ctx.scheme().len(),
            ctx.scheme().required_count()
        );
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let x = DiskPoint::new(pts[i].0, pts[i].1)?;
                let y = DiskPoint::new(pts[j].0, pts[j].1)?;
                let d = ctx.dist(x, y)?;
                println!(
                    "  d({i}, {j}) = {:.10}  (+/- {:.1e}, {} terms)",
                    d.value, d.bound, d.terms
                );
            }
        }
    }
    Ok(())
}
