//! Why the series metric is not a Hilbert metric: parallel rays stay at
//! bounded distance, whereas in the Hilbert disc they drift apart, and the
//! Hilbert square has geodesics that are not chords.
//!
//!     cargo run --example hilbert_contrast

use polymetric::hilbert::{hilbert_parallel_profile, nonuniqueness_witness, ConvexDomain, Witness};
use polymetric::{ConvexPolygon, CurveFamily, MetricContext, Point2};

fn main() -> polymetric::Result<()> {
    let steps: Vec<f64> = (2..=8).map(|k| 10f64.powi(-k)).collect();

    let ctx = MetricContext::with_defaults(ConvexPolygon::square(CurveFamily::Chords, 0.5)?, 0.9)?;
    let a = ctx.polygon().side_point(0, 0.3)?;
    let b = ctx.polygon().side_point(0, 0.7)?;
    let series = ctx.parallel_ray_profile(0, a, b, &steps)?;

    let (t0, t1) = (-0.2f64, 0.2f64);
    let disc = hilbert_parallel_profile(
        &ConvexDomain::Disc,
        Point2::new(t0.cos(), t0.sin()),
        Point2::new(t1.cos(), t1.sin()),
        Point2::new(1.0, 0.0),
        &steps,
    )?;
    println!("{:>8} {:>14} {:>14}", "step", "series", "hilbert disc");
    for (s, h) in series.iter().zip(&disc) {
        println!("{:>8.0e} {:>14.8} {:>14.8}", s.step, s.value, h.value);
    }

    let (x, y) = (Point2::new(-0.25, -0.2), Point2::new(0.25, 0.2));
    for (name, domain) in [("square", ConvexDomain::square(0.5)?), ("disc", ConvexDomain::Disc)] {
        match nonuniqueness_witness(&domain, x, y, 400)? {
            Witness::Found { z, defect, .. } => {
                println!("{name}: z = ({:.5}, {:.5}) off the chord, defect {defect:.1e}", z.x, z.y)
            }
            Witness::NotFound { best_defect } => {
                println!("{name}: no witness, smallest defect {best_defect:.1e}")
            }
        }
    }
    Ok(())
}
