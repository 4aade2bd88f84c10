//! Numerical checks of the family axioms, the metric axioms and the
//! topology, as run by `polymetric verify`.
//!
//!     cargo run --release --example verify_axioms [samples]

use polymetric::families::check_family;
use polymetric::metric::{verify_metric_axioms, verify_topology};
use polymetric::{ConvexPolygon, CurveFamily, DiskPoint, MetricContext};

fn main() -> polymetric::Result<()> {
    let samples: usize = std::env::args().nth(1).map_or(200, |s| s.parse().expect("samples"));
    for family in CurveFamily::ALL {
        println!("{family}");
        for c in check_family(family, 1000, 1) {
            println!("  {:<40} worst {:.2e} (tol {:.0e}) {}", c.name, c.worst, c.tolerance, c.passed);
        }
        let ctx = MetricContext::with_defaults(ConvexPolygon::square(family, 0.5)?, 0.9)?;
        let r = verify_metric_axioms(&ctx, samples, 1);
        println!(
            "  {samples} triples: min triangle slack {:.2e}, smallest distance {:.3e}, passed {}",
            r.triangle.value, r.positivity.value, r.passed
        );
        let t = verify_topology(&ctx, DiskPoint::new(0.1, -0.1)?, &[0.1, 0.01, 0.001])?;
        for level in &t.levels {
            println!(
                "  Euclidean radius {:.0e}: d ranges {:.3e}..{:.3e}",
                level.radius, level.min_dist, level.max_dist
            );
        }
    }
    Ok(())
}
