use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::TAU;

use super::{theta_distance, MetricContext};
use crate::error::{Error, Result};
use crate::geometry::{BoundaryPoint, DiskPoint, Point2};
use crate::polygon::Containment;

/// Directions on which the individual pseudo-metrics are checked.
pub const PSEUDO_GRID: usize = 64;
/// Pairs closer than this are exempt from the positivity check.
pub const SEPARATION_FLOOR: f64 = 1e-6;
const PSEUDO_TRIANGLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Triple {
    pub x: DiskPoint,
    pub y: DiskPoint,
    pub z: DiskPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Worst {
    pub value: f64,
    pub triple: Option<Triple>,
}

impl Worst {
    fn none(value: f64) -> Self {
        Self {
            value,
            triple: None,
        }
    }

    fn keep_min(&mut self, value: f64, t: Triple) {
        if value < self.value {
            *self = Self {
                value,
                triple: Some(t),
            };
        }
    }

    fn keep_max(&mut self, value: f64, t: Triple) {
        if value > self.value {
            *self = Self {
                value,
                triple: Some(t),
            };
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub samples: usize,
    pub seed: u64,
    /// Largest `|d_θ(x, y) - d_θ(y, x)|` over the check grid.
    pub pseudo_symmetry: Worst,
    /// Smallest `d_θ(x, z) + d_θ(z, y) - d_θ(x, y)` over the check grid.
    pub pseudo_triangle: Worst,
    pub symmetry: Worst,
    pub triangle: Worst,
    pub triangle_floor: f64,
    /// Smallest `d(x, y)` among pairs separated by more than the floor.
    pub positivity: Worst,
    pub errors: Vec<String>,
    pub passed: bool,
}

struct TripleStats {
    pseudo_sym: f64,
    pseudo_tri: f64,
    sym: f64,
    tri: f64,
    pos: Option<f64>,
}

fn check_triple(ctx: &MetricContext, grid: &[crate::polygon::SupportPair], t: Triple) -> Result<TripleStats> {
    let family = ctx.family();
    let mut pseudo_sym = 0.0f64;
    let mut pseudo_tri = f64::INFINITY;
    for s in grid {
        let xy = theta_distance(family, s, t.x, t.y)?;
        let yx = theta_distance(family, s, t.y, t.x)?;
        let xz = theta_distance(family, s, t.x, t.z)?;
        let zy = theta_distance(family, s, t.z, t.y)?;
        pseudo_sym = pseudo_sym.max((xy - yx).abs());
        pseudo_tri = pseudo_tri.min(xz + zy - xy);
    }
    let xy = ctx.dist(t.x, t.y)?.value;
    let yx = ctx.dist(t.y, t.x)?.value;
    let xz = ctx.dist(t.x, t.z)?.value;
    let zy = ctx.dist(t.z, t.y)?.value;
    let pos = (t.x.dist(t.y) > SEPARATION_FLOOR).then_some(xy);
    Ok(TripleStats {
        pseudo_sym,
        pseudo_tri,
        sym: (xy - yx).abs(),
        tri: xz + zy - xy,
        pos,
    })
}

/// Symmetry, triangle inequality and positivity of both the individual
/// `d_θ` (on a fixed direction grid) and the series metric, over random
/// triples drawn uniformly from the polygon.
pub fn verify_metric_axioms(ctx: &MetricContext, samples: usize, seed: u64) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<Triple> = (0..samples)
        .map(|_| Triple {
            x: ctx.polygon().sample_interior(&mut rng),
            y: ctx.polygon().sample_interior(&mut rng),
            z: ctx.polygon().sample_interior(&mut rng),
        })
        .collect();
    verify_triples(ctx, &triples, seed)
}

/// As [`verify_metric_axioms`], on caller-supplied triples.
pub fn verify_triples(ctx: &MetricContext, triples: &[Triple], seed: u64) -> AxiomReport {
    let grid: Vec<_> = (0..PSEUDO_GRID)
        .map(|k| {
            ctx.polygon()
                .supports(BoundaryPoint::new(TAU * k as f64 / PSEUDO_GRID as f64))
        })
        .collect();
    let stats: Vec<Result<TripleStats>> = triples
        .par_iter()
        .map(|&t| check_triple(ctx, &grid, t))
        .collect();

    let floor = -3.0 * ctx.truncation().tail_tol;
    let mut report = AxiomReport {
        samples: triples.len(),
        seed,
        pseudo_symmetry: Worst::none(0.0),
        pseudo_triangle: Worst::none(f64::INFINITY),
        symmetry: Worst::none(0.0),
        triangle: Worst::none(f64::INFINITY),
        triangle_floor: floor,
        positivity: Worst::none(f64::INFINITY),
        errors: Vec::new(),
        passed: false,
    };
    for (&t, s) in triples.iter().zip(stats) {
        match s {
            Ok(s) => {
                report.pseudo_symmetry.keep_max(s.pseudo_sym, t);
                report.pseudo_triangle.keep_min(s.pseudo_tri, t);
                report.symmetry.keep_max(s.sym, t);
                report.triangle.keep_min(s.tri, t);
                if let Some(p) = s.pos {
                    report.positivity.keep_min(p, t);
                }
            }
            Err(e) => report.errors.push(format!("{e} at {t:?}")),
        }
    }
    report.passed = report.errors.is_empty()
        && report.pseudo_symmetry.value == 0.0
        && report.symmetry.value == 0.0
        && report.pseudo_triangle.value >= -PSEUDO_TRIANGLE_TOL
        && report.triangle.value >= floor
        && report.positivity.value > 0.0;
    report
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopologyLevel {
    pub radius: f64,
    /// Largest `d(center, z)` over sampled `z` with `|z - center| = radius`.
    pub max_dist: f64,
    /// Smallest such value: the `d`-ball of this radius stays within the
    /// Euclidean circle.
    pub min_dist: f64,
    pub sampled: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopologyReport {
    pub center: DiskPoint,
    pub levels: Vec<TopologyLevel>,
    pub passed: bool,
}

const CIRCLE_SAMPLES: usize = 64;

/// Evidence that `d`-balls and Euclidean balls around `center` shrink
/// together.
pub fn verify_topology(ctx: &MetricContext, center: DiskPoint, radii: &[f64]) -> Result<TopologyReport> {
    if ctx.polygon().contains(center) != Containment::Inside {
        return Err(Error::PointOutsidePolygon {
            x: center.x(),
            y: center.y(),
        });
    }
    if radii.iter().any(|&r| !(r >= 0.0)) || radii.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::InvalidArgument(
            "radii must be nonnegative and decreasing".into(),
        ));
    }
    let mut levels = Vec::with_capacity(radii.len());
    for &radius in radii {
        if radius == 0.0 {
            levels.push(TopologyLevel {
                radius,
                max_dist: 0.0,
                min_dist: 0.0,
                sampled: 1,
            });
            continue;
        }
        let points: Vec<DiskPoint> = (0..CIRCLE_SAMPLES)
            .filter_map(|k| {
                let a = TAU * k as f64 / CIRCLE_SAMPLES as f64;
                let p = center.point() + Point2::new(a.cos(), a.sin()) * radius;
                DiskPoint::from_point(p)
                    .ok()
                    .filter(|q| ctx.polygon().contains(*q) == Containment::Inside)
            })
            .collect();
        let dists: Vec<f64> = points
            .par_iter()
            .map(|&z| ctx.dist(center, z).map(|d| d.value))
            .collect::<Result<_>>()?;
        let max_dist = dists.iter().copied().fold(0.0, f64::max);
        let min_dist = dists.iter().copied().fold(f64::INFINITY, f64::min);
        levels.push(TopologyLevel {
            radius,
            max_dist,
            min_dist,
            sampled: dists.len(),
        });
    }
    let slack = 3.0 * ctx.truncation().tail_tol;
    let monotone = levels
        .windows(2)
        .all(|w| w[1].max_dist <= w[0].max_dist + slack);
    let separated = levels
        .iter()
        .all(|l| l.radius == 0.0 || (l.sampled > 0 && l.min_dist > 0.0));
    let shrinking = match (levels.first(), levels.last()) {
        (Some(a), Some(b)) if levels.len() > 1 && a.radius > b.radius => b.max_dist < a.max_dist,
        _ => true,
    };
    Ok(TopologyReport {
        center,
        passed: monotone && separated && shrinking,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::CurveFamily;
    use crate::polygon::ConvexPolygon;

    fn ctx(family: CurveFamily) -> MetricContext {
        MetricContext::with_defaults(ConvexPolygon::square(family, 0.5).unwrap(), 0.9).unwrap()
    }

    #[test]
    fn degenerate_triple_has_zero_defects() {
        let c = ctx(CurveFamily::Chords);
        let p = DiskPoint::new(0.1, 0.2).unwrap();
        let r = verify_triples(&c, &[Triple { x: p, y: p, z: p }], 0);
        assert_eq!(r.symmetry.value, 0.0);
        assert_eq!(r.triangle.value, 0.0);
        assert_eq!(r.pseudo_triangle.value, 0.0);
        assert!(r.passed);
    }

    #[test]
    fn small_random_run_passes() {
        for family in CurveFamily::ALL {
            let r = verify_metric_axioms(&ctx(family), 20, 7);
            assert!(r.passed, "{family}: {r:?}");
        }
    }

    #[test]
    fn topology_levels_shrink() {
        let c = ctx(CurveFamily::Poincare);
        let r = verify_topology(&c, DiskPoint::new(0.1, 0.0).unwrap(), &[0.1, 0.01, 0.001, 0.0]).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.levels[3].max_dist, 0.0);
        assert!(verify_topology(&c, DiskPoint::origin(), &[0.01, 0.1]).is_err());
    }
}
