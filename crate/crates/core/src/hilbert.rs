//! The Hilbert metric of a convex domain and the two numerical facts that
//! separate it from the series metric: parallel rays diverge in a strictly
//! convex domain, and geodesics fail to be unique once the boundary contains
//! two segments.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{PlanarPolygon, Point2};

/// Points closer than this to the boundary are not interior.
pub const INTERIOR_EPS: f64 = 1e-10;
/// Defect below which a grid point counts as a second geodesic.
pub const WITNESS_DEFECT: f64 = 1e-9;
/// Minimal Euclidean distance between a witness and the segment `[x, y]`.
pub const WITNESS_OFFSET: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConvexDomain {
    Disc,
    Polygon { polygon: PlanarPolygon },
}

impl ConvexDomain {
    pub fn polygon(vertices: Vec<Point2>) -> Result<Self> {
        Ok(Self::Polygon {
            polygon: PlanarPolygon::new(vertices)?,
        })
    }

    /// The axis-parallel square `[-h, h]²`.
    pub fn square(h: f64) -> Result<Self> {
        Self::polygon(vec![
            Point2::new(-h, -h),
            Point2::new(h, -h),
            Point2::new(h, h),
            Point2::new(-h, h),
        ])
    }

    /// Distance to the boundary, positive inside (a lower bound for polygons
    /// near vertices, exact elsewhere).
    pub fn signed_distance(&self, z: Point2) -> f64 {
        match self {
            Self::Disc => 1.0 - z.norm(),
            Self::Polygon { polygon } => polygon.signed_distance(z),
        }
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        match self {
            Self::Disc => (Point2::new(-1.0, -1.0), Point2::new(1.0, 1.0)),
            Self::Polygon { polygon } => polygon.bounding_box(),
        }
    }

    fn require_interior(&self, z: Point2) -> Result<()> {
        if !z.is_finite() {
            return Err(Error::NonFinite);
        }
        if self.signed_distance(z) <= INTERIOR_EPS {
            return Err(Error::PointOutsideDomain { x: z.x, y: z.y });
        }
        Ok(())
    }

    /// Length `t > 0` with `p + t·u` on the boundary, for interior `p` and
    /// unit `u`.
    fn exit_length(&self, p: Point2, u: Point2) -> f64 {
        match self {
            Self::Disc => {
                let b = p.dot(u);
                let c = (1.0 - p.norm()) * (1.0 + p.norm());
                let root = (b * b + c).sqrt();
                // avoid cancellation when the exit is close ahead
                if b > 0.0 {
                    c / (b + root)
                } else {
                    root - b
                }
            }
            Self::Polygon { polygon } => (0..polygon.len())
                .filter_map(|i| {
                    let n = polygon.inward_normal(i);
                    let approach = -n.dot(u);
                    (approach > 0.0).then(|| n.dot(p - polygon.edge(i).0) / approach)
                })
                .fold(f64::INFINITY, f64::min),
        }
    }
}

/// The boundary points `a`, `b` of the line through `x`, `y`, ordered
/// `a, x, y, b`.
pub fn chord_endpoints(domain: &ConvexDomain, x: Point2, y: Point2) -> Result<(Point2, Point2)> {
    domain.require_interior(x)?;
    domain.require_interior(y)?;
    let d = y - x;
    let len = d.norm();
    if len <= 1e-12 {
        return Err(Error::CoincidentPoints);
    }
    let u = d * (1.0 / len);
    Ok((
        x - u * domain.exit_length(x, -u),
        y + u * domain.exit_length(y, u),
    ))
}

/// `½·log` of the cross ratio `[a, x, y, b]`.
pub fn hilbert_dist(domain: &ConvexDomain, x: Point2, y: Point2) -> Result<f64> {
    hilbert_dist_with(domain, x, y, true)
}

/// The Hilbert distance with or without the conventional factor ½.
pub fn hilbert_dist_with(domain: &ConvexDomain, x: Point2, y: Point2, half_log: bool) -> Result<f64> {
    domain.require_interior(x)?;
    domain.require_interior(y)?;
    let d = y - x;
    let len = d.norm();
    if len <= 1e-12 {
        return Ok(0.0);
    }
    let u = d * (1.0 / len);
    let behind = domain.exit_length(x, -u);
    let ahead = domain.exit_length(y, u);
    // |a−y||b−x| / (|a−x||b−y|) = (1 + L/|a−x|)(1 + L/|b−y|)
    let log = (len / behind).ln_1p() + (len / ahead).ln_1p();
    Ok(if half_log { 0.5 * log } else { log })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HilbertProfilePoint {
    pub step: f64,
    pub value: f64,
}

/// `d_H(x_n, y_n)` for `x_n = a − step·v`, `y_n = b − step·v`: two parallel
/// rays with direction `v` ending at the boundary points `a` and `b`.
pub fn hilbert_parallel_profile(
    domain: &ConvexDomain,
    a: Point2,
    b: Point2,
    direction: Point2,
    steps: &[f64],
) -> Result<Vec<HilbertProfilePoint>> {
    let norm = direction.norm();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::InvalidArgument("ray direction must be nonzero".into()));
    }
    if steps.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::InvalidArgument("steps must be positive".into()));
    }
    let v = direction * (1.0 / norm);
    steps
        .iter()
        .map(|&step| {
            let xn = a - v * step;
            let yn = b - v * step;
            if domain.signed_distance(xn) <= 0.0 || domain.signed_distance(yn) <= 0.0 {
                return Err(Error::RaysNotConverging);
            }
            let value = if a.dist(b) <= 1e-12 {
                0.0
            } else {
                hilbert_dist(domain, xn, yn)?
            };
            Ok(HilbertProfilePoint { step, value })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Witness {
    Found {
        z: Point2,
        defect: f64,
        /// Row-major grid index of `z`.
        index: usize,
    },
    NotFound {
        /// Smallest defect seen among admissible grid points.
        best_defect: f64,
    },
}

impl Witness {
    pub fn is_found(&self) -> bool {
        matches!(self, Self::Found { .. })
    }
}

fn segment_distance(z: Point2, x: Point2, y: Point2) -> f64 {
    let d = y - x;
    let t = ((z - x).dot(d) / d.norm_sq()).clamp(0.0, 1.0);
    z.dist(x + d * t)
}

/// Searches a `resolution × resolution` grid of cell centres over the
/// domain's bounding box for a point `z` off `[x, y]` with
/// `d_H(x, z) + d_H(z, y) − d_H(x, y) < 1e−9`. Rows run bottom to top; the
/// first hit in row-major order is returned.
pub fn nonuniqueness_witness(
    domain: &ConvexDomain,
    x: Point2,
    y: Point2,
    resolution: usize,
) -> Result<Witness> {
    domain.require_interior(x)?;
    domain.require_interior(y)?;
    if x.dist(y) <= 1e-12 || resolution == 0 {
        return Ok(Witness::NotFound {
            best_defect: f64::INFINITY,
        });
    }
    let dxy = hilbert_dist(domain, x, y)?;
    let (lo, hi) = domain.bounding_box();
    let cell = Point2::new((hi.x - lo.x) / resolution as f64, (hi.y - lo.y) / resolution as f64);
    let defect_at = |k: usize| -> Option<(Point2, f64)> {
        let (row, col) = (k / resolution, k % resolution);
        let z = Point2::new(
            lo.x + (col as f64 + 0.5) * cell.x,
            lo.y + (row as f64 + 0.5) * cell.y,
        );
        if domain.signed_distance(z) <= INTERIOR_EPS || segment_distance(z, x, y) <= WITNESS_OFFSET {
            return None;
        }
        let d = hilbert_dist(domain, x, z).ok()? + hilbert_dist(domain, z, y).ok()? - dxy;
        Some((z, d))
    };
    let total = resolution * resolution;
    let hit = (0..total)
        .into_par_iter()
        .find_first(|&k| matches!(defect_at(k), Some((_, d)) if d < WITNESS_DEFECT));
    Ok(match hit {
        Some(index) => {
            let (z, defect) = defect_at(index).expect("witness re-evaluates");
            Witness::Found { z, defect, index }
        }
        None => Witness::NotFound {
            best_defect: (0..total)
                .into_par_iter()
                .filter_map(|k| defect_at(k).map(|(_, d)| d))
                .reduce(|| f64::INFINITY, f64::min),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn disc_diameter_and_half_log_three() {
        let (a, b) = chord_endpoints(&ConvexDomain::Disc, p(0.0, 0.0), p(0.5, 0.0)).unwrap();
        assert!(a.dist(p(-1.0, 0.0)) < 1e-15 && b.dist(p(1.0, 0.0)) < 1e-15);
        let d = hilbert_dist(&ConvexDomain::Disc, p(0.0, 0.0), p(0.5, 0.0)).unwrap();
        assert!((d - 0.5 * 3f64.ln()).abs() < 1e-15);
        let full = hilbert_dist_with(&ConvexDomain::Disc, p(0.0, 0.0), p(0.5, 0.0), false).unwrap();
        assert!((full - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn square_axis_chord() {
        let sq = ConvexDomain::square(0.5).unwrap();
        let (a, b) = chord_endpoints(&sq, p(0.0, 0.0), p(0.25, 0.0)).unwrap();
        assert!(a.dist(p(-0.5, 0.0)) < 1e-15 && b.dist(p(0.5, 0.0)) < 1e-15);
        let d = hilbert_dist(&sq, p(0.0, 0.0), p(0.25, 0.0)).unwrap();
        assert!((d - 0.5 * 3f64.ln()).abs() < 1e-15);
        assert_eq!(hilbert_dist(&sq, p(0.1, 0.1), p(0.1, 0.1)).unwrap(), 0.0);
    }

    #[test]
    fn square_oblique_chord_hits_the_right_edges() {
        let sq = ConvexDomain::square(0.5).unwrap();
        let (a, b) = chord_endpoints(&sq, p(0.0, 0.0), p(0.2, 0.1)).unwrap();
        assert!(a.dist(p(-0.5, -0.25)) < 1e-15, "{a:?}");
        assert!(b.dist(p(0.5, 0.25)) < 1e-15, "{b:?}");
    }

    #[test]
    fn rejects_bad_input() {
        let sq = ConvexDomain::square(0.5).unwrap();
        assert_eq!(chord_endpoints(&sq, p(0.1, 0.1), p(0.1, 0.1)), Err(Error::CoincidentPoints));
        assert!(matches!(
            hilbert_dist(&sq, p(0.5, 0.0), p(0.0, 0.0)),
            Err(Error::PointOutsideDomain { .. })
        ));
        assert!(ConvexDomain::polygon(vec![p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)]).is_err());
    }

    #[test]
    fn identical_rays_give_zeros_and_outward_rays_fail() {
        let a = p(0.2f64.cos(), 0.2f64.sin());
        let prof =
            hilbert_parallel_profile(&ConvexDomain::Disc, a, a, p(1.0, 0.0), &[1e-2, 1e-4]).unwrap();
        assert!(prof.iter().all(|q| q.value == 0.0));
        assert_eq!(
            hilbert_parallel_profile(&ConvexDomain::Disc, a, a, p(-1.0, 0.0), &[1e-2]),
            Err(Error::RaysNotConverging)
        );
    }

    #[test]
    fn x_equal_y_has_no_witness() {
        let sq = ConvexDomain::square(0.5).unwrap();
        let w = nonuniqueness_witness(&sq, p(0.1, 0.0), p(0.1, 0.0), 10).unwrap();
        assert!(!w.is_found());
    }
}
