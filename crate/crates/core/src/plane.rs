//! The Euclidean-plane variant: a convex polygon with pseudo-metrics indexed
//! by directions. Each direction `θ` gives the two support lines of the
//! polygon orthogonal to `n(θ) = (cos θ, sin θ)`, and `d_θ` is the log cross
//! ratio of the projections onto `n(θ)`. Geodesics are Euclidean segments.

use serde::Serialize;
use std::f64::consts::{LN_10, PI};

use crate::error::{Error, Result};
use crate::geometry::{PlanarPolygon, Point2};
use crate::metric::{
    check_ratio, extend_with_filler, geometric_weights, AdditivityDefect, Distance, ProfilePoint,
    Truncation, SUP_GRID, SUP_SAFETY,
};
use crate::polygon::EDGE_TIE_EPS;
use crate::summation::CompensatedSum;

/// Projections closer than this to a support line are degenerate.
pub const STRIP_EPS: f64 = 1e-14;
/// Minimal distance to the boundary for a point to count as interior.
pub const INTERIOR_EPS: f64 = 1e-10;

fn unit(theta: f64) -> Point2 {
    Point2::new(theta.cos(), theta.sin())
}

/// Direction of the inward normal of side `i`, reduced to `[0, π)`.
pub fn side_normal_direction(polygon: &PlanarPolygon, i: usize) -> f64 {
    let n = polygon.inward_normal(i);
    let a = n.y.atan2(n.x).rem_euclid(PI);
    if a >= PI {
        0.0
    } else {
        a
    }
}

/// Directions in `[0, π)` with weights; side normals come first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectionScheme {
    directions: Vec<f64>,
    weights: Vec<f64>,
    required_count: usize,
    ratio: f64,
}

impl DirectionScheme {
    pub fn new(required: Vec<f64>, filler_count: usize, ratio: f64) -> Result<Self> {
        check_ratio(ratio)?;
        let mut directions: Vec<f64> = Vec::with_capacity(required.len() + filler_count);
        for (i, &d) in required.iter().enumerate() {
            if !(0.0..PI).contains(&d) {
                return Err(Error::InvalidScheme(format!(
                    "direction {i} = {d} is outside [0, π)"
                )));
            }
            let clash = directions.iter().any(|&e| {
                let gap = (d - e).rem_euclid(PI);
                gap.min(PI - gap) <= EDGE_TIE_EPS
            });
            if clash {
                return Err(Error::InvalidScheme(format!("direction {i} is duplicated")));
            }
            directions.push(d);
        }
        let required_count = directions.len();
        extend_with_filler(&mut directions, filler_count, PI, EDGE_TIE_EPS);
        let weights = geometric_weights(directions.len(), ratio);
        Ok(Self {
            directions,
            weights,
            required_count,
            ratio,
        })
    }

    /// Side normals in side order, parallel sides counted once.
    pub fn for_polygon(polygon: &PlanarPolygon, filler_count: usize, ratio: f64) -> Result<Self> {
        let mut required: Vec<f64> = Vec::new();
        for i in 0..polygon.len() {
            let d = side_normal_direction(polygon, i);
            let seen = required.iter().any(|&e| {
                let gap = (d - e).rem_euclid(PI);
                gap.min(PI - gap) <= EDGE_TIE_EPS
            });
            if !seen {
                required.push(d);
            }
        }
        Self::new(required, filler_count, ratio)
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn directions(&self) -> &[f64] {
        &self.directions
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn required_count(&self) -> usize {
        self.required_count
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn index_of(&self, direction: f64, tol: f64) -> Option<usize> {
        self.directions.iter().position(|&e| {
            let gap = (direction - e).rem_euclid(PI);
            gap.min(PI - gap) <= tol
        })
    }

    pub fn tail(&self, n: usize) -> f64 {
        self.ratio.powi(n.min(i32::MAX as usize) as i32)
    }
}

/// `(min, max)` of `⟨v, n(θ)⟩` over the vertices.
pub fn strip_support(polygon: &PlanarPolygon, theta: f64) -> (f64, f64) {
    let n = unit(theta);
    polygon
        .vertices()
        .iter()
        .map(|v| v.dot(n))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p), hi.max(p))
        })
}

fn strip_distance(strip: (f64, f64), n: Point2, x: Point2, y: Point2) -> Result<f64> {
    let (xi, eta) = strip;
    let (px, py) = (x.dot(n), y.dot(n));
    let (near, far) = if px <= py { (px, py) } else { (py, px) };
    if far - near <= 0.0 {
        return Ok(0.0);
    }
    let (to_xi, to_eta) = (near - xi, eta - far);
    if to_xi <= STRIP_EPS || to_eta <= STRIP_EPS {
        return Err(Error::DegenerateSupport {
            arc: to_xi.min(to_eta),
        });
    }
    Ok(((far - near) * (eta - xi) / (to_eta * to_xi)).ln_1p())
}

/// `d_θ(x, y) = |log(((η − pₓ)(p_y − ξ)) / ((η − p_y)(pₓ − ξ)))|`.
pub fn plane_pseudo_dist(polygon: &PlanarPolygon, theta: f64, x: Point2, y: Point2) -> Result<f64> {
    strip_distance(strip_support(polygon, theta), unit(theta), x, y)
}

/// Uniform point of the polygon's interior, by rejection from its
/// bounding box.
pub fn sample_interior<R: rand::Rng + ?Sized>(polygon: &PlanarPolygon, rng: &mut R) -> Point2 {
    let (lo, hi) = polygon.bounding_box();
    loop {
        let p = Point2::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if polygon.signed_distance(p) > INTERIOR_EPS {
            return p;
        }
    }
}

#[derive(Debug, Clone)]
pub struct PlaneContext {
    polygon: PlanarPolygon,
    scheme: DirectionScheme,
    truncation: Truncation,
    strips: Vec<((f64, f64), Point2)>,
    grid: Vec<((f64, f64), Point2)>,
}

impl PlaneContext {
    pub fn new(polygon: PlanarPolygon, scheme: DirectionScheme, truncation: Truncation) -> Result<Self> {
        truncation.validate()?;
        let strip = |t: f64| (strip_support(&polygon, t), unit(t));
        let strips = scheme.directions().iter().map(|&t| strip(t)).collect();
        let grid = (0..SUP_GRID)
            .map(|k| strip(PI * k as f64 / SUP_GRID as f64))
            .collect();
        Ok(Self {
            polygon,
            scheme,
            truncation,
            strips,
            grid,
        })
    }

    pub fn polygon(&self) -> &PlanarPolygon {
        &self.polygon
    }

    pub fn scheme(&self) -> &DirectionScheme {
        &self.scheme
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn pseudo_dist(&self, i: usize, x: Point2, y: Point2) -> Result<f64> {
        let &(strip, n) = self.strips.get(i).ok_or_else(|| {
            Error::InvalidArgument(format!("direction index {i} out of range"))
        })?;
        strip_distance(strip, n, x, y)
    }

    fn require_inside(&self, p: Point2) -> Result<()> {
        if !p.is_finite() {
            return Err(Error::NonFinite);
        }
        if self.polygon.signed_distance(p) <= INTERIOR_EPS {
            return Err(Error::PointOutsidePolygon { x: p.x, y: p.y });
        }
        Ok(())
    }

    pub fn sup_estimate(&self, x: Point2, y: Point2) -> Result<f64> {
        let mut m = 0.0f64;
        for &(s, n) in &self.grid {
            m = m.max(strip_distance(s, n, x, y)?);
        }
        Ok(SUP_SAFETY * m)
    }

    fn select_terms(&self, sup: f64) -> usize {
        let cap = self.truncation.max_terms.min(self.scheme.len()).max(1);
        let mut n = 1;
        let mut tail = self.scheme.ratio();
        while n < cap && sup * tail >= self.truncation.tail_tol {
            n += 1;
            tail *= self.scheme.ratio();
        }
        n
    }

    fn partial_sum(&self, x: Point2, y: Point2, terms: usize) -> Result<f64> {
        let mut acc = CompensatedSum::new();
        for (w, &(s, n)) in self.scheme.weights().iter().zip(&self.strips).take(terms) {
            acc.add(w * strip_distance(s, n, x, y)?);
        }
        Ok(acc.value())
    }

    pub fn dist(&self, x: Point2, y: Point2) -> Result<Distance> {
        self.require_inside(x)?;
        self.require_inside(y)?;
        if x == y {
            return Ok(Distance {
                value: 0.0,
                bound: 0.0,
                terms: 0,
            });
        }
        let sup = self.sup_estimate(x, y)?;
        let terms = self.select_terms(sup);
        Ok(Distance {
            value: self.partial_sum(x, y, terms)?,
            bound: sup * self.scheme.tail(terms),
            terms,
        })
    }

    pub fn dist_with_terms(&self, x: Point2, y: Point2, terms: usize) -> Result<Distance> {
        self.require_inside(x)?;
        self.require_inside(y)?;
        let terms = terms.min(self.scheme.len());
        let sup = self.sup_estimate(x, y)?;
        Ok(Distance {
            value: self.partial_sum(x, y, terms)?,
            bound: sup * self.scheme.tail(terms),
            terms,
        })
    }

    pub fn additivity_defect(&self, x: Point2, z: Point2, y: Point2) -> Result<AdditivityDefect> {
        for p in [x, z, y] {
            self.require_inside(p)?;
        }
        let mut terms = 1;
        for (a, b) in [(x, z), (z, y), (x, y)] {
            if a != b {
                terms = terms.max(self.select_terms(self.sup_estimate(a, b)?));
            }
        }
        let xz = self.dist_with_terms(x, z, terms)?;
        let zy = self.dist_with_terms(z, y, terms)?;
        let xy = self.dist_with_terms(x, y, terms)?;
        Ok(AdditivityDefect {
            defect: xz.value + zy.value - xy.value,
            bound: xz.bound + zy.bound + xy.bound,
            terms,
        })
    }

    /// `d(x, y_n)` for `y_n` on `[x, target]` at distance `step` from a
    /// target in the interior of side `side`.
    pub fn ray_profile(
        &self,
        x: Point2,
        side: usize,
        target: Point2,
        steps: &[f64],
    ) -> Result<Vec<ProfilePoint>> {
        self.require_inside(x)?;
        if side >= self.polygon.len() {
            return Err(Error::PointNotOnSide { side });
        }
        let (a, b) = self.polygon.edge(side);
        let along = (target - a).dot(b - a) / (b - a).norm_sq();
        let off = self.polygon.inward_normal(side).dot(target - a).abs();
        if off > 1e-12 || !(along > 0.0 && along < 1.0) {
            return Err(Error::PointNotOnSide { side });
        }
        let d = x - target;
        let len = d.norm();
        if steps.iter().any(|&s| !(s > 0.0 && s < len)) || steps.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidArgument(
                "approach steps must be positive, decreasing and shorter than the ray".into(),
            ));
        }
        steps
            .iter()
            .map(|&step| {
                let d = self.dist(x, target + d * (step / len))?;
                Ok(ProfilePoint {
                    step,
                    value: d.value,
                    bound: d.bound,
                })
            })
            .collect()
    }

    /// Asymptotic per-decade growth of [`ray_profile`](Self::ray_profile)
    /// towards side `side`: only the term of the side's normal diverges.
    pub fn expected_decade_increment(&self, side: usize) -> Option<f64> {
        let d = side_normal_direction(&self.polygon, side);
        let i = self.scheme.index_of(d, EDGE_TIE_EPS)?;
        Some(self.scheme.weights()[i] * LN_10)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn unit_square() -> PlanarPolygon {
        PlanarPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn strip_support_examples() {
        let sq = unit_square();
        assert_eq!(strip_support(&sq, 0.0), (0.0, 1.0));
        let (lo, hi) = strip_support(&sq, FRAC_PI_4);
        assert!(lo.abs() < 1e-15 && (hi - 2f64.sqrt()).abs() < 1e-15);
        let t = Point2::new(0.3, -0.7);
        let (lo2, hi2) = strip_support(&sq.translated(t), 1.0);
        let shift = t.dot(unit(1.0));
        let (lo1, hi1) = strip_support(&sq, 1.0);
        assert!((lo2 - lo1 - shift).abs() < 1e-15 && (hi2 - hi1 - shift).abs() < 1e-15);
    }

    #[test]
    fn log_nine_fixture() {
        let sq = unit_square();
        for h in [0.1, 0.5, 0.9] {
            let d = plane_pseudo_dist(&sq, 0.0, Point2::new(0.25, h), Point2::new(0.75, h)).unwrap();
            assert!((d - 9f64.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn trivial_zeros_and_opposite_directions() {
        let sq = unit_square();
        let (x, y) = (Point2::new(0.2, 0.3), Point2::new(0.6, 0.7));
        assert_eq!(plane_pseudo_dist(&sq, 0.4, x, x).unwrap(), 0.0);
        let perp = 3.0 * FRAC_PI_4;
        assert!(plane_pseudo_dist(&sq, perp, x, y).unwrap() < 1e-14);
        let a = plane_pseudo_dist(&sq, 0.4, x, y).unwrap();
        let b = plane_pseudo_dist(&sq, 0.4 + PI, x, y).unwrap();
        assert!((a - b).abs() < 1e-13);
    }

    #[test]
    fn scheme_starts_with_deduplicated_normals() {
        let s = DirectionScheme::for_polygon(&unit_square(), 16, 0.9).unwrap();
        assert_eq!(s.required_count(), 2);
        assert!(s.directions()[..2].contains(&0.0));
        assert!(s.directions()[..2].iter().any(|&d| (d - PI / 2.0).abs() < 1e-15));
        assert_eq!(s.len(), 18);
        assert!(s.directions().iter().all(|&d| (0.0..PI).contains(&d)));
    }

    #[test]
    fn dist_rejects_boundary_points() {
        let ctx = PlaneContext::new(
            unit_square(),
            DirectionScheme::for_polygon(&unit_square(), 64, 0.5).unwrap(),
            Truncation::default(),
        )
        .unwrap();
        assert!(matches!(
            ctx.dist(Point2::new(0.0, 0.5), Point2::new(0.5, 0.5)),
            Err(Error::PointOutsidePolygon { .. })
        ));
        let z = ctx.dist(Point2::new(0.3, 0.5), Point2::new(0.3, 0.5)).unwrap();
        assert_eq!(z.value, 0.0);
    }
}
