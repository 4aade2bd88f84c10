//! The boundary-indexed pseudo-metrics `d_θ` and the weighted series
//! `d = Σ wᵢ d_θᵢ` built from them.
//!
//! For a boundary point `θ`, every polygon point `x` is projected along its
//! curve from `θ` to `x_θ = f(x, θ)`. All projections of polygon points land
//! on the arc between the supporting projections `ξ_θ`, `η_θ`, and `d_θ` is
//! the log of the arc-length cross ratio of `η_θ, y_θ, x_θ, ξ_θ`:
//!
//! ```text
//! d_θ(x, y) = | log( |η x_θ| · |ξ y_θ| / (|η y_θ| · |ξ x_θ|) ) |
//! ```
//!
//! Each `d_θ` vanishes exactly on pairs whose curve ends at `θ`; the series
//! does not, and its geodesics are the family's curves.

mod scheme;
mod verify;

pub use scheme::{
    geometric_weights, van_der_corput, ThetaScheme, Truncation, DEFAULT_FILLER, DEFAULT_RATIO,
};
pub(crate) use scheme::{check_ratio, extend_with_filler};
pub use verify::{
    verify_metric_axioms, verify_topology, verify_triples, AxiomReport, TopologyLevel,
    TopologyReport, Triple, Worst, PSEUDO_GRID, SEPARATION_FLOOR,
};

use serde::Serialize;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::families::CurveFamily;
use crate::geometry::{BoundaryPoint, DiskPoint, ANGLE_EPS};
use crate::polygon::{Containment, ConvexPolygon, SupportPair};
use crate::summation::CompensatedSum;

/// Number of evenly spaced directions used to estimate `sup_θ d_θ(x, y)`.
pub const SUP_GRID: usize = 256;
/// Safety factor applied to the grid maximum.
pub const SUP_SAFETY: f64 = 2.0;

/// `d_θ(x, y)` given the supports at `θ`.
pub fn theta_distance(
    family: CurveFamily,
    supports: &SupportPair,
    x: DiskPoint,
    y: DiskPoint,
) -> Result<f64> {
    let theta = supports.theta;
    let (s_xi, s_eta) = supports.offsets();
    let sx = theta.cw_offset_to(family.other_endpoint(x, theta));
    let sy = theta.cw_offset_to(family.other_endpoint(y, theta));
    // order the pair so the evaluation is symmetric bit for bit
    let (near, far) = if sx <= sy { (sx, sy) } else { (sy, sx) };
    if far - near <= ANGLE_EPS {
        return Ok(0.0);
    }
    let to_xi = near - s_xi;
    let to_eta = s_eta - far;
    if to_xi <= ANGLE_EPS || to_eta <= ANGLE_EPS {
        return Err(Error::DegenerateSupport {
            arc: to_xi.min(to_eta),
        });
    }
    // cross ratio minus one, in closed form
    let excess = (far - near) * (s_eta - s_xi) / (to_eta * to_xi);
    Ok(excess.ln_1p())
}

/// A truncated value of the series together with its certified tail bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Distance {
    pub value: f64,
    /// `M̂ · Σ_{i > terms} wᵢ`.
    pub bound: f64,
    pub terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdditivityDefect {
    /// `d(x, z) + d(z, y) - d(x, y)` at a shared term count.
    pub defect: f64,
    /// Sum of the three truncation bounds.
    pub bound: f64,
    pub terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicSample {
    pub point: DiskPoint,
    pub distance: f64,
}

/// One entry of a distance profile along a ray.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfilePoint {
    /// Euclidean distance to the boundary target.
    pub step: f64,
    pub value: f64,
    pub bound: f64,
}

/// A polygon, its scheme, and the supports at every scheme point and every
/// point of the supremum grid. Immutable once built.
#[derive(Debug, Clone)]
pub struct MetricContext {
    polygon: ConvexPolygon,
    scheme: ThetaScheme,
    truncation: Truncation,
    supports: Vec<SupportPair>,
    grid: Vec<SupportPair>,
}

impl MetricContext {
    pub fn new(polygon: ConvexPolygon, scheme: ThetaScheme, truncation: Truncation) -> Result<Self> {
        truncation.validate()?;
        let supports = scheme
            .thetas()
            .iter()
            .map(|&t| polygon.supports(t))
            .collect();
        let grid = (0..SUP_GRID)
            .map(|k| polygon.supports(BoundaryPoint::new(TAU * k as f64 / SUP_GRID as f64)))
            .collect();
        Ok(Self {
            polygon,
            scheme,
            truncation,
            supports,
            grid,
        })
    }

    /// Scheme with the default filler and the given ratio.
    pub fn with_defaults(polygon: ConvexPolygon, ratio: f64) -> Result<Self> {
        let scheme = ThetaScheme::for_polygon(&polygon, DEFAULT_FILLER, ratio)?;
        Self::new(polygon, scheme, Truncation::default())
    }

    pub fn polygon(&self) -> &ConvexPolygon {
        &self.polygon
    }

    pub fn family(&self) -> CurveFamily {
        self.polygon.family()
    }

    pub fn scheme(&self) -> &ThetaScheme {
        &self.scheme
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn supports(&self, i: usize) -> &SupportPair {
        &self.supports[i]
    }

    /// `d_θᵢ(x, y)` for scheme index `i`.
    pub fn pseudo_dist(&self, i: usize, x: DiskPoint, y: DiskPoint) -> Result<f64> {
        if i >= self.supports.len() {
            return Err(Error::InvalidArgument(format!(
                "scheme index {i} out of range ({} points)",
                self.supports.len()
            )));
        }
        theta_distance(self.family(), &self.supports[i], x, y)
    }

    /// `d_θ(x, y)` at an arbitrary boundary point.
    pub fn pseudo_dist_at(&self, theta: BoundaryPoint, x: DiskPoint, y: DiskPoint) -> Result<f64> {
        theta_distance(self.family(), &self.polygon.supports(theta), x, y)
    }

    fn require_inside(&self, p: DiskPoint) -> Result<()> {
        match self.polygon.contains(p) {
            Containment::Inside => Ok(()),
            _ => Err(Error::PointOutsidePolygon { x: p.x(), y: p.y() }),
        }
    }

    /// `2 · max` of `d_θ(x, y)` over the supremum grid.
    pub fn sup_estimate(&self, x: DiskPoint, y: DiskPoint) -> Result<f64> {
        let mut m = 0.0f64;
        for s in &self.grid {
            m = m.max(theta_distance(self.family(), s, x, y)?);
        }
        Ok(SUP_SAFETY * m)
    }

    /// Smallest term count whose certified tail is below `tail_tol`, capped
    /// by `max_terms` and the scheme length.
    pub fn select_terms(&self, sup: f64) -> usize {
        let cap = self.truncation.max_terms.min(self.scheme.len()).max(1);
        let ratio = self.scheme.ratio();
        let mut n = 1;
        let mut tail = ratio;
        while n < cap && sup * tail >= self.truncation.tail_tol {
            n += 1;
            tail *= ratio;
        }
        n
    }

    fn partial_sum(&self, x: DiskPoint, y: DiskPoint, terms: usize) -> Result<f64> {
        let weights = self.scheme.weights();
        let mut acc = CompensatedSum::new();
        for i in 0..terms {
            acc.add(weights[i] * theta_distance(self.family(), &self.supports[i], x, y)?);
        }
        Ok(acc.value())
    }

    /// The series metric with automatic truncation.
    pub fn dist(&self, x: DiskPoint, y: DiskPoint) -> Result<Distance> {
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

    /// The series metric truncated after exactly `terms` terms.
    pub fn dist_with_terms(&self, x: DiskPoint, y: DiskPoint, terms: usize) -> Result<Distance> {
        self.require_inside(x)?;
        self.require_inside(y)?;
        let terms = terms.min(self.scheme.len());
        if x == y {
            return Ok(Distance {
                value: 0.0,
                bound: 0.0,
                terms,
            });
        }
        let sup = self.sup_estimate(x, y)?;
        Ok(Distance {
            value: self.partial_sum(x, y, terms)?,
            bound: sup * self.scheme.tail(terms),
            terms,
        })
    }

    fn auto_terms(&self, x: DiskPoint, y: DiskPoint) -> Result<usize> {
        if x == y {
            return Ok(1);
        }
        Ok(self.select_terms(self.sup_estimate(x, y)?))
    }

    /// `d(x, z) + d(z, y) - d(x, y)`, all three truncated at the same length.
    pub fn additivity_defect(
        &self,
        x: DiskPoint,
        z: DiskPoint,
        y: DiskPoint,
    ) -> Result<AdditivityDefect> {
        for p in [x, z, y] {
            self.require_inside(p)?;
        }
        let terms = self
            .auto_terms(x, z)?
            .max(self.auto_terms(z, y)?)
            .max(self.auto_terms(x, y)?);
        let xz = self.dist_with_terms(x, z, terms)?;
        let zy = self.dist_with_terms(z, y, terms)?;
        let xy = self.dist_with_terms(x, y, terms)?;
        Ok(AdditivityDefect {
            defect: xz.value + zy.value - xy.value,
            bound: xz.bound + zy.bound + xy.bound,
            terms,
        })
    }

    /// `k` points along the segment `[x, y]` with cumulative distance from `x`.
    pub fn geodesic_sample(&self, x: DiskPoint, y: DiskPoint, k: usize) -> Result<Vec<GeodesicSample>> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!(
                "need at least 2 samples, got {k}"
            )));
        }
        if x.dist(y) <= 1e-12 {
            return Err(Error::CoincidentPoints);
        }
        self.require_inside(x)?;
        self.require_inside(y)?;
        let terms = self.auto_terms(x, y)?;
        let family = self.family();
        (0..k)
            .map(|j| {
                let s = j as f64 / (k - 1) as f64;
                let point = if j == 0 {
                    x
                } else if j == k - 1 {
                    y
                } else {
                    family.segment_point(x, y, s)?
                };
                let distance = self.dist_with_terms(x, point, terms)?.value;
                Ok(GeodesicSample { point, distance })
            })
            .collect()
    }

    /// Distances from `x` to points of the segment `[x, target]` approaching
    /// `target`, a point in the interior of side `side`.
    pub fn ray_profile(
        &self,
        x: DiskPoint,
        side: usize,
        target: DiskPoint,
        steps: &[f64],
    ) -> Result<Vec<ProfilePoint>> {
        self.require_inside(x)?;
        if side >= self.polygon.len() || !self.polygon.on_side(side, target) {
            return Err(Error::PointNotOnSide { side });
        }
        check_steps(steps, x.dist(target))?;
        steps
            .iter()
            .map(|&step| {
                let y = point_near_target(self.family(), target, x, step)?;
                let d = self.dist(x, y)?;
                Ok(ProfilePoint {
                    step,
                    value: d.value,
                    bound: d.bound,
                })
            })
            .collect()
    }

    /// `d(x_n, y_n)` along two Euclidean-parallel rays running along the
    /// inward normal of `side` into the targets; each `[x_n, y_n]` is
    /// parallel to the side. Only meaningful for the chord family.
    pub fn parallel_ray_profile(
        &self,
        side: usize,
        x_target: DiskPoint,
        y_target: DiskPoint,
        steps: &[f64],
    ) -> Result<Vec<ProfilePoint>> {
        if self.family() != CurveFamily::Chords {
            return Err(Error::Unsupported(
                "parallel rays are defined for the chord family only".into(),
            ));
        }
        for t in [x_target, y_target] {
            if side >= self.polygon.len() || !self.polygon.on_side(side, t) {
                return Err(Error::PointNotOnSide { side });
            }
        }
        let (a, b) = self.polygon.side_vertices(side);
        let dir = b.point() - a.point();
        let normal = dir.perp() * (1.0 / dir.norm());
        check_steps(steps, f64::INFINITY)?;
        let coincide = x_target.dist(y_target) <= 1e-12;
        steps
            .iter()
            .map(|&step| {
                if coincide {
                    return Ok(ProfilePoint {
                        step,
                        value: 0.0,
                        bound: 0.0,
                    });
                }
                let xn = DiskPoint::from_point(x_target.point() + normal * step)?;
                let yn = DiskPoint::from_point(y_target.point() + normal * step)?;
                let d = self.dist(xn, yn)?;
                Ok(ProfilePoint {
                    step,
                    value: d.value,
                    bound: d.bound,
                })
            })
            .collect()
    }
}

fn check_steps(steps: &[f64], limit: f64) -> Result<()> {
    if steps.iter().any(|&s| !(s > 0.0 && s < limit)) {
        return Err(Error::InvalidArgument(
            "approach steps must be positive and shorter than the ray".into(),
        ));
    }
    if steps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument(
            "approach steps must be strictly decreasing".into(),
        ));
    }
    Ok(())
}

/// The point of the segment `[target, from]` at Euclidean distance `step`
/// from `target`.
pub(crate) fn point_near_target(
    family: CurveFamily,
    target: DiskPoint,
    from: DiskPoint,
    step: f64,
) -> Result<DiskPoint> {
    match family {
        CurveFamily::Chords => {
            let d = from.point() - target.point();
            DiskPoint::from_point(target.point() + d * (step / d.norm()))
        }
        CurveFamily::Poincare => {
            // distance from an endpoint grows monotonically along a minor arc
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let p = family.segment_point(target, from, mid)?;
                if p.dist(target) < step {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo <= f64::EPSILON * hi {
                    break;
                }
            }
            family.segment_point(target, from, 0.5 * (lo + hi))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(x: f64, y: f64) -> DiskPoint {
        DiskPoint::new(x, y).unwrap()
    }

    fn square_ctx(family: CurveFamily) -> MetricContext {
        let sq = ConvexPolygon::square(family, 0.5).unwrap();
        MetricContext::with_defaults(sq, 0.5).unwrap()
    }

    #[test]
    fn theta_distance_collapses_on_curve_endpoint() {
        let sq = ConvexPolygon::square(CurveFamily::Chords, 0.5).unwrap();
        let s = sq.supports(BoundaryPoint::new(0.0));
        let d = theta_distance(CurveFamily::Chords, &s, dp(0.0, 0.0), dp(0.25, 0.0)).unwrap();
        assert_eq!(d, 0.0);
        let d = theta_distance(CurveFamily::Chords, &s, dp(0.1, 0.2), dp(0.1, 0.2)).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn theta_distance_square_fixture() {
        let sq = ConvexPolygon::square(CurveFamily::Chords, 0.5).unwrap();
        let s = sq.supports(BoundaryPoint::new(0.0));
        let d = theta_distance(CurveFamily::Chords, &s, dp(0.0, 0.0), dp(0.0, 0.25)).unwrap();
        assert!((d - 0.6452).abs() < 1e-3, "{d}");
    }

    #[test]
    fn dist_is_zero_on_the_diagonal_and_symmetric() {
        for family in CurveFamily::ALL {
            let ctx = square_ctx(family);
            let x = dp(0.1, -0.2);
            let y = dp(-0.3, 0.25);
            let d0 = ctx.dist(x, x).unwrap();
            assert_eq!((d0.value, d0.bound), (0.0, 0.0));
            let a = ctx.dist(x, y).unwrap();
            let b = ctx.dist(y, x).unwrap();
            assert_eq!(a.value.to_bits(), b.value.to_bits());
            assert!(a.value > 0.0);
            assert!(a.bound < ctx.truncation().tail_tol);
        }
    }

    #[test]
    fn dist_rejects_outside_points() {
        let ctx = square_ctx(CurveFamily::Chords);
        assert!(matches!(
            ctx.dist(dp(0.0, 0.0), dp(0.6, 0.0)),
            Err(Error::PointOutsidePolygon { .. })
        ));
        assert!(matches!(
            ctx.dist(dp(0.5, 0.0), dp(0.0, 0.0)),
            Err(Error::PointOutsidePolygon { .. })
        ));
    }

    #[test]
    fn defect_vanishes_at_the_endpoint() {
        let ctx = square_ctx(CurveFamily::Chords);
        let (x, y) = (dp(0.1, -0.2), dp(-0.3, 0.25));
        let d = ctx.additivity_defect(x, x, y).unwrap();
        assert!(d.defect.abs() < 1e-15);
    }

    #[test]
    fn geodesic_sample_endpoints() {
        let ctx = square_ctx(CurveFamily::Poincare);
        let (x, y) = (dp(0.1, -0.2), dp(-0.3, 0.25));
        let s = ctx.geodesic_sample(x, y, 2).unwrap();
        assert_eq!(s[0].distance, 0.0);
        let d = ctx.dist(x, y).unwrap();
        assert!((s[1].distance - d.value).abs() <= 3.0 * ctx.truncation().tail_tol);
        let s = ctx.geodesic_sample(x, y, 3).unwrap();
        let mid = ctx.family().segment_point(x, y, 0.5).unwrap();
        assert_eq!(s[1].point, mid);
        let direct = ctx.dist_with_terms(x, mid, ctx.dist(x, y).unwrap().terms).unwrap();
        assert_eq!(s[1].distance, direct.value);
        assert!(ctx.geodesic_sample(x, x, 4).is_err());
        assert!(ctx.geodesic_sample(x, y, 1).is_err());
    }

    #[test]
    fn ray_profile_rejects_off_side_targets() {
        let ctx = square_ctx(CurveFamily::Chords);
        let x = dp(0.0, 0.0);
        assert!(matches!(
            ctx.ray_profile(x, 0, dp(0.4, 0.0), &[0.1]),
            Err(Error::PointNotOnSide { side: 0 })
        ));
        assert!(ctx.ray_profile(x, 0, dp(0.5, 0.0), &[0.1, 0.2]).is_err());
        let p = ctx.ray_profile(x, 0, dp(0.5, 0.0), &[0.1, 0.01]).unwrap();
        assert!(p[1].value > p[0].value);
    }

    #[test]
    fn parallel_profile_with_coincident_targets_is_zero() {
        let ctx = square_ctx(CurveFamily::Chords);
        let t = dp(0.5, 0.1);
        let p = ctx.parallel_ray_profile(0, t, t, &[1e-2, 1e-3]).unwrap();
        assert!(p.iter().all(|q| q.value == 0.0));
        let hyp = square_ctx(CurveFamily::Poincare);
        assert!(hyp.parallel_ray_profile(0, t, t, &[1e-2]).is_err());
    }

    #[test]
    fn near_target_points_sit_at_the_requested_distance() {
        for family in CurveFamily::ALL {
            let sq = ConvexPolygon::square(family, 0.5).unwrap();
            let target = sq.side_point(0, 0.4).unwrap();
            for step in [1e-2, 1e-5, 1e-8] {
                let p = point_near_target(family, target, dp(-0.1, 0.05), step).unwrap();
                assert!((p.dist(target) - step).abs() <= 1e-9 * step.max(1e-6), "{family} {step}");
            }
        }
    }
}
