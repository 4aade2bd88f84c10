//! Circle, arc and line arithmetic on the closed unit disc.
//!
//! Boundary points are stored as angles in `[0, 2π)`; Cartesian forms are
//! derived on demand. Clockwise means decreasing angle.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Two boundary angles closer than this are treated as the same point.
pub const ANGLE_EPS: f64 = 1e-12;
/// Disc points must satisfy `x² + y² < 1 - BOUNDARY_MARGIN`.
pub const BOUNDARY_MARGIN: f64 = 1e-9;
/// Reduced discriminants below this are reported as tangency.
pub const TANGENT_EPS: f64 = 1e-14;

/// A plain Cartesian pair.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Self) -> f64 {
        (self - other).norm()
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn lerp(self, other: Self, t: f64) -> Self {
        Self::new(
            self.x + t * (other.x - self.x),
            self.y + t * (other.y - self.y),
        )
    }

    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Self::new(x, y)
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

/// Reduces an angle into `[0, 2π)`.
pub fn normalize_angle(angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// Length of the shorter arc between two angles, in `[0, π]`.
pub fn angular_separation(a: f64, b: f64) -> f64 {
    let d = normalize_angle(a - b);
    d.min(TAU - d)
}

/// A point of the unit circle, stored by its angle.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct BoundaryPoint(f64);

impl BoundaryPoint {
    /// Panics on a non-finite angle; use [`BoundaryPoint::try_new`] for
    /// untrusted input.
    pub fn new(angle: f64) -> Self {
        Self::try_new(angle).expect("boundary angle must be finite")
    }

    pub fn try_new(angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self(normalize_angle(angle)))
    }

    pub fn angle(self) -> f64 {
        self.0
    }

    pub fn to_point(self) -> Point2 {
        let (s, c) = self.0.sin_cos();
        Point2::new(c, s)
    }

    /// Counterclockwise offset from `self` to `other`, in `[0, 2π)`.
    pub fn ccw_offset_to(self, other: Self) -> f64 {
        normalize_angle(other.0 - self.0)
    }

    /// Clockwise offset from `self` to `other`, in `[0, 2π)`.
    pub fn cw_offset_to(self, other: Self) -> f64 {
        normalize_angle(self.0 - other.0)
    }

    pub fn rotated(self, by: f64) -> Self {
        Self::new(self.0 + by)
    }

    pub fn antipode(self) -> Self {
        self.rotated(std::f64::consts::PI)
    }

    pub fn separation(self, other: Self) -> f64 {
        angular_separation(self.0, other.0)
    }

    pub fn coincides(self, other: Self, tol: f64) -> bool {
        self.separation(other) <= tol
    }
}

impl TryFrom<f64> for BoundaryPoint {
    type Error = Error;
    fn try_from(angle: f64) -> Result<Self> {
        Self::try_new(angle)
    }
}

impl From<BoundaryPoint> for f64 {
    fn from(p: BoundaryPoint) -> f64 {
        p.0
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "∠{:.6}", self.0)
    }
}

/// A point of the open unit disc, kept at least [`BOUNDARY_MARGIN`] away
/// from the circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct DiskPoint(Point2);

impl DiskPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        Self::from_point(Point2::new(x, y))
    }

    pub fn from_point(p: Point2) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::NonFinite);
        }
        if p.norm_sq() >= 1.0 - BOUNDARY_MARGIN {
            return Err(Error::OutsideDisc { x: p.x, y: p.y });
        }
        Ok(Self(p))
    }

    pub fn origin() -> Self {
        Self(Point2::default())
    }

    pub fn x(self) -> f64 {
        self.0.x
    }

    pub fn y(self) -> f64 {
        self.0.y
    }

    pub fn point(self) -> Point2 {
        self.0
    }

    pub fn dist(self, other: Self) -> f64 {
        self.0.dist(other.0)
    }
}

impl TryFrom<[f64; 2]> for DiskPoint {
    type Error = Error;
    fn try_from([x, y]: [f64; 2]) -> Result<Self> {
        Self::new(x, y)
    }
}

impl From<DiskPoint> for [f64; 2] {
    fn from(p: DiskPoint) -> Self {
        [p.0.x, p.0.y]
    }
}

impl From<DiskPoint> for Point2 {
    fn from(p: DiskPoint) -> Self {
        p.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Clockwise,
    Counterclockwise,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Self::Clockwise => Self::Counterclockwise,
            Self::Counterclockwise => Self::Clockwise,
        }
    }
}

/// An oriented arc of the unit circle traversed from `from` to `to`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub from: BoundaryPoint,
    pub to: BoundaryPoint,
    pub orientation: Orientation,
}

impl Arc {
    pub fn length(&self) -> f64 {
        match self.orientation {
            Orientation::Counterclockwise => self.from.ccw_offset_to(self.to),
            Orientation::Clockwise => self.from.cw_offset_to(self.to),
        }
    }

    /// The other arc with the same endpoints.
    pub fn complement(&self) -> Self {
        Self {
            orientation: self.orientation.reversed(),
            ..*self
        }
    }

    pub fn complement_length(&self) -> f64 {
        TAU - self.length()
    }

    /// Whether `p` lies on the closed arc.
    pub fn contains(&self, p: BoundaryPoint) -> bool {
        let offset = match self.orientation {
            Orientation::Counterclockwise => self.from.ccw_offset_to(p),
            Orientation::Clockwise => self.from.cw_offset_to(p),
        };
        offset <= self.length() + ANGLE_EPS || TAU - offset <= ANGLE_EPS
    }

    pub fn midpoint(&self) -> BoundaryPoint {
        let half = 0.5 * self.length();
        match self.orientation {
            Orientation::Counterclockwise => self.from.rotated(half),
            Orientation::Clockwise => self.from.rotated(-half),
        }
    }
}

/// Polar angle of a unit-circle point.
pub fn angle_of(p: Point2) -> Result<BoundaryPoint> {
    let norm = p.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > 1e-6 {
        return Err(Error::NonUnitPoint {
            x: p.x,
            y: p.y,
            norm,
        });
    }
    Ok(BoundaryPoint::new(p.y.atan2(p.x)))
}

/// The subarc with endpoints `a`, `b` that does not contain `avoiding`.
pub fn arc_between(a: BoundaryPoint, b: BoundaryPoint, avoiding: BoundaryPoint) -> Result<Arc> {
    if a.coincides(b, ANGLE_EPS)
        || a.coincides(avoiding, ANGLE_EPS)
        || b.coincides(avoiding, ANGLE_EPS)
    {
        return Err(Error::DegenerateArc);
    }
    let orientation = if a.ccw_offset_to(avoiding) < a.ccw_offset_to(b) {
        Orientation::Clockwise
    } else {
        Orientation::Counterclockwise
    };
    Ok(Arc {
        from: a,
        to: b,
        orientation,
    })
}

/// Indices of `pts` in the order a clockwise traversal visits them, rotated
/// so the result starts at index 0.
pub fn cyclic_clockwise_order(pts: &[BoundaryPoint]) -> Result<Vec<usize>> {
    for (i, p) in pts.iter().enumerate() {
        if pts[i + 1..].iter().any(|q| p.coincides(*q, ANGLE_EPS)) {
            return Err(Error::DegenerateArc);
        }
    }
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| pts[j].angle().total_cmp(&pts[i].angle()));
    if let Some(start) = order.iter().position(|&i| i == 0) {
        order.rotate_left(start);
    }
    Ok(order)
}

/// Intersections of the line through `p` and `q` with the unit circle.
///
/// The first returned point lies on the ray from `q` through `p`, the second
/// on the ray from `p` through `q`.
pub fn line_circle_intersections(p: Point2, q: Point2) -> Result<(BoundaryPoint, BoundaryPoint)> {
    if !p.is_finite() || !q.is_finite() {
        return Err(Error::NonFinite);
    }
    let d = p - q;
    let len = d.norm();
    if len <= ANGLE_EPS {
        return Err(Error::CoincidentPoints);
    }
    let u = d * (1.0 / len);
    // |q + t u|² = 1  ⇔  t² + 2 b t + c = 0
    let b = q.dot(u);
    let c = q.norm_sq() - 1.0;
    let disc = b * b - c;
    if disc < -TANGENT_EPS {
        return Err(Error::NoIntersection);
    }
    if disc < TANGENT_EPS {
        return Err(Error::TangentLine);
    }
    let h = disc.sqrt();
    let big = if b >= 0.0 { -b - h } else { -b + h };
    let small = c / big;
    let (t_fwd, t_back) = if big > small { (big, small) } else { (small, big) };
    let first = angle_of_unchecked(q + u * t_fwd);
    let second = angle_of_unchecked(q + u * t_back);
    Ok((first, second))
}

pub(crate) fn angle_of_unchecked(p: Point2) -> BoundaryPoint {
    BoundaryPoint::new(p.y.atan2(p.x))
}

/// A strictly convex polygon in the Euclidean plane, vertices stored
/// counterclockwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanarPolygon {
    vertices: Vec<Point2>,
}

impl PlanarPolygon {
    /// Accepts either orientation; clockwise input is reversed.
    pub fn new(mut vertices: Vec<Point2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(format!(
                "need at least 3 vertices, got {n}"
            )));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let area2: f64 = (0..n)
            .map(|i| vertices[i].cross(vertices[(i + 1) % n]))
            .sum();
        if area2 < 0.0 {
            vertices.reverse();
        }
        let poly = Self { vertices };
        for i in 0..n {
            let (a, b) = poly.edge(i);
            let len = a.dist(b);
            if len <= 1e-12 {
                return Err(Error::InvalidPolygon(format!(
                    "vertices {i} and {} coincide",
                    (i + 1) % n
                )));
            }
            for (j, v) in poly.vertices.iter().enumerate() {
                if j == i || j == (i + 1) % n {
                    continue;
                }
                if (b - a).cross(*v - a) / len <= 1e-12 {
                    return Err(Error::InvalidPolygon(format!(
                        "not strictly convex: vertex {j} is not strictly inside edge {i}"
                    )));
                }
            }
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    /// Unit normal of edge `i` pointing into the polygon.
    pub fn inward_normal(&self, i: usize) -> Point2 {
        let (a, b) = self.edge(i);
        let d = b - a;
        d.perp() * (1.0 / d.norm())
    }

    /// Smallest signed distance from `z` to the edge lines; positive inside.
    pub fn signed_distance(&self, z: Point2) -> f64 {
        (0..self.len())
            .map(|i| self.inward_normal(i).dot(z - self.edge(i).0))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    pub fn translated(&self, t: Point2) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| *v + t).collect(),
        }
    }

    pub fn rotated(&self, angle: f64) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| v.rotate(angle)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn bp(a: f64) -> BoundaryPoint {
        BoundaryPoint::new(a)
    }

    #[test]
    fn normalization_is_idempotent() {
        for a in [-7.0, -1e-300, 0.0, 3.0, TAU, 13.5] {
            let once = normalize_angle(a);
            assert!((0.0..TAU).contains(&once));
            assert_eq!(normalize_angle(once), once);
        }
        assert_eq!(bp(-1e-300).angle(), 0.0);
    }

    #[test]
    fn embedding_has_unit_norm() {
        for k in 0..100 {
            let p = bp(k as f64 * 0.37).to_point();
            assert!((p.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn disk_point_margin() {
        assert!(DiskPoint::new(0.5, 0.5).is_ok());
        assert!(DiskPoint::new(1.0, 0.0).is_err());
        assert!(DiskPoint::new(0.0, (1.0f64 - 5e-10).sqrt()).is_err());
        assert!(DiskPoint::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn angle_of_examples() {
        assert_eq!(angle_of(Point2::new(1.0, 0.0)).unwrap().angle(), 0.0);
        let a = angle_of(Point2::new(0.0, -1.0)).unwrap().angle();
        assert!((a - 1.5 * PI).abs() < 1e-15);
        let expected = normalize_angle((-0.6f64).atan2(0.8));
        let a = angle_of(Point2::new(0.8, -0.6)).unwrap().angle();
        assert!((a - expected).abs() < 1e-15);
        assert!((a - 5.6397).abs() < 1e-4);
        assert!(matches!(
            angle_of(Point2::new(0.5, 0.0)),
            Err(Error::NonUnitPoint { .. })
        ));
        // within the renormalization band
        assert!(angle_of(Point2::new(1.0 + 5e-7, 0.0)).is_ok());
    }

    #[test]
    fn arc_between_examples() {
        let arc = arc_between(bp(0.0), bp(PI), bp(FRAC_PI_2)).unwrap();
        assert_eq!(arc.orientation, Orientation::Clockwise);
        assert!((arc.length() - PI).abs() < 1e-15);
        assert!(arc.contains(bp(1.5 * PI)));
        assert!(!arc.contains(bp(FRAC_PI_2)));

        let b = 151.93f64.to_radians();
        let arc = arc_between(bp(FRAC_PI_2), bp(b), bp(0.0)).unwrap();
        assert_eq!(arc.orientation, Orientation::Counterclockwise);
        // oracle: plain subtraction of the two angles
        assert!((arc.length() - (b - FRAC_PI_2)).abs() < 1e-14);
        assert!((arc.length() - 1.0809).abs() < 1e-4);

        assert_eq!(
            arc_between(bp(1.0), bp(1.0), bp(2.0)),
            Err(Error::DegenerateArc)
        );
    }

    #[test]
    fn clockwise_order_examples() {
        let pts = [bp(0.0), bp(FRAC_PI_2), bp(PI), bp(1.5 * PI)];
        assert_eq!(cyclic_clockwise_order(&pts).unwrap(), vec![0, 3, 2, 1]);

        let pts = [bp(1.5 * PI), bp(FRAC_PI_2), bp(0.0), bp(PI)];
        let order = cyclic_clockwise_order(&pts).unwrap();
        // oracle: sort by decreasing angle, then rotate to start at index 0
        assert_eq!(order, vec![0, 3, 1, 2]);
        for w in order.windows(2) {
            let step = pts[w[0]].cw_offset_to(pts[w[1]]);
            assert!(step > 0.0 && step < TAU);
        }

        let pts = [bp(1.0), bp(1.0), bp(2.0), bp(3.0)];
        assert_eq!(cyclic_clockwise_order(&pts), Err(Error::DegenerateArc));
    }

    #[test]
    fn line_circle_examples() {
        let (a, b) =
            line_circle_intersections(Point2::new(0.0, 0.0), Point2::new(0.5, 0.0)).unwrap();
        assert!((a.angle() - PI).abs() < 1e-15);
        assert!(b.angle() < 1e-15 || TAU - b.angle() < 1e-15);

        let (a, b) =
            line_circle_intersections(Point2::new(0.5, 0.0), Point2::new(0.0, 1.0)).unwrap();
        let pa = a.to_point();
        assert!((pa.x - 0.8).abs() < 1e-14 && (pa.y + 0.6).abs() < 1e-14);
        assert!((b.angle() - FRAC_PI_2).abs() < 1e-14);

        let p = Point2::new(0.3, 0.3);
        assert_eq!(
            line_circle_intersections(p, p),
            Err(Error::CoincidentPoints)
        );
        assert_eq!(
            line_circle_intersections(Point2::new(0.0, 2.0), Point2::new(1.0, 2.0)),
            Err(Error::NoIntersection)
        );
        assert_eq!(
            line_circle_intersections(Point2::new(-0.5, 1.0), Point2::new(0.5, 1.0)),
            Err(Error::TangentLine)
        );
    }

    #[test]
    fn planar_polygon_validation() {
        let sq = PlanarPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 0.0),
        ])
        .unwrap();
        // clockwise input was reversed
        let v = sq.vertices();
        assert!((v[1] - v[0]).cross(v[2] - v[1]) > 0.0);
        assert!((sq.signed_distance(Point2::new(0.5, 0.5)) - 0.5).abs() < 1e-15);
        assert!(sq.signed_distance(Point2::new(1.5, 0.5)) < 0.0);

        let collinear = PlanarPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.5, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ]);
        assert!(matches!(collinear, Err(Error::InvalidPolygon(_))));

        let star: Vec<Point2> = (0..5)
            .map(|k| BoundaryPoint::new(k as f64 * 2.0 * TAU / 5.0).to_point() * 0.5)
            .collect();
        assert!(PlanarPolygon::new(star).is_err());
    }
}
