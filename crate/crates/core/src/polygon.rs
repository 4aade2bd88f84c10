//! Convex polygons in the unit disc, with sides drawn from a curve family,
//! and their supporting projections from a boundary point.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{Curve, CurveFamily, CurveSide};
use crate::geometry::{BoundaryPoint, DiskPoint, Point2};

/// Projections within this many radians are treated as one support.
pub const EDGE_TIE_EPS: f64 = 1e-10;
/// Width of the band around the sides reported as [`Containment::Boundary`].
pub const BOUNDARY_BAND: f64 = 1e-10;
const CONVEXITY_EPS: f64 = 1e-12;
const SEGMENT_SAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

/// What an extreme support curve touches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Touch {
    Vertex(usize),
    /// Side `i`, from vertex `i` to vertex `i + 1`.
    Edge(usize),
}

/// The two outermost curves from `theta` touching the polygon, identified
/// by their far endpoints. `xi` is first in clockwise order from `theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupportPair {
    pub theta: BoundaryPoint,
    pub xi: BoundaryPoint,
    pub eta: BoundaryPoint,
    pub touch_xi: Touch,
    pub touch_eta: Touch,
}

impl SupportPair {
    /// Clockwise offsets of `xi` and `eta` from `theta`.
    pub fn offsets(&self) -> (f64, f64) {
        (
            self.theta.cw_offset_to(self.xi),
            self.theta.cw_offset_to(self.eta),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexPolygon {
    family: CurveFamily,
    vertices: Vec<DiskPoint>,
    #[serde(skip)]
    sides: Vec<Curve>,
    #[serde(skip)]
    bbox: (Point2, Point2),
}

impl ConvexPolygon {
    /// Validates a vertex cycle. Clockwise input is reversed so that the
    /// interior lies to the left of every side.
    pub fn new(family: CurveFamily, mut vertices: Vec<DiskPoint>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(format!(
                "need at least 3 vertices, got {n}"
            )));
        }
        for i in 0..n {
            for j in i + 1..n {
                if vertices[i].dist(vertices[j]) <= CONVEXITY_EPS {
                    return Err(Error::InvalidPolygon(format!(
                        "vertices {i} and {j} coincide"
                    )));
                }
            }
        }
        let first = family.curve_through(vertices[0], vertices[1])?;
        if first.signed_distance(vertices[2].point()) < 0.0 {
            vertices.reverse();
        }
        let sides = (0..n)
            .map(|i| family.curve_through(vertices[i], vertices[(i + 1) % n]))
            .collect::<Result<Vec<_>>>()?;
        for (i, side) in sides.iter().enumerate() {
            for (j, v) in vertices.iter().enumerate() {
                if j == i || j == (i + 1) % n {
                    continue;
                }
                let d = side.signed_distance(v.point());
                if d <= CONVEXITY_EPS {
                    return Err(Error::InvalidPolygon(format!(
                        "not strictly convex: vertex {j} lies {} side {i}",
                        if d.abs() <= CONVEXITY_EPS { "on" } else { "outside" }
                    )));
                }
            }
        }
        let mut poly = Self {
            family,
            vertices,
            sides,
            bbox: (Point2::default(), Point2::default()),
        };
        poly.bbox = poly.compute_bbox();
        if family != CurveFamily::Chords {
            poly.check_segments_inside()?;
        }
        Ok(poly)
    }

    pub fn from_coords(family: CurveFamily, coords: &[[f64; 2]]) -> Result<Self> {
        let vertices = coords
            .iter()
            .map(|&c| DiskPoint::try_from(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(family, vertices)
    }

    /// The square with vertices `(±h, ±h)`.
    pub fn square(family: CurveFamily, h: f64) -> Result<Self> {
        Self::from_coords(family, &[[h, -h], [h, h], [-h, h], [-h, -h]])
    }

    pub fn family(&self) -> CurveFamily {
        self.family
    }

    pub fn vertices(&self) -> &[DiskPoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The full curve extending side `i`, oriented from vertex `i` to `i + 1`.
    pub fn side_curve(&self, i: usize) -> &Curve {
        &self.sides[i % self.sides.len()]
    }

    pub fn side_vertices(&self, i: usize) -> (DiskPoint, DiskPoint) {
        let n = self.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    /// A point of side `i`; `s = 0` and `s = 1` are its vertices.
    pub fn side_point(&self, i: usize, s: f64) -> Result<DiskPoint> {
        let (a, b) = self.side_vertices(i);
        self.family.segment_point(a, b, s)
    }

    /// Whether `z` lies in the relative interior of side `i`.
    pub fn on_side(&self, i: usize, z: DiskPoint) -> bool {
        let n = self.len();
        self.sides[i % n].side_of(z.point()).is_on()
            && self.sides[(i + n - 1) % n].signed_distance(z.point()) > BOUNDARY_BAND
            && self.sides[(i + 1) % n].signed_distance(z.point()) > BOUNDARY_BAND
    }

    pub fn contains(&self, z: DiskPoint) -> Containment {
        self.contains_point(z.point())
    }

    pub(crate) fn contains_point(&self, z: Point2) -> Containment {
        let mut on_band = false;
        for side in &self.sides {
            let d = side.signed_distance(z);
            if d < -BOUNDARY_BAND {
                return Containment::Outside;
            }
            if d <= BOUNDARY_BAND {
                on_band = true;
            }
        }
        if on_band {
            Containment::Boundary
        } else {
            Containment::Inside
        }
    }

    /// Axis-aligned box containing the closed polygon.
    pub fn bounding_box(&self) -> (Point2, Point2) {
        self.bbox
    }

    fn compute_bbox(&self) -> (Point2, Point2) {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut grow = |p: Point2| {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        };
        for i in 0..self.len() {
            for k in 0..=64 {
                if let Ok(p) = self.side_point(i, k as f64 / 64.0) {
                    grow(p.point());
                }
            }
        }
        (lo, hi)
    }

    fn check_segments_inside(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in 1..SEGMENT_SAMPLES {
                    let s = k as f64 / SEGMENT_SAMPLES as f64;
                    let z = self
                        .family
                        .segment_point(self.vertices[i], self.vertices[j], s)?;
                    if self.contains(z) == Containment::Outside {
                        return Err(Error::InvalidPolygon(format!(
                            "segment between vertices {i} and {j} leaves the polygon"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Far endpoints of the curves extending each side, in side order, with
    /// near-duplicates removed.
    pub fn side_curve_endpoints(&self) -> Vec<BoundaryPoint> {
        let mut out: Vec<BoundaryPoint> = Vec::with_capacity(2 * self.len());
        for side in &self.sides {
            for p in [side.endpoints.0, side.endpoints.1] {
                if !out.iter().any(|q| q.coincides(p, EDGE_TIE_EPS)) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// The supporting projections `g₁(θ)`, `g₂(θ)`.
    pub fn supports(&self, theta: BoundaryPoint) -> SupportPair {
        let n = self.len();
        let offsets: Vec<(f64, BoundaryPoint)> = self
            .vertices
            .iter()
            .map(|&v| {
                let p = self.family.other_endpoint(v, theta);
                (theta.cw_offset_to(p), p)
            })
            .collect();
        let (mut lo, mut hi) = (0, 0);
        for i in 1..n {
            if offsets[i].0 < offsets[lo].0 {
                lo = i;
            }
            if offsets[i].0 > offsets[hi].0 {
                hi = i;
            }
        }
        let touch = |extreme: usize| {
            let tied = |j: usize| (offsets[j].0 - offsets[extreme].0).abs() <= EDGE_TIE_EPS;
            let next = (extreme + 1) % n;
            let prev = (extreme + n - 1) % n;
            if tied(next) {
                Touch::Edge(extreme)
            } else if tied(prev) {
                Touch::Edge(prev)
            } else {
                Touch::Vertex(extreme)
            }
        };
        SupportPair {
            theta,
            xi: offsets[lo].1,
            eta: offsets[hi].1,
            touch_xi: touch(lo),
            touch_eta: touch(hi),
        }
    }

    /// Uniform sample of interior points by rejection from the bounding box.
    pub fn sample_interior<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> DiskPoint {
        let (lo, hi) = self.bbox;
        loop {
            let p = Point2::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
            if self.contains_point(p) == Containment::Inside {
                if let Ok(d) = DiskPoint::from_point(p) {
                    return d;
                }
            }
        }
    }

    /// Side of `z` relative to side curve `i`.
    pub fn side_classification(&self, i: usize, z: DiskPoint) -> CurveSide {
        self.sides[i % self.len()].side_of(z.point()).side
    }
}
