//! Curve families on the unit disc: every pair of interior points, every
//! pair of boundary points, and every interior/boundary pair spans exactly
//! one member curve.
//!
//! Two families are built in: Euclidean chords and the geodesics of the
//! Poincaré disc. The projection `f(x, θ)` ([`CurveFamily::other_endpoint`])
//! sends a boundary point `θ` to the far endpoint of the curve through `x`
//! that starts at `θ`.

use std::f64::consts::{FRAC_PI_4, PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    angle_of_unchecked, line_circle_intersections, BoundaryPoint, DiskPoint, Point2, ANGLE_EPS,
};
use crate::mobius::{to_complex, to_point, Transport};

mod checks;

pub use checks::{
    check_family, random_boundary_point, random_disk_point, FamilyCheck, DENSE_STEP, END_WINDOW,
    SEPARATION,
};

/// Points closer than this to a curve (Euclidean) are reported as on it.
pub const ON_CURVE_EPS: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveFamily {
    /// Straight chords of the disc.
    Chords,
    /// Hyperbolic geodesics of the Poincaré disc: diameters and arcs of
    /// circles orthogonal to the unit circle.
    Poincare,
}

impl CurveFamily {
    pub const ALL: [CurveFamily; 2] = [CurveFamily::Chords, CurveFamily::Poincare];

    pub fn name(self) -> &'static str {
        match self {
            Self::Chords => "chords",
            Self::Poincare => "poincare",
        }
    }

    /// `f(x, θ)`: the second endpoint of the curve through `x` that ends at `θ`.
    pub fn other_endpoint(self, x: DiskPoint, theta: BoundaryPoint) -> BoundaryPoint {
        let tp = theta.to_point();
        match self {
            Self::Chords => {
                let d = x.point() - tp;
                let t = -2.0 * tp.dot(d) / d.norm_sq();
                angle_of_unchecked(tp + d * t)
            }
            Self::Poincare => {
                let transport = Transport::new(x.point());
                let w = transport.forward(to_complex(tp));
                angle_of_unchecked(to_point(transport.inverse(-w)))
            }
        }
    }

    /// The unique curve containing `x` and `y`, with endpoints ordered so that
    /// travelling from the first to the second passes `x` before `y`.
    pub fn curve_through(self, x: DiskPoint, y: DiskPoint) -> Result<Curve> {
        if x.dist(y) <= 1e-12 {
            return Err(Error::CoincidentPoints);
        }
        let endpoints = match self {
            Self::Chords => line_circle_intersections(x.point(), y.point())?,
            Self::Poincare => {
                let transport = Transport::new(x.point());
                let w = transport.forward(to_complex(y.point()));
                let dir = w / w.norm();
                (
                    angle_of_unchecked(to_point(transport.inverse(-dir))),
                    angle_of_unchecked(to_point(transport.inverse(dir))),
                )
            }
        };
        Curve::new(self, endpoints.0, endpoints.1)
    }

    /// The unique curve with the given ideal endpoints.
    pub fn line(self, a: BoundaryPoint, b: BoundaryPoint) -> Result<Curve> {
        Curve::new(self, a, b)
    }

    /// A point of the segment `[x, y]`; `s = 0` gives `x` and `s = 1` gives `y`.
    pub fn segment_point(self, x: DiskPoint, y: DiskPoint, s: f64) -> Result<DiskPoint> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::ParameterOutOfRange(s));
        }
        match self {
            Self::Chords => DiskPoint::from_point(x.point().lerp(y.point(), s)),
            Self::Poincare => {
                let transport = Transport::new(x.point());
                let w = transport.forward(to_complex(y.point()));
                DiskPoint::from_point(to_point(transport.inverse(w * s)))
            }
        }
    }

    /// Classifies `z` against the curve through `x` and `y`, oriented from
    /// `x` towards `y`.
    pub fn on_same_curve(self, x: DiskPoint, y: DiskPoint, z: DiskPoint) -> Result<SideReport> {
        Ok(self.curve_through(x, y)?.side_of(z.point()))
    }
}

impl fmt::Display for CurveFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chords" => Ok(Self::Chords),
            "poincare" => Ok(Self::Poincare),
            other => Err(Error::Unsupported(format!("unknown curve family {other:?}"))),
        }
    }
}

/// Which component of the disc minus a curve contains a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveSide {
    On,
    /// To the left when travelling from the first endpoint to the second.
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SideReport {
    pub side: CurveSide,
    /// Signed Euclidean distance to the curve, positive on the left. Exact
    /// for chords, first-order accurate for Poincaré arcs.
    pub distance: f64,
}

impl SideReport {
    pub fn is_on(&self) -> bool {
        self.side == CurveSide::On
    }
}

/// A member of a curve family, identified by its ideal endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Curve {
    pub family: CurveFamily,
    pub endpoints: (BoundaryPoint, BoundaryPoint),
}

impl Curve {
    pub fn new(family: CurveFamily, a: BoundaryPoint, b: BoundaryPoint) -> Result<Self> {
        if a.coincides(b, ANGLE_EPS) {
            return Err(Error::DegenerateArc);
        }
        Ok(Self {
            family,
            endpoints: (a, b),
        })
    }

    pub fn reversed(&self) -> Self {
        Self {
            family: self.family,
            endpoints: (self.endpoints.1, self.endpoints.0),
        }
    }

    /// Same unordered endpoint pair, up to `tol` radians.
    pub fn same_as(&self, other: &Curve, tol: f64) -> bool {
        let (a, b) = self.endpoints;
        let (c, d) = other.endpoints;
        (a.coincides(c, tol) && b.coincides(d, tol)) || (a.coincides(d, tol) && b.coincides(c, tol))
    }

    pub fn has_endpoint(&self, p: BoundaryPoint, tol: f64) -> bool {
        self.endpoints.0.coincides(p, tol) || self.endpoints.1.coincides(p, tol)
    }

    /// Continuous injective parametrization of the open curve; `t → 0` and
    /// `t → 1` approach the first and second endpoint.
    pub fn point_at(&self, t: f64) -> Result<DiskPoint> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::ParameterOutOfRange(t));
        }
        DiskPoint::from_point(self.point_at_unchecked(t))
    }

    pub(crate) fn point_at_unchecked(&self, t: f64) -> Point2 {
        let (a, b) = self.endpoints;
        match self.family {
            CurveFamily::Chords => a.to_point().lerp(b.to_point(), t),
            CurveFamily::Poincare => {
                let (transport, dir) = poincare_frame(a, b);
                to_point(transport.inverse(dir * (2.0 * t - 1.0)))
            }
        }
    }

    /// Signed distance of `z`, positive to the left of the travel direction.
    pub fn signed_distance(&self, z: Point2) -> f64 {
        let (a, b) = self.endpoints;
        match self.family {
            CurveFamily::Chords => {
                let (pa, pb) = (a.to_point(), b.to_point());
                let d = pb - pa;
                d.cross(z - pa) / d.norm()
            }
            CurveFamily::Poincare => {
                let (transport, dir) = poincare_frame(a, b);
                let w = transport.forward(to_complex(z));
                let transported = dir.re * w.im - dir.im * w.re;
                transported * transport.inverse_scale(w)
            }
        }
    }

    pub fn side_of(&self, z: Point2) -> SideReport {
        let distance = self.signed_distance(z);
        let side = if distance.abs() <= ON_CURVE_EPS {
            CurveSide::On
        } else if distance > 0.0 {
            CurveSide::Left
        } else {
            CurveSide::Right
        };
        SideReport { side, distance }
    }
}

/// For a Poincaré geodesic with endpoints `a`, `b`: the transport centred at
/// the geodesic's point nearest the origin, and the unit direction `u` with
/// `inverse(-u) = a`, `inverse(u) = b`.
fn poincare_frame(a: BoundaryPoint, b: BoundaryPoint) -> (Transport, Complex64) {
    let delta = a.ccw_offset_to(b);
    let (mid, half) = if delta <= PI {
        (a.angle() + 0.5 * delta, 0.5 * delta)
    } else {
        (b.angle() + 0.5 * (TAU - delta), 0.5 * (TAU - delta))
    };
    // the orthogonal circle has centre at distance sec(half) and radius
    // tan(half); its nearest point to the origin sits at sec - tan
    let r = (FRAC_PI_4 - 0.5 * half).tan();
    let transport = Transport::new(Point2::new(r * mid.cos(), r * mid.sin()));
    let w = transport.forward(to_complex(a.to_point()));
    (transport, -w / w.norm())
}
