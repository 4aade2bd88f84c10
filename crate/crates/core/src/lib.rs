//! Metrics on convex polygons of the unit disc whose geodesics are exactly
//! the curves of a prescribed family, together with the Hilbert-metric
//! comparisons and the planar strip variant.

pub mod cli;
pub mod error;
pub mod families;
pub mod geometry;
pub mod hilbert;
pub mod metric;
pub(crate) mod mobius;
pub mod plane;
pub mod polygon;
pub mod summation;

pub use error::{Error, Result};
pub use families::{Curve, CurveFamily, CurveSide, SideReport};
pub use geometry::{BoundaryPoint, DiskPoint, PlanarPolygon, Point2};
pub use metric::{Distance, MetricContext, ThetaScheme, Truncation};
pub use polygon::{Containment, ConvexPolygon, SupportPair, Touch};
