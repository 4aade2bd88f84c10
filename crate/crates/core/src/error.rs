use thiserror::Error;

/// Errors raised by the geometry kernels, the metric evaluators and the
/// command layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point ({x}, {y}) is not on the unit circle (|p| = {norm})")]
    NonUnitPoint { x: f64, y: f64, norm: f64 },

    #[error("boundary points coincide; arc is degenerate")]
    DegenerateArc,

    #[error("points coincide")]
    CoincidentPoints,

    #[error("line misses the closed unit disc")]
    NoIntersection,

    #[error("line is tangent to the unit circle")]
    TangentLine,

    #[error("point ({x}, {y}) is not inside the open unit disc")]
    OutsideDisc { x: f64, y: f64 },

    #[error("non-finite coordinate")]
    NonFinite,

    #[error("curve parameter {0} is outside (0, 1)")]
    ParameterOutOfRange(f64),

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("point ({x}, {y}) is outside the polygon")]
    PointOutsidePolygon { x: f64, y: f64 },

    #[error("point ({x}, {y}) is outside the domain")]
    PointOutsideDomain { x: f64, y: f64 },

    #[error("projection collides with a supporting point (arc {arc:e} rad)")]
    DegenerateSupport { arc: f64 },

    #[error("point is not in the interior of side {side}")]
    PointNotOnSide { side: usize },

    #[error("targets coincide")]
    TargetsCoincide,

    #[error("rays do not converge to the boundary targets")]
    RaysNotConverging,

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
