use thiserror::Error;

/// Everything that can go wrong across fan validation, the intersection
/// engine, and report generation.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ray {index} has {got} coordinates, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, got: usize },

    #[error("fan dimension is {got}, need at least {need}")]
    FanDimensionTooSmall { got: usize, need: usize },

    #[error("ray {index} is zero or not primitive")]
    NonPrimitiveRay { index: usize },

    #[error("rays {first} and {second} coincide")]
    DuplicateRay { first: usize, second: usize },

    #[error("ray {index} does not lie on any maximal cone")]
    UnusedRay { index: usize },

    #[error("maximal cone {index} references ray {ray}, but there are only {n_rays} rays")]
    InvalidRayIndex { index: usize, ray: usize, n_rays: usize },

    #[error("maximal cone {index} must list {expected} distinct rays")]
    MalformedCone { index: usize, expected: usize },

    #[error("maximal cones {first} and {second} coincide")]
    DuplicateCone { first: usize, second: usize },

    #[error("maximal cone {cone:?} has determinant {det}; the fan is not smooth")]
    NonUnimodularCone { cone: Vec<usize>, det: String },

    #[error("wall {wall:?} lies on {count} maximal cones instead of 2; the fan is not complete")]
    UnpairedWall { wall: Vec<usize>, count: usize },

    #[error("coverage probe failed: {detail}")]
    CoverageFailure { detail: String },

    #[error("cone {cone:?} is not a face of the fan")]
    ConeNotInFan { cone: Vec<usize> },

    #[error("cone {cone:?} has dimension {got}, need at least {need}")]
    DimensionTooSmall { cone: Vec<usize>, got: usize, need: usize },

    #[error("face dimension {l} is out of range for a {dim}-dimensional fan")]
    FaceDimensionOutOfRange { l: usize, dim: usize },

    #[error("cone {cone:?} is not a wall")]
    NotAWall { cone: Vec<usize> },

    #[error("cone has dimension {got}, but this operation needs dimension {need}")]
    WrongConeDimension { need: usize, got: usize },

    #[error("expected {expected} divisors on this cone, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("class has degree {got}, expected {expected}")]
    WrongClassDegree { expected: usize, got: usize },

    #[error("no closed-form class for this surface kind ({detail})")]
    UnsupportedSurface { detail: String },

    #[error("invalid bundle data: {detail}")]
    InvalidBundle { detail: String },

    #[error("value {value} does not fit a 64-bit integer")]
    Overflow { value: String },

    #[error("JSON error: {detail}")]
    Json { detail: String },

    #[error("i/o error: {detail}")]
    Io { detail: String },

    #[error("internal invariant violated: {detail}")]
    Internal { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn internal(detail: impl Into<String>) -> Error {
        Error::Internal { detail: detail.into() }
    }

    /// True for failures of the smoothness check specifically.
    pub fn is_smoothness(&self) -> bool {
        matches!(self, Error::NonUnimodularCone { .. })
    }

    /// True for failures of the completeness check specifically.
    pub fn is_completeness(&self) -> bool {
        matches!(self, Error::UnpairedWall { .. } | Error::CoverageFailure { .. })
    }
}
