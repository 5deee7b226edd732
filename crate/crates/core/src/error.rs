use thiserror::Error;

/// Errors raised by the computational core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("the zero exponent vector generates the unit ideal, which is not proper")]
    ZeroGenerator,
    #[error("dimension mismatch: expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("an ideal needs at least one generator")]
    EmptyIdeal,
    #[error("the number of variables must be at least 1")]
    NoVariables,
    #[error("stretch factors must be positive integers")]
    NonPositiveStretch,
    #[error("coordinate {index} of the point is negative")]
    NegativeCoordinate { index: usize },
    #[error("ambient dimension {ambient_dim} is smaller than n - 1 = {min}")]
    AmbientTooSmall { ambient_dim: usize, min: usize },
    #[error("parameter X{index} must be positive")]
    NonPositiveParameter { index: usize },
    #[error("facet triangulation produced a piece with zero jacobian")]
    DegenerateFacet,
    #[error("recession ray e{axis} does not cancel against the kernel numerator")]
    NonCancellingRay { axis: usize },
    #[error("polygamma argument must be positive, got {0}")]
    NonPositiveArgument(f64),
    #[error("requested precision {requested:e} is below the attainable floor {floor:e}")]
    PrecisionUnreachable { requested: f64, floor: f64 },
    #[error("cutoff too small: tail bound {tail_bound:e} exceeds tolerance {tolerance:e}")]
    CutoffTooSmall { tail_bound: f64, tolerance: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    /// Stable machine-readable identifier for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroGenerator => "ZeroGenerator",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::EmptyIdeal => "EmptyIdeal",
            Error::NoVariables => "NoVariables",
            Error::NonPositiveStretch => "NonPositiveStretch",
            Error::NegativeCoordinate { .. } => "NegativeCoordinate",
            Error::AmbientTooSmall { .. } => "AmbientTooSmall",
            Error::NonPositiveParameter { .. } => "NonPositiveParameter",
            Error::DegenerateFacet => "DegenerateFacet",
            Error::NonCancellingRay { .. } => "NonCancellingRay",
            Error::NonPositiveArgument(_) => "NonPositiveArgument",
            Error::PrecisionUnreachable { .. } => "PrecisionUnreachable",
            Error::CutoffTooSmall { .. } => "CutoffTooSmall",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::Parse { .. } => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
