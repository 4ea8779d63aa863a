use thiserror::Error;

/// Errors produced by group construction, transforms and the separability tests.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("invalid spin {0}: 2j must be a non-negative integer")]
    InvalidSpin(f64),

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("quadrature validation failed: Peter-Weyl residual {max_residual:e}")]
    QuadratureValidationFailed { max_residual: f64 },

    #[error("quadrature too coarse: integrand degree {required} exceeds exactness degree {available}")]
    QuadratureTooCoarse { required: u32, available: u32 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("function is not normalized: value at identity is {0}")]
    NotNormalized(String),

    #[error("incomplete irrep list: {0}")]
    IncompleteIrrepList(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("purity test needs single-irrep support, found {0} blocks")]
    MultiIrrepSupport(usize),

    #[error("block support mismatch: {0}")]
    SupportMismatch(String),

    #[error("negative Fourier coefficient at (k={k}, l={l}): {value:e}")]
    NegativeCoefficient { k: i32, l: i32, value: f64 },

    #[error("incomplete projector family: {0}")]
    IncompleteProjectorFamily(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
