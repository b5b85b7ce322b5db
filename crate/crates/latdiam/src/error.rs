use thiserror::Error;

/// Crate-wide error type. Every arithmetic operation in this crate is exact;
/// anything that would silently lose information (overflow, projection of
/// degenerate input) is reported as an error instead.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("empty point set")]
    EmptyInput,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("input spans an affine subspace of dimension {affine_dim}, need {required}")]
    Degenerate { affine_dim: usize, required: usize },

    #[error("coordinate {value} outside [0, {k}]")]
    CoordinateRange { value: i64, k: i64 },

    #[error("negative coordinate {0}: lattice polytopes live in [0, k]^d")]
    NegativeCoordinate(i64),

    #[error("zero functional rejected")]
    ZeroFunctional,

    #[error("vertex index {index} out of range (have {len})")]
    VertexIndex { index: usize, len: usize },

    #[error("graph is disconnected: vertex {unreached} unreachable from {start} (hull bug upstream)")]
    Disconnected { start: usize, unreached: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("generator set violates its invariant: {0}")]
    BadGenerator(String),

    #[error("{m} generators exceed the sign-enumeration budget of {max}")]
    GeneratorBudget { m: usize, max: usize },

    #[error("search budget exhausted after {nodes} nodes")]
    SearchBudget { nodes: u64 },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("i/o error on {path}: {msg}")]
    Io { path: String, msg: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(path: &str, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.to_string(),
            line,
            msg: msg.into(),
        }
    }
}
