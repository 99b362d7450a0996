use alloc::string::String;

/// Everything that can go wrong in `fiedler-core`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex count {n} outside the supported range {min}..={max}")]
    SizeOutOfRange { n: usize, min: usize, max: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("matrix is not symmetric (|a[{i}][{j}] - a[{j}][{i}]| too large)")]
    Asymmetric { i: usize, j: usize },
    #[error("eigensolver failed to converge")]
    NoConvergence,
    #[error("zero vector has no Rayleigh quotient")]
    ZeroVector,
    #[error("bound not applicable: {0}")]
    Inapplicable(String),
    #[error("malformed graph6: {0}")]
    Graph6(String),
    #[error("unknown named graph {0:?}")]
    UnknownName(String),
    #[error("named graph {name:?} failed its metadata check: {reason}")]
    Registry { name: String, reason: String },
    #[error("empty family")]
    EmptyFamily,
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
