use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("self-loop on node {node}")]
    SelfLoop { node: String },

    #[error("edge ({u}, {v}) references a node outside 0..{n}")]
    NodeOutOfRange { u: usize, v: usize, n: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("degenerate block ({r}, {s}): edge probability {omega} exceeds 1")]
    DegenerateBlock { r: usize, s: usize, omega: f64 },

    #[error("{0} is undefined for a graph without edges")]
    EmptyGraph(&'static str),

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("metadata lock violated at node {node}: blue node not in its metadata group")]
    LockViolation { node: usize },

    #[error("{what} too large: {size} exceeds cap {cap}")]
    TooLarge { what: &'static str, size: u128, cap: u128 },

    #[error("distance matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
