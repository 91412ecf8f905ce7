use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("invalid weight {weight} on vertex {vertex}: weights must lie in (0, 1]")]
    InvalidWeight { vertex: usize, weight: f64 },

    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },

    #[error("edge probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("duplicate position at index {0} and {1}")]
    DuplicatePosition(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("optimality gap undefined for a zero reference weight")]
    ZeroReference,

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("graph with {size} vertices exceeds the {backend} limit of {limit}")]
    CapacityExceeded {
        backend: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid annealing schedule: {0}")]
    InvalidSchedule(String),

    #[error("state norm deviates from 1 by {0:e}")]
    Unnormalized(f64),

    #[error("dimension mismatch: register has {register} atoms, state has {state}")]
    DimensionMismatch { register: usize, state: usize },

    #[error("internal fault: {0}")]
    Internal(String),

    #[error("malformed input: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
