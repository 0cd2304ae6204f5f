use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("order must be even, got {0}")]
    OddOrder(usize),
    #[error("order must lie in 2..={max}, got {n}")]
    OrderOutOfRange { n: usize, max: usize },
    #[error("column {0:?} is not a permutation of 0..{1}")]
    NotAPermutation(Vec<u8>, usize),
    #[error("orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("position count differs: {0} vs {1}")]
    MuMismatch(usize, usize),
    #[error("columns at positions {0} and {1} are not nearly orthogonal")]
    NotNearlyOrthogonal(usize, usize),
    #[error("empty list of columns")]
    EmptyList,
    #[error("square index {index} out of range 1..={mu}")]
    IndexOutOfRange { index: usize, mu: usize },
    #[error("{x} is not a unit modulo {n}")]
    NotAUnit { x: usize, n: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("refusing exhaustive reference computation at order {n}: supported only for {supported}")]
    ScaleRefused { n: usize, supported: &'static str },
    #[error("stabilizer data corrupt: {0}")]
    CorruptStabilizer(String),
    #[error("checkpoint corrupt: {0}")]
    CorruptCheckpoint(String),
    #[error("worker thread failed: {0}")]
    WorkerFailed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
