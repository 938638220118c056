use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Ways an associative BD-structure can fail validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BdViolation {
    #[error("permutation {0:?} is not a bijection of 1..N")]
    NotBijective(Vec<usize>),
    #[error("permutation {0:?} is not a single N-cycle")]
    NotTransitive(Vec<usize>),
    #[error("pair ({0}, {1}) is not an edge of C0")]
    NotInGraph(usize, usize),
    #[error("gamma{0} is not a proper subset of the graph of C0")]
    ImproperSubset(u8),
    #[error("(C x C)(gamma1) does not equal gamma2")]
    ImageMismatch,
    #[error("tau is not nilpotent: the C x C orbit of ({0}, {1}) stays inside gamma1")]
    NilpotencyFailure(usize, usize),
    #[error("sizes disagree: {0}")]
    SizeMismatch(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("size mismatch: expected N = {expected}, got N = {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("embedding slots must be distinct elements of {{1,2,3}}, got {0:?}")]
    InvalidSlots((usize, usize)),

    #[error("invalid BD-structure: {0}")]
    InvalidStructure(#[from] BdViolation),

    #[error("pole guard violated: {0}")]
    PoleGuard(String),

    #[error("singular operator: {0}")]
    Singular(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("splitting matrix is not simple: {0}")]
    NotSimple(String),

    #[error("sampler exhausted after {rejects} rejections while drawing sample {index}")]
    SamplerExhausted { index: usize, rejects: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
