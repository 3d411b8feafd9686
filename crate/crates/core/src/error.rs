use thiserror::Error;

/// Errors raised by the reduction and solver pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("interval half-width must be positive, got {0}")]
    InvalidInterval(String),
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("location {location} outside [-{nu}, {nu}]")]
    OutOfInterval { location: String, nu: String },
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis degree {requested} is below kernel degree {required}")]
    BasisTooSmall { requested: usize, required: usize },
    #[error("player 2 has no resources; the reduced matrix needs a non-degenerate interval")]
    DegenerateOpponent,
    #[error("linear program failed: {0}")]
    LpFailure(String),
    #[error("enumeration needs {needed} candidate mixtures, above the cap of {cap}")]
    EnumerationBudget { needed: u128, cap: u128 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
