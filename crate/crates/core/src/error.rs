use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("composite of consecutive maps is not zero")]
    CompositionNotZero,
    #[error("vector is not in the lattice")]
    NotInLattice,
    #[error("budget exceeded: {needed} columns required, cap is {cap}")]
    BudgetExceeded { needed: usize, cap: usize },
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("unsupported weight {0}")]
    UnsupportedWeight(usize),
    #[error("internal lattice error: {0}")]
    InternalLatticeError(String),
    #[error("lattice is not saturated")]
    NotSaturated,
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("truncation too small: need {needed}, have {have}")]
    InsufficientTruncation { needed: usize, have: usize },
    #[error("expression does not reduce to a functor with a fast path")]
    NotReducible,
    #[error("results disagree: {0}")]
    Mismatch(String),
    #[error("element is not in the image of the Lie algebra")]
    NotInLieImage,
    #[error("parse error at position {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
