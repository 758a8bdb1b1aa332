use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("pfaffian undefined for odd size {0}")]
    OddSize(usize),
    #[error("polynomials live over different variable sets or fields")]
    VarSetMismatch,
    #[error("no image given for variable {0}")]
    MissingImage(String),
    #[error("polynomial is not homogeneous of degree {0}")]
    Inhomogeneous(u32),
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("not in Y_t: skew rank {rank} exceeds {bound}")]
    NotInLocus { rank: usize, bound: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("too large for desk scale: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
