use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("minor size {size} out of range for a {rows}x{cols} matrix")]
    MinorSize { size: usize, rows: usize, cols: usize },

    #[error("operation needs integer coefficients")]
    NotIntegral,

    #[error("gcd of an empty list")]
    EmptyGcd,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("invalid braid: {0}")]
    InvalidBraid(String),

    #[error("phi mismatch: {0}")]
    PhiMismatch(String),

    #[error("degenerate pivot: det(Phi(x_j) - I) vanishes for every generator")]
    DegeneratePivot,

    #[error("presentation is not deficiency one ({generators} generators, {relators} relators)")]
    NotDeficiencyOne { generators: usize, relators: usize },

    #[error("invariant unavailable: {0}")]
    Unavailable(String),

    #[error("chain condition d2*d1 = 0 failed")]
    ChainCondition,

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("search budget exhausted")]
    BudgetExhausted,

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}
