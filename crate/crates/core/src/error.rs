use thiserror::Error;

/// Everything that can go wrong while building grids, assembling systems or
/// running a sweep.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{what} is outside its domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("series lost precision through cancellation (largest term {max_term:e}, sum {sum:e})")]
    PrecisionLoss { max_term: f64, sum: f64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("A-norm radicand is negative ({0:e})")]
    NegativeRadicand(f64),

    #[error("tridiagonal row {row} is not strictly diagonally dominant")]
    DominanceViolation { row: usize },

    #[error("zero pivot at tridiagonal row {row}")]
    ZeroPivot { row: usize },

    #[error("the L1 baseline requires a uniform temporal mesh")]
    NonUniformMesh,

    #[error("unknown problem label `{0}`")]
    UnknownProblem(String),

    #[error("problem `{0}` has no exact solution registered")]
    NoExactSolution(String),

    #[error("rates requested but the time-step list is not a x2 ladder")]
    NotDoublingLadder,

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
