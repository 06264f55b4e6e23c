use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::cotstructure::TowerTrace;
use crate::exact_linear::LinearError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Linear(#[from] LinearError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid complex at degree {degree}: {message}")]
    InvalidComplex { degree: i32, message: String },
    #[error("invalid chain map at degree {degree}: {message}")]
    InvalidChainMap { degree: i32, message: String },
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("tower did not terminate within {max_iter} steps")]
    NonTerminating { max_iter: usize, trace: TowerTrace },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
