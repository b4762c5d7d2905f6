use crate::algebra::AlgebraError;
use crate::linalg::LinalgError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("values belong to different algebras")]
    AlgebraMismatch,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: i32, found: i32 },
    #[error("expected {expected} coordinates, found {found}")]
    Length { expected: usize, found: usize },
    #[error("degree must be at least {min}, got {found}")]
    DegreeTooSmall { min: i32, found: i32 },
    #[error("vector is not in the image of the tensor embedding")]
    NotInTensorImage,
    #[error("not a bimodule homomorphism: equivariance fails for d({a})*{b}")]
    NotEquivariant { a: String, b: String },
    #[error("not a graded derivation: {0}")]
    NotDerivation(String),
    #[error("not a sub-bimodule of Omega1: {0}")]
    NotBimodule(String),
    #[error("not a projection: {0}")]
    NotProjection(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}
