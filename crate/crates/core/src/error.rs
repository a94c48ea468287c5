use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("element is not primitive (not Lie-valued)")]
    NotPrimitive,

    #[error("derivation not invertible: zero eigenvalue in degree {degree}")]
    NotInvertible { degree: usize },

    #[error("no derivation attached to the Rota-Baxter context")]
    MissingDerivation,

    #[error("Rota-Baxter identity fails: {0}")]
    RotaBaxterViolation(String),

    #[error("derivation does not commute with the Rota-Baxter operator: {0}")]
    NotCommuting(String),

    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),

    #[error("derivation rule fails on basis pair ({0}, {1})")]
    DerivationRule(usize, usize),

    #[error("bracket [{i}, {j}] is not homogeneous of degree {expected}")]
    DegreeMismatch { i: usize, j: usize, expected: usize },

    #[error("malformed input: {0}")]
    Format(String),
}
