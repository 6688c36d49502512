use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a homogeneous element of degree {expected}")]
    Degree { expected: usize },
    #[error("element lives in the wrong ambient space")]
    Ambient,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("map is not surjective")]
    NotSurjective,
    #[error("integrand has degree {got}, top degree is {top}")]
    IntegrandDegree { got: usize, top: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Check(String),
}

pub type Result<T> = std::result::Result<T, Error>;
