use thiserror::Error;

/// Errors raised by algebra, series, star-product and lifting operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is not invertible")]
    NotInvertible,

    #[error("classical limit is not invertible in the base algebra")]
    NotInvertibleAtClassicalLimit,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("division by zero in the coefficient field")]
    DivisionByZero,

    #[error("variable sets differ: {left} vs {right} degrees of freedom")]
    VariableMismatch { left: usize, right: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("precision mismatch: {left} vs {right}")]
    PrecisionMismatch { left: usize, right: usize },

    #[error("precision {requested} out of range 1..={max}")]
    PrecisionOutOfRange { requested: usize, max: usize },

    #[error("star product has no cochain of order {order}")]
    MissingCochain { order: usize },

    #[error("gauge twist of order {order} does not annihilate the unit")]
    TwistMovesUnit { order: usize },

    #[error("characteristic 2: 2a-1 is not invertible, idempotent lifting needs 2 to be a unit")]
    CharacteristicTwo,

    #[error("element is not idempotent at precision {precision}")]
    NotIdempotent { precision: usize },

    #[error("classical limits differ")]
    ClassicalLimitMismatch,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
