use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("generator {0} has a negative exponent and its image is not an invertible monomial")]
    NonInvertible(String),
    #[error("negative exponent on generator {0}, which is not laurent")]
    NegativeExponent(String),
    #[error("matrix dimensions do not match: {0}")]
    Dimension(String),
    #[error("matrix has nonzero trace {0}")]
    NonzeroTrace(String),
    #[error("weights ({w1},{w2}) violate n+w1+w2=0 for n={n}")]
    WeightConstraint { n: usize, w1: i64, w2: i64 },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
