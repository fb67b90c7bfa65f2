use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A sequence value fell outside the open unit interval.
    #[error("{quantity}_{index} = {value} lies outside (0,1)")]
    DomainViolation {
        quantity: &'static str,
        index: usize,
        value: Rational,
    },
    #[error("{quantity} is indexed from 1, got index {index}")]
    IndexOutOfRange { quantity: &'static str, index: usize },
    #[error("explicit {quantity} prefix has {len} entries, index {index} requested")]
    PrefixExhausted {
        quantity: &'static str,
        index: usize,
        len: usize,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("oracle degree bound exceeded: m + n = {degree} > {bound}")]
    OracleBound { degree: usize, bound: usize },
    #[error("inadmissible parameter: {0}")]
    InadmissibleParameter(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse rational {input:?}: {reason}")]
    ParseRational { input: String, reason: String },
    #[error("malformed sequence document: {0}")]
    Document(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
