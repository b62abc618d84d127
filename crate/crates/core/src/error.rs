use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("seed (0, 0) does not define a generalized Fibonacci sequence")]
    ZeroSeed,
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("{what} must be at least {min}, got {got}")]
    TooSmall {
        what: &'static str,
        min: i64,
        got: i64,
    },
    #[error("{what} must be at most {max}, got {got}")]
    TooLarge {
        what: &'static str,
        max: i64,
        got: i64,
    },
    #[error("precision insufficient: residual {residual} before rounding exceeds 0.25")]
    PrecisionInsufficient { residual: String },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("identity `{identity}` needs the `{parameter}` parameter")]
    MissingParameter {
        identity: &'static str,
        parameter: &'static str,
    },
    #[error("values must be positive integers, got {0}")]
    NonPositive(String),
    #[error("value set is empty")]
    Empty,
    #[error("malformed ratio class: {0}")]
    MalformedClass(String),
    #[error("zero term at index {0}")]
    ZeroTerm(i64),
    #[error("cannot parse {what}: `{input}`")]
    Parse { what: &'static str, input: String },
    #[error("non-integer term {value} at index {index}")]
    NonInteger { index: i64, value: String },
}

pub type Result<T> = std::result::Result<T, Error>;
