use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("simplex iteration limit reached after {0} pivots")]
    IterationLimit(usize),
    #[error("time limit exceeded")]
    TimeLimitExceeded,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("instance too large for exhaustive enumeration: {0}")]
    SizeLimit(String),
    #[error("no fractional branching entity in a portion that is not integral")]
    NoFractionalEntity,
    #[error("{0}")]
    Unsupported(String),
    #[error("fronts differ on instance {instance}: {detail}")]
    FrontMismatch { instance: String, detail: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
