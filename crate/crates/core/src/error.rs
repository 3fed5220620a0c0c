use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus not an admissible prime: {0}")]
    InadmissibleModulus(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("space mismatch: expected {expected}, found {found}")]
    SpaceMismatch { expected: String, found: String },

    #[error("fields differ: {0} and {1}")]
    FieldMismatch(String, String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),

    #[error("sampling gave up after {0} attempts")]
    SamplingExhausted(usize),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
