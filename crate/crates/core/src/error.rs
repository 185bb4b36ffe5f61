use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{value} is not a {p}-adic integer (valuation {valuation})")]
    NotPAdicInteger { value: String, p: u64, valuation: i64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("scalar matrix where a nonscalar one is required")]
    ScalarInput,

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("search exhausted: {0}")]
    NotFound(String),

    #[error("internal soundness failure: {0}")]
    Soundness(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
