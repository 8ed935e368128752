use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarosError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("cannot parse `{0}`")]
    Parse(String),

    #[error("work budget exceeded: {required} nodes required, budget is {budget} (raise it with --budget {required})")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error("empty window: {0}")]
    EmptyWindow(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

pub type Result<T> = std::result::Result<T, HarosError>;
