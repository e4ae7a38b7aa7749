use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },

    #[error("{what} needs {required} evaluations, budget is {budget}; raise QLL_BUDGET to proceed")]
    BudgetExceeded { what: String, required: u128, budget: u128 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
