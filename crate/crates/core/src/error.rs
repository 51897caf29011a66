use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Coxeter type {family}{rank}: {reason}")]
    InvalidType { family: String, rank: usize, reason: String },
    #[error("operation requires a crystallographic root system, got {0}")]
    NotCrystallographic(String),
    #[error("operation needs root coordinates, which {0} does not carry")]
    NoCoordinates(String),
    #[error("unsupported weight set ({ctype}, omega_{index})")]
    UnsupportedWeight { ctype: String, index: usize },
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group of order {0} exceeds the materialization cap {1}")]
    TooLarge(u128, u128),
    #[error("budget of {seconds}s exhausted after finding {found} classes")]
    BudgetExhausted { seconds: u64, found: usize },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
