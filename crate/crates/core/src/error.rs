use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("budget must be at least one rule application")]
    ZeroBudget,
    #[error("universe has {size} judgments, brute-force oracles are capped at {cap}")]
    UniverseTooLarge { size: usize, cap: usize },
    #[error("judgment {0} is not in the universe")]
    NotInUniverse(String),
    #[error("a lasso needs a non-empty cycle")]
    EmptyCycle,
    #[error("base {0} is outside 2..=36")]
    BaseOutOfRange(u32),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
