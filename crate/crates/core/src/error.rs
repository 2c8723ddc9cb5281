use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(
        "invalid letter {letter:?} at position {position}: words are over the alphabet {{a, b}}"
    )]
    InvalidLetter { letter: char, position: usize },

    #[error("empty pattern")]
    EmptyPattern,

    #[error("empty input word")]
    EmptyInput,

    #[error("overlap {overlap} is outside 1..={max}")]
    OverlapRange { overlap: usize, max: usize },

    #[error("overlap mismatch: the last {overlap} letters of the left word differ from the first {overlap} of the right word")]
    OverlapMismatch { overlap: usize },

    #[error("length of F_{0} does not fit in 64 bits (limit is n = 90)")]
    LengthOverflow(u32),

    #[error("F_{n} is not materialized: index exceeds the limit N_max = {limit}")]
    MaterializationGuard { n: u32, limit: u32 },

    #[error("index out of domain: {0}")]
    Domain(String),

    #[error("{0} is not a factor of the input word")]
    NotAFactor(String),

    #[error("word of length {len} exceeds the limit of {limit} letters (use force to override)")]
    SizeRefused { len: usize, limit: usize },

    #[error("n = {n} exceeds the oracle cap {cap} for category {category}")]
    CapExceeded { n: u32, cap: u32, category: String },

    #[error("materializing {letters} letters exceeds the budget of {budget}")]
    Budget { letters: u128, budget: u128 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
