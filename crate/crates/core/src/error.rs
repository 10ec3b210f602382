use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = CoreError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid neighborhood: {0}")]
    InvalidNeighborhood(String),

    #[error("transition table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },

    #[error("rule for word `{word}` has zero norm")]
    ZeroNorm { word: String },

    #[error("quiescent rule `{word}` must map to the quiescent state with amplitude 1")]
    QuiescentRule { word: String },

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("malformed configuration `{0}`")]
    MalformedConfiguration(String),

    #[error("span {span} exceeds limit {limit} (simplified size would be {new_size})")]
    SpanLimit {
        span: usize,
        limit: usize,
        new_size: BigUint,
    },

    #[error("enumeration needs {needed} items, above the resource bound {bound}")]
    ResourceBound { needed: BigUint, bound: u64 },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}
