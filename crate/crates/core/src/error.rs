use thiserror::Error;

/// A syntax error at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScatteredError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("the zero ordinal denotes the empty space (rank 0 by convention)")]
    ZeroOrdinal,
    #[error("ordinal {0} is not a successor")]
    NotSuccessor(String),
    #[error("ordinal {0} is not below w^w; no finite-rank expression exists")]
    ExponentTooLarge(String),
    #[error("the empty space has no canonical form")]
    EmptySpace,
    #[error("expression is not compact: {0}")]
    NotCompact(String),
    #[error("layer index {k} out of range 1..={rank}")]
    LayerOutOfRange { k: usize, rank: usize },
    #[error("rank {0} exceeds 2")]
    RankTooLarge(usize),
    #[error("expression has no one-point top derivative: {0}")]
    NoSingleTop(String),
    #[error("empty bit prefix")]
    EmptyPrefix,
    #[error("bit prefix longer than the depth cap {0}")]
    PrefixTooLong(usize),
    #[error("undecided pair under budget: {0} vs {1}")]
    Undecided(String, String),
    #[error("malformed schema: {0}")]
    MalformedSchema(String),
}
