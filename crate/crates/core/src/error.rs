use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("rank {rank} outside 1..={size}")]
    RankOutOfRange { rank: BigUint, size: BigUint },

    #[error("word {word} is not a member of {set}")]
    NotMember { word: String, set: String },

    #[error("decoding failed: {0}")]
    DecodeFailure(String),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
