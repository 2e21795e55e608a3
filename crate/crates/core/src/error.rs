use thiserror::Error;

use crate::model::Player;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid seeding: {0}")]
    InvalidSeeding(String),

    #[error("invalid execution tree: {0}")]
    InvalidTree(String),

    #[error("{algorithm} is not applicable: {reason}")]
    KindMismatch {
        algorithm: &'static str,
        reason: String,
    },

    #[error("brute force refused: n = {n} exceeds the cap of {cap}")]
    BruteForceCap { n: usize, cap: usize },

    #[error("illegal profile transition: {0}")]
    IllegalTransition(String),

    #[error("invalid formula: {0}")]
    InvalidFormula(String),

    #[error("player {player} cannot be placed: {reason}")]
    Placement { player: Player, reason: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn mismatch(algorithm: &'static str, reason: impl Into<String>) -> Error {
    Error::KindMismatch {
        algorithm,
        reason: reason.into(),
    }
}
