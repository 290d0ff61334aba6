//! Words in topologist products `⨳∏_n F(λ_n)` over domains built from
//! finite, ω and ω* blocks.

mod block;
mod loops;
mod maps;
mod word;

use thiserror::Error;

pub use block::{Affine, Block, LetterRule, RuleEntry};
pub use loops::{reduce_loop, CombinatorialLoop, Excursion, ExcursionRule, LoopBlock};
pub use maps::{is_integer_profile, phi_endo, reindex_iso, Reindexing};
pub use word::{concat, eq_up_to, invert_word, semidecide_neq, TopWord};

use crate::freealg::Letter;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopWordError {
    #[error("invalid letter rule: {0}")]
    InvalidRule(String),
    #[error("letter {0} is not declared by the profile")]
    Undeclared(Letter),
    #[error("words have different profiles")]
    ProfileMismatch,
    #[error("operation needs every factor to be the integers")]
    NotIntegerProfile,
    #[error("invalid reindexing: {0}")]
    InvalidReindexing(String),
    #[error("result is not representable: {0}")]
    Unrepresentable(String),
    #[error("unknown point id `{0}`")]
    UnknownPoint(String),
}
