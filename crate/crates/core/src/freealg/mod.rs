//! Free groups and finite free products of free groups: reduction, normal
//! forms, group operations, cyclic reduction and roots.

mod letter;
mod roots;
mod word;

use thiserror::Error;

pub use letter::{Gen, Letter};
pub use roots::{cyclic_reduce, divisibility_spectrum, kth_root};
pub use word::{invert, multiply, normal_form, reduce_free, FreeProduct, FreeWord, NormalForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeAlgError {
    #[error("letter exponent must be nonzero")]
    ZeroExponent,
    #[error("letters at levels {expected} and {found} in one free factor")]
    LevelMismatch { expected: u32, found: u32 },
    #[error("generator {gen} is not declared at level {level}")]
    UndeclaredGenerator { level: u32, gen: Gen },
    #[error("the identity has a root of every order")]
    IdentityRoots,
    #[error("root order must be at least 1")]
    ZeroRootOrder,
}
