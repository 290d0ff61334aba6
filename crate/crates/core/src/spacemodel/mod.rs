//! Combinatorial models of pointed spaces, horseshoe detection, tight
//! sections and isomorphism testing of the suspension groups.

mod builtin;
mod classify;
mod model;

use thiserror::Error;

pub use builtin::{builtin_model, BUILTIN_NAMES};
pub use classify::{
    classify, detect_horseshoe, iso_test, tight_section, Classification, Dichotomy, HorseshoeVerdict,
    HorseshoeWitness, IsoVerdict, TightSection,
};
pub use model::{ApproachesBase, Component, Connectivity, MaxLevel, PairFamily, Point, SpaceModel, Violation, BASEPOINT};

use crate::cardseq::CardSeqError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("invalid model: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown builtin model `{0}`")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Seq(#[from] CardSeqError),
}
