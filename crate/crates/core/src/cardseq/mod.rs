//! Symbolic cardinals, schematic cardinal sequences and the equivalence
//! relation `≈` on them, with constructive bijection plans.

mod cardinal;
mod equiv;
mod plan;
mod regroup;
mod seq;

use thiserror::Error;

pub use cardinal::{card_sum, Cardinal};
pub use equiv::{
    eventually_below, eventually_zero, seq_equiv, sums_dominated, threshold_test_set, Failure,
    SeqVerdict, Side,
};
pub use plan::{Assignment, BijectionPlan, Certificate, Edge, PeriodicEdges, PlanCase};
pub use regroup::{regroup, BlockSchema};
pub use seq::{CardSeq, SumBound, Tail};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CardSeqError {
    #[error("periodic tail needs at least one entry")]
    EmptyPeriod,
    #[error("increasing aleph tail needs a positive slope")]
    FlatAlephs,
    #[error("threshold {0} is finite, an infinite cardinal is required")]
    FiniteThreshold(Cardinal),
    #[error("block {0} of the schema is empty, so the grouping is not surjective")]
    EmptyBlock(usize),
    #[error("block schema has no repeating part, so its last fiber is infinite")]
    InfiniteFiber,
    #[error("regrouping an increasing aleph tail needs equal tail block lengths")]
    Unrepresentable,
    #[error("plan does not match the sequences: {0}")]
    PlanMismatch(String),
    #[error("plan construction exceeded {0} edges")]
    PlanTooLarge(usize),
    #[error("realization would emit more than {0} units")]
    RealizationTooLarge(u64),
}
