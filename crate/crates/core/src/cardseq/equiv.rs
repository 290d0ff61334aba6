use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use super::cardinal::Cardinal;
use super::plan::{self, BijectionPlan};
use super::seq::{CardSeq, Tail};
use super::CardSeqError;

/// Condition (1): all but finitely many entries vanish.
pub fn eventually_zero(s: &CardSeq) -> bool {
    s.is_eventually_zero()
}

/// Condition (2) at a single infinite `kappa`: all but finitely many
/// entries are `< kappa`.
pub fn eventually_below(s: &CardSeq, kappa: Cardinal) -> Result<bool, CardSeqError> {
    if kappa.is_finite() {
        return Err(CardSeqError::FiniteThreshold(kappa));
    }
    Ok(match s.tail() {
        Tail::Zero => true,
        Tail::Constant { value } => *value < kappa,
        Tail::Periodic { values } => values.iter().all(|v| *v < kappa),
        Tail::IncreasingAlephs { .. } => kappa == Cardinal::AlephOmega,
    })
}

/// Least `M'` with `S_s(m) <= S_t(M')`.
pub fn sums_dominated(s: &CardSeq, t: &CardSeq, m: usize) -> Option<usize> {
    t.first_reaching(s.partial_sum(m))
}

/// The finite set of thresholds at which condition (2) is checked: every
/// infinite value occurring in either sequence (for increasing aleph tails,
/// the first one), its successor, every tail supremum, and `ℵ_0`.
///
/// Eventual smallness in `kappa` is upward closed, and the least `kappa`
/// where it starts to hold is always one of these points, so agreement on
/// the set means agreement everywhere.
pub fn threshold_test_set(s: &CardSeq, t: &CardSeq) -> Vec<Cardinal> {
    let mut set = BTreeSet::from([Cardinal::ALEPH_0]);
    for seq in [s, t] {
        let mut occurring: Vec<Cardinal> = seq.prefix().to_vec();
        match seq.tail() {
            Tail::Zero => {}
            Tail::Constant { value } => occurring.push(*value),
            Tail::Periodic { values } => occurring.extend(values),
            Tail::IncreasingAlephs { b, .. } => {
                occurring.push(Cardinal::Aleph(*b));
                set.insert(Cardinal::AlephOmega);
            }
        }
        if let Some(max) = seq.tail_max() {
            if max.is_infinite() {
                set.insert(max);
            }
        }
        for v in occurring.into_iter().filter(|v| v.is_infinite()) {
            set.insert(v);
            if let Some(next) = v.successor() {
                set.insert(next);
            }
        }
    }
    set.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Side {
    Left,
    Right,
}

/// Why two sequences are not equivalent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Failure {
    /// Exactly one side is eventually zero.
    #[serde(rename_all = "camelCase")]
    EventuallyZero { zero_side: Side },
    /// Exactly one side is eventually below `kappa`.
    #[serde(rename_all = "camelCase")]
    EventuallyBelow { kappa: Cardinal, below_side: Side },
    /// `S_from(m)` is never reached by the other side's partial sums.
    #[serde(rename_all = "camelCase")]
    SumsNotDominated { from: Side, m: usize, partial_sum: Cardinal },
}

impl Failure {
    /// Number of the first failing condition, `1..=3`.
    pub fn condition(&self) -> u8 {
        match self {
            Failure::EventuallyZero { .. } => 1,
            Failure::EventuallyBelow { .. } => 2,
            Failure::SumsNotDominated { .. } => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqVerdict {
    Equivalent(BijectionPlan),
    NotEquivalent(Failure),
}

impl SeqVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, SeqVerdict::Equivalent(_))
    }

    pub fn plan(&self) -> Option<&BijectionPlan> {
        match self {
            SeqVerdict::Equivalent(p) => Some(p),
            SeqVerdict::NotEquivalent(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&Failure> {
        match self {
            SeqVerdict::Equivalent(_) => None,
            SeqVerdict::NotEquivalent(f) => Some(f),
        }
    }
}

impl Serialize for SeqVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            SeqVerdict::Equivalent(plan) => {
                let mut st = serializer.serialize_struct("SeqVerdict", 2)?;
                st.serialize_field("equivalent", &true)?;
                st.serialize_field("plan", plan)?;
                st.end()
            }
            SeqVerdict::NotEquivalent(failure) => {
                let mut st = serializer.serialize_struct("SeqVerdict", 3)?;
                st.serialize_field("equivalent", &false)?;
                st.serialize_field("condition", &failure.condition())?;
                st.serialize_field("witness", failure)?;
                st.end()
            }
        }
    }
}

/// Decide `s ≈ t`.
///
/// Conditions are checked in order and the first failure is reported with a
/// witness. On success a bijection plan is built by case analysis; the only
/// error is a plan whose period would be unreasonably long.
pub fn seq_equiv(s: &CardSeq, t: &CardSeq) -> Result<SeqVerdict, CardSeqError> {
    if let Some(failure) = first_failure(s, t) {
        return Ok(SeqVerdict::NotEquivalent(failure));
    }
    plan::build(s, t).map(SeqVerdict::Equivalent)
}

fn first_failure(s: &CardSeq, t: &CardSeq) -> Option<Failure> {
    match (eventually_zero(s), eventually_zero(t)) {
        (true, false) => return Some(Failure::EventuallyZero { zero_side: Side::Left }),
        (false, true) => return Some(Failure::EventuallyZero { zero_side: Side::Right }),
        _ => {}
    }
    for kappa in threshold_test_set(s, t) {
        let below_s = eventually_below(s, kappa).expect("test set is infinite");
        let below_t = eventually_below(t, kappa).expect("test set is infinite");
        if below_s != below_t {
            let below_side = if below_s { Side::Left } else { Side::Right };
            return Some(Failure::EventuallyBelow { kappa, below_side });
        }
    }
    for (from, a, b) in [(Side::Left, s, t), (Side::Right, t, s)] {
        let bound = b.sum_bound();
        if !a.sum_bound().dominated_by(bound) {
            let excluded = bound.least_excluded().expect("an undominated bound leaves room above");
            let m = a.first_reaching(excluded).expect("the dominating side reaches past the bound");
            return Some(Failure::SumsNotDominated { from, m, partial_sum: a.partial_sum(m) });
        }
    }
    None
}
