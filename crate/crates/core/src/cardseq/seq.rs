use serde::{Deserialize, Serialize};

use super::cardinal::Cardinal;
use super::CardSeqError;

/// How a [`CardSeq`] continues after its explicit prefix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Tail {
    Zero,
    Constant { value: Cardinal },
    Periodic { values: Vec<Cardinal> },
    /// Tail position `k` holds `ℵ_{a·k + b}`.
    IncreasingAlephs { a: u32, b: u32 },
}

/// A sequence of cardinals `(λ_n)_n` given by a finite prefix and a
/// schematic tail.
///
/// Constructed values are normalized: periodic tails whose entries are all
/// equal become constant, and a constant zero tail becomes [`Tail::Zero`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCardSeq")]
pub struct CardSeq {
    prefix: Vec<Cardinal>,
    tail: Tail,
}

#[derive(Deserialize)]
struct RawCardSeq {
    #[serde(default)]
    prefix: Vec<Cardinal>,
    tail: Tail,
}

impl TryFrom<RawCardSeq> for CardSeq {
    type Error = CardSeqError;

    fn try_from(raw: RawCardSeq) -> Result<Self, Self::Error> {
        CardSeq::new(raw.prefix, raw.tail)
    }
}

/// The supremum behaviour of the partial sums `S(M) = Σ_{n≤M} λ_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumBound {
    /// `S(M)` reaches this value and stays there.
    Attained(Cardinal),
    /// `S(M)` stays strictly below this limit cardinal and is cofinal in it.
    Below(Cardinal),
}

impl SumBound {
    /// Whether `x <= S(M)` for some `M`.
    pub fn admits(self, x: Cardinal) -> bool {
        match self {
            SumBound::Attained(a) => x <= a,
            SumBound::Below(l) => x < l,
        }
    }

    /// The least cardinal no partial sum reaches, if the universe has one.
    pub fn least_excluded(self) -> Option<Cardinal> {
        match self {
            SumBound::Attained(a) => a.successor(),
            SumBound::Below(l) => Some(l),
        }
    }

    /// Whether every partial sum bounded by `self` is reached by `other`.
    pub fn dominated_by(self, other: SumBound) -> bool {
        match (self, other) {
            (SumBound::Attained(a), o) => o.admits(a),
            (SumBound::Below(l), SumBound::Attained(b)) => l <= b,
            (SumBound::Below(l), SumBound::Below(m)) => l <= m,
        }
    }
}

impl CardSeq {
    pub fn new(prefix: Vec<Cardinal>, tail: Tail) -> Result<Self, CardSeqError> {
        let tail = match tail {
            Tail::Periodic { values } if values.is_empty() => {
                return Err(CardSeqError::EmptyPeriod);
            }
            Tail::Periodic { values } if values.iter().all(|v| *v == values[0]) => {
                Tail::Constant { value: values[0] }
            }
            Tail::IncreasingAlephs { a: 0, .. } => return Err(CardSeqError::FlatAlephs),
            other => other,
        };
        let tail = match tail {
            Tail::Constant { value } if value.is_zero() => Tail::Zero,
            other => other,
        };
        Ok(CardSeq { prefix, tail })
    }

    pub fn zero() -> Self {
        CardSeq { prefix: Vec::new(), tail: Tail::Zero }
    }

    /// A sequence that is zero after the given finite list.
    pub fn finite(prefix: Vec<Cardinal>) -> Self {
        CardSeq { prefix, tail: Tail::Zero }
    }

    pub fn constant(value: Cardinal) -> Self {
        Self::new(Vec::new(), Tail::Constant { value }).expect("constant tails are always valid")
    }

    pub fn prefix(&self) -> &[Cardinal] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    /// Number of positions after which the tail repeats (or shifts, for
    /// increasing alephs).
    pub fn tail_period(&self) -> usize {
        match &self.tail {
            Tail::Periodic { values } => values.len(),
            _ => 1,
        }
    }

    fn tail_value(&self, k: usize) -> Cardinal {
        match &self.tail {
            Tail::Zero => Cardinal::ZERO,
            Tail::Constant { value } => *value,
            Tail::Periodic { values } => values[k % values.len()],
            Tail::IncreasingAlephs { a, b } => Cardinal::Aleph(aleph_index(*a, *b, k)),
        }
    }

    /// `λ_n`.
    pub fn value(&self, n: usize) -> Cardinal {
        match self.prefix.get(n) {
            Some(c) => *c,
            None => self.tail_value(n - self.prefix.len()),
        }
    }

    pub fn values(&self, count: usize) -> Vec<Cardinal> {
        (0..count).map(|n| self.value(n)).collect()
    }

    pub fn is_eventually_zero(&self) -> bool {
        matches!(self.tail, Tail::Zero)
    }

    /// Every tail entry is finite.
    pub fn is_eventually_finite(&self) -> bool {
        match &self.tail {
            Tail::Zero => true,
            Tail::Constant { value } => value.is_finite(),
            Tail::Periodic { values } => values.iter().all(|v| v.is_finite()),
            Tail::IncreasingAlephs { .. } => false,
        }
    }

    pub fn is_all_finite(&self) -> bool {
        self.is_eventually_finite() && self.prefix.iter().all(|v| v.is_finite())
    }

    /// The largest tail entry, `None` for increasing alephs (no maximum).
    pub fn tail_max(&self) -> Option<Cardinal> {
        match &self.tail {
            Tail::Zero => Some(Cardinal::ZERO),
            Tail::Constant { value } => Some(*value),
            Tail::Periodic { values } => values.iter().copied().max(),
            Tail::IncreasingAlephs { .. } => None,
        }
    }

    /// The least infinite cardinal `κ` such that the sequence is eventually
    /// `< κ`; `None` when no cardinal of the universe qualifies (a tail
    /// that hits `ℵ_ω` infinitely often).
    pub fn eventual_threshold(&self) -> Option<Cardinal> {
        match self.tail_max() {
            None => Some(Cardinal::AlephOmega),
            Some(max) => max.infinite_successor(),
        }
    }

    /// `Σ_{n ≤ m} λ_n`.
    pub fn partial_sum(&self, m: usize) -> Cardinal {
        self.range_sum(0, m)
    }

    /// `Σ_{lo ≤ n ≤ hi} λ_n`; zero when `lo > hi`.
    pub fn range_sum(&self, lo: usize, hi: usize) -> Cardinal {
        if lo > hi {
            return Cardinal::ZERO;
        }
        let p = self.prefix.len();
        let mut total = Cardinal::ZERO;
        if lo < p {
            total = self.prefix[lo..=hi.min(p - 1)].iter().sum();
        }
        if hi < p {
            return total;
        }
        let k_lo = lo.saturating_sub(p);
        let k_hi = hi - p;
        let count = (k_hi - k_lo + 1) as u64;
        let tail_part = match &self.tail {
            Tail::Zero => Cardinal::ZERO,
            Tail::Constant { value } => value.times(count),
            Tail::Periodic { values } => {
                let len = values.len();
                if count as usize >= len {
                    let period: Cardinal = values.iter().sum();
                    let full = count / len as u64;
                    let rest = (count % len as u64) as usize;
                    let start = k_lo + (full as usize) * len;
                    period.times(full) + (start..start + rest).map(|k| values[k % len]).sum()
                } else {
                    (k_lo..=k_hi).map(|k| values[k % len]).sum()
                }
            }
            Tail::IncreasingAlephs { a, b } => Cardinal::Aleph(aleph_index(*a, *b, k_hi)),
        };
        total + tail_part
    }

    /// Supremum behaviour of the partial sums.
    pub fn sum_bound(&self) -> SumBound {
        let head: Cardinal = self.prefix.iter().sum();
        match &self.tail {
            Tail::Zero => SumBound::Attained(head),
            Tail::IncreasingAlephs { .. } => {
                if head == Cardinal::AlephOmega {
                    SumBound::Attained(head)
                } else {
                    SumBound::Below(Cardinal::AlephOmega)
                }
            }
            _ => {
                let max = self.tail_max().expect("periodic tails have a maximum");
                if max.is_infinite() {
                    SumBound::Attained(head + max)
                } else if head.is_infinite() {
                    SumBound::Attained(head)
                } else {
                    SumBound::Below(Cardinal::ALEPH_0)
                }
            }
        }
    }

    /// The least `M` with `Σ_{n≤M} λ_n ≥ x`, or `None` if the partial sums
    /// never reach `x`.
    pub fn first_reaching(&self, x: Cardinal) -> Option<usize> {
        if x.is_zero() {
            return Some(0);
        }
        let mut running = Cardinal::ZERO;
        for (n, v) in self.prefix.iter().enumerate() {
            running = running + *v;
            if running >= x {
                return Some(n);
            }
        }
        let p = self.prefix.len();
        match x {
            Cardinal::Fin(target) => {
                // running is finite here: an infinite prefix sum would have reached x
                let deficit = target - running.finite().expect("finite running sum");
                self.tail_reaching_finite(deficit).map(|k| p + k)
            }
            infinite => self.tail_first_at_least(infinite).map(|k| p + k),
        }
    }

    /// Least tail offset `k` with `Σ_{j≤k} tail_j ≥ deficit` (deficit > 0).
    fn tail_reaching_finite(&self, deficit: u64) -> Option<usize> {
        match &self.tail {
            Tail::Zero => None,
            Tail::IncreasingAlephs { .. } => Some(0),
            Tail::Constant { value } => match value {
                Cardinal::Fin(c) => Some(deficit.div_ceil(*c) as usize - 1),
                _ => Some(0),
            },
            Tail::Periodic { values } => {
                let len = values.len();
                let period: Cardinal = values.iter().sum();
                let (skip, mut left) = match period {
                    Cardinal::Fin(total) => {
                        let full = (deficit - 1) / total;
                        (full as usize * len, deficit - full * total)
                    }
                    _ => (0, deficit),
                };
                for (j, v) in values.iter().enumerate() {
                    match v {
                        Cardinal::Fin(c) if *c < left => left -= c,
                        _ => return Some(skip + j),
                    }
                }
                unreachable!("a period covers the remaining deficit")
            }
        }
    }

    /// Least tail offset `k` with `tail_k ≥ x` for infinite `x`.
    fn tail_first_at_least(&self, x: Cardinal) -> Option<usize> {
        match &self.tail {
            Tail::Zero => None,
            Tail::Constant { value } => (*value >= x).then_some(0),
            Tail::Periodic { values } => values.iter().position(|v| *v >= x),
            Tail::IncreasingAlephs { a, b } => match x {
                Cardinal::Aleph(i) if i <= *b => Some(0),
                Cardinal::Aleph(i) => Some((i - b).div_ceil(*a) as usize),
                _ => None,
            },
        }
    }

    /// Materialize the sequence so that its prefix has at least `len`
    /// entries, re-phasing the tail.
    pub fn with_prefix_len(&self, len: usize) -> CardSeq {
        let p = self.prefix.len();
        if len <= p {
            return self.clone();
        }
        let shift = len - p;
        let prefix = self.values(len);
        let tail = match &self.tail {
            Tail::Periodic { values } => {
                let l = values.len();
                Tail::Periodic { values: (0..l).map(|j| values[(j + shift) % l]).collect() }
            }
            Tail::IncreasingAlephs { a, b } => {
                Tail::IncreasingAlephs { a: *a, b: aleph_index(*a, *b, shift) }
            }
            other => other.clone(),
        };
        CardSeq { prefix, tail }
    }

    /// Replace `λ_n` for `n < overrides.len()`.
    pub fn with_values(&self, overrides: &[Cardinal]) -> CardSeq {
        let mut out = self.with_prefix_len(overrides.len());
        out.prefix[..overrides.len()].copy_from_slice(overrides);
        out
    }
}

fn aleph_index(a: u32, b: u32, k: usize) -> u32 {
    u32::try_from(k)
        .ok()
        .and_then(|k| a.checked_mul(k))
        .and_then(|ak| ak.checked_add(b))
        .expect("aleph index overflow")
}
