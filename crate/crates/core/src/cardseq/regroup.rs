use serde::{Deserialize, Serialize};

use super::cardinal::Cardinal;
use super::seq::{CardSeq, Tail};
use super::CardSeqError;

/// A monotone grouping `ℕ → ℕ`: consecutive runs of indices collapse to
/// one index each. Block lengths are `head` followed by `repeat` cycled
/// forever.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSchema {
    #[serde(default)]
    pub head: Vec<usize>,
    pub repeat: Vec<usize>,
}

impl BlockSchema {
    pub fn identity() -> Self {
        BlockSchema { head: Vec::new(), repeat: vec![1] }
    }

    pub fn block_len(&self, n: usize) -> usize {
        match self.head.get(n) {
            Some(l) => *l,
            None => self.repeat[(n - self.head.len()) % self.repeat.len()],
        }
    }

    fn validate(&self) -> Result<(), CardSeqError> {
        if self.repeat.is_empty() {
            return Err(CardSeqError::InfiniteFiber);
        }
        match self.head.iter().chain(&self.repeat).position(|l| *l == 0) {
            Some(n) => Err(CardSeqError::EmptyBlock(n)),
            None => Ok(()),
        }
    }
}

/// `μ_n = Σ_{m ∈ g⁻¹(n)} λ_m` for the grouping `g` described by `schema`.
pub fn regroup(s: &CardSeq, schema: &BlockSchema) -> Result<CardSeq, CardSeqError> {
    schema.validate()?;
    let p = s.prefix_len();
    let q = schema.repeat.len();
    let h = schema.head.len();
    // first block that starts inside the tail at the beginning of a repeat cycle
    let mut start = 0;
    let mut n = 0;
    while start < p || n < h || !(n - h).is_multiple_of(q) {
        start += schema.block_len(n);
        n += 1;
    }
    let mut prefix = Vec::with_capacity(n);
    let mut lo = 0;
    for k in 0..n {
        let len = schema.block_len(k);
        prefix.push(s.range_sum(lo, lo + len - 1));
        lo += len;
    }
    let block_sums = |count: usize| -> Vec<Cardinal> {
        let mut lo = start;
        (0..count)
            .map(|k| {
                let len = schema.repeat[k % q];
                let sum = s.range_sum(lo, lo + len - 1);
                lo += len;
                sum
            })
            .collect()
    };
    let tail = match s.tail() {
        Tail::Zero => Tail::Zero,
        Tail::Constant { .. } => Tail::Periodic { values: block_sums(q) },
        Tail::Periodic { values } => {
            let l = values.len();
            let cycle: usize = schema.repeat.iter().sum();
            let cycles = l / gcd(l, cycle);
            Tail::Periodic { values: block_sums(cycles * q) }
        }
        Tail::IncreasingAlephs { a, b } => {
            let m = schema.repeat[0];
            if schema.repeat.iter().any(|l| *l != m) {
                return Err(CardSeqError::Unrepresentable);
            }
            let offset = (start - p + m - 1) as u32;
            Tail::IncreasingAlephs { a: a * m as u32, b: a * offset + b }
        }
    };
    CardSeq::new(prefix, tail)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
