use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::cardinal::Cardinal;
use super::seq::{CardSeq, Tail};
use super::CardSeqError;

/// Upper bound on the number of explicit edges a plan may carry.
const EDGE_BUDGET: usize = 1_000_000;
/// Upper bound on the number of units `realize` will emit.
const UNIT_BUDGET: u64 = 1_000_000;
/// Repetitions of the periodic part checked by the audit.
const AUDIT_REPS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PlanCase {
    EventuallyZero,
    EventuallyFiniteAllFinite,
    EventuallyFiniteInfinitePrefix,
    SuccessorStable,
    LimitBackAndForth,
}

/// `card` elements of source index `src` are sent to target index `tgt`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub src: usize,
    pub tgt: usize,
    pub card: Cardinal,
}

/// A block of edges repeated forever, shifted by the strides each time.
/// Infinite edge cardinalities `ℵ_i` become `ℵ_{i + alephStep}` per
/// repetition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PeriodicEdges {
    pub edges: Vec<Edge>,
    pub src_stride: usize,
    pub tgt_stride: usize,
    pub aleph_step: u32,
}

impl PeriodicEdges {
    fn rep(&self, r: usize) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(move |e| Edge {
            src: e.src + r * self.src_stride,
            tgt: e.tgt + r * self.tgt_stride,
            card: match e.card {
                Cardinal::Aleph(i) => Cardinal::Aleph(i + self.aleph_step * r as u32),
                other => other,
            },
        })
    }

    fn min_src(&self) -> usize {
        self.edges.iter().map(|e| e.src).min().unwrap_or(0)
    }

    fn min_tgt(&self) -> usize {
        self.edges.iter().map(|e| e.tgt).min().unwrap_or(0)
    }
}

/// An eventually affine bound `M ↦ M'`: explicit values on `head`, then
/// `period[k] + q·stride` at position `head.len() + q·period.len() + k`.
/// With an empty period the last head value (or 0) is repeated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub head: Vec<usize>,
    pub period: Vec<usize>,
    pub stride: usize,
}

impl Certificate {
    pub fn bound(&self, m: usize) -> usize {
        if m < self.head.len() {
            return self.head[m];
        }
        if self.period.is_empty() {
            return self.head.last().copied().unwrap_or(0);
        }
        let k = m - self.head.len();
        let l = self.period.len();
        self.period[k % l] + (k / l) * self.stride
    }
}

/// A witness bijection `⊔λ_n → ⊔μ_n`, given as a transport plan between
/// indices together with boundedness certificates in both directions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BijectionPlan {
    pub case: PlanCase,
    pub head: Vec<Edge>,
    pub repeat: Option<PeriodicEdges>,
    /// `f(⊔_{n≤M} λ_n) ⊆ ⊔_{n≤forward(M)} μ_n`.
    pub forward: Certificate,
    /// `f⁻¹(⊔_{n≤M} μ_n) ⊆ ⊔_{n≤backward(M)} λ_n`.
    pub backward: Certificate,
}

/// One piece of an explicit realization. Units are numbered per index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Assignment {
    Unit { src: (usize, u64), tgt: (usize, u64) },
    Bulk { src: usize, tgt: usize, card: Cardinal },
}

impl BijectionPlan {
    /// Head edges followed by repetitions `0..reps` of the periodic part.
    pub fn edges(&self, reps: usize) -> Vec<Edge> {
        let mut out = self.head.clone();
        if let Some(p) = &self.repeat {
            for r in 0..reps {
                out.extend(p.rep(r));
            }
        }
        out
    }

    /// Every edge whose source index is below `m`, in plan order.
    pub fn edges_from_below(&self, m: usize) -> Vec<Edge> {
        let reps = match &self.repeat {
            Some(p) => reps_past(p.min_src(), p.src_stride, m),
            None => 0,
        };
        self.edges(reps).into_iter().filter(|e| e.src < m).collect()
    }

    /// Check the plan against the sequences: per-index sums over a window
    /// covering the head and several periods, periodic compatibility of the
    /// tails, and both certificates.
    ///
    /// Past the head, sums at an index and at the index one stride later
    /// come from shifted copies of the same edges, so a window holding
    /// several periods determines every index.
    pub fn audit(&self, s: &CardSeq, t: &CardSeq) -> Result<(), CardSeqError> {
        let mismatch = |msg: String| Err(CardSeqError::PlanMismatch(msg));
        let (edges, win_s, win_t) = match &self.repeat {
            None => {
                if !s.is_eventually_zero() || !t.is_eventually_zero() {
                    return mismatch("a finite plan needs eventually zero sequences".into());
                }
                let max_src = self.head.iter().map(|e| e.src + 1).max().unwrap_or(0);
                let max_tgt = self.head.iter().map(|e| e.tgt + 1).max().unwrap_or(0);
                (self.head.clone(), max_src.max(s.prefix_len()) + 1, max_tgt.max(t.prefix_len()) + 1)
            }
            Some(p) => {
                if p.edges.is_empty() || p.src_stride == 0 || p.tgt_stride == 0 {
                    return mismatch("degenerate periodic part".into());
                }
                check_tail_shift(s, p.min_src(), p.src_stride, p.aleph_step).map_err(CardSeqError::PlanMismatch)?;
                check_tail_shift(t, p.min_tgt(), p.tgt_stride, p.aleph_step).map_err(CardSeqError::PlanMismatch)?;
                let cert_len = |c: &Certificate| c.head.len() + 2 * c.period.len();
                let win_s = (p.min_src() + AUDIT_REPS * p.src_stride).max(cert_len(&self.forward));
                let win_t = (p.min_tgt() + AUDIT_REPS * p.tgt_stride).max(cert_len(&self.backward));
                let head_reach = self.head.iter().any(|e| e.src >= win_s || e.tgt >= win_t);
                if head_reach {
                    return mismatch("head edges reach past the periodic part".into());
                }
                let reps = reps_past(p.min_src(), p.src_stride, win_s)
                    .max(reps_past(p.min_tgt(), p.tgt_stride, win_t));
                (self.edges(reps), win_s, win_t)
            }
        };
        let mut out_sums = vec![Cardinal::ZERO; win_s];
        let mut in_sums = vec![Cardinal::ZERO; win_t];
        for e in &edges {
            if e.card.is_zero() {
                return mismatch(format!("empty edge {} -> {}", e.src, e.tgt));
            }
            if e.src < win_s {
                out_sums[e.src] = out_sums[e.src] + e.card;
            }
            if e.tgt < win_t {
                in_sums[e.tgt] = in_sums[e.tgt] + e.card;
            }
        }
        for (i, sum) in out_sums.iter().enumerate() {
            if *sum != s.value(i) {
                return mismatch(format!("source {i} sends {sum} but holds {}", s.value(i)));
            }
        }
        for (j, sum) in in_sums.iter().enumerate() {
            if *sum != t.value(j) {
                return mismatch(format!("target {j} receives {sum} but holds {}", t.value(j)));
            }
        }
        check_certificate(&self.forward, &edges, win_s, |e| (e.src, e.tgt)).map_err(|m| CardSeqError::PlanMismatch(format!("forward: {m}")))?;
        check_certificate(&self.backward, &edges, win_t, |e| (e.tgt, e.src)).map_err(|m| CardSeqError::PlanMismatch(format!("backward: {m}")))?;
        Ok(())
    }

    /// Explicit assignment of every element with source index below `m`.
    ///
    /// Elements of finite indices are numbered from 0 in plan order on both
    /// sides; an edge touching an infinite index is emitted as one bulk
    /// assignment. Raising `m` only appends.
    pub fn realize(&self, s: &CardSeq, t: &CardSeq, m: usize) -> Result<Vec<Assignment>, CardSeqError> {
        self.audit(s, t)?;
        let mut src_used: BTreeMap<usize, u64> = BTreeMap::new();
        let mut tgt_used: BTreeMap<usize, u64> = BTreeMap::new();
        let mut out = Vec::new();
        let mut units = 0u64;
        for e in self.edges_from_below(m) {
            match (s.value(e.src).is_finite() && t.value(e.tgt).is_finite(), e.card) {
                (true, Cardinal::Fin(k)) => {
                    units += k;
                    if units > UNIT_BUDGET {
                        return Err(CardSeqError::RealizationTooLarge(UNIT_BUDGET));
                    }
                    let u0 = src_used.entry(e.src).or_default();
                    let v0 = tgt_used.entry(e.tgt).or_default();
                    for d in 0..k {
                        out.push(Assignment::Unit { src: (e.src, *u0 + d), tgt: (e.tgt, *v0 + d) });
                    }
                    *u0 += k;
                    *v0 += k;
                }
                _ => out.push(Assignment::Bulk { src: e.src, tgt: e.tgt, card: e.card }),
            }
        }
        Ok(out)
    }
}

fn reps_past(min: usize, stride: usize, m: usize) -> usize {
    if m <= min {
        0
    } else {
        (m - min).div_ceil(stride)
    }
}

fn check_tail_shift(s: &CardSeq, start: usize, stride: usize, step: u32) -> Result<(), String> {
    if start < s.prefix_len() {
        return Err(format!("periodic part starts at {start}, inside the prefix"));
    }
    let ok = match s.tail() {
        Tail::IncreasingAlephs { a, .. } => (*a as usize) * stride == step as usize,
        Tail::Periodic { values } => step == 0 && stride.is_multiple_of(values.len()),
        _ => step == 0,
    };
    if ok {
        Ok(())
    } else {
        Err(format!("stride {stride} with aleph step {step} does not fit the tail"))
    }
}

fn check_certificate(
    cert: &Certificate,
    edges: &[Edge],
    window: usize,
    key: impl Fn(&Edge) -> (usize, usize),
) -> Result<(), String> {
    for m in 1..window {
        if cert.bound(m) < cert.bound(m - 1) {
            return Err(format!("not monotone at {m}"));
        }
    }
    for e in edges {
        let (from, to) = key(e);
        if from < window && to > cert.bound(from) {
            return Err(format!("edge {from} -> {to} exceeds bound {}", cert.bound(from)));
        }
    }
    Ok(())
}

/// Build a plan for sequences already known to satisfy all three
/// conditions.
pub(super) fn build(s: &CardSeq, t: &CardSeq) -> Result<BijectionPlan, CardSeqError> {
    let (case, head, repeat) = if s.is_eventually_zero() {
        let (p_s, p_t) = (s.prefix_len(), t.prefix_len());
        let total = s.partial_sum(p_s.max(1) - 1);
        let head = if total.is_finite() {
            northwest_finite(s.prefix(), t.prefix())
        } else {
            star(s, t, 0..p_s, 0..p_t)
        };
        (PlanCase::EventuallyZero, head, None)
    } else if s.is_eventually_finite() {
        if s.is_all_finite() {
            let (head, rep) = northwest_periodic(s, t, 0, 0, Vec::new())?;
            (PlanCase::EventuallyFiniteAllFinite, head, Some(rep))
        } else {
            let head = star(s, t, 0..s.prefix_len(), 0..t.prefix_len());
            let (head, rep) = northwest_periodic(s, t, s.prefix_len(), t.prefix_len(), head)?;
            (PlanCase::EventuallyFiniteInfinitePrefix, head, Some(rep))
        }
    } else if let Tail::IncreasingAlephs { .. } = s.tail() {
        let has_top = |q: &CardSeq| q.prefix().contains(&Cardinal::AlephOmega);
        let (head, rep) = if has_top(s) {
            let head = star(s, t, 0..s.prefix_len(), 0..t.prefix_len());
            northwest_periodic(s, t, s.prefix_len(), t.prefix_len(), head)?
        } else {
            northwest_periodic(s, t, 0, 0, Vec::new())?
        };
        (PlanCase::LimitBackAndForth, head, Some(rep))
    } else {
        let (l_s, l_t) = (s.tail_period(), t.tail_period());
        let (h_s, h_t) = (s.prefix_len() + l_s, t.prefix_len() + l_t);
        let head = star(s, t, 0..h_s, 0..h_t);
        let edges = star(s, t, h_s..h_s + l_s, h_t..h_t + l_t);
        let rep = PeriodicEdges { edges, src_stride: l_s, tgt_stride: l_t, aleph_step: 0 };
        (PlanCase::SuccessorStable, head, Some(rep))
    };
    let forward = certificate(&head, repeat.as_ref(), |e| (e.src, e.tgt));
    let backward = certificate(&head, repeat.as_ref(), |e| (e.tgt, e.src));
    Ok(BijectionPlan { case, head, repeat, forward, backward })
}

/// Pair two index ranges of equal infinite total through one pivot on
/// each side (the first index holding the maximum): every other source
/// goes to the target pivot, every other target is fed by the source
/// pivot, and the pivots exchange the maximum.
fn star(s: &CardSeq, t: &CardSeq, src: std::ops::Range<usize>, tgt: std::ops::Range<usize>) -> Vec<Edge> {
    let pivot = |q: &CardSeq, r: std::ops::Range<usize>| {
        let max = r.clone().map(|n| q.value(n)).max().unwrap_or(Cardinal::ZERO);
        (r.clone().find(|&n| q.value(n) == max), max)
    };
    let (Some(ps), top) = pivot(s, src.clone()) else { return Vec::new() };
    let (Some(pt), _) = pivot(t, tgt.clone()) else { return Vec::new() };
    let mut out = Vec::new();
    for i in src {
        if i == ps {
            for j in tgt.clone() {
                let card = if j == pt { top } else { t.value(j) };
                if !card.is_zero() {
                    out.push(Edge { src: i, tgt: j, card });
                }
            }
        } else if !s.value(i).is_zero() {
            out.push(Edge { src: i, tgt: pt, card: s.value(i) });
        }
    }
    out
}

/// Monotone unit transport between two finite lists of equal finite sum.
fn northwest_finite(src: &[Cardinal], tgt: &[Cardinal]) -> Vec<Edge> {
    let fin = |c: &Cardinal| c.finite().expect("finite totals have finite entries");
    let (mut i, mut j) = (0, 0);
    let (mut rem_s, mut rem_t) = (0u64, 0u64);
    let mut out = Vec::new();
    loop {
        while rem_s == 0 && i < src.len() {
            rem_s = fin(&src[i]);
            if rem_s == 0 {
                i += 1;
            }
        }
        while rem_t == 0 && j < tgt.len() {
            rem_t = fin(&tgt[j]);
            if rem_t == 0 {
                j += 1;
            }
        }
        if i >= src.len() || j >= tgt.len() {
            return out;
        }
        let m = rem_s.min(rem_t);
        out.push(Edge { src: i, tgt: j, card: Cardinal::Fin(m) });
        rem_s -= m;
        rem_t -= m;
        if rem_s == 0 {
            i += 1;
        }
        if rem_t == 0 {
            j += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum StateKey {
    Phase(usize, Cardinal, usize, Cardinal),
    Shift(i64),
}

/// Greedy transport that walks both sequences in order. Between finite
/// remainders it moves the minimum; when an infinite remainder meets a
/// smaller one, the smaller is moved whole and the larger keeps its size.
struct NorthWest<'a> {
    s: &'a CardSeq,
    t: &'a CardSeq,
    i: usize,
    j: usize,
    rem_s: Cardinal,
    rem_t: Cardinal,
}

impl<'a> NorthWest<'a> {
    fn new(s: &'a CardSeq, t: &'a CardSeq, i: usize, j: usize) -> Self {
        NorthWest { s, t, i, j, rem_s: s.value(i), rem_t: t.value(j) }
    }

    fn skip_zeros(&mut self) {
        while self.rem_s.is_zero() {
            self.i += 1;
            self.rem_s = self.s.value(self.i);
        }
        while self.rem_t.is_zero() {
            self.j += 1;
            self.rem_t = self.t.value(self.j);
        }
    }

    fn step(&mut self) -> Edge {
        let (a, b) = (self.rem_s, self.rem_t);
        let card = a.min(b);
        let edge = Edge { src: self.i, tgt: self.j, card };
        if a == b {
            self.rem_s = Cardinal::ZERO;
            self.rem_t = Cardinal::ZERO;
        } else if a < b {
            self.rem_s = Cardinal::ZERO;
            self.rem_t = b.saturating_sub(a);
        } else {
            self.rem_t = Cardinal::ZERO;
            self.rem_s = a.saturating_sub(b);
        }
        edge
    }

    /// A key that determines the rest of the walk up to a shift, available
    /// once both pointers are inside the tails.
    fn key(&self) -> Option<StateKey> {
        let (p_s, p_t) = (self.s.prefix_len(), self.t.prefix_len());
        if self.i < p_s || self.j < p_t {
            return None;
        }
        let (k, l) = (self.i - p_s, self.j - p_t);
        Some(match (self.s.tail(), self.t.tail()) {
            (Tail::IncreasingAlephs { a, b }, Tail::IncreasingAlephs { a: c, b: d }) => {
                let lhs = *a as i64 * k as i64 + *b as i64;
                let rhs = *c as i64 * l as i64 + *d as i64;
                StateKey::Shift(lhs - rhs)
            }
            _ => StateKey::Phase(k % self.s.tail_period(), self.rem_s, l % self.t.tail_period(), self.rem_t),
        })
    }
}

/// Run the greedy transport from `(i, j)` after the given head edges until
/// its state repeats, and split the result into head and periodic part.
fn northwest_periodic(
    s: &CardSeq,
    t: &CardSeq,
    i: usize,
    j: usize,
    mut edges: Vec<Edge>,
) -> Result<(Vec<Edge>, PeriodicEdges), CardSeqError> {
    let mut walk = NorthWest::new(s, t, i, j);
    let mut seen: BTreeMap<StateKey, (usize, usize, usize)> = BTreeMap::new();
    loop {
        walk.skip_zeros();
        if let Some(key) = walk.key() {
            if let Some(&(len0, i0, j0)) = seen.get(&key) {
                let period = edges.split_off(len0);
                let src_stride = walk.i - i0;
                let aleph_step = match s.tail() {
                    Tail::IncreasingAlephs { a, .. } => a * src_stride as u32,
                    _ => 0,
                };
                let rep = PeriodicEdges { edges: period, src_stride, tgt_stride: walk.j - j0, aleph_step };
                return Ok((edges, rep));
            }
            seen.insert(key, (edges.len(), walk.i, walk.j));
        }
        edges.push(walk.step());
        if edges.len() > EDGE_BUDGET {
            return Err(CardSeqError::PlanTooLarge(EDGE_BUDGET));
        }
    }
}

/// Tightest monotone bound `from ↦ max to` over the plan's edges, written
/// as an explicit head followed by an affine period.
fn certificate(head: &[Edge], repeat: Option<&PeriodicEdges>, key: impl Fn(&Edge) -> (usize, usize)) -> Certificate {
    let max_from = |es: &[Edge]| es.iter().map(|e| key(e).0 + 1).max().unwrap_or(0);
    let (edges, len, period_len, stride) = match repeat {
        None => (head.to_vec(), max_from(head), 0, 0),
        Some(p) => {
            let (stride_in, stride_out) = key(&Edge { src: p.src_stride, tgt: p.tgt_stride, card: Cardinal::ZERO });
            let start = max_from(head).max(max_from(&p.edges)) + 2 * stride_in;
            let len = start + stride_in;
            let min_in = p.edges.iter().map(|e| key(e).0).min().unwrap_or(0);
            let mut edges = head.to_vec();
            for r in 0..=reps_past(min_in, stride_in, len) {
                edges.extend(p.rep(r));
            }
            (edges, len, stride_in, stride_out)
        }
    };
    let mut values = vec![0usize; len];
    for e in &edges {
        let (from, to) = key(e);
        if from < len {
            values[from] = values[from].max(to);
        }
    }
    for m in 1..len {
        values[m] = values[m].max(values[m - 1]);
    }
    let period = values.split_off(len - period_len);
    Certificate { head: values, period, stride }
}
