use serde::{Deserialize, Serialize};

use super::TopWordError;
use crate::freealg::Letter;

/// `q ↦ a·q + b`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Affine {
    #[serde(default)]
    pub a: i64,
    #[serde(default)]
    pub b: i64,
}

impl Affine {
    pub const fn new(a: i64, b: i64) -> Self {
        Affine { a, b }
    }

    pub const fn constant(b: i64) -> Self {
        Affine { a: 0, b }
    }

    pub fn at(self, q: u64) -> i64 {
        self.a * q as i64 + self.b
    }

    /// The same map with its argument shifted: `q ↦ self(q + by)`.
    pub fn shifted(self, by: u64) -> Self {
        Affine { a: self.a, b: self.at(by) }
    }

    fn hits_zero(self) -> bool {
        match self.a {
            0 => self.b == 0,
            a => self.b % a == 0 && -self.b / a >= 0,
        }
    }
}

/// One entry of a periodic letter rule: level, generator and exponent as
/// affine functions of the repetition count `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuleEntry {
    pub level: Affine,
    #[serde(default = "zero_gen")]
    pub gen: Affine,
    #[serde(default = "unit_exp")]
    pub exp: Affine,
}

fn zero_gen() -> Affine {
    Affine::constant(0)
}

fn unit_exp() -> Affine {
    Affine::constant(1)
}

impl RuleEntry {
    pub fn new(level: Affine, gen: Affine, exp: Affine) -> Self {
        RuleEntry { level, gen, exp }
    }

    /// `a_{a·q+b}` with generator 0 and exponent `exp`.
    pub fn simple(a: i64, b: i64, exp: i64) -> Self {
        RuleEntry { level: Affine::new(a, b), gen: zero_gen(), exp: Affine::constant(exp) }
    }

    fn validate(&self) -> Result<(), TopWordError> {
        if self.level.a < 1 || self.level.b < 0 {
            return Err(TopWordError::InvalidRule("level must be a·q+b with a ≥ 1 and b ≥ 0".into()));
        }
        if self.gen.a < 0 || self.gen.b < 0 {
            return Err(TopWordError::InvalidRule("generator index must stay nonnegative".into()));
        }
        if self.exp.hits_zero() {
            return Err(TopWordError::InvalidRule("exponent vanishes at some position".into()));
        }
        Ok(())
    }

    /// Least `q` with `level(q) > n`.
    fn escape(&self, n: u32) -> u64 {
        let n = n as i64;
        if self.level.b > n {
            0
        } else {
            ((n - self.level.b) / self.level.a + 1) as u64
        }
    }
}

/// Position `k` of an infinite block holds entry `k mod P` evaluated at
/// `q = k div P`, where `P` is the pattern length.
///
/// Levels strictly increase along each entry, so every level occurs only
/// finitely often.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LetterRule {
    pattern: Vec<RuleEntry>,
}

impl LetterRule {
    pub fn new(pattern: Vec<RuleEntry>) -> Result<Self, TopWordError> {
        if pattern.is_empty() {
            return Err(TopWordError::InvalidRule("empty pattern".into()));
        }
        for e in &pattern {
            e.validate()?;
        }
        Ok(LetterRule { pattern })
    }

    /// `a_k` at position `k`, generator 0, exponent 1 (the basic ω-word).
    pub fn levels(a: i64, b: i64) -> Self {
        LetterRule { pattern: vec![RuleEntry::simple(a, b, 1)] }
    }

    pub fn pattern(&self) -> &[RuleEntry] {
        &self.pattern
    }

    pub fn period(&self) -> u64 {
        self.pattern.len() as u64
    }

    pub fn letter(&self, k: u64) -> Letter {
        let p = self.period();
        let e = &self.pattern[(k % p) as usize];
        let q = k / p;
        let level = u32::try_from(e.level.at(q)).expect("level fits in u32");
        Letter::new(level, e.gen.at(q) as u64, e.exp.at(q)).expect("validated nonzero exponent")
    }

    /// Least `K` such that every position `k ≥ K` has level `> n`.
    pub fn escape_bound(&self, n: u32) -> u64 {
        let p = self.period();
        (0..p)
            .filter_map(|j| match self.pattern[j as usize].escape(n) {
                0 => None,
                q => Some((q - 1) * p + j + 1),
            })
            .max()
            .unwrap_or(0)
    }

    /// Positions `k < escape_bound(n)` with level `≤ n`, ascending.
    pub fn low_positions(&self, n: u32) -> Vec<(u64, Letter)> {
        (0..self.escape_bound(n))
            .map(|k| (k, self.letter(k)))
            .filter(|(_, l)| l.level <= n)
            .collect()
    }

    /// The rule read from position `by` on.
    pub fn skip(&self, by: u64) -> LetterRule {
        let p = self.period();
        let (c, r) = (by / p, by % p);
        let pattern = (0..p)
            .map(|j| {
                let src = j + r;
                let shift = c + src / p;
                let e = &self.pattern[(src % p) as usize];
                RuleEntry { level: e.level.shifted(shift), gen: e.gen.shifted(shift), exp: e.exp.shifted(shift) }
            })
            .collect();
        LetterRule { pattern }
    }

    pub fn negated(&self) -> LetterRule {
        let pattern = self
            .pattern
            .iter()
            .map(|e| RuleEntry { exp: Affine::new(-e.exp.a, -e.exp.b), ..*e })
            .collect();
        LetterRule { pattern }
    }
}

/// A piece of a word domain: a finite run, an ω-sequence read left to
/// right, or an ω*-sequence whose position `k` counts from the right end.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBlock", into = "RawBlock")]
pub enum Block {
    Finite(Vec<Letter>),
    Omega(LetterRule),
    OmegaStar(LetterRule),
}

impl Block {
    /// Letters of level `≤ n` in domain order.
    pub fn letters_up_to(&self, n: u32) -> Vec<Letter> {
        match self {
            Block::Finite(ls) => ls.iter().filter(|l| l.level <= n).cloned().collect(),
            Block::Omega(rule) => rule.low_positions(n).into_iter().map(|(_, l)| l).collect(),
            Block::OmegaStar(rule) => rule.low_positions(n).into_iter().rev().map(|(_, l)| l).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
enum BlockKind {
    Finite,
    Omega,
    OmegaStar,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawBlock {
    kind: BlockKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    letters: Option<Vec<Letter>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    level: Option<Affine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gen: Option<Affine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exp: Option<Affine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pattern: Option<Vec<RuleEntry>>,
}

impl TryFrom<RawBlock> for Block {
    type Error = TopWordError;

    fn try_from(raw: RawBlock) -> Result<Self, Self::Error> {
        let has_rule = raw.level.is_some() || raw.gen.is_some() || raw.exp.is_some() || raw.pattern.is_some();
        match raw.kind {
            BlockKind::Finite => match (raw.letters, has_rule) {
                (Some(ls), false) => Ok(Block::Finite(ls)),
                _ => Err(TopWordError::InvalidRule("a finite block takes only `letters`".into())),
            },
            kind => {
                if raw.letters.is_some() {
                    return Err(TopWordError::InvalidRule("an infinite block takes a rule, not `letters`".into()));
                }
                let pattern = match (raw.pattern, raw.level) {
                    (Some(p), None) if raw.gen.is_none() && raw.exp.is_none() => p,
                    (None, Some(level)) => vec![RuleEntry {
                        level,
                        gen: raw.gen.unwrap_or_else(zero_gen),
                        exp: raw.exp.unwrap_or_else(unit_exp),
                    }],
                    _ => return Err(TopWordError::InvalidRule("give either `pattern` or `level`/`gen`/`exp`".into())),
                };
                let rule = LetterRule::new(pattern)?;
                Ok(if kind == BlockKind::Omega { Block::Omega(rule) } else { Block::OmegaStar(rule) })
            }
        }
    }
}

impl From<Block> for RawBlock {
    fn from(b: Block) -> Self {
        let empty = RawBlock { kind: BlockKind::Finite, letters: None, level: None, gen: None, exp: None, pattern: None };
        let (kind, rule) = match b {
            Block::Finite(ls) => return RawBlock { letters: Some(ls), ..empty },
            Block::Omega(r) => (BlockKind::Omega, r),
            Block::OmegaStar(r) => (BlockKind::OmegaStar, r),
        };
        match rule.pattern.as_slice() {
            [e] => RawBlock { kind, level: Some(e.level), gen: Some(e.gen), exp: Some(e.exp), ..empty },
            _ => RawBlock { kind, pattern: Some(rule.pattern), ..empty },
        }
    }
}
