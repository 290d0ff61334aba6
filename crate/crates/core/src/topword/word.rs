use serde::{Deserialize, Serialize};

use super::block::{Block, LetterRule};
use super::TopWordError;
use crate::cardseq::CardSeq;
use crate::freealg::{FreeProduct, Letter, NormalForm};

/// A word in the topologist product of the free groups `F(λ_n)`, where
/// `λ_n` is given by `profile`. Its domain is the ordered concatenation of
/// its blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawWord")]
pub struct TopWord {
    profile: CardSeq,
    blocks: Vec<Block>,
}

#[derive(Deserialize)]
struct RawWord {
    profile: CardSeq,
    blocks: Vec<Block>,
}

impl TryFrom<RawWord> for TopWord {
    type Error = TopWordError;

    fn try_from(raw: RawWord) -> Result<Self, Self::Error> {
        TopWord::new(raw.profile, raw.blocks)
    }
}

impl TopWord {
    /// Build a word, checking every letter against the profile.
    pub fn new(profile: CardSeq, blocks: Vec<Block>) -> Result<Self, TopWordError> {
        let fp = FreeProduct::new(profile);
        for b in &blocks {
            match b {
                Block::Finite(ls) => {
                    if let Some(l) = ls.iter().find(|l| !fp.declares(l)) {
                        return Err(TopWordError::Undeclared(l.clone()));
                    }
                }
                Block::Omega(rule) | Block::OmegaStar(rule) => check_rule(&fp, rule)?,
            }
        }
        Ok(TopWord { profile: fp.ranks().clone(), blocks })
    }

    pub fn empty(profile: CardSeq) -> Self {
        TopWord { profile, blocks: Vec::new() }
    }

    pub fn finite(profile: CardSeq, letters: Vec<Letter>) -> Result<Self, TopWordError> {
        TopWord::new(profile, vec![Block::Finite(letters)])
    }

    pub fn profile(&self) -> &CardSeq {
        &self.profile
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_finite(&self) -> bool {
        self.blocks.iter().all(|b| matches!(b, Block::Finite(_)))
    }

    /// Every letter, in order, when all blocks are finite.
    pub fn finite_letters(&self) -> Option<Vec<Letter>> {
        let mut out = Vec::new();
        for b in &self.blocks {
            match b {
                Block::Finite(ls) => out.extend(ls.iter().cloned()),
                _ => return None,
            }
        }
        Some(out)
    }

    /// Letters of level `≤ n` in domain order.
    pub fn letters_up_to(&self, n: u32) -> Vec<Letter> {
        self.blocks.iter().flat_map(|b| b.letters_up_to(n)).collect()
    }

    /// Image in `∗_{m≤n} F(λ_m)`: delete every letter above level `n`.
    pub fn project(&self, n: u32) -> NormalForm {
        NormalForm::from_letters(self.letters_up_to(n))
    }

    /// Delete every letter of level `≤ n`.
    pub fn tail_retract(&self, n: u32) -> TopWord {
        let mut blocks = Vec::new();
        let push_finite = |blocks: &mut Vec<Block>, ls: Vec<Letter>| {
            if !ls.is_empty() {
                blocks.push(Block::Finite(ls));
            }
        };
        for b in &self.blocks {
            match b {
                Block::Finite(ls) => push_finite(&mut blocks, ls.iter().filter(|l| l.level > n).cloned().collect()),
                Block::Omega(rule) => {
                    let k = rule.escape_bound(n);
                    let head = (0..k).map(|i| rule.letter(i)).filter(|l| l.level > n).collect();
                    push_finite(&mut blocks, head);
                    blocks.push(Block::Omega(rule.skip(k)));
                }
                Block::OmegaStar(rule) => {
                    let k = rule.escape_bound(n);
                    blocks.push(Block::OmegaStar(rule.skip(k)));
                    let end = (0..k).rev().map(|i| rule.letter(i)).filter(|l| l.level > n).collect();
                    push_finite(&mut blocks, end);
                }
            }
        }
        TopWord { profile: self.profile.clone(), blocks }
    }
}

/// Check every generator an infinite rule can produce.
///
/// Past the profile's prefix the rank only depends on the level modulo the
/// tail period, so one extra period of repetitions covers every case; a
/// growing generator index additionally needs infinite rank there.
fn check_rule(fp: &FreeProduct, rule: &LetterRule) -> Result<(), TopWordError> {
    let prefix = fp.ranks().prefix_len() as u64;
    let period = fp.ranks().tail_period() as u64;
    let p = rule.period();
    for (j, e) in rule.pattern().iter().enumerate() {
        let settled = prefix.div_ceil(e.level.a as u64);
        for q in 0..settled + period + 1 {
            let l = rule.letter(q * p + j as u64);
            if !fp.declares(&l) {
                return Err(TopWordError::Undeclared(l));
            }
            if e.gen.a > 0 && q >= settled && fp.ranks().value(l.level as usize).is_finite() {
                return Err(TopWordError::InvalidRule(format!(
                    "generator index grows without bound at finite-rank level {}",
                    l.level
                )));
            }
        }
    }
    Ok(())
}

pub fn concat(u: &TopWord, v: &TopWord) -> Result<TopWord, TopWordError> {
    if u.profile != v.profile {
        return Err(TopWordError::ProfileMismatch);
    }
    let blocks = u.blocks.iter().chain(&v.blocks).cloned().collect();
    Ok(TopWord { profile: u.profile.clone(), blocks })
}

/// Reverse the domain and invert every letter.
pub fn invert_word(w: &TopWord) -> TopWord {
    let blocks = w
        .blocks
        .iter()
        .rev()
        .map(|b| match b {
            Block::Finite(ls) => Block::Finite(ls.iter().rev().map(Letter::inverse).collect()),
            Block::Omega(rule) => Block::OmegaStar(rule.negated()),
            Block::OmegaStar(rule) => Block::Omega(rule.negated()),
        })
        .collect();
    TopWord { profile: w.profile.clone(), blocks }
}

/// Whether `u` and `v` agree in every projection up to level `n`.
pub fn eq_up_to(u: &TopWord, v: &TopWord, n: u32) -> bool {
    u.project(n) == v.project(n)
}

/// The least level `≤ n_max` where the projections differ. `None` only
/// means no difference was found that low.
pub fn semidecide_neq(u: &TopWord, v: &TopWord, n_max: u32) -> Option<u32> {
    (0..=n_max).find(|&n| !eq_up_to(u, v, n))
}
