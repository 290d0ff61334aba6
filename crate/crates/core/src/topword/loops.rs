use serde::{Deserialize, Serialize};

use super::block::{Affine, Block, LetterRule, RuleEntry};
use super::word::TopWord;
use super::TopWordError;
use crate::cardseq::CardSeq;
use crate::freealg::Letter;

/// One excursion of a loop away from the basepoint, through a named point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Excursion {
    pub point_id: String,
    pub crosses_check_line: bool,
    pub signed_traversal: i8,
}

/// A schematic excursion through the `gen`-th point of level `level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExcursionRule {
    pub level: Affine,
    #[serde(default)]
    pub gen: Affine,
    pub crosses_check_line: bool,
    pub signed_traversal: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum LoopBlock {
    Finite { excursions: Vec<Excursion> },
    Omega { pattern: Vec<ExcursionRule> },
    OmegaStar { pattern: Vec<ExcursionRule> },
}

/// A loop recorded as its sequence of excursions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinatorialLoop {
    pub blocks: Vec<LoopBlock>,
}

fn sign(s: i8) -> Result<i64, TopWordError> {
    match s {
        1 | -1 => Ok(s as i64),
        other => Err(TopWordError::InvalidRule(format!("traversal sign {other} is not ±1"))),
    }
}

/// The word of the reduced loop: excursions that stay on one side of the
/// check line contract away, each crossing one becomes a letter.
///
/// `locate` maps a point id to its `(level, generator)`.
pub fn reduce_loop(
    lp: &CombinatorialLoop,
    profile: &CardSeq,
    locate: impl Fn(&str) -> Option<(u32, u64)>,
) -> Result<TopWord, TopWordError> {
    let mut blocks = Vec::new();
    for b in &lp.blocks {
        match b {
            LoopBlock::Finite { excursions } => {
                let mut letters = Vec::new();
                for x in excursions {
                    let (level, gen) = locate(&x.point_id).ok_or_else(|| TopWordError::UnknownPoint(x.point_id.clone()))?;
                    let exp = sign(x.signed_traversal)?;
                    if x.crosses_check_line {
                        letters.push(Letter::idx(level, gen, exp));
                    }
                }
                if !letters.is_empty() {
                    blocks.push(Block::Finite(letters));
                }
            }
            LoopBlock::Omega { pattern } | LoopBlock::OmegaStar { pattern } => {
                if pattern.is_empty() {
                    return Err(TopWordError::InvalidRule("empty excursion pattern".into()));
                }
                let mut kept = Vec::new();
                for x in pattern {
                    let exp = sign(x.signed_traversal)?;
                    if x.crosses_check_line {
                        kept.push(RuleEntry::new(x.level, x.gen, Affine::constant(exp)));
                    }
                }
                if kept.is_empty() {
                    continue;
                }
                let rule = LetterRule::new(kept)?;
                blocks.push(if matches!(b, LoopBlock::Omega { .. }) { Block::Omega(rule) } else { Block::OmegaStar(rule) });
            }
        }
    }
    TopWord::new(profile.clone(), blocks)
}
