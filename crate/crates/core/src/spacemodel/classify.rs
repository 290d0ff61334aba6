use serde::Serialize;

use super::model::{Connectivity, MaxLevel, SpaceModel, BASEPOINT};
use super::SpaceError;
use crate::cardseq::{seq_equiv, CardSeq, Cardinal, SeqVerdict};
use crate::topword::Affine;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Dichotomy {
    /// Every `x_n` lies in its own path component.
    DistinctComponents,
    /// Every `x_n` lies in the named component.
    SingleComponent { component: String },
}

/// Sequences `x_n`, `y_n → basepoint`, all inside `U = U_neighborhood`,
/// with `x_n` and `y_n` joined by a path in the space but by none in `U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HorseshoeWitness {
    pub family: usize,
    pub neighborhood: u32,
    /// Index of the family's first pair lying inside `U`.
    pub start: u64,
    pub x_level: Affine,
    pub y_level: Affine,
    pub dichotomy: Dichotomy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HorseshoeVerdict {
    pub is_horseshoe: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<HorseshoeWitness>,
}

/// One point per non-basepoint component, at the component's deepest
/// level, plus the resulting census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightSection {
    /// Named components and their representative level. Anonymous points
    /// are their own representatives and only enter `invariant`.
    pub section: Vec<(String, u32)>,
    pub invariant: CardSeq,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "camelCase")]
pub enum Classification {
    #[serde(rename_all = "camelCase")]
    Horseshoe { witness: HorseshoeWitness, group_note: String },
    #[serde(rename_all = "camelCase")]
    Tpd { invariant: CardSeq, section: Vec<(String, u32)>, group_note: String },
}

impl Classification {
    pub fn is_horseshoe(&self) -> bool {
        matches!(self, Classification::Horseshoe { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub evidence: SeqVerdict,
}

fn require_valid(m: &SpaceModel) -> Result<(), SpaceError> {
    let violations = m.validate();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(SpaceError::Invalid(violations))
    }
}

fn first_index_at_least(schema: Affine, level: u32) -> u64 {
    let gap = level as i64 - schema.b;
    if gap <= 0 {
        0
    } else {
        (gap as u64).div_ceil(schema.a as u64)
    }
}

/// A model is a horseshoe exactly when some family of pairs is joined by
/// paths that cannot stay inside a fixed neighborhood.
pub fn detect_horseshoe(m: &SpaceModel) -> Result<HorseshoeVerdict, SpaceError> {
    require_valid(m)?;
    for (family, f) in m.pair_families.iter().enumerate() {
        let Connectivity::Constant { k } = f.h else { continue };
        if !f.same_component {
            continue;
        }
        let neighborhood = k + 1;
        let start = first_index_at_least(f.x_level, neighborhood).max(first_index_at_least(f.y_level, neighborhood));
        let dichotomy = match &f.component {
            Some(c) => Dichotomy::SingleComponent { component: c.clone() },
            None => Dichotomy::DistinctComponents,
        };
        let witness = HorseshoeWitness {
            family,
            neighborhood,
            start,
            x_level: f.x_level.shifted(start),
            y_level: f.y_level.shifted(start),
            dichotomy,
        };
        return Ok(HorseshoeVerdict { is_horseshoe: true, witness: Some(witness) });
    }
    Ok(HorseshoeVerdict { is_horseshoe: false, witness: None })
}

/// Pick each non-basepoint component at its deepest level. The census
/// counts anonymous points of each annulus plus named components by their
/// max level; named points themselves are absorbed into their component.
pub fn tight_section(m: &SpaceModel) -> Result<TightSection, SpaceError> {
    if detect_horseshoe(m)?.is_horseshoe {
        return Err(SpaceError::NotApplicable("a horseshoe model has no tight section".into()));
    }
    let mut section = Vec::new();
    let mut depth = 0;
    for c in &m.components {
        if let MaxLevel::Finite(n) = c.max_level {
            if !c.members.iter().any(|id| id == BASEPOINT) {
                section.push((c.id.clone(), n));
                depth = depth.max(n as usize + 1);
            }
        }
    }
    let named = m.named_counts();
    depth = depth.max(named.keys().next_back().map_or(0, |n| *n as usize + 1));
    let base = m.annuli.with_prefix_len(depth);
    let mut values = base.prefix().to_vec();
    for (level, count) in &named {
        let v = &mut values[*level as usize];
        *v = v.saturating_sub(Cardinal::Fin(*count));
    }
    for (_, n) in &section {
        values[*n as usize] = values[*n as usize] + Cardinal::ONE;
    }
    let invariant = CardSeq::new(values, base.tail().clone()).expect("tail taken from a valid sequence");
    Ok(TightSection { section, invariant })
}

pub fn classify(m: &SpaceModel) -> Result<Classification, SpaceError> {
    let verdict = detect_horseshoe(m)?;
    if let Some(witness) = verdict.witness {
        return Ok(Classification::Horseshoe {
            witness,
            group_note: "π₁ contains an embedded copy of the harmonic archipelago group and divisible elements".into(),
        });
    }
    let TightSection { section, invariant } = tight_section(m)?;
    Ok(Classification::Tpd {
        invariant,
        section,
        group_note: "π₁ ≅ topologist product of free groups F(λ_n) over the invariant".into(),
    })
}

/// Compare two non-horseshoe models through their invariants.
pub fn iso_test(a: &SpaceModel, b: &SpaceModel) -> Result<IsoVerdict, SpaceError> {
    let invariant = |m: &SpaceModel| match classify(m)? {
        Classification::Tpd { invariant, .. } => Ok(invariant),
        Classification::Horseshoe { .. } => {
            Err(SpaceError::NotApplicable("isomorphism test needs totally path disconnected models".into()))
        }
    };
    let (s, t) = (invariant(a)?, invariant(b)?);
    let evidence = seq_equiv(&s, &t)?;
    Ok(IsoVerdict { isomorphic: evidence.is_equivalent(), evidence })
}
