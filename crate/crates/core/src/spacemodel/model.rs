use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cardseq::{regroup, BlockSchema, CardSeq, Cardinal};
use crate::topword::Affine;

use super::SpaceError;

/// Id reserved for the basepoint.
pub const BASEPOINT: &str = "base";

/// A named point lying in `U_level \ U_{level+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point {
    pub id: String,
    pub level: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MaxLevel {
    /// The least `n` with `U_{n+1} ∩ C = ∅`.
    Finite(u32),
    Unbounded(ApproachesBase),
}

/// Marker serialized as the string `"approachesBase"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ApproachesBase {
    ApproachesBase,
}

impl MaxLevel {
    pub const APPROACHES_BASE: MaxLevel = MaxLevel::Unbounded(ApproachesBase::ApproachesBase);

    pub fn finite(self) -> Option<u32> {
        match self {
            MaxLevel::Finite(n) => Some(n),
            MaxLevel::Unbounded(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Component {
    pub id: String,
    pub members: Vec<String>,
    pub max_level: MaxLevel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Connectivity {
    /// Joining paths exist inside `U_k` but never inside `U_{k+1}`.
    Constant { k: u32 },
    Unbounded,
}

/// Points `x_n`, `y_n` at levels `xLevel(n)`, `yLevel(n)` converging to the
/// basepoint, with the deepest neighborhood in which they can be joined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PairFamily {
    pub x_level: Affine,
    pub y_level: Affine,
    pub same_component: bool,
    pub h: Connectivity,
    /// Component holding every `x_n`, when they share one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<String>,
}

/// A combinatorial pointed space: annulus census, named points, path
/// components and schematic pairs converging to the basepoint.
///
/// Points counted by `annuli` that are not named are anonymous singleton
/// components at their level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SpaceModel {
    pub annuli: CardSeq,
    #[serde(default)]
    pub points: Vec<Point>,
    #[serde(default)]
    pub components: Vec<Component>,
    #[serde(default)]
    pub pair_families: Vec<PairFamily>,
}

/// A broken model invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub field: String,
    pub rule: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.rule)
    }
}

impl SpaceModel {
    /// A model with the given census and nothing named.
    pub fn census(annuli: CardSeq) -> Self {
        SpaceModel { annuli, points: Vec::new(), components: Vec::new(), pair_families: Vec::new() }
    }

    /// Named points per level.
    pub fn named_counts(&self) -> BTreeMap<u32, u64> {
        let mut out = BTreeMap::new();
        for p in &self.points {
            *out.entry(p.level).or_default() += 1;
        }
        out
    }

    /// The component containing the basepoint, if declared.
    pub fn base_component(&self) -> Option<&Component> {
        self.components.iter().find(|c| c.members.iter().any(|m| m == BASEPOINT))
    }

    pub fn is_base_component(&self, id: &str) -> bool {
        self.base_component().is_some_and(|c| c.id == id)
    }

    /// `(level, generator)` of a named point: named points take the first
    /// generator indices of their level, in declaration order.
    pub fn locate(&self, id: &str) -> Option<(u32, u64)> {
        let p = self.points.iter().position(|p| p.id == id)?;
        let level = self.points[p].level;
        let gen = self.points[..p].iter().filter(|q| q.level == level).count() as u64;
        Some((level, gen))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut bad = |field: String, rule: &str| out.push(Violation { field, rule: rule.to_owned() });

        let mut ids = BTreeSet::new();
        for (i, p) in self.points.iter().enumerate() {
            if p.id == BASEPOINT {
                bad(format!("points[{i}].id"), "`base` is reserved for the basepoint");
            } else if !ids.insert(p.id.as_str()) {
                bad(format!("points[{i}].id"), "duplicate point id");
            }
        }
        for (level, count) in self.named_counts() {
            if Cardinal::Fin(count) > self.annuli.value(level as usize) {
                bad(format!("annuli[{level}]"), "fewer points in the annulus than named points at that level");
            }
        }

        let levels: BTreeMap<&str, u32> = self.points.iter().map(|p| (p.id.as_str(), p.level)).collect();
        let mut owner: BTreeMap<&str, &str> = BTreeMap::new();
        let mut comp_ids = BTreeSet::new();
        for (i, c) in self.components.iter().enumerate() {
            if !comp_ids.insert(c.id.as_str()) {
                bad(format!("components[{i}].id"), "duplicate component id");
            }
            let has_base = c.members.iter().any(|m| m == BASEPOINT);
            for m in &c.members {
                if m != BASEPOINT && !levels.contains_key(m.as_str()) {
                    bad(format!("components[{i}].members"), "member is not a named point");
                }
                if owner.insert(m.as_str(), c.id.as_str()).is_some() {
                    bad(format!("components[{i}].members"), "point belongs to two components");
                }
            }
            match (has_base, c.max_level) {
                (true, MaxLevel::Finite(_)) => {
                    bad(format!("components[{i}].maxLevel"), "the basepoint's component approaches the basepoint")
                }
                (false, MaxLevel::Unbounded(_)) => bad(
                    format!("components[{i}].maxLevel"),
                    "only the basepoint's component may approach the basepoint",
                ),
                (false, MaxLevel::Finite(n)) => {
                    if c.members.iter().any(|m| levels.get(m.as_str()).is_some_and(|l| *l > n)) {
                        bad(format!("components[{i}].maxLevel"), "a member lies deeper than the component's max level");
                    }
                    if c.members.is_empty() {
                        bad(format!("components[{i}].members"), "component has no points");
                    }
                }
                (true, MaxLevel::Unbounded(_)) => {}
            }
        }
        for (i, p) in self.points.iter().enumerate() {
            if p.id != BASEPOINT && !owner.contains_key(p.id.as_str()) {
                bad(format!("points[{i}]"), "named point belongs to no component");
            }
        }

        for (i, f) in self.pair_families.iter().enumerate() {
            for (name, schema) in [("xLevel", f.x_level), ("yLevel", f.y_level)] {
                if schema.a < 1 || schema.b < 0 {
                    bad(format!("pairFamilies[{i}].{name}"), "levels must strictly increase from a nonnegative start");
                }
            }
            if let Some(c) = &f.component {
                if !comp_ids.contains(c.as_str()) {
                    bad(format!("pairFamilies[{i}].component"), "unknown component");
                } else if f.same_component && f.h == Connectivity::Unbounded && !self.is_base_component(c) {
                    bad(
                        format!("pairFamilies[{i}]"),
                        "pairs joinable in every neighborhood would connect this component to the basepoint",
                    );
                }
            }
        }
        out
    }

    /// The model with levels collapsed by `schema`: annuli are summed over
    /// each block and every level moves to its block's index.
    pub fn regroup_levels(&self, schema: &BlockSchema) -> Result<SpaceModel, SpaceError> {
        if !self.pair_families.is_empty() {
            return Err(SpaceError::Unsupported("regrouping levels of a model with pair families".into()));
        }
        let annuli = regroup(&self.annuli, schema)?;
        let image = |level: u32| -> u32 {
            let (mut start, mut n) = (0u64, 0usize);
            loop {
                let len = schema.block_len(n) as u64;
                if (level as u64) < start + len {
                    return n as u32;
                }
                start += len;
                n += 1;
            }
        };
        let points = self.points.iter().map(|p| Point { id: p.id.clone(), level: image(p.level) }).collect();
        let components = self
            .components
            .iter()
            .map(|c| Component {
                max_level: match c.max_level {
                    MaxLevel::Finite(n) => MaxLevel::Finite(image(n)),
                    other => other,
                },
                ..c.clone()
            })
            .collect();
        Ok(SpaceModel { annuli, points, components, pair_families: Vec::new() })
    }
}
