use super::model::{Component, Connectivity, MaxLevel, PairFamily, Point, SpaceModel, BASEPOINT};
use super::SpaceError;
use crate::cardseq::{CardSeq, Cardinal, Tail};
use crate::topword::Affine;

/// Fixed builtin names; `discrete(k)` and `bouquetSeed(<seq json>)` take
/// an argument.
pub const BUILTIN_NAMES: [&str; 3] = ["omegaPlusOne", "doubledOmega", "sineCurve"];

fn sine_curve() -> SpaceModel {
    // The arc is only known through the pairs accumulating on the limit
    // arc, so its own annuli are left schematic.
    SpaceModel {
        annuli: CardSeq::constant(Cardinal::Aleph(1)),
        points: vec![Point { id: "p0".into(), level: 0 }, Point { id: "q0".into(), level: 1 }],
        components: vec![
            Component { id: "arc".into(), members: vec!["p0".into()], max_level: MaxLevel::Finite(0) },
            Component {
                id: "limitArc".into(),
                members: vec![BASEPOINT.into(), "q0".into()],
                max_level: MaxLevel::APPROACHES_BASE,
            },
        ],
        pair_families: vec![PairFamily {
            x_level: Affine::new(1, 1),
            y_level: Affine::new(1, 1),
            same_component: true,
            h: Connectivity::Constant { k: 0 },
            component: Some("arc".into()),
        }],
    }
}

fn argument<'a>(name: &'a str, head: &str) -> Option<&'a str> {
    name.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')
}

pub fn builtin_model(name: &str) -> Result<SpaceModel, SpaceError> {
    let unknown = || SpaceError::UnknownBuiltin(name.to_owned());
    let model = match name {
        "omegaPlusOne" => SpaceModel::census(CardSeq::constant(Cardinal::ONE)),
        "doubledOmega" => SpaceModel::census(CardSeq::constant(Cardinal::Fin(2))),
        "sineCurve" => sine_curve(),
        _ => {
            if let Some(k) = argument(name, "discrete") {
                let k: u64 = k.trim().parse().map_err(|_| unknown())?;
                if k == 0 {
                    return Err(unknown());
                }
                SpaceModel::census(CardSeq::new(vec![Cardinal::Fin(k - 1)], Tail::Zero)?)
            } else if let Some(seq) = argument(name, "bouquetSeed") {
                SpaceModel::census(serde_json::from_str(seq).map_err(|_| unknown())?)
            } else {
                return Err(unknown());
            }
        }
    };
    debug_assert!(model.validate().is_empty());
    Ok(model)
}
