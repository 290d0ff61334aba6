use std::fs;
use std::path::Path;

use archipelago_core::cardseq::{regroup, seq_equiv, BlockSchema, CardSeq};
use archipelago_core::freealg::{divisibility_spectrum, kth_root, NormalForm};
use archipelago_core::spacemodel::{builtin_model, classify, iso_test, SpaceError, SpaceModel};
use archipelago_core::topword::{
    concat, eq_up_to, invert_word, phi_endo, reduce_loop, semidecide_neq, CombinatorialLoop, TopWord,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Cli, Command, SeqCommand, WordCommand};
use crate::{Failure, Outcome};

const BUILTIN_PREFIX: &str = "builtin:";

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn space_failure(e: SpaceError) -> Failure {
    match e {
        SpaceError::NotApplicable(msg) => Failure::not_applicable(msg),
        SpaceError::Invalid(violations) => {
            Failure { exit: crate::EXIT_INPUT, diagnostics: violations.iter().map(|v| v.to_string()).collect() }
        }
        other => Failure::input(other),
    }
}

/// A model given as `builtin:<name>` or as a JSON file, validated.
fn load_model(source: &str) -> Result<SpaceModel, Failure> {
    let model = match source.strip_prefix(BUILTIN_PREFIX) {
        Some(name) => builtin_model(name).map_err(space_failure)?,
        None => read(Path::new(source))?,
    };
    let violations = model.validate();
    if violations.is_empty() {
        Ok(model)
    } else {
        Err(space_failure(SpaceError::Invalid(violations)))
    }
}

fn value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn done(v: &impl Serialize) -> Result<Outcome, Failure> {
    Ok(Outcome { result: value(v), diagnostics: Vec::new() })
}

fn normal_form(nf: &NormalForm) -> Value {
    json!({ "normalForm": value(nf), "text": nf.to_string() })
}

fn word(cli: &Cli, op: &WordCommand) -> Result<Outcome, Failure> {
    let nmax = cli.nmax;
    match op {
        WordCommand::Project { n, word } => {
            let w: TopWord = read(word)?;
            Ok(Outcome { result: normal_form(&w.project(*n)), diagnostics: Vec::new() })
        }
        WordCommand::Eq { u, v } => {
            let (u, v): (TopWord, TopWord) = (read(u)?, read(v)?);
            if u.profile() != v.profile() {
                return Err(Failure::input("words have different profiles"));
            }
            let equal = eq_up_to(&u, &v, nmax);
            let mut diagnostics = Vec::new();
            if equal {
                diagnostics.push(format!("projections agree up to level {nmax}; equality beyond it is not decided"));
            }
            Ok(Outcome { result: json!({ "equalUpTo": equal, "nmax": nmax }), diagnostics })
        }
        WordCommand::Neq { u, v } => {
            let (u, v): (TopWord, TopWord) = (read(u)?, read(v)?);
            if u.profile() != v.profile() {
                return Err(Failure::input("words have different profiles"));
            }
            let at = semidecide_neq(&u, &v, nmax);
            let mut diagnostics = Vec::new();
            if at.is_none() {
                diagnostics.push(format!("not distinguished up to level {nmax}; this is not a proof of equality"));
            }
            Ok(Outcome { result: json!({ "distinguishedAt": at, "nmax": nmax }), diagnostics })
        }
        WordCommand::Concat { u, v } => {
            let (u, v): (TopWord, TopWord) = (read(u)?, read(v)?);
            done(&concat(&u, &v).map_err(Failure::input)?)
        }
        WordCommand::Invert { word } => done(&invert_word(&read(word)?)),
        WordCommand::Phi { word } => {
            let w: TopWord = read(word)?;
            done(&phi_endo(&w).map_err(Failure::input)?)
        }
        WordCommand::Root { k, word } => {
            let w: TopWord = read(word)?;
            if !w.is_finite() {
                return Err(Failure::input("roots are computed for finite words only"));
            }
            let nf = w.project(u32::MAX);
            if nf.is_identity() {
                return Err(Failure::input("the identity has a root of every order"));
            }
            let root = kth_root(&nf, *k).map_err(Failure::input)?;
            let spectrum = divisibility_spectrum(&nf, (*k).max(1)).map_err(Failure::input)?;
            Ok(Outcome {
                result: json!({
                    "k": k,
                    "root": root.as_ref().map(normal_form),
                    "spectrum": spectrum,
                }),
                diagnostics: Vec::new(),
            })
        }
        WordCommand::ReduceLoop { loop_file, model } => {
            let lp: CombinatorialLoop = read(loop_file)?;
            let m = load_model(model)?;
            done(&reduce_loop(&lp, &m.annuli, |id| m.locate(id)).map_err(Failure::input)?)
        }
    }
}

fn seq(op: &SeqCommand) -> Result<Outcome, Failure> {
    match op {
        SeqCommand::Equiv { a, b } => {
            let (s, t): (CardSeq, CardSeq) = (read(a)?, read(b)?);
            done(&seq_equiv(&s, &t).map_err(Failure::input)?)
        }
        SeqCommand::Regroup { seq, schema } => {
            let (s, g): (CardSeq, BlockSchema) = (read(seq)?, read(schema)?);
            done(&regroup(&s, &g).map_err(Failure::input)?)
        }
        SeqCommand::Sum { m, seq } => {
            let s: CardSeq = read(seq)?;
            done(&json!({ "m": m, "sum": s.partial_sum(*m) }))
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Classify { model } => done(&classify(&load_model(model)?).map_err(space_failure)?),
        Command::Iso { a, b } => done(&iso_test(&load_model(a)?, &load_model(b)?).map_err(space_failure)?),
        Command::Word(op) => word(cli, op),
        Command::Seq(op) => seq(op),
        Command::Examples { name } => {
            let source = if Path::new(name).is_file() { name.clone() } else { format!("{BUILTIN_PREFIX}{name}") };
            done(&load_model(&source)?)
        }
    }
}
