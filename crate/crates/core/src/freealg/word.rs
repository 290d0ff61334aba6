use std::fmt;

use serde::{Deserialize, Serialize};

use super::letter::Letter;
use super::FreeAlgError;
use crate::cardseq::{CardSeq, Cardinal};

/// Push `l` onto a reduced stack, merging with or cancelling the top.
fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    if let Some(top) = stack.last_mut() {
        if top.same_generator(&l) {
            top.exp += l.exp;
            if top.exp == 0 {
                stack.pop();
            }
            return;
        }
    }
    stack.push(l);
}

fn reduce_all(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut stack = Vec::new();
    for l in letters {
        push_reduced(&mut stack, l);
    }
    stack
}

/// A freely reduced word in a single free factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FreeWord {
    level: u32,
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Freely reduce a word whose letters all live at one level.
pub fn reduce_free(letters: &[Letter]) -> Result<FreeWord, FreeAlgError> {
    let level = letters.first().map_or(0, |l| l.level);
    if let Some(bad) = letters.iter().find(|l| l.level != level) {
        return Err(FreeAlgError::LevelMismatch { expected: level, found: bad.level });
    }
    Ok(FreeWord { level, letters: reduce_all(letters.iter().cloned()) })
}

/// Canonical form of an element of a finite free product of free groups.
///
/// The product of free groups is free on the union of the generators, so
/// the element is stored as one freely reduced letter string; its
/// syllables are the maximal runs of equal level.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalForm {
    letters: Vec<Letter>,
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm::default()
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        NormalForm { letters: reduce_all(letters) }
    }

    pub fn letter(l: Letter) -> Self {
        NormalForm { letters: vec![l] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of merged letters `g^e`.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Length with exponents expanded, `Σ |e|`.
    pub fn letter_length(&self) -> u64 {
        self.letters.iter().map(|l| l.exp.unsigned_abs()).sum()
    }

    /// Largest level present, `None` for the identity.
    pub fn level_bound(&self) -> Option<u32> {
        self.letters.iter().map(|l| l.level).max()
    }

    pub fn syllables(&self) -> Vec<FreeWord> {
        let mut out: Vec<FreeWord> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some(s) if s.level == l.level => s.letters.push(l.clone()),
                _ => out.push(FreeWord { level: l.level, letters: vec![l.clone()] }),
            }
        }
        out
    }

    /// Image under the retraction that kills every level above `n`.
    pub fn restrict(&self, n: u32) -> NormalForm {
        NormalForm::from_letters(self.letters.iter().filter(|l| l.level <= n).cloned())
    }

    pub fn pow(&self, k: i64) -> NormalForm {
        let base = if k < 0 { invert(self) } else { self.clone() };
        let mut out = NormalForm::identity();
        for _ in 0..k.unsigned_abs() {
            out = multiply(&out, &base);
        }
        out
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("ε");
        }
        for s in self.syllables() {
            f.write_str("[")?;
            for l in &s.letters {
                write!(f, "{l}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

impl Serialize for NormalForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            syllables: Vec<&'a [Letter]>,
        }
        let mut syllables = Vec::new();
        let mut start = 0;
        for (i, l) in self.letters.iter().enumerate() {
            if i + 1 == self.letters.len() || self.letters[i + 1].level != l.level {
                syllables.push(&self.letters[start..=i]);
                start = i + 1;
            }
        }
        Out { syllables }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NormalForm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct In {
            syllables: Vec<Vec<Letter>>,
        }
        let raw = In::deserialize(deserializer)?;
        normal_form(&raw.syllables).map_err(serde::de::Error::custom)
    }
}

/// Normal form of a product of syllables, each a single-level letter list.
pub fn normal_form(syllables: &[Vec<Letter>]) -> Result<NormalForm, FreeAlgError> {
    let mut stack = Vec::new();
    for s in syllables {
        for l in reduce_free(s)?.letters {
            push_reduced(&mut stack, l);
        }
    }
    Ok(NormalForm { letters: stack })
}

pub fn multiply(u: &NormalForm, v: &NormalForm) -> NormalForm {
    let mut letters = u.letters.clone();
    for l in &v.letters {
        push_reduced(&mut letters, l.clone());
    }
    NormalForm { letters }
}

pub fn invert(u: &NormalForm) -> NormalForm {
    NormalForm { letters: u.letters.iter().rev().map(Letter::inverse).collect() }
}

/// The free product `∗_n F(λ_n)` with declared ranks, used to check that
/// operands only use declared generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProduct {
    ranks: CardSeq,
}

impl FreeProduct {
    pub fn new(ranks: CardSeq) -> Self {
        FreeProduct { ranks }
    }

    pub fn ranks(&self) -> &CardSeq {
        &self.ranks
    }

    pub fn declares(&self, l: &Letter) -> bool {
        use super::letter::Gen;
        match (self.ranks.value(l.level as usize), &l.gen) {
            (Cardinal::Fin(k), Gen::Index(g)) => g < &k,
            (Cardinal::Fin(_), Gen::Symbol(_)) => false,
            _ => true,
        }
    }

    pub fn check(&self, u: &NormalForm) -> Result<(), FreeAlgError> {
        match u.letters.iter().find(|l| !self.declares(l)) {
            Some(l) => Err(FreeAlgError::UndeclaredGenerator { level: l.level, gen: l.gen.clone() }),
            None => Ok(()),
        }
    }

    pub fn multiply(&self, u: &NormalForm, v: &NormalForm) -> Result<NormalForm, FreeAlgError> {
        self.check(u)?;
        self.check(v)?;
        Ok(multiply(u, v))
    }
}
