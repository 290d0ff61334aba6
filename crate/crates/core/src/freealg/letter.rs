use std::fmt;

use serde::{Deserialize, Serialize};

use super::FreeAlgError;

/// A generator id within one level: a natural index, or an opaque symbol
/// for levels of infinite rank.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Gen {
    Index(u64),
    Symbol(String),
}

impl Gen {
    pub fn index(&self) -> Option<u64> {
        match self {
            Gen::Index(i) => Some(*i),
            Gen::Symbol(_) => None,
        }
    }
}

impl From<u64> for Gen {
    fn from(i: u64) -> Self {
        Gen::Index(i)
    }
}

impl From<&str> for Gen {
    fn from(s: &str) -> Self {
        Gen::Symbol(s.to_owned())
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Index(i) => write!(f, "{i}"),
            Gen::Symbol(s) => f.write_str(s),
        }
    }
}

/// `gen^exp` in the free factor at `level`. Encoded in JSON as
/// `[level, gen, exp]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "(u32, Gen, i64)", try_from = "(u32, Gen, i64)")]
pub struct Letter {
    pub level: u32,
    pub gen: Gen,
    pub exp: i64,
}

impl Letter {
    pub fn new(level: u32, gen: impl Into<Gen>, exp: i64) -> Result<Self, FreeAlgError> {
        if exp == 0 {
            return Err(FreeAlgError::ZeroExponent);
        }
        Ok(Letter { level, gen: gen.into(), exp })
    }

    /// Shorthand for `a_{level,gen}^exp` with a numeric generator.
    ///
    /// Panics on a zero exponent.
    pub fn idx(level: u32, gen: u64, exp: i64) -> Self {
        Letter::new(level, gen, exp).expect("nonzero exponent")
    }

    pub fn inverse(&self) -> Letter {
        Letter { level: self.level, gen: self.gen.clone(), exp: -self.exp }
    }

    /// Letters with the same key merge under multiplication.
    pub fn same_generator(&self, other: &Letter) -> bool {
        self.level == other.level && self.gen == other.gen
    }
}

impl From<Letter> for (u32, Gen, i64) {
    fn from(l: Letter) -> Self {
        (l.level, l.gen, l.exp)
    }
}

impl TryFrom<(u32, Gen, i64)> for Letter {
    type Error = FreeAlgError;

    fn try_from((level, gen, exp): (u32, Gen, i64)) -> Result<Self, Self::Error> {
        Letter::new(level, gen, exp)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a_{}", self.level)?;
        if self.gen != Gen::Index(0) {
            write!(f, ".{}", self.gen)?;
        }
        if self.exp != 1 {
            write!(f, "^{}", self.exp)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_a_triple() {
        let l = Letter::idx(2, 1, -3);
        assert_eq!(serde_json::to_string(&l).unwrap(), "[2,1,-3]");
        let s: Letter = serde_json::from_str(r#"[0,"z",1]"#).unwrap();
        assert_eq!(s.gen, Gen::Symbol("z".into()));
        assert!(serde_json::from_str::<Letter>("[0,0,0]").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Letter::idx(0, 0, 1).to_string(), "a_0");
        assert_eq!(Letter::idx(3, 2, -1).to_string(), "a_3.2^-1");
    }
}
