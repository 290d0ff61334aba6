use std::fmt;
use std::iter::Sum;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// A cardinal from the universe `{0, 1, 2, …} ∪ {ℵ_i : i ∈ ℕ} ∪ {ℵ_ω}`.
///
/// The derived order matches cardinal order: every finite cardinal is below
/// every aleph, `ℵ_i < ℵ_j` iff `i < j`, and `ℵ_ω` is the top element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Cardinal {
    #[serde(rename = "fin")]
    Fin(u64),
    #[serde(rename = "aleph")]
    Aleph(u32),
    #[serde(rename = "alephOmega")]
    AlephOmega,
}

impl Cardinal {
    pub const ZERO: Cardinal = Cardinal::Fin(0);
    pub const ONE: Cardinal = Cardinal::Fin(1);
    pub const ALEPH_0: Cardinal = Cardinal::Aleph(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Cardinal::Fin(_))
    }

    pub fn is_infinite(self) -> bool {
        !self.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self == Cardinal::ZERO
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Cardinal::Fin(k) => Some(k),
            _ => None,
        }
    }

    /// `ℵ_{i+1}` is a successor cardinal; `ℵ_0` and `ℵ_ω` are limits.
    /// Finite cardinals are neither.
    pub fn is_successor(self) -> bool {
        matches!(self, Cardinal::Aleph(i) if i > 0)
    }

    pub fn is_limit(self) -> bool {
        matches!(self, Cardinal::Aleph(0) | Cardinal::AlephOmega)
    }

    /// The least cardinal strictly greater than `self`, when it lies inside
    /// the universe (`ℵ_ω` has none).
    pub fn successor(self) -> Option<Cardinal> {
        match self {
            Cardinal::Fin(k) => Some(Cardinal::Fin(k.checked_add(1)?)),
            Cardinal::Aleph(i) => Some(Cardinal::Aleph(i.checked_add(1)?)),
            Cardinal::AlephOmega => None,
        }
    }

    /// The least infinite cardinal strictly greater than `self`.
    pub fn infinite_successor(self) -> Option<Cardinal> {
        match self {
            Cardinal::Fin(_) => Some(Cardinal::ALEPH_0),
            other => other.successor(),
        }
    }

    /// `self - other` for `other <= self`, where infinite minus smaller is
    /// the infinite cardinal itself.
    pub fn saturating_sub(self, other: Cardinal) -> Cardinal {
        match (self, other) {
            (Cardinal::Fin(a), Cardinal::Fin(b)) => Cardinal::Fin(a.saturating_sub(b)),
            (Cardinal::Fin(_), _) => Cardinal::ZERO,
            (big, _) => big,
        }
    }

    /// Repeated addition `self + self + … (n times)`.
    pub fn times(self, n: u64) -> Cardinal {
        if n == 0 {
            return Cardinal::ZERO;
        }
        match self {
            Cardinal::Fin(k) => Cardinal::Fin(k.checked_mul(n).expect("finite cardinal overflow")),
            other => other,
        }
    }
}

impl Add for Cardinal {
    type Output = Cardinal;

    fn add(self, rhs: Cardinal) -> Cardinal {
        match (self, rhs) {
            (Cardinal::Fin(a), Cardinal::Fin(b)) => {
                Cardinal::Fin(a.checked_add(b).expect("finite cardinal overflow"))
            }
            (a, b) => a.max(b),
        }
    }
}

impl Sum for Cardinal {
    fn sum<I: Iterator<Item = Cardinal>>(iter: I) -> Cardinal {
        iter.fold(Cardinal::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a Cardinal> for Cardinal {
    fn sum<I: Iterator<Item = &'a Cardinal>>(iter: I) -> Cardinal {
        iter.copied().sum()
    }
}

impl From<u64> for Cardinal {
    fn from(k: u64) -> Self {
        Cardinal::Fin(k)
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Fin(k) => write!(f, "{k}"),
            Cardinal::Aleph(i) => write!(f, "ℵ{i}"),
            Cardinal::AlephOmega => f.write_str("ℵω"),
        }
    }
}

/// Sum of a finite list of cardinals: arithmetic when every term is finite,
/// otherwise the largest term.
pub fn card_sum(cards: &[Cardinal]) -> Cardinal {
    cards.iter().sum()
}
