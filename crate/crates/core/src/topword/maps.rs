use super::block::{Affine, Block, LetterRule, RuleEntry};
use super::word::TopWord;
use super::TopWordError;
use crate::cardseq::{CardSeq, Cardinal, Tail};
use crate::freealg::Letter;

/// Whether every factor is `ℤ`, i.e. `λ_n = 1` for all `n`.
pub fn is_integer_profile(profile: &CardSeq) -> bool {
    profile.prefix().iter().all(|c| *c == Cardinal::ONE) && profile.tail() == &Tail::Constant { value: Cardinal::ONE }
}

fn require_integer_profile(w: &TopWord) -> Result<(), TopWordError> {
    if is_integer_profile(w.profile()) {
        Ok(())
    } else {
        Err(TopWordError::NotIntegerProfile)
    }
}

/// The enumeration of `⊔_n r_n` level by level, generator by generator.
#[derive(Clone, Debug)]
pub struct Reindexing {
    sizes: CardSeq,
    prefix_total: u64,
    tail: Vec<u64>,
    tail_total: u64,
}

impl Reindexing {
    pub fn new(sizes: CardSeq) -> Result<Self, TopWordError> {
        if sizes.is_eventually_zero() {
            return Err(TopWordError::InvalidReindexing("the sizes are eventually zero, so the union is finite".into()));
        }
        if !sizes.is_all_finite() {
            return Err(TopWordError::InvalidReindexing(
                "an infinite size would give one level infinitely many letters".into(),
            ));
        }
        let fin = |c: &Cardinal| c.finite().expect("all finite");
        let prefix_total = sizes.prefix().iter().map(fin).sum();
        let tail: Vec<u64> = (0..sizes.tail_period()).map(|k| fin(&sizes.value(sizes.prefix_len() + k))).collect();
        let tail_total = tail.iter().sum();
        Ok(Reindexing { sizes, prefix_total, tail, tail_total })
    }

    pub fn sizes(&self) -> &CardSeq {
        &self.sizes
    }

    /// `(level, generator)` of the `m`-th element.
    pub fn image(&self, m: u64) -> (u32, u64) {
        let (base, mut rest) = if m < self.prefix_total {
            (0, m)
        } else {
            let m = m - self.prefix_total;
            let t = m / self.tail_total;
            (self.sizes.prefix_len() as u64 + t * self.tail.len() as u64, m % self.tail_total)
        };
        let sizes: Box<dyn Iterator<Item = u64>> = if m < self.prefix_total {
            Box::new(self.sizes.prefix().iter().map(|c| c.finite().expect("all finite")))
        } else {
            Box::new(self.tail.iter().copied())
        };
        for (idx, size) in sizes.enumerate() {
            if rest < size {
                return ((base + idx as u64) as u32, rest);
            }
            rest -= size;
        }
        unreachable!("offset lies inside one enumeration period")
    }

    fn letter(&self, l: &Letter) -> Letter {
        let (level, gen) = self.image(l.level as u64);
        Letter::idx(level, gen, l.exp)
    }

    /// Image of a rule all of whose levels are at least `prefix_total`.
    ///
    /// Past the prefix the enumeration is periodic: advancing by one tail
    /// sum moves the level by one tail period and keeps the generator, so
    /// splitting each repetition count by its residue mod the tail sum
    /// gives an affine pattern again.
    fn rule(&self, rule: &LetterRule) -> LetterRule {
        let s = self.tail_total;
        let t = self.tail.len() as i64;
        let mut pattern = Vec::new();
        for r in 0..s {
            for e in rule.pattern() {
                let m = e.level.at(r) as u64;
                let (level, gen) = self.image(m);
                pattern.push(RuleEntry {
                    level: Affine::new(e.level.a * t, level as i64),
                    gen: Affine::constant(gen as i64),
                    exp: Affine::new(e.exp.a * s as i64, e.exp.at(r)),
                });
            }
        }
        LetterRule::new(pattern).expect("image rule keeps levels increasing")
    }
}

/// Substitute the `m`-th generator of `⊔ r_n` for each `a_m`, turning a
/// word over `ℤ` factors into a word over the factors `F(r_n)`.
pub fn reindex_iso(w: &TopWord, sizes: &CardSeq) -> Result<TopWord, TopWordError> {
    require_integer_profile(w)?;
    let g = Reindexing::new(sizes.clone())?;
    let threshold = g.prefix_total;
    let mut blocks = Vec::new();
    for b in w.blocks() {
        match b {
            Block::Finite(ls) => blocks.push(Block::Finite(ls.iter().map(|l| g.letter(l)).collect())),
            Block::Omega(rule) | Block::OmegaStar(rule) => {
                let k = match threshold {
                    0 => 0,
                    t => rule.escape_bound(u32::try_from(t - 1).expect("prefix total fits in u32")),
                };
                let head: Vec<Letter> = (0..k).map(|i| g.letter(&rule.letter(i))).collect();
                let body = g.rule(&rule.skip(k));
                if let Block::Omega(_) = b {
                    if !head.is_empty() {
                        blocks.push(Block::Finite(head));
                    }
                    blocks.push(Block::Omega(body));
                } else {
                    blocks.push(Block::OmegaStar(body));
                    if !head.is_empty() {
                        blocks.push(Block::Finite(head.into_iter().rev().collect()));
                    }
                }
            }
        }
    }
    TopWord::new(sizes.clone(), blocks)
}

/// The endomorphism of `⨳∏ℤ` induced by `a_n ↦ a_{2n} a_{2n+1}⁻¹`.
pub fn phi_endo(w: &TopWord) -> Result<TopWord, TopWordError> {
    require_integer_profile(w)?;
    let image = |l: &Letter| -> Vec<Letter> {
        let s = l.exp.signum();
        let pair = if s > 0 {
            [Letter::idx(2 * l.level, 0, 1), Letter::idx(2 * l.level + 1, 0, -1)]
        } else {
            [Letter::idx(2 * l.level + 1, 0, 1), Letter::idx(2 * l.level, 0, -1)]
        };
        pair.iter().cycle().take(2 * l.exp.unsigned_abs() as usize).cloned().collect()
    };
    let mut blocks = Vec::new();
    for b in w.blocks() {
        blocks.push(match b {
            Block::Finite(ls) => Block::Finite(ls.iter().flat_map(image).collect()),
            Block::Omega(rule) => Block::Omega(phi_rule(rule, false)?),
            Block::OmegaStar(rule) => Block::OmegaStar(phi_rule(rule, true)?),
        });
    }
    TopWord::new(w.profile().clone(), blocks)
}

/// Each entry `a_{a·q+b}^e` becomes `|e|` copies of the two-letter image;
/// in an ω*-block positions count from the right, so the image is listed
/// backwards.
fn phi_rule(rule: &LetterRule, reversed: bool) -> Result<LetterRule, TopWordError> {
    let mut pattern = Vec::new();
    for e in rule.pattern() {
        if e.exp.a != 0 {
            return Err(TopWordError::Unrepresentable(
                "the image of a rule with varying exponents has no periodic pattern".into(),
            ));
        }
        let s = e.exp.b.signum();
        let even = Affine::new(2 * e.level.a, 2 * e.level.b);
        let odd = Affine::new(2 * e.level.a, 2 * e.level.b + 1);
        let pair = if s > 0 { [(even, 1), (odd, -1)] } else { [(odd, 1), (even, -1)] };
        let mut image: Vec<RuleEntry> = pair
            .iter()
            .cycle()
            .take(2 * e.exp.b.unsigned_abs() as usize)
            .map(|&(level, exp)| RuleEntry::new(level, Affine::constant(0), Affine::constant(exp)))
            .collect();
        if reversed {
            image.reverse();
        }
        pattern.extend(image);
    }
    LetterRule::new(pattern)
}
