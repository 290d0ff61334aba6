//! Seeded generators and naive oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use archipelago_core::cardseq::{CardSeq, Cardinal, Tail};
use archipelago_core::freealg::{Letter, NormalForm};
use archipelago_core::spacemodel::{Component, MaxLevel, Point, SpaceModel};
use archipelago_core::topword::{Affine, Block, LetterRule, RuleEntry, TopWord};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A letter of exponent ±1 as `(level, gen, sign)`.
pub type Unit = (u32, u64, i64);

pub fn expand(letters: &[Letter]) -> Vec<Unit> {
    let mut out = Vec::new();
    for l in letters {
        let g = l.gen.index().expect("indexed generator");
        for _ in 0..l.exp.unsigned_abs() {
            out.push((l.level, g, l.exp.signum()));
        }
    }
    out
}

/// Free reduction by repeated left-to-right scans deleting `x x⁻¹`.
pub fn naive_reduce(word: &[Unit]) -> Vec<Unit> {
    let mut w = word.to_vec();
    loop {
        let hit = w.windows(2).position(|p| p[0].0 == p[1].0 && p[0].1 == p[1].1 && p[0].2 == -p[1].2);
        match hit {
            Some(i) => {
                w.drain(i..i + 2);
            }
            None => return w,
        }
    }
}

pub fn nf_units(nf: &NormalForm) -> Vec<Unit> {
    expand(nf.letters())
}

pub fn inverse_units(w: &[Unit]) -> Vec<Unit> {
    w.iter().rev().map(|&(l, g, e)| (l, g, -e)).collect()
}

pub fn random_letters(r: &mut impl Rng, len: usize, max_level: u32, gens: u64, max_exp: i64) -> Vec<Letter> {
    (0..len)
        .map(|_| {
            let e = r.gen_range(1..=max_exp) * if r.gen_bool(0.5) { 1 } else { -1 };
            Letter::idx(r.gen_range(0..=max_level), r.gen_range(0..gens), e)
        })
        .collect()
}

/// Letters with small alphabets so that cancellation is frequent.
pub fn random_nf(r: &mut impl Rng, max_len: usize, max_level: u32, gens: u64) -> NormalForm {
    let len = r.gen_range(0..=max_len);
    NormalForm::from_letters(random_letters(r, len, max_level, gens, 2))
}

pub fn two_gen_profile() -> CardSeq {
    CardSeq::constant(Cardinal::Fin(2))
}

pub fn integer_profile() -> CardSeq {
    CardSeq::constant(Cardinal::ONE)
}

fn random_rule(r: &mut impl Rng, gens: u64) -> LetterRule {
    let period = r.gen_range(1..=3);
    let pattern = (0..period)
        .map(|_| {
            let exp = r.gen_range(1..=2) * if r.gen_bool(0.5) { 1 } else { -1 };
            RuleEntry::new(
                Affine::new(r.gen_range(1..=3), r.gen_range(0..=4)),
                Affine::constant(r.gen_range(0..gens) as i64),
                Affine::constant(exp),
            )
        })
        .collect();
    LetterRule::new(pattern).expect("generated rules are valid")
}

pub fn random_block(r: &mut impl Rng, gens: u64) -> Block {
    match r.gen_range(0..3) {
        0 => {
            let len = r.gen_range(0..=5);
            Block::Finite(random_letters(r, len, 5, gens, 2))
        }
        1 => Block::Omega(random_rule(r, gens)),
        _ => Block::OmegaStar(random_rule(r, gens)),
    }
}

/// A word over `profile`, whose levels all carry at least `gens` generators.
pub fn random_word(r: &mut impl Rng, profile: &CardSeq, gens: u64) -> TopWord {
    let n = r.gen_range(0..=3);
    let blocks = (0..n).map(|_| random_block(r, gens)).collect();
    TopWord::new(profile.clone(), blocks).expect("letters are declared")
}

/// Every letter of level `≤ n`, found by scanning `scan` positions of each
/// infinite block. The generators keep `escape_bound(16)` below 60.
pub fn scan_project(w: &TopWord, n: u32, scan: u64) -> Vec<Unit> {
    let mut out = Vec::new();
    for b in w.blocks() {
        let mut ls: Vec<Letter> = match b {
            Block::Finite(ls) => ls.clone(),
            Block::Omega(rule) | Block::OmegaStar(rule) => (0..scan).map(|k| rule.letter(k)).collect(),
        };
        if matches!(b, Block::OmegaStar(_)) {
            ls.reverse();
        }
        out.extend(expand(&ls.into_iter().filter(|l| l.level <= n).collect::<Vec<_>>()));
    }
    naive_reduce(&out)
}

/// Reduced words of length exactly `len` over `alphabet` (each entry with
/// its inverse available).
pub fn reduced_words(alphabet: &[(u32, u64)], len: usize) -> Vec<Vec<Unit>> {
    let letters: Vec<Unit> = alphabet.iter().flat_map(|&(l, g)| [(l, g, 1), (l, g, -1)]).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &out {
            for x in &letters {
                if w.last().is_some_and(|y: &Unit| y.0 == x.0 && y.1 == x.1 && y.2 == -x.2) {
                    continue;
                }
                let mut v = w.clone();
                v.push(*x);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

pub fn power_units(w: &[Unit], k: usize) -> Vec<Unit> {
    naive_reduce(&w.repeat(k))
}

/// `{k ≤ k_max : ∃ r, r^k = u}` by search over every reduced `r` on the
/// generators of `u`. A root `r = c·s·c⁻¹` with `s` cyclically reduced has
/// `|r^k| = 2|c| + k|s|`, which bounds the search.
pub fn brute_spectrum(u: &[Unit], k_max: u32) -> BTreeSet<u32> {
    let alphabet: BTreeSet<(u32, u64)> = u.iter().map(|&(l, g, _)| (l, g)).collect();
    let alphabet: Vec<_> = alphabet.into_iter().collect();
    let mut out = BTreeSet::new();
    for len in 1..=u.len() {
        for r in reduced_words(&alphabet, len) {
            let mut c = 0;
            while 2 * c + 1 < r.len() {
                let (x, y) = (r[c], r[r.len() - 1 - c]);
                if x.0 == y.0 && x.1 == y.1 && x.2 == -y.2 {
                    c += 1;
                } else {
                    break;
                }
            }
            let s = r.len() - 2 * c;
            for k in 1..=k_max {
                if 2 * c + k as usize * s == u.len() && power_units(&r, k as usize) == u {
                    out.insert(k);
                }
            }
        }
    }
    out
}

/// Whether a bijection `⊔s → ⊔t` exists whose forward and backward block
/// displacement is bounded; for finite supports every bijection qualifies,
/// so this searches permutations and checks both certificates on each.
pub fn brute_finite_bijection(s: &[u64], t: &[u64]) -> bool {
    let src: Vec<usize> = s.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect();
    let tgt: Vec<usize> = t.iter().enumerate().flat_map(|(j, &k)| std::iter::repeat_n(j, k as usize)).collect();
    if src.len() != tgt.len() {
        return false;
    }
    let mut perm: Vec<usize> = (0..tgt.len()).collect();
    loop {
        let forward = (0..s.len()).all(|m| src.iter().zip(&perm).filter(|(i, _)| **i <= m).all(|(_, p)| tgt[*p] < t.len()));
        let backward = (0..t.len()).all(|m| tgt.iter().enumerate().filter(|(_, j)| **j <= m).all(|(p, _)| {
            perm.iter().position(|q| *q == p).is_some_and(|i| src[i] < s.len())
        }));
        if forward && backward {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Finite lists of length `len` with entries summing to at most `total`.
pub fn bounded_lists(len: usize, total: u64) -> Vec<Vec<u64>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in bounded_lists(len - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn fin(ks: &[u64]) -> Vec<Cardinal> {
    ks.iter().map(|k| Cardinal::Fin(*k)).collect()
}

/// Sequences with infinite or periodic tails covering every construction
/// of the equivalence decision.
pub fn infinite_corpus() -> Vec<CardSeq> {
    let prefixes: Vec<Vec<Cardinal>> = vec![
        vec![],
        fin(&[0]),
        fin(&[3, 0, 1]),
        vec![Cardinal::ALEPH_0],
        vec![Cardinal::Fin(2), Cardinal::Aleph(1)],
        vec![Cardinal::AlephOmega, Cardinal::ONE],
    ];
    let tails = vec![
        Tail::Zero,
        Tail::Constant { value: Cardinal::ONE },
        Tail::Periodic { values: fin(&[1, 2]) },
        Tail::Periodic { values: fin(&[0, 3, 0]) },
        Tail::Constant { value: Cardinal::ALEPH_0 },
        Tail::Constant { value: Cardinal::Aleph(1) },
        Tail::Periodic { values: vec![Cardinal::Aleph(2), Cardinal::ONE] },
        Tail::Periodic { values: vec![Cardinal::ALEPH_0, Cardinal::ZERO] },
        Tail::IncreasingAlephs { a: 1, b: 0 },
        Tail::IncreasingAlephs { a: 2, b: 1 },
    ];
    let mut out = Vec::new();
    for p in &prefixes {
        for t in &tails {
            out.push(CardSeq::new(p.clone(), t.clone()).expect("corpus entries are valid"));
        }
    }
    out
}

/// A valid model without pair families: named points grouped into
/// components with finite max levels, the rest anonymous.
pub fn random_tpd_model(r: &mut impl Rng) -> SpaceModel {
    let depth = r.gen_range(1..=6);
    let mut prefix: Vec<Cardinal> = (0..depth).map(|_| Cardinal::Fin(r.gen_range(0..=4))).collect();
    let tail = match r.gen_range(0..4) {
        0 => Tail::Zero,
        1 => Tail::Constant { value: Cardinal::Fin(r.gen_range(1..=3)) },
        2 => Tail::Periodic { values: vec![Cardinal::ONE, Cardinal::Fin(r.gen_range(0..=2))] },
        _ => Tail::Constant { value: Cardinal::ALEPH_0 },
    };
    if r.gen_bool(0.2) {
        prefix[0] = Cardinal::Aleph(1);
    }
    let annuli = CardSeq::new(prefix, tail).expect("valid tail");
    let mut points = Vec::new();
    for level in 0..depth as u32 {
        let room = annuli.value(level as usize).finite().unwrap_or(5);
        for _ in 0..r.gen_range(0..=room.min(3)) {
            points.push(Point { id: format!("p{}", points.len()), level });
        }
    }
    points.shuffle(r);
    let mut components: Vec<Component> = Vec::new();
    for p in &points {
        if !components.is_empty() && r.gen_bool(0.4) {
            let c = components.choose_mut(r).expect("nonempty");
            c.members.push(p.id.clone());
            let deepest = c.max_level.finite().expect("finite");
            c.max_level = MaxLevel::Finite(deepest.max(p.level));
        } else {
            components.push(Component { id: format!("c{}", components.len()), members: vec![p.id.clone()], max_level: MaxLevel::Finite(p.level) });
        }
    }
    SpaceModel { annuli, points, components, pair_families: Vec::new() }
}
