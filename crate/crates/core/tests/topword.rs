mod common;

use archipelago_core::cardseq::{CardSeq, Cardinal, Tail};
use archipelago_core::freealg::{invert, multiply, Letter, NormalForm};
use archipelago_core::topword::{
    concat, eq_up_to, invert_word, phi_endo, reduce_loop, reindex_iso, semidecide_neq, Affine, Block,
    CombinatorialLoop, ExcursionRule, LoopBlock, Reindexing, TopWord,
};
use common::*;
use proptest::prelude::*;

const SCAN: u64 = 400;

fn pair(seed: u64, profile: &CardSeq, gens: u64) -> (TopWord, TopWord) {
    let mut r = rng(seed);
    (random_word(&mut r, profile, gens), random_word(&mut r, profile, gens))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn projection_matches_scan(seed in any::<u64>(), n in 0u32..16) {
        let (w, _) = pair(seed, &two_gen_profile(), 2);
        prop_assert_eq!(nf_units(&w.project(n)), scan_project(&w, n, SCAN));
    }

    #[test]
    fn projection_is_a_compatible_homomorphism(seed in any::<u64>()) {
        let (u, v) = pair(seed, &two_gen_profile(), 2);
        let uv = concat(&u, &v).unwrap();
        for n in 0..=16 {
            prop_assert_eq!(uv.project(n), multiply(&u.project(n), &v.project(n)));
            prop_assert_eq!(invert_word(&u).project(n), invert(&u.project(n)));
            let big = u.project(16);
            prop_assert_eq!(big.restrict(n), u.project(n));
        }
    }

    #[test]
    fn inversion_is_an_involution(seed in any::<u64>()) {
        let (u, _) = pair(seed, &two_gen_profile(), 2);
        prop_assert_eq!(invert_word(&invert_word(&u)), u.clone());
        let id = concat(&u, &invert_word(&u)).unwrap();
        prop_assert!((0..=12).all(|n| id.project(n).is_identity()));
    }

    #[test]
    fn tail_retraction_deletes_low_levels(seed in any::<u64>(), n in 0u32..8, m in 0u32..16) {
        let (w, _) = pair(seed, &two_gen_profile(), 2);
        let t = w.tail_retract(n);
        prop_assert!(t.project(n).is_identity());
        prop_assert_eq!(t.tail_retract(n), t.clone());
        let expected: Vec<Unit> = naive_reduce(&scan_project(&w, m, SCAN).into_iter().filter(|u| u.0 > n).collect::<Vec<_>>());
        prop_assert_eq!(nf_units(&t.project(m)), expected);
    }

    #[test]
    fn inequality_search_finds_the_first_difference(seed in any::<u64>()) {
        let (u, v) = pair(seed, &two_gen_profile(), 2);
        let oracle = (0..=12).find(|&n| scan_project(&u, n, SCAN) != scan_project(&v, n, SCAN));
        prop_assert_eq!(semidecide_neq(&u, &v, 12), oracle);
        prop_assert_eq!(eq_up_to(&u, &v, 12), oracle.is_none());
        prop_assert_eq!(semidecide_neq(&u, &u, 12), None);
    }

    #[test]
    fn words_survive_json(seed in any::<u64>()) {
        let (u, _) = pair(seed, &two_gen_profile(), 2);
        let text = serde_json::to_string(&u).unwrap();
        let back: TopWord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        prop_assert_eq!(back, u);
    }

    #[test]
    fn phi_is_a_homomorphism(seed in any::<u64>()) {
        let (u, v) = pair(seed, &integer_profile(), 1);
        let (pu, pv) = (phi_endo(&u).unwrap(), phi_endo(&v).unwrap());
        let puv = phi_endo(&concat(&u, &v).unwrap()).unwrap();
        let pinv = phi_endo(&invert_word(&u)).unwrap();
        for n in 0..=16 {
            prop_assert_eq!(puv.project(n), multiply(&pu.project(n), &pv.project(n)));
            prop_assert_eq!(pinv.project(n), invert(&pu.project(n)));
        }
    }

    #[test]
    fn phi_substitutes_letterwise(seed in any::<u64>()) {
        let (u, _) = pair(seed, &integer_profile(), 1);
        for n in [1u32, 5, 9] {
            let mut expected = Vec::new();
            for (level, _, e) in scan_project(&u, n / 2, SCAN) {
                let pair = [(2 * level, 0, e), (2 * level + 1, 0, -e)];
                if e > 0 { expected.extend(pair) } else { expected.extend(pair.iter().rev()) }
            }
            let expected: Vec<Unit> = naive_reduce(&expected.into_iter().filter(|x| x.0 <= n).collect::<Vec<_>>());
            prop_assert_eq!(nf_units(&phi_endo(&u).unwrap().project(n)), expected);
        }
    }

    #[test]
    fn reindexing_substitutes_letterwise(seed in any::<u64>(), sizes in 0usize..4) {
        let sizes = [
            CardSeq::constant(Cardinal::Fin(2)),
            CardSeq::new(vec![Cardinal::Fin(3), Cardinal::ZERO], Tail::Constant { value: Cardinal::ONE }).unwrap(),
            CardSeq::new(vec![], Tail::Periodic { values: vec![Cardinal::ONE, Cardinal::ZERO, Cardinal::Fin(2)] }).unwrap(),
            CardSeq::constant(Cardinal::ONE),
        ][sizes].clone();
        let g = Reindexing::new(sizes.clone()).unwrap();
        let (u, v) = pair(seed, &integer_profile(), 1);
        let image = reindex_iso(&u, &sizes).unwrap();
        let both = reindex_iso(&concat(&u, &v).unwrap(), &sizes).unwrap();
        let iv = reindex_iso(&v, &sizes).unwrap();
        for n in 0..=8 {
            // letters of image level ≤ n come from source levels below the
            // first index past level n
            let bound = (0..).find(|&m| g.image(m).0 > n).unwrap();
            let src = scan_project(&u, bound as u32, SCAN);
            let expected: Vec<Unit> = src
                .into_iter()
                .map(|(m, _, e)| { let (l, k) = g.image(m as u64); (l, k, e) })
                .filter(|x| x.0 <= n)
                .collect();
            prop_assert_eq!(nf_units(&image.project(n)), naive_reduce(&expected));
            prop_assert_eq!(both.project(n), multiply(&image.project(n), &iv.project(n)));
        }
    }
}

#[test]
fn phi_separates_short_words() {
    let alphabet = [(0u32, 0u64), (1, 0)];
    let words: Vec<Vec<Unit>> = (0..=4).flat_map(|len| reduced_words(&alphabet, len)).collect();
    let images: std::collections::BTreeSet<Vec<Unit>> = words
        .iter()
        .map(|w| {
            let letters = w.iter().map(|&(l, g, e)| Letter::idx(l, g, e)).collect();
            let word = TopWord::finite(integer_profile(), letters).unwrap();
            nf_units(&phi_endo(&word).unwrap().project(3))
        })
        .collect();
    assert_eq!(words.len(), 161);
    assert_eq!(images.len(), words.len());
}

#[test]
fn loop_reduction_keeps_crossing_excursions() {
    let crossing = |level, crosses| ExcursionRule { level, gen: Affine::constant(0), crosses_check_line: crosses, signed_traversal: 1 };
    let lp = CombinatorialLoop {
        blocks: vec![LoopBlock::Omega { pattern: vec![crossing(Affine::new(1, 0), true), crossing(Affine::new(1, 0), false)] }],
    };
    let w = reduce_loop(&lp, &integer_profile(), |_| None).unwrap();
    let direct = TopWord::new(integer_profile(), vec![Block::Omega(archipelago_core::topword::LetterRule::levels(1, 0))]).unwrap();
    for n in 0..=20 {
        assert_eq!(w.project(n), direct.project(n));
    }
    assert_eq!(w.project(2), NormalForm::from_letters((0..=2).map(|l| Letter::idx(l, 0, 1))));
}
