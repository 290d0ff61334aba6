mod common;

use archipelago_core::freealg::{
    cyclic_reduce, divisibility_spectrum, invert, kth_root, multiply, normal_form, reduce_free, Letter, NormalForm,
};
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn letter() -> impl Strategy<Value = Letter> {
    (0u32..4, 0u64..2, prop_oneof![-2i64..=-1, 1i64..=2]).prop_map(|(l, g, e)| Letter::idx(l, g, e))
}

fn letters(max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter(), 0..max)
}

fn element() -> impl Strategy<Value = NormalForm> {
    letters(10).prop_map(NormalForm::from_letters)
}

proptest! {
    #[test]
    fn normal_form_matches_naive_reduction(raw in letters(16)) {
        let nf = NormalForm::from_letters(raw.clone());
        prop_assert_eq!(nf_units(&nf), naive_reduce(&expand(&raw)));
    }

    #[test]
    fn syllable_input_agrees_with_flat_input(raw in letters(16)) {
        let mut syllables: Vec<Vec<Letter>> = Vec::new();
        for l in &raw {
            match syllables.last_mut() {
                Some(s) if s[0].level == l.level => s.push(l.clone()),
                _ => syllables.push(vec![l.clone()]),
            }
        }
        let nf = normal_form(&syllables).unwrap();
        prop_assert_eq!(&nf, &NormalForm::from_letters(raw));
        let levels: Vec<u32> = nf.syllables().iter().map(|s| s.level()).collect();
        prop_assert!(levels.windows(2).all(|w| w[0] != w[1]));
    }

    #[test]
    fn free_reduction_is_idempotent(raw in prop::collection::vec((0u64..3, prop_oneof![-2i64..=-1, 1i64..=2]), 0..20)) {
        let ls: Vec<Letter> = raw.into_iter().map(|(g, e)| Letter::idx(2, g, e)).collect();
        let once = reduce_free(&ls).unwrap();
        let twice = reduce_free(once.letters()).unwrap();
        prop_assert_eq!(twice.letters(), once.letters());
        prop_assert_eq!(expand(once.letters()), naive_reduce(&expand(&ls)));
    }

    #[test]
    fn group_laws(u in element(), v in element(), w in element()) {
        let id = NormalForm::identity();
        prop_assert_eq!(multiply(&multiply(&u, &v), &w), multiply(&u, &multiply(&v, &w)));
        prop_assert_eq!(multiply(&u, &id), u.clone());
        prop_assert_eq!(multiply(&id, &u), u.clone());
        prop_assert!(multiply(&u, &invert(&u)).is_identity());
        prop_assert!(multiply(&invert(&u), &u).is_identity());
        prop_assert_eq!(invert(&invert(&u)), u.clone());
        prop_assert_eq!(invert(&multiply(&u, &v)), multiply(&invert(&v), &invert(&u)));
    }

    #[test]
    fn product_matches_concatenation_oracle(u in element(), v in element()) {
        let mut joined = nf_units(&u);
        joined.extend(nf_units(&v));
        prop_assert_eq!(nf_units(&multiply(&u, &v)), naive_reduce(&joined));
    }

    #[test]
    fn cyclic_reduction_reassembles(u in element()) {
        let (core, conj) = cyclic_reduce(&u);
        prop_assert_eq!(multiply(&conj, &multiply(&core, &invert(&conj))), u);
        if let (Some(first), Some(last)) = (core.letters().first(), core.letters().last()) {
            if core.len() > 1 {
                prop_assert!(!first.same_generator(last));
            }
        }
    }

    #[test]
    fn roots_power_back(r in element(), k in 1u32..6) {
        let u = r.pow(k as i64);
        let root = kth_root(&u, k).unwrap().expect("a power has a root");
        prop_assert_eq!(root.pow(k as i64), u.clone());
        if !r.is_identity() {
            prop_assert_eq!(root, r);
        }
    }

    #[test]
    fn found_roots_are_roots(u in element(), k in 1u32..8) {
        if let Some(r) = kth_root(&u, k).unwrap() {
            prop_assert_eq!(r.pow(k as i64), u);
        }
    }
}

#[test]
fn spectrum_matches_exhaustive_search() {
    let mut r = rng(11);
    for _ in 0..60 {
        let gens: Vec<(u32, u64)> = (0..r.gen_range(1..=2)).map(|_| (r.gen_range(0..=4), r.gen_range(0..2))).collect();
        let pick = |r: &mut rand_chacha::ChaCha8Rng, len: usize| -> Vec<Letter> {
            (0..len)
                .map(|_| {
                    let (l, g) = gens[r.gen_range(0..gens.len())];
                    Letter::idx(l, g, if r.gen_bool(0.5) { 1 } else { -1 })
                })
                .collect()
        };
        let len = r.gen_range(1..=3);
        let s = NormalForm::from_letters(pick(&mut r, len));
        let c_len = r.gen_range(0..=1);
        let c = NormalForm::from_letters(pick(&mut r, c_len));
        let u = multiply(&c, &multiply(&s.pow(r.gen_range(1..=4)), &invert(&c)));
        if u.is_identity() || u.letter_length() > 9 {
            continue;
        }
        let got = divisibility_spectrum(&u, 12).unwrap();
        assert_eq!(got, brute_spectrum(&nf_units(&u), 12), "{u}");
        let (core, _) = cyclic_reduce(&u);
        assert!(got.iter().all(|k| *k as u64 <= core.letter_length()));
    }
}

#[test]
fn identity_has_no_spectrum() {
    assert!(divisibility_spectrum(&NormalForm::identity(), 5).is_err());
    assert!(kth_root(&NormalForm::letter(Letter::idx(0, 0, 1)), 0).is_err());
}
