use std::collections::BTreeSet;

use super::letter::Letter;
use super::word::{invert, multiply, NormalForm};
use super::FreeAlgError;

/// Split `u` as `conjugator · core · conjugator⁻¹` with `core` cyclically
/// reduced: its first and last letters neither cancel nor merge.
pub fn cyclic_reduce(u: &NormalForm) -> (NormalForm, NormalForm) {
    let letters = u.letters();
    let (mut lo, mut hi) = (0, letters.len());
    let mut conj = Vec::new();
    while hi - lo >= 2 && letters[lo].same_generator(&letters[hi - 1]) {
        let (first, last) = (&letters[lo], &letters[hi - 1]);
        if first.exp + last.exp == 0 {
            conj.push(first.clone());
            lo += 1;
            hi -= 1;
        } else {
            // g^e1 v g^e2 = g^-e2 (g^(e1+e2) v) g^e2
            conj.push(last.inverse());
            let merged = Letter { exp: first.exp + last.exp, ..first.clone() };
            let core = std::iter::once(merged).chain(letters[lo + 1..hi - 1].iter().cloned());
            return (NormalForm::from_letters(core), NormalForm::from_letters(conj));
        }
    }
    (NormalForm::from_letters(letters[lo..hi].iter().cloned()), NormalForm::from_letters(conj))
}

fn conjugate(conj: &NormalForm, x: &NormalForm) -> NormalForm {
    multiply(conj, &multiply(x, &invert(conj)))
}

/// An `r` with `r^k = u`, if one exists.
///
/// Roots are unique in free groups. After cyclic reduction a single power
/// `g^e` has a root iff `k | e`; any longer core has one iff its merged
/// letter string is a `k`-fold repetition, since the core's first and last
/// letters never merge.
pub fn kth_root(u: &NormalForm, k: u32) -> Result<Option<NormalForm>, FreeAlgError> {
    if k == 0 {
        return Err(FreeAlgError::ZeroRootOrder);
    }
    if k == 1 || u.is_identity() {
        return Ok(Some(u.clone()));
    }
    let (core, conj) = cyclic_reduce(u);
    let letters = core.letters();
    let k = k as usize;
    if let [single] = letters {
        if single.exp % k as i64 != 0 {
            return Ok(None);
        }
        let root = Letter { exp: single.exp / k as i64, ..single.clone() };
        return Ok(Some(conjugate(&conj, &NormalForm::letter(root))));
    }
    if letters.len() % k != 0 {
        return Ok(None);
    }
    let block = &letters[..letters.len() / k];
    if letters.chunks(block.len()).any(|c| c != block) {
        return Ok(None);
    }
    Ok(Some(conjugate(&conj, &NormalForm::from_letters(block.iter().cloned()))))
}

/// `{ k ≤ k_max : u has a k-th root }` for nontrivial `u`. Every member is
/// at most the expanded length of the cyclic core.
pub fn divisibility_spectrum(u: &NormalForm, k_max: u32) -> Result<BTreeSet<u32>, FreeAlgError> {
    if u.is_identity() {
        return Err(FreeAlgError::IdentityRoots);
    }
    let mut out = BTreeSet::new();
    for k in 1..=k_max {
        if kth_root(u, k)?.is_some() {
            out.insert(k);
        }
    }
    Ok(out)
}
