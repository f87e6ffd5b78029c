//! Brute-force closures of finite word sets. These are the ground truth the
//! grammar constructions are checked against.

use std::collections::BTreeSet;

use crate::perm::Permutation;
use crate::sample::LanguageSample;
use crate::symbol::{Symbol, Word};

/// Calls `f` with the boundaries `0 = b_0 ≤ b_1 ≤ … ≤ b_parts = n` of every
/// split of a length-`n` word into `parts` pieces, where piece `i` (0-based)
/// has at least `min_len(i)` letters.
fn for_each_split(n: usize, parts: usize, min_len: &dyn Fn(usize) -> usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(
        n: usize,
        parts: usize,
        min_len: &dyn Fn(usize) -> usize,
        bounds: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        let i = bounds.len() - 1;
        let last = *bounds.last().expect("starts with 0");
        if i + 1 == parts {
            if n >= last + min_len(i) {
                bounds.push(n);
                f(bounds);
                bounds.pop();
            }
            return;
        }
        let rest: usize = (i + 1..parts).map(min_len).sum();
        let lo = last + min_len(i);
        if lo + rest > n {
            return;
        }
        for b in lo..=n - rest {
            bounds.push(b);
            rec(n, parts, min_len, bounds, f);
            bounds.pop();
        }
    }
    let mut bounds = vec![0];
    rec(n, parts, min_len, &mut bounds, f);
}

fn permuted(word: &[Symbol], bounds: &[usize], perm: &Permutation) -> Word {
    let parts: Vec<&[Symbol]> = bounds.windows(2).map(|b| &word[b[0]..b[1]]).collect();
    Word(perm.apply(&parts))
}

fn with_words(input: &LanguageSample, words: BTreeSet<Word>) -> LanguageSample {
    LanguageSample {
        words,
        bound: input.bound,
        exhaustive: input.exhaustive,
    }
}

/// All `w_{τ(1)}…w_{τ(ℓ)}` over splits `w = w_1…w_ℓ` with every part
/// non-empty; with `relax_first`, `w_1` may be empty.
pub fn oracle_ltau(sample: &LanguageSample, tau: &Permutation, relax_first: bool) -> LanguageSample {
    let min_len = |i: usize| usize::from(!(relax_first && i == 0));
    let mut out = BTreeSet::new();
    for w in &sample.words {
        for_each_split(w.len(), tau.degree(), &min_len, &mut |b| {
            out.insert(permuted(w.symbols(), b, tau));
        });
    }
    with_words(sample, out)
}

fn sigma_words(sample: &LanguageSample, perms: &[Permutation], out: &mut BTreeSet<Word>) {
    let Some(k) = perms.first().map(Permutation::degree) else {
        return;
    };
    for w in &sample.words {
        for_each_split(w.len(), k, &|_| 0, &mut |b| {
            for perm in perms {
                out.insert(permuted(w.symbols(), b, perm));
            }
        });
    }
}

/// `σ(W)`: all `w_{σ(1)}…w_{σ(k)}` over splits `w = w_1…w_k` whose parts may
/// be empty.
pub fn oracle_sigma(sample: &LanguageSample, sigma: &Permutation) -> LanguageSample {
    let mut out = BTreeSet::new();
    sigma_words(sample, std::slice::from_ref(sigma), &mut out);
    with_words(sample, out)
}

/// Cyclic closure: every rotation of every word.
pub fn oracle_cyc(sample: &LanguageSample) -> LanguageSample {
    let mut out = BTreeSet::new();
    for w in &sample.words {
        let s = w.symbols();
        if s.is_empty() {
            out.insert(Word::epsilon());
        }
        for i in 0..s.len() {
            out.insert(Word([&s[i..], &s[..i]].concat()));
        }
    }
    with_words(sample, out)
}

/// `C^k(W)`: union of `σ(W)` over all `σ ∈ S_k`.
pub fn oracle_ck(sample: &LanguageSample, k: usize) -> LanguageSample {
    let mut out = BTreeSet::new();
    sigma_words(sample, &Permutation::all_of_degree(k), &mut out);
    with_words(sample, out)
}
