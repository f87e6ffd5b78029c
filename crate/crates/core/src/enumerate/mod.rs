//! Bounded enumeration of the words of a language up to a length bound.

mod bound;
mod compiled;
mod indexed;
mod witness;

use std::collections::{BTreeMap, BTreeSet, HashSet};

pub use indexed::{enumerate_ig, IgEnumeration};
pub use witness::{render_form, replay_forms, replay_witness, DerivationWitness, FormSymbol, WitnessStep};

use crate::grammar::{Cfg, GrammarFile, Nfa};
use crate::sample::LanguageSample;
use crate::symbol::{Symbol, Word};

/// Limits for the indexed-grammar search. Hitting any of them clears the
/// `exhaustive` flag of the result rather than failing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_flag_depth: usize,
    pub max_form_len: usize,
    pub max_states: usize,
}

impl Budget {
    /// Defaults for word-length bound `n`.
    pub fn for_len(n: usize) -> Budget {
        Budget {
            max_flag_depth: 64.max(3 * n + 8),
            max_form_len: 48,
            max_states: 5_000_000,
        }
    }
}

/// `L(g) ∩ Σ^{≤n}` by a least fixpoint over per-nonterminal word sets.
pub fn enumerate_cfg(g: &Cfg, n: usize) -> LanguageSample {
    let mut sets: BTreeMap<&Symbol, HashSet<Vec<Symbol>>> =
        g.nonterminals().iter().map(|a| (a, HashSet::new())).collect();
    loop {
        let mut changed = false;
        for p in g.productions() {
            let mut partial: HashSet<Vec<Symbol>> = HashSet::from([Vec::new()]);
            for s in &p.rhs {
                let mut next = HashSet::new();
                if g.is_terminal(s) {
                    for w in &partial {
                        if w.len() < n {
                            let mut v = w.clone();
                            v.push(s.clone());
                            next.insert(v);
                        }
                    }
                } else {
                    for w in &partial {
                        for u in &sets[s] {
                            if w.len() + u.len() <= n {
                                next.insert([w.as_slice(), u.as_slice()].concat());
                            }
                        }
                    }
                }
                partial = next;
                if partial.is_empty() {
                    break;
                }
            }
            let target = sets.get_mut(&p.lhs).expect("declared lhs");
            for w in partial {
                changed |= target.insert(w);
            }
        }
        if !changed {
            break;
        }
    }
    LanguageSample::from_words(n, sets[g.start()].iter().cloned().map(Word))
}

/// `L(m) ∩ Σ^{≤n}` by extending words letter by letter from the ε-closed
/// start set; words whose state set dies are dropped.
pub fn enumerate_nfa(m: &Nfa, n: usize) -> LanguageSample {
    let states: Vec<&Symbol> = m.states().iter().collect();
    let index: BTreeMap<&Symbol, usize> = states.iter().enumerate().map(|(i, q)| (*q, i)).collect();
    let closure =
        |q: &Symbol| -> BTreeSet<usize> { m.eps_closure([q.clone()].into()).iter().map(|r| index[r]).collect() };
    let closures: Vec<BTreeSet<usize>> = states.iter().map(|q| closure(q)).collect();
    let letters: Vec<&Symbol> = m.alphabet().iter().collect();
    // step[q][a]: ε-closed successors of state q on letter a
    let mut step = vec![vec![BTreeSet::new(); letters.len()]; states.len()];
    for t in m.transitions() {
        if let Some(a) = &t.label {
            let ai = letters.iter().position(|l| *l == a).expect("declared letter");
            step[index[&t.from]][ai].extend(closures[index[&t.to]].iter().copied());
        }
    }
    let accepting: BTreeSet<usize> = m.accepts().iter().map(|q| index[q]).collect();

    let mut sample = LanguageSample::new(n);
    let mut layer: Vec<(Vec<Symbol>, BTreeSet<usize>)> = vec![(Vec::new(), closures[index[m.start()]].clone())];
    for len in 0..=n {
        let mut next = Vec::new();
        for (w, current) in &layer {
            if !current.is_disjoint(&accepting) {
                sample.insert(Word(w.clone()));
            }
            if len == n {
                continue;
            }
            for (ai, a) in letters.iter().enumerate() {
                let to: BTreeSet<usize> = current.iter().flat_map(|&q| step[q][ai].iter().copied()).collect();
                if !to.is_empty() {
                    let mut v = w.clone();
                    v.push((*a).clone());
                    next.push((v, to));
                }
            }
        }
        layer = next;
    }
    sample
}

/// Enumerates any grammar file; context-free grammars and automata are always
/// exhaustive.
pub fn enumerate_file(g: &GrammarFile, n: usize, budget: &Budget) -> LanguageSample {
    match g {
        GrammarFile::Cfg(g) => enumerate_cfg(g, n),
        GrammarFile::Nfa(m) => enumerate_nfa(m, n),
        GrammarFile::Indexed(g) => enumerate_ig(g, n, budget).sample,
    }
}
