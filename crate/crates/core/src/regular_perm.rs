//! `σ(L)` for regular `L`: one branch per choice of boundary states, each
//! branch chaining `k` copies of the automaton in the order `σ(1) … σ(k)`.

use std::collections::BTreeSet;

use rand::Rng;

use crate::grammar::{fresh_name, Nfa, Transition};
use crate::perm::Permutation;
use crate::symbol::Symbol;

/// Language-equal automaton with exactly one accepting state: a fresh state
/// reached by ε-moves from the old accepting states.
pub fn nfa_single_accept(m: &Nfa) -> Nfa {
    let mut taken: BTreeSet<Symbol> = m.states().union(m.alphabet()).cloned().collect();
    let accept = fresh_name("_final", &mut taken);
    let mut states = m.states().clone();
    states.insert(accept.clone());
    let mut transitions = m.transitions().clone();
    for q in m.accepts() {
        transitions.insert(Transition::new(q, None, &accept));
    }
    Nfa::new(
        states,
        m.alphabet().clone(),
        transitions,
        m.start().clone(),
        [accept].into(),
    )
    .expect("adding a fresh accepting state keeps the automaton valid")
}

fn tuples(states: &[Symbol], len: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                states.iter().map(move |q| {
                    let mut t = t.clone();
                    t.push(q.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Automaton for `σ(L(m))`.
///
/// The input is first given a single accepting state when it has more or
/// fewer than one. For every tuple `q = (q_1, …, q_{k-1})` of states, copy `i`
/// of the automaton runs from `q_{i-1}` to `q_i` (with `q_0` the start and
/// `q_k` the accepting state); the copies are joined by ε-moves in the order
/// `σ(1), …, σ(k)`. A fresh start and a fresh accepting state join the
/// branches, so the result has `|Q|^{k-1}·k·|Q| + 2` states.
pub fn sigma_nfa(m: &Nfa, sigma: &Permutation) -> Nfa {
    let single;
    let m = if m.accepts().len() == 1 {
        m
    } else {
        single = nfa_single_accept(m);
        &single
    };
    let accept = m.accepts().first().expect("single accepting state").clone();
    let k = sigma.degree();
    let qs: Vec<Symbol> = m.states().iter().cloned().collect();
    let start = Symbol::raw("_start");
    let final_state = Symbol::raw("_accept");
    let mut states = BTreeSet::from([start.clone(), final_state.clone()]);
    let mut transitions = BTreeSet::new();
    for tuple in tuples(&qs, k - 1) {
        let tag: Vec<&str> = tuple.iter().map(Symbol::as_str).collect();
        let tag = tag.join(".");
        let copy = |i: usize, q: &Symbol| Symbol::raw(&format!("<{tag}>{i}:{q}"));
        // boundary b_0 = start, b_i = q_i, b_k = accept
        let boundary = |i: usize| -> &Symbol {
            if i == 0 {
                m.start()
            } else if i == k {
                &accept
            } else {
                &tuple[i - 1]
            }
        };
        for i in 1..=k {
            for q in &qs {
                states.insert(copy(i, q));
            }
            for t in m.transitions() {
                transitions.insert(Transition::new(&copy(i, &t.from), t.label.as_ref(), &copy(i, &t.to)));
            }
        }
        let entry = |i: usize| copy(i, boundary(i - 1));
        let exit = |i: usize| copy(i, boundary(i));
        transitions.insert(Transition::new(&start, None, &entry(sigma.image(1))));
        for j in 1..k {
            transitions.insert(Transition::new(&exit(sigma.image(j)), None, &entry(sigma.image(j + 1))));
        }
        transitions.insert(Transition::new(&exit(sigma.image(k)), None, &final_state));
    }
    Nfa::new(states, m.alphabet().clone(), transitions, start, [final_state].into())
        .expect("construction yields a valid automaton")
}

/// A random automaton with `1..=max_states` states over `alphabet`: each
/// possible labelled transition is present with probability 1/3, ε-moves with
/// probability 1/8, and each state accepts with probability 1/3.
pub fn random_nfa<R: Rng>(rng: &mut R, max_states: usize, alphabet: &[&str]) -> Nfa {
    let n = rng.gen_range(1..=max_states);
    let states: Vec<Symbol> = (0..n).map(|i| Symbol::raw(&format!("q{i}"))).collect();
    let letters: Vec<Symbol> = alphabet.iter().map(|a| Symbol::raw(a)).collect();
    let mut transitions = BTreeSet::new();
    for from in &states {
        for to in &states {
            for a in &letters {
                if rng.gen_bool(1.0 / 3.0) {
                    transitions.insert(Transition::new(from, Some(a), to));
                }
            }
            if from != to && rng.gen_bool(1.0 / 8.0) {
                transitions.insert(Transition::new(from, None, to));
            }
        }
    }
    let accepts = states.iter().filter(|_| rng.gen_bool(1.0 / 3.0)).cloned().collect();
    Nfa::new(
        states.iter().cloned().collect(),
        letters.into_iter().collect(),
        transitions,
        states[0].clone(),
        accepts,
    )
    .expect("random automaton is valid")
}
