use std::collections::BTreeSet;

use permclose::grammar::Cfg;
use permclose::symbol::{Symbol, Word};

/// Membership by a fixpoint over `(nonterminal, span)` facts, straight from
/// the productions; independent of any normal form.
pub fn derives(g: &Cfg, word: &[Symbol]) -> bool {
    let n = word.len();
    let mut facts: BTreeSet<(Symbol, usize, usize)> = BTreeSet::new();
    fn matches(
        rhs: &[Symbol],
        i: usize,
        j: usize,
        g: &Cfg,
        word: &[Symbol],
        facts: &BTreeSet<(Symbol, usize, usize)>,
    ) -> bool {
        match rhs.split_first() {
            None => i == j,
            Some((x, rest)) if g.is_terminal(x) => i < j && word[i] == *x && matches(rest, i + 1, j, g, word, facts),
            Some((x, rest)) => {
                (i..=j).any(|m| facts.contains(&(x.clone(), i, m)) && matches(rest, m, j, g, word, facts))
            }
        }
    }
    loop {
        let before = facts.len();
        for i in 0..=n {
            for j in i..=n {
                for p in g.productions() {
                    if !facts.contains(&(p.lhs.clone(), i, j)) && matches(&p.rhs, i, j, g, word, &facts) {
                        facts.insert((p.lhs.clone(), i, j));
                    }
                }
            }
        }
        if facts.len() == before {
            return facts.contains(&(g.start().clone(), 0, n));
        }
    }
}

pub fn all_words(alphabet: &[Symbol], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::epsilon()];
    let mut layer = vec![Vec::<Symbol>::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |a| {
                    let mut v = w.clone();
                    v.push(a.clone());
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned().map(Word));
    }
    out
}
