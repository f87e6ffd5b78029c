//! Cyclic closure of an indexed language given by a normal-form grammar.
//!
//! Besides the original productions, a derivation may guess a flag string for
//! `S̃`, emit the first letter of the rotated suffix, and then run the
//! derivation backwards along one path with hatted nonterminals: each hatted
//! step undoes the flag operation of the original production it reverses.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::grammar::{IgProduction, IndexedGrammar};
use crate::normal_form::is_ig_normal_form;
use crate::symbol::Symbol;

pub fn hat(a: &Symbol) -> Symbol {
    Symbol::raw(&format!("_h_{a}"))
}

pub const CYC_START: &str = "_cyc_S0";
pub const CYC_GUESS: &str = "_cyc_St";

/// Indexed grammar for `cyc(L(g))`; `g` must be in normal form.
pub fn cyc_grammar(g: &IndexedGrammar) -> Result<IndexedGrammar> {
    if !is_ig_normal_form(g) {
        return Err(Error::NotNormalForm(
            "cyc needs a normal-form indexed grammar; run `normalize` first".into(),
        ));
    }
    let names = g.all_names();
    let start = Symbol::raw(CYC_START);
    let guess = Symbol::raw(CYC_GUESS);
    let hats: BTreeSet<Symbol> = g.nonterminals().iter().map(hat).collect();
    for s in hats.iter().chain([&start, &guess]) {
        if names.contains(s) {
            return Err(Error::NameCollision(s.to_string()));
        }
    }

    let mut prods: BTreeSet<IgProduction> = g.productions().clone();
    prods.insert(IgProduction::copy(&start, vec![g.start().clone()]));
    prods.insert(IgProduction::copy(&start, vec![guess.clone()]));
    prods.insert(IgProduction::pop(&hat(g.start()), &Symbol::end_flag(), vec![]));
    for f in g.flags().iter().filter(|f| !f.is_end_flag()) {
        prods.insert(IgProduction::push(&guess, &guess, vec![f.clone()]));
    }
    for p in g.productions() {
        match p {
            IgProduction::Copy { lhs, rhs } => match rhs.as_slice() {
                [a] => {
                    prods.insert(IgProduction::copy(&guess, vec![a.clone(), hat(lhs)]));
                }
                [b, c] => {
                    prods.insert(IgProduction::copy(&hat(b), vec![c.clone(), hat(lhs)]));
                    prods.insert(IgProduction::copy(&hat(c), vec![hat(lhs), b.clone()]));
                }
                _ => unreachable!("normal form checked"),
            },
            IgProduction::Push { lhs, target, flags } => {
                prods.insert(IgProduction::pop(&hat(target), &flags[0], vec![hat(lhs)]));
            }
            IgProduction::Pop { lhs, flag, rhs } => {
                prods.insert(IgProduction::push(&hat(&rhs[0]), &hat(lhs), vec![flag.clone()]));
            }
        }
    }

    let mut nonterminals = g.nonterminals().clone();
    nonterminals.extend(hats);
    nonterminals.insert(start.clone());
    nonterminals.insert(guess);
    IndexedGrammar::new(nonterminals, g.terminals().clone(), g.flags().clone(), start, prods)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_ig, Budget};
    use crate::fixtures;
    use crate::oracle::oracle_cyc;

    #[test]
    fn nonterminal_count() {
        let g = fixtures::ig_copy();
        let c = cyc_grammar(&g).unwrap();
        assert_eq!(c.nonterminals().len(), 2 * g.nonterminals().len() + 2);
    }

    #[test]
    fn rejects_non_normal_form() {
        assert!(matches!(cyc_grammar(&fixtures::ig_abc()), Err(Error::NotNormalForm(_))));
    }

    #[test]
    fn pow_fixture_rotations() {
        let g = fixtures::ig_pow();
        let n = 9;
        let base = enumerate_ig(&g, n, &Budget::for_len(n)).sample;
        let got = enumerate_ig(&cyc_grammar(&g).unwrap(), n, &Budget::for_len(n));
        assert!(got.sample.exhaustive);
        assert_eq!(got.sample, oracle_cyc(&base));
    }
}
