//! Words, grammars and automata, plus their text format.

mod cfg;
mod indexed;
mod nfa;
pub mod text;

use std::collections::BTreeSet;

pub use cfg::{Cfg, CfgProduction};
pub use indexed::{cfg_as_indexed, IgProduction, IndexedGrammar};
pub use nfa::{Nfa, Transition};
pub use text::{parse_grammar, serialize_grammar, GrammarFile};

use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// Fails with `Duplicate` on the first name shared by two of the sets.
pub(crate) fn check_disjoint(sets: &[&BTreeSet<Symbol>]) -> Result<()> {
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if let Some(s) = a.intersection(b).next() {
                return Err(Error::Duplicate {
                    symbol: s.to_string(),
                    line: None,
                });
            }
        }
    }
    Ok(())
}

/// Returns `base`, or `base` with the smallest numeric suffix that avoids
/// every name in `taken`; the result is added to `taken`.
pub(crate) fn fresh_name(base: &str, taken: &mut BTreeSet<Symbol>) -> Symbol {
    let plain = Symbol::raw(base);
    if !taken.contains(&plain) {
        taken.insert(plain.clone());
        return plain;
    }
    let name = (0..)
        .map(|i| Symbol::raw(&format!("{base}{i}")))
        .find(|s| !taken.contains(s))
        .expect("unbounded suffix search");
    taken.insert(name.clone());
    name
}
