use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::grammar::check_disjoint;
use crate::symbol::{is_valid_name, Symbol};

/// A transition; `label == None` is an ε-move.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: Symbol,
    pub label: Option<Symbol>,
    pub to: Symbol,
}

impl Transition {
    pub fn new(from: &Symbol, label: Option<&Symbol>, to: &Symbol) -> Self {
        Transition {
            from: from.clone(),
            label: label.cloned(),
            to: to.clone(),
        }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(a) => write!(f, "{} {} -> {}", self.from, a, self.to),
            None => write!(f, "{} eps -> {}", self.from, self.to),
        }
    }
}

/// A nondeterministic finite automaton with ε-moves over named states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    states: BTreeSet<Symbol>,
    alphabet: BTreeSet<Symbol>,
    transitions: BTreeSet<Transition>,
    start: Symbol,
    accepts: BTreeSet<Symbol>,
}

impl Nfa {
    pub fn new(
        states: BTreeSet<Symbol>,
        alphabet: BTreeSet<Symbol>,
        transitions: BTreeSet<Transition>,
        start: Symbol,
        accepts: BTreeSet<Symbol>,
    ) -> Result<Nfa> {
        let m = Nfa {
            states,
            alphabet,
            transitions,
            start,
            accepts,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        for s in self.states.iter().chain(&self.alphabet) {
            if !is_valid_name(s.as_str()) || s.as_str().starts_with('#') {
                return Err(Error::InvalidName(s.to_string()));
            }
        }
        check_disjoint(&[&self.states, &self.alphabet])?;
        let undeclared = |s: &Symbol| Error::Undeclared {
            symbol: s.to_string(),
            line: None,
        };
        if !self.states.contains(&self.start) {
            return Err(undeclared(&self.start));
        }
        if let Some(q) = self.accepts.iter().find(|q| !self.states.contains(*q)) {
            return Err(undeclared(q));
        }
        for t in &self.transitions {
            for q in [&t.from, &t.to] {
                if !self.states.contains(q) {
                    return Err(undeclared(q));
                }
            }
            if let Some(a) = &t.label {
                if !self.alphabet.contains(a) {
                    return Err(undeclared(a));
                }
            }
        }
        Ok(())
    }

    pub fn states(&self) -> &BTreeSet<Symbol> {
        &self.states
    }

    pub fn alphabet(&self) -> &BTreeSet<Symbol> {
        &self.alphabet
    }

    pub fn transitions(&self) -> &BTreeSet<Transition> {
        &self.transitions
    }

    pub fn start(&self) -> &Symbol {
        &self.start
    }

    pub fn accepts(&self) -> &BTreeSet<Symbol> {
        &self.accepts
    }

    /// Direct simulation: does the automaton accept `word`?
    pub fn accepts_word(&self, word: &[Symbol]) -> bool {
        let mut current = self.eps_closure([self.start.clone()].into());
        for a in word {
            let next: BTreeSet<Symbol> = self
                .transitions
                .iter()
                .filter(|t| t.label.as_ref() == Some(a) && current.contains(&t.from))
                .map(|t| t.to.clone())
                .collect();
            current = self.eps_closure(next);
        }
        current.iter().any(|q| self.accepts.contains(q))
    }

    pub(crate) fn eps_closure(&self, mut set: BTreeSet<Symbol>) -> BTreeSet<Symbol> {
        let mut stack: Vec<Symbol> = set.iter().cloned().collect();
        while let Some(q) = stack.pop() {
            for t in &self.transitions {
                if t.from == q && t.label.is_none() && set.insert(t.to.clone()) {
                    stack.push(t.to.clone());
                }
            }
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transition_endpoints_must_be_declared() {
        let q0 = Symbol::new("q0").unwrap();
        let q1 = Symbol::new("q1").unwrap();
        let a = Symbol::new("a").unwrap();
        let r = Nfa::new(
            [q0.clone()].into(),
            [a.clone()].into(),
            [Transition::new(&q0, Some(&a), &q1)].into(),
            q0,
            BTreeSet::new(),
        );
        assert!(matches!(r, Err(Error::Undeclared { .. })));
    }
}
