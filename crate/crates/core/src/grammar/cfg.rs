use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::grammar::check_disjoint;
use crate::symbol::{is_valid_name, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CfgProduction {
    pub lhs: Symbol,
    pub rhs: Vec<Symbol>,
}

impl CfgProduction {
    pub fn new(lhs: Symbol, rhs: Vec<Symbol>) -> Self {
        CfgProduction { lhs, rhs }
    }
}

impl fmt::Display for CfgProduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ->", self.lhs)?;
        if self.rhs.is_empty() {
            return f.write_str(" eps");
        }
        for s in &self.rhs {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

/// A context-free grammar. Immutable once built; `new` validates it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cfg {
    nonterminals: BTreeSet<Symbol>,
    terminals: BTreeSet<Symbol>,
    start: Symbol,
    productions: BTreeSet<CfgProduction>,
    cnf: bool,
}

impl Cfg {
    pub fn new(
        nonterminals: BTreeSet<Symbol>,
        terminals: BTreeSet<Symbol>,
        start: Symbol,
        productions: BTreeSet<CfgProduction>,
        cnf: bool,
    ) -> Result<Cfg> {
        let g = Cfg {
            nonterminals,
            terminals,
            start,
            productions,
            cnf,
        };
        g.validate()?;
        Ok(g)
    }

    /// Builds a grammar from `(lhs, rhs)` pairs with whitespace-separated
    /// right-hand sides (`eps` for the empty one). Symbols that occur on a
    /// left-hand side are nonterminals, everything else is a terminal.
    pub fn from_rules(start: &str, rules: &[(&str, &str)]) -> Result<Cfg> {
        let nonterminals: BTreeSet<Symbol> = std::iter::once(start)
            .chain(rules.iter().map(|(l, _)| *l))
            .map(Symbol::new)
            .collect::<Result<_>>()?;
        let mut terminals = BTreeSet::new();
        let mut productions = BTreeSet::new();
        for (lhs, rhs) in rules {
            let rhs: Vec<Symbol> = rhs
                .split_whitespace()
                .filter(|t| *t != "eps")
                .map(Symbol::new)
                .collect::<Result<_>>()?;
            for s in &rhs {
                if !nonterminals.contains(s) {
                    terminals.insert(s.clone());
                }
            }
            productions.insert(CfgProduction::new(Symbol::new(lhs)?, rhs));
        }
        Cfg::new(nonterminals, terminals, Symbol::new(start)?, productions, false)
    }

    fn validate(&self) -> Result<()> {
        for s in self.nonterminals.iter().chain(&self.terminals) {
            if !is_valid_name(s.as_str()) || s.as_str().starts_with('#') {
                return Err(Error::InvalidName(s.to_string()));
            }
        }
        check_disjoint(&[&self.nonterminals, &self.terminals])?;
        if !self.nonterminals.contains(&self.start) {
            return Err(Error::Undeclared {
                symbol: self.start.to_string(),
                line: None,
            });
        }
        for p in &self.productions {
            if !self.nonterminals.contains(&p.lhs) {
                return Err(Error::Undeclared {
                    symbol: p.lhs.to_string(),
                    line: None,
                });
            }
            for s in &p.rhs {
                if !self.is_nonterminal(s) && !self.is_terminal(s) {
                    return Err(Error::Undeclared {
                        symbol: s.to_string(),
                        line: None,
                    });
                }
            }
        }
        if self.cnf {
            if let Some(p) = self.productions.iter().find(|p| !self.is_cnf_production(p)) {
                return Err(Error::NotCnf(p.to_string()));
            }
        }
        Ok(())
    }

    pub fn nonterminals(&self) -> &BTreeSet<Symbol> {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &BTreeSet<Symbol> {
        &self.terminals
    }

    pub fn start(&self) -> &Symbol {
        &self.start
    }

    pub fn productions(&self) -> &BTreeSet<CfgProduction> {
        &self.productions
    }

    /// Whether the grammar carries the CNF marker.
    pub fn is_marked_cnf(&self) -> bool {
        self.cnf
    }

    pub fn is_nonterminal(&self, s: &Symbol) -> bool {
        self.nonterminals.contains(s)
    }

    pub fn is_terminal(&self, s: &Symbol) -> bool {
        self.terminals.contains(s)
    }

    fn is_cnf_production(&self, p: &CfgProduction) -> bool {
        match p.rhs.as_slice() {
            [a] => self.is_terminal(a),
            [b, c] => self.is_nonterminal(b) && self.is_nonterminal(c),
            _ => false,
        }
    }

    /// Every production is `A -> BC` or `A -> a`, regardless of the marker.
    pub fn has_cnf_shape(&self) -> bool {
        self.productions.iter().all(|p| self.is_cnf_production(p))
    }

    /// Same grammar with the CNF marker set; fails if the shape is wrong.
    pub fn into_cnf_marked(mut self) -> Result<Cfg> {
        self.cnf = true;
        self.validate()?;
        Ok(self)
    }

    /// Productions grouped by left-hand side.
    pub fn by_lhs(&self) -> BTreeMap<&Symbol, Vec<&CfgProduction>> {
        let mut map: BTreeMap<&Symbol, Vec<&CfgProduction>> = BTreeMap::new();
        for p in &self.productions {
            map.entry(&p.lhs).or_default().push(p);
        }
        map
    }

    /// Nonterminals that derive the empty word.
    pub fn nullable(&self) -> BTreeSet<Symbol> {
        let mut nullable = BTreeSet::new();
        loop {
            let before = nullable.len();
            for p in &self.productions {
                if p.rhs.iter().all(|s| nullable.contains(s)) {
                    nullable.insert(p.lhs.clone());
                }
            }
            if nullable.len() == before {
                return nullable;
            }
        }
    }

    pub fn generates_epsilon(&self) -> bool {
        self.nullable().contains(&self.start)
    }

    /// Length of the shortest terminal word each productive nonterminal derives.
    pub fn min_lengths(&self) -> BTreeMap<Symbol, usize> {
        let mut best: BTreeMap<Symbol, usize> = BTreeMap::new();
        loop {
            let mut changed = false;
            for p in &self.productions {
                let mut total = 0usize;
                let mut ok = true;
                for s in &p.rhs {
                    if self.is_terminal(s) {
                        total += 1;
                    } else if let Some(&l) = best.get(s) {
                        total += l;
                    } else {
                        ok = false;
                        break;
                    }
                }
                if ok && best.get(&p.lhs).is_none_or(|&b| total < b) {
                    best.insert(p.lhs.clone(), total);
                    changed = true;
                }
            }
            if !changed {
                return best;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_undeclared_rhs_symbol() {
        let n: BTreeSet<Symbol> = [Symbol::new("S").unwrap()].into();
        let p = CfgProduction::new(Symbol::new("S").unwrap(), vec![Symbol::new("x").unwrap()]);
        let err = Cfg::new(n, BTreeSet::new(), Symbol::new("S").unwrap(), [p].into(), false);
        assert!(matches!(err, Err(Error::Undeclared { .. })));
    }

    #[test]
    fn rejects_overlapping_classes() {
        let s = Symbol::new("S").unwrap();
        let err = Cfg::new([s.clone()].into(), [s.clone()].into(), s, BTreeSet::new(), false);
        assert!(matches!(err, Err(Error::Duplicate { .. })));
    }

    #[test]
    fn cnf_marker_checks_shape() {
        let g = Cfg::from_rules("S", &[("S", "a S b"), ("S", "a b")]).unwrap();
        assert!(!g.has_cnf_shape());
        assert!(matches!(g.into_cnf_marked(), Err(Error::NotCnf(_))));
        let g = Cfg::from_rules("S", &[("S", "A B"), ("A", "a"), ("B", "b")]).unwrap();
        assert!(g.into_cnf_marked().is_ok());
    }

    #[test]
    fn nullable_and_min_lengths() {
        let g = Cfg::from_rules("S", &[("S", "A S"), ("S", "eps"), ("A", "a a")]).unwrap();
        assert!(g.generates_epsilon());
        let m = g.min_lengths();
        assert_eq!(m[&Symbol::new("S").unwrap()], 0);
        assert_eq!(m[&Symbol::new("A").unwrap()], 2);
    }
}
