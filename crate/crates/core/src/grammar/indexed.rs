use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::grammar::check_disjoint;
use crate::grammar::Cfg;
use crate::symbol::{is_valid_name, Symbol};

/// One production of an indexed grammar.
///
/// Flag strings are read head first: pushing `[f, g]` onto `γ` yields `f g γ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IgProduction {
    /// `A -> B^γ`: replaces `A^δ` by `B^{γδ}`; `γ` is non-empty.
    Push {
        lhs: Symbol,
        target: Symbol,
        flags: Vec<Symbol>,
    },
    /// `A^f -> v`: needs head `f`; the tail goes to every nonterminal of `v`.
    Pop {
        lhs: Symbol,
        flag: Symbol,
        rhs: Vec<Symbol>,
    },
    /// `A -> v`: the whole flag string goes to every nonterminal of `v`.
    Copy { lhs: Symbol, rhs: Vec<Symbol> },
}

impl IgProduction {
    pub fn push(lhs: &Symbol, target: &Symbol, flags: Vec<Symbol>) -> Self {
        IgProduction::Push {
            lhs: lhs.clone(),
            target: target.clone(),
            flags,
        }
    }

    pub fn pop(lhs: &Symbol, flag: &Symbol, rhs: Vec<Symbol>) -> Self {
        IgProduction::Pop {
            lhs: lhs.clone(),
            flag: flag.clone(),
            rhs,
        }
    }

    pub fn copy(lhs: &Symbol, rhs: Vec<Symbol>) -> Self {
        IgProduction::Copy { lhs: lhs.clone(), rhs }
    }

    pub fn lhs(&self) -> &Symbol {
        match self {
            IgProduction::Push { lhs, .. } | IgProduction::Pop { lhs, .. } | IgProduction::Copy { lhs, .. } => lhs,
        }
    }

    /// The same production with a different left-hand side.
    pub fn with_lhs(&self, lhs: &Symbol) -> IgProduction {
        let mut p = self.clone();
        match &mut p {
            IgProduction::Push { lhs: l, .. }
            | IgProduction::Pop { lhs: l, .. }
            | IgProduction::Copy { lhs: l, .. } => *l = lhs.clone(),
        }
        p
    }

    /// Symbols produced on the right-hand side (the push target for pushes).
    pub fn rhs_symbols(&self) -> &[Symbol] {
        match self {
            IgProduction::Push { target, .. } => std::slice::from_ref(target),
            IgProduction::Pop { rhs, .. } | IgProduction::Copy { rhs, .. } => rhs,
        }
    }

    /// Applies `rename` to every nonterminal position (lhs, push target, and
    /// rhs symbols accepted by `is_nonterminal`).
    pub(crate) fn map_nonterminals(
        &self,
        is_nonterminal: impl Fn(&Symbol) -> bool,
        rename: impl Fn(&Symbol) -> Symbol,
    ) -> IgProduction {
        let map_rhs = |rhs: &Vec<Symbol>| {
            rhs.iter()
                .map(|s| if is_nonterminal(s) { rename(s) } else { s.clone() })
                .collect()
        };
        match self {
            IgProduction::Push { lhs, target, flags } => IgProduction::Push {
                lhs: rename(lhs),
                target: rename(target),
                flags: flags.clone(),
            },
            IgProduction::Pop { lhs, flag, rhs } => IgProduction::Pop {
                lhs: rename(lhs),
                flag: flag.clone(),
                rhs: map_rhs(rhs),
            },
            IgProduction::Copy { lhs, rhs } => IgProduction::Copy {
                lhs: rename(lhs),
                rhs: map_rhs(rhs),
            },
        }
    }
}

fn write_rhs(f: &mut fmt::Formatter<'_>, rhs: &[Symbol]) -> fmt::Result {
    if rhs.is_empty() {
        return f.write_str(" eps");
    }
    for s in rhs {
        write!(f, " {s}")?;
    }
    Ok(())
}

impl fmt::Display for IgProduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IgProduction::Push { lhs, target, flags } => {
                write!(f, "{lhs} -> {target}^")?;
                for (i, g) in flags.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
            IgProduction::Pop { lhs, flag, rhs } => {
                write!(f, "{lhs}^{flag} ->")?;
                write_rhs(f, rhs)
            }
            IgProduction::Copy { lhs, rhs } => {
                write!(f, "{lhs} ->")?;
                write_rhs(f, rhs)
            }
        }
    }
}

/// An indexed grammar. The end-of-flag marker `$` is always a flag, and
/// derivations start from the start symbol carrying the flag string `$`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedGrammar {
    nonterminals: BTreeSet<Symbol>,
    terminals: BTreeSet<Symbol>,
    flags: BTreeSet<Symbol>,
    start: Symbol,
    productions: BTreeSet<IgProduction>,
}

impl IndexedGrammar {
    pub fn new(
        nonterminals: BTreeSet<Symbol>,
        terminals: BTreeSet<Symbol>,
        mut flags: BTreeSet<Symbol>,
        start: Symbol,
        productions: BTreeSet<IgProduction>,
    ) -> Result<IndexedGrammar> {
        flags.insert(Symbol::end_flag());
        let g = IndexedGrammar {
            nonterminals,
            terminals,
            flags,
            start,
            productions,
        };
        g.validate()?;
        Ok(g)
    }

    /// Builds a grammar, declaring every lhs, push target and rhs symbol
    /// accepted by `is_nonterminal` as a nonterminal and all other rhs
    /// symbols as terminals. Flags are collected from the productions.
    pub fn infer(
        start: Symbol,
        productions: BTreeSet<IgProduction>,
        extra_flags: &BTreeSet<Symbol>,
        is_nonterminal: impl Fn(&Symbol) -> bool,
    ) -> Result<IndexedGrammar> {
        let mut nonterminals = BTreeSet::from([start.clone()]);
        let mut terminals = BTreeSet::new();
        let mut flags = extra_flags.clone();
        for p in &productions {
            nonterminals.insert(p.lhs().clone());
            match p {
                IgProduction::Push { target, flags: fs, .. } => {
                    nonterminals.insert(target.clone());
                    flags.extend(fs.iter().cloned());
                }
                IgProduction::Pop { flag, rhs, .. } => {
                    flags.insert(flag.clone());
                    for s in rhs {
                        if is_nonterminal(s) {
                            nonterminals.insert(s.clone());
                        } else {
                            terminals.insert(s.clone());
                        }
                    }
                }
                IgProduction::Copy { rhs, .. } => {
                    for s in rhs {
                        if is_nonterminal(s) {
                            nonterminals.insert(s.clone());
                        } else {
                            terminals.insert(s.clone());
                        }
                    }
                }
            }
        }
        IndexedGrammar::new(nonterminals, terminals, flags, start, productions)
    }

    fn validate(&self) -> Result<()> {
        for s in self.nonterminals.iter().chain(&self.terminals) {
            if !is_valid_name(s.as_str()) || s.as_str().starts_with('#') {
                return Err(Error::InvalidName(s.to_string()));
            }
        }
        for f in &self.flags {
            if !f.is_end_flag() && !is_valid_name(f.as_str()) {
                return Err(Error::InvalidName(f.to_string()));
            }
        }
        check_disjoint(&[&self.nonterminals, &self.terminals, &self.flags])?;
        let undeclared = |s: &Symbol| Error::Undeclared {
            symbol: s.to_string(),
            line: None,
        };
        if !self.is_nonterminal(&self.start) {
            return Err(undeclared(&self.start));
        }
        for p in &self.productions {
            if !self.is_nonterminal(p.lhs()) {
                return Err(undeclared(p.lhs()));
            }
            match p {
                IgProduction::Push { target, flags, .. } => {
                    if flags.is_empty() {
                        return Err(Error::Invalid(format!("push with empty flag string: {p}")));
                    }
                    if !self.is_nonterminal(target) {
                        return Err(undeclared(target));
                    }
                    if let Some(f) = flags.iter().find(|f| !self.flags.contains(*f)) {
                        return Err(undeclared(f));
                    }
                }
                IgProduction::Pop { flag, rhs, .. } => {
                    if !self.flags.contains(flag) {
                        return Err(undeclared(flag));
                    }
                    if let Some(s) = rhs.iter().find(|s| !self.is_nonterminal(s) && !self.is_terminal(s)) {
                        return Err(undeclared(s));
                    }
                }
                IgProduction::Copy { rhs, .. } => {
                    if let Some(s) = rhs.iter().find(|s| !self.is_nonterminal(s) && !self.is_terminal(s)) {
                        return Err(undeclared(s));
                    }
                }
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

    /// All flags, including `$`.
    pub fn flags(&self) -> &BTreeSet<Symbol> {
        &self.flags
    }

    pub fn start(&self) -> &Symbol {
        &self.start
    }

    pub fn productions(&self) -> &BTreeSet<IgProduction> {
        &self.productions
    }

    pub fn is_nonterminal(&self, s: &Symbol) -> bool {
        self.nonterminals.contains(s)
    }

    pub fn is_terminal(&self, s: &Symbol) -> bool {
        self.terminals.contains(s)
    }

    /// Every symbol name used by the grammar in any class.
    pub fn all_names(&self) -> BTreeSet<Symbol> {
        self.nonterminals
            .iter()
            .chain(&self.terminals)
            .chain(&self.flags)
            .cloned()
            .collect()
    }
}

/// Embeds a context-free grammar as an indexed grammar with copy-productions
/// only and no flags besides `$`. The language is unchanged.
pub fn cfg_as_indexed(g: &Cfg) -> IndexedGrammar {
    let productions = g
        .productions()
        .iter()
        .map(|p| IgProduction::copy(&p.lhs, p.rhs.clone()))
        .collect();
    IndexedGrammar::new(
        g.nonterminals().clone(),
        g.terminals().clone(),
        BTreeSet::new(),
        g.start().clone(),
        productions,
    )
    .expect("a valid CFG embeds as a valid indexed grammar")
}
