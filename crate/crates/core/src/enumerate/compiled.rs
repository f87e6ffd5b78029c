//! Integer-indexed view of an indexed grammar plus hash-consed flag stacks.

use std::collections::HashMap;

use crate::grammar::{IgProduction, IndexedGrammar};
use crate::symbol::Symbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Item {
    T(u32),
    N(u32),
}

#[derive(Debug, Clone)]
pub(super) enum Rule {
    /// Flags head first.
    Push {
        target: u32,
        flags: Vec<u32>,
    },
    Pop {
        flag: u32,
        rhs: Vec<Item>,
    },
    Copy {
        rhs: Vec<Item>,
    },
}

pub(super) struct Compiled {
    pub nonterminals: Vec<Symbol>,
    pub terminals: Vec<Symbol>,
    pub flags: Vec<Symbol>,
    pub productions: Vec<IgProduction>,
    /// Per nonterminal: (production index, rule).
    pub by_lhs: Vec<Vec<(u32, Rule)>>,
    pub start: u32,
    pub end_flag: u32,
}

impl Compiled {
    pub fn new(g: &IndexedGrammar) -> Compiled {
        let nonterminals: Vec<Symbol> = g.nonterminals().iter().cloned().collect();
        let terminals: Vec<Symbol> = g.terminals().iter().cloned().collect();
        let flags: Vec<Symbol> = g.flags().iter().cloned().collect();
        let index = |v: &[Symbol], s: &Symbol| v.binary_search(s).expect("declared symbol") as u32;
        let item = |s: &Symbol| {
            if g.is_nonterminal(s) {
                Item::N(index(&nonterminals, s))
            } else {
                Item::T(index(&terminals, s))
            }
        };
        let mut by_lhs = vec![Vec::new(); nonterminals.len()];
        let productions: Vec<IgProduction> = g.productions().iter().cloned().collect();
        for (i, p) in productions.iter().enumerate() {
            let rule = match p {
                IgProduction::Push { target, flags: fs, .. } => Rule::Push {
                    target: index(&nonterminals, target),
                    flags: fs.iter().map(|f| index(&flags, f)).collect(),
                },
                IgProduction::Pop { flag, rhs, .. } => Rule::Pop {
                    flag: index(&flags, flag),
                    rhs: rhs.iter().map(item).collect(),
                },
                IgProduction::Copy { rhs, .. } => Rule::Copy {
                    rhs: rhs.iter().map(item).collect(),
                },
            };
            by_lhs[index(&nonterminals, p.lhs()) as usize].push((i as u32, rule));
        }
        Compiled {
            start: index(&nonterminals, g.start()),
            end_flag: index(&flags, &Symbol::end_flag()),
            nonterminals,
            terminals,
            flags,
            productions,
            by_lhs,
        }
    }
}

/// Hash-consed flag strings. Id 0 is the empty string; every other id is a
/// `(head, tail)` node.
pub(super) struct Stacks {
    nodes: Vec<(u32, u32, u32)>,
    index: HashMap<(u32, u32), u32>,
}

impl Stacks {
    pub const EMPTY: u32 = 0;

    pub fn new() -> Stacks {
        Stacks {
            nodes: vec![(u32::MAX, 0, 0)],
            index: HashMap::new(),
        }
    }

    pub fn push(&mut self, flag: u32, tail: u32) -> u32 {
        if let Some(&id) = self.index.get(&(flag, tail)) {
            return id;
        }
        let id = self.nodes.len() as u32;
        let depth = self.nodes[tail as usize].2 + 1;
        self.nodes.push((flag, tail, depth));
        self.index.insert((flag, tail), id);
        id
    }

    /// `(head, tail)` of a non-empty string.
    pub fn split(&self, id: u32) -> Option<(u32, u32)> {
        (id != Self::EMPTY).then(|| {
            let (f, t, _) = self.nodes[id as usize];
            (f, t)
        })
    }

    pub fn depth(&self, id: u32) -> u32 {
        self.nodes[id as usize].2
    }
}
