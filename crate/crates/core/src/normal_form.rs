//! Chomsky normal form for context-free grammars and the four-shape normal
//! form for indexed grammars (`A -> B^f`, `A^f -> B`, `A -> B C`, `A -> a`).

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::grammar::{fresh_name, Cfg, CfgProduction, IgProduction, IndexedGrammar};
use crate::symbol::Symbol;

/// A normalized grammar plus whether the input language contained ε (which
/// the normalized grammar no longer generates).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized<G> {
    pub grammar: G,
    pub had_epsilon: bool,
}

struct Fresh {
    taken: BTreeSet<Symbol>,
    next: usize,
}

impl Fresh {
    fn new(taken: BTreeSet<Symbol>) -> Self {
        Fresh { taken, next: 0 }
    }

    fn named(&mut self, base: &str) -> Symbol {
        fresh_name(base, &mut self.taken)
    }

    fn next(&mut self) -> Symbol {
        loop {
            let s = Symbol::raw(&format!("_nf{}", self.next));
            self.next += 1;
            if self.taken.insert(s.clone()) {
                return s;
            }
        }
    }
}

/// Replaces terminals in right-hand sides of length ≥ 2 by nonterminals
/// `_nf_a -> a`, then splits long right-hand sides into binary chains.
fn separate_and_binarize(
    rhs: &[Symbol],
    is_terminal: impl Fn(&Symbol) -> bool,
    fresh: &mut Fresh,
    terminal_nts: &mut BTreeMap<Symbol, Symbol>,
) -> (Vec<Symbol>, Vec<(Symbol, Vec<Symbol>)>) {
    if rhs.len() < 2 {
        return (rhs.to_vec(), Vec::new());
    }
    let mut extra = Vec::new();
    let symbols: Vec<Symbol> = rhs
        .iter()
        .map(|s| {
            if !is_terminal(s) {
                return s.clone();
            }
            terminal_nts
                .entry(s.clone())
                .or_insert_with(|| {
                    let n = fresh.named(&format!("_nf_{s}"));
                    extra.push((n.clone(), vec![s.clone()]));
                    n
                })
                .clone()
        })
        .collect();
    let mut head = symbols[..2].to_vec();
    if symbols.len() > 2 {
        // X -> s1 Y1, Y1 -> s2 Y2, ..., Y_{m-2} -> s_{m-1} s_m
        let mut tail = symbols[symbols.len() - 2..].to_vec();
        for s in symbols[1..symbols.len() - 2].iter().rev() {
            let y = fresh.next();
            extra.push((y.clone(), tail));
            tail = vec![s.clone(), y];
        }
        let y = fresh.next();
        extra.push((y.clone(), tail));
        head = vec![symbols[0].clone(), y];
    }
    (head, extra)
}

/// Chomsky normal form of `g`, generating `L(g) \ {ε}`.
pub fn cfg_to_cnf(g: &Cfg) -> Normalized<Cfg> {
    let had_epsilon = g.generates_epsilon();
    let mut fresh = Fresh::new(g.nonterminals().union(g.terminals()).cloned().collect());
    let mut terminal_nts = BTreeMap::new();
    let mut prods: BTreeSet<(Symbol, Vec<Symbol>)> = BTreeSet::new();
    for p in g.productions() {
        let (head, extra) = separate_and_binarize(&p.rhs, |s| g.is_terminal(s), &mut fresh, &mut terminal_nts);
        prods.insert((p.lhs.clone(), head));
        prods.extend(extra);
    }

    // ε-elimination on right-hand sides of length ≤ 2.
    let nullable = {
        let mut set: BTreeSet<Symbol> = BTreeSet::new();
        loop {
            let before = set.len();
            for (l, r) in &prods {
                if r.iter().all(|s| set.contains(s)) {
                    set.insert(l.clone());
                }
            }
            if set.len() == before {
                break set;
            }
        }
    };
    let mut without_eps = BTreeSet::new();
    for (l, r) in &prods {
        if r.is_empty() {
            continue;
        }
        without_eps.insert((l.clone(), r.clone()));
        if r.len() == 2 {
            for (i, s) in r.iter().enumerate() {
                if nullable.contains(s) {
                    without_eps.insert((l.clone(), vec![r[1 - i].clone()]));
                }
            }
        }
    }

    let is_nt = |s: &Symbol| !g.is_terminal(s);
    let prods = eliminate_units(
        without_eps,
        |(l, r)| match r.as_slice() {
            [b] if is_nt(b) => Some((l.clone(), b.clone())),
            _ => None,
        },
        |(l, _)| l,
        |(_, r), a| (a.clone(), r.clone()),
    );

    let prods: BTreeSet<CfgProduction> = prods.into_iter().map(|(l, r)| CfgProduction::new(l, r)).collect();
    let prods = prune_cfg(g.start(), prods, |s| is_nt(s));
    let mut nonterminals: BTreeSet<Symbol> = prods.iter().map(|p| p.lhs.clone()).collect();
    nonterminals.insert(g.start().clone());
    let terminals = g.terminals().clone();
    let grammar = Cfg::new(nonterminals, terminals, g.start().clone(), prods, true)
        .expect("CNF construction yields a valid grammar");
    Normalized { grammar, had_epsilon }
}

/// Removes unit productions: every `A` inherits the non-unit productions of
/// everything reachable from it through units.
fn eliminate_units<P: Ord + Clone>(
    prods: BTreeSet<P>,
    as_unit: impl Fn(&P) -> Option<(Symbol, Symbol)>,
    lhs_of: impl Fn(&P) -> &Symbol,
    relabel: impl Fn(&P, &Symbol) -> P,
) -> BTreeSet<P> {
    let mut units: BTreeMap<Symbol, BTreeSet<Symbol>> = BTreeMap::new();
    for p in &prods {
        if let Some((a, b)) = as_unit(p) {
            units.entry(a).or_default().insert(b);
        }
    }
    let mut by_lhs: BTreeMap<&Symbol, Vec<&P>> = BTreeMap::new();
    for p in prods.iter().filter(|p| as_unit(p).is_none()) {
        by_lhs.entry(lhs_of(p)).or_default().push(p);
    }
    let mut out: BTreeSet<P> = by_lhs.values().flatten().map(|p| (*p).clone()).collect();
    for a in units.keys() {
        let mut seen = BTreeSet::new();
        let mut stack = vec![a.clone()];
        while let Some(x) = stack.pop() {
            for y in units.get(&x).into_iter().flatten() {
                if y != a && seen.insert(y.clone()) {
                    stack.push(y.clone());
                }
            }
        }
        for b in &seen {
            for p in by_lhs.get(b).into_iter().flatten() {
                out.insert(relabel(p, a));
            }
        }
    }
    out
}

/// Keeps productions whose symbols are all productive and reachable from
/// `start`.
fn prune_cfg(
    start: &Symbol,
    prods: BTreeSet<CfgProduction>,
    is_nt: impl Fn(&Symbol) -> bool,
) -> BTreeSet<CfgProduction> {
    let mut productive = BTreeSet::new();
    loop {
        let before = productive.len();
        for p in &prods {
            if p.rhs.iter().all(|s| !is_nt(s) || productive.contains(s)) {
                productive.insert(p.lhs.clone());
            }
        }
        if productive.len() == before {
            break;
        }
    }
    let prods: Vec<CfgProduction> = prods
        .into_iter()
        .filter(|p| productive.contains(&p.lhs) && p.rhs.iter().all(|s| !is_nt(s) || productive.contains(s)))
        .collect();
    let mut reachable = BTreeSet::from([start.clone()]);
    let mut stack = vec![start.clone()];
    while let Some(a) = stack.pop() {
        for p in prods.iter().filter(|p| p.lhs == a) {
            for s in p.rhs.iter().filter(|s| is_nt(s)) {
                if reachable.insert(s.clone()) {
                    stack.push(s.clone());
                }
            }
        }
    }
    prods.into_iter().filter(|p| reachable.contains(&p.lhs)).collect()
}

/// Whether the grammar has Chomsky normal form shape.
pub fn is_cnf(g: &Cfg) -> bool {
    g.has_cnf_shape()
}

/// Membership test by CYK on a grammar of CNF shape. The empty word is never
/// accepted; callers track it separately.
pub fn cyk_accepts(g: &Cfg, word: &[Symbol]) -> Result<bool> {
    if !g.has_cnf_shape() {
        return Err(Error::NotCnf("CYK needs a grammar in Chomsky normal form".into()));
    }
    let n = word.len();
    if n == 0 {
        return Ok(false);
    }
    let nts: Vec<&Symbol> = g.nonterminals().iter().collect();
    let index: BTreeMap<&Symbol, usize> = nts.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let m = nts.len();
    // table[i][l] = nonterminals deriving word[i..i+l+1]
    let mut table = vec![vec![vec![false; m]; n]; n];
    let mut binary = Vec::new();
    for p in g.productions() {
        match p.rhs.as_slice() {
            [a] => {
                for (i, x) in word.iter().enumerate() {
                    if x == a {
                        table[i][0][index[&p.lhs]] = true;
                    }
                }
            }
            [b, c] => binary.push((index[&p.lhs], index[b], index[c])),
            _ => unreachable!("CNF shape checked"),
        }
    }
    for len in 2..=n {
        for i in 0..=n - len {
            for split in 1..len {
                for &(a, b, c) in &binary {
                    if table[i][split - 1][b] && table[i + split][len - split - 1][c] {
                        table[i][len - 1][a] = true;
                    }
                }
            }
        }
    }
    Ok(table[0][n - 1][index[g.start()]])
}

/// Brings an ε-free indexed grammar into normal form. A single `S -> eps`
/// for a start symbol `S` that occurs on no right-hand side is dropped and
/// reported through `had_epsilon`.
pub fn ig_to_normal_form(g: &IndexedGrammar) -> Result<Normalized<IndexedGrammar>> {
    let start_on_rhs = g.productions().iter().any(|p| p.rhs_symbols().contains(g.start()));
    let mut had_epsilon = false;
    let mut fresh = Fresh::new(g.all_names());
    let new_start = fresh.named("_nf_S0");
    let mut terminal_nts = BTreeMap::new();
    let mut out: BTreeSet<IgProduction> = BTreeSet::new();
    out.insert(IgProduction::copy(&new_start, vec![g.start().clone()]));

    for p in g.productions() {
        match p {
            IgProduction::Push { lhs, target, flags } => {
                if flags.iter().any(Symbol::is_end_flag) {
                    return Err(Error::NotNormalizable(p.to_string(), "pushes the end-of-flag symbol"));
                }
                // A -> B^{f1 … fm}: A -> B1^{fm}, B1 -> B2^{f(m-1)}, …, B(m-1) -> B^{f1}
                let mut current = lhs.clone();
                for (i, f) in flags.iter().enumerate().rev() {
                    let next = if i == 0 { target.clone() } else { fresh.next() };
                    out.insert(IgProduction::push(&current, &next, vec![f.clone()]));
                    current = next;
                }
            }
            IgProduction::Pop { lhs, flag, rhs } => {
                if flag.is_end_flag() {
                    return Err(Error::NotNormalizable(p.to_string(), "pops the end-of-flag symbol"));
                }
                match rhs.as_slice() {
                    [] => return Err(Error::EpsilonProduction(p.to_string())),
                    [b] if g.is_nonterminal(b) => {
                        out.insert(p.clone());
                    }
                    _ => {
                        let b = fresh.next();
                        out.insert(IgProduction::pop(lhs, flag, vec![b.clone()]));
                        insert_copy(&mut out, &b, rhs, g, &mut fresh, &mut terminal_nts);
                    }
                }
            }
            IgProduction::Copy { lhs, rhs } => {
                if rhs.is_empty() {
                    if lhs == g.start() && !start_on_rhs {
                        had_epsilon = true;
                        continue;
                    }
                    return Err(Error::EpsilonProduction(p.to_string()));
                }
                insert_copy(&mut out, lhs, rhs, g, &mut fresh, &mut terminal_nts);
            }
        }
    }

    let out = eliminate_units(
        out,
        |p| match p {
            IgProduction::Copy { lhs, rhs } if rhs.len() == 1 && !g.is_terminal(&rhs[0]) => {
                Some((lhs.clone(), rhs[0].clone()))
            }
            _ => None,
        },
        IgProduction::lhs,
        |p, a| p.with_lhs(a),
    );
    let out = prune_unreachable(&new_start, out);
    let grammar = IndexedGrammar::infer(new_start, out, g.flags(), |s| !g.is_terminal(s))?;
    debug_assert!(is_ig_normal_form(&grammar));
    Ok(Normalized { grammar, had_epsilon })
}

fn insert_copy(
    out: &mut BTreeSet<IgProduction>,
    lhs: &Symbol,
    rhs: &[Symbol],
    g: &IndexedGrammar,
    fresh: &mut Fresh,
    terminal_nts: &mut BTreeMap<Symbol, Symbol>,
) {
    let (head, extra) = separate_and_binarize(rhs, |s| g.is_terminal(s), fresh, terminal_nts);
    out.insert(IgProduction::copy(lhs, head));
    for (l, r) in extra {
        out.insert(IgProduction::copy(&l, r));
    }
}

fn prune_unreachable(start: &Symbol, prods: BTreeSet<IgProduction>) -> BTreeSet<IgProduction> {
    let mut reachable = BTreeSet::from([start.clone()]);
    let mut stack = vec![start.clone()];
    while let Some(a) = stack.pop() {
        for p in prods.iter().filter(|p| *p.lhs() == a) {
            for s in p.rhs_symbols() {
                if reachable.insert(s.clone()) {
                    stack.push(s.clone());
                }
            }
        }
    }
    prods.into_iter().filter(|p| reachable.contains(p.lhs())).collect()
}

/// Whether every production has one of the four normal-form shapes, the start
/// symbol occurs on no right-hand side, and `$` is neither pushed nor popped.
pub fn is_ig_normal_form(g: &IndexedGrammar) -> bool {
    g.productions().iter().all(|p| {
        !p.rhs_symbols().contains(g.start())
            && match p {
                IgProduction::Push { flags, .. } => flags.len() == 1 && !flags[0].is_end_flag(),
                IgProduction::Pop { flag, rhs, .. } => {
                    !flag.is_end_flag() && rhs.len() == 1 && g.is_nonterminal(&rhs[0])
                }
                IgProduction::Copy { rhs, .. } => match rhs.as_slice() {
                    [a] => g.is_terminal(a),
                    [b, c] => g.is_nonterminal(b) && g.is_nonterminal(c),
                    _ => false,
                },
            }
    })
}
