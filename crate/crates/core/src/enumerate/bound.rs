//! Lower bounds on the length of the shortest terminal word a flagged
//! nonterminal derives, used to prune the indexed-grammar search.
//!
//! The bound is read off a saturated alternating stack automaton. A transition
//! `(A, f) -> (T, c)` records that `A` carrying `f γ` derives words of length
//! `c + Σ_{Y ∈ T} |w_Y|` where each `Y ∈ T` carrying `γ` derives `w_Y`. The
//! saturation adds transitions until every derivation is summarized, so the
//! minimum over transitions is the exact shortest yield (up to the cap `n+1`).
//! Antichains that grow too large are collapsed to a weaker transition, which
//! keeps the bound a lower bound.

use std::collections::HashMap;

use smallvec::SmallVec;

use super::compiled::{Compiled, Item, Rule, Stacks};

const ANTICHAIN_LIMIT: usize = 4096;

type Targets = SmallVec<[(u32, u32); 4]>;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Trans {
    targets: Targets,
    cost: u32,
}

impl Trans {
    fn dominates(&self, other: &Trans) -> bool {
        self.cost <= other.cost
            && self
                .targets
                .iter()
                .all(|&(y, m)| other.targets.iter().any(|&(z, k)| z == y && k >= m))
    }
}

enum SatRule {
    Copy { lhs: u32, terms: u32, rhs: Vec<u32> },
    Push { lhs: u32, target: u32, flag: u32 },
}

pub(super) struct YieldBound {
    cap: u32,
    bottom: usize,
    /// `trans[state][symbol]`; symbol `bottom` is the end of the flag string.
    trans: Vec<Vec<Vec<Trans>>>,
    memo: HashMap<(u32, u32), u32>,
}

fn split_items(rhs: &[Item]) -> (u32, Vec<u32>) {
    let mut terms = 0;
    let mut nts = Vec::new();
    for it in rhs {
        match *it {
            Item::T(_) => terms += 1,
            Item::N(a) => nts.push(a),
        }
    }
    (terms, nts)
}

impl YieldBound {
    /// Saturates for words of length at most `n`.
    pub fn new(c: &Compiled, n: usize) -> YieldBound {
        let cap = n as u32 + 1;
        let bottom = c.flags.len();
        let mut states = c.nonterminals.len() as u32;
        let mut rules = Vec::new();
        let mut statics = Vec::new();
        for (lhs, list) in c.by_lhs.iter().enumerate() {
            let lhs = lhs as u32;
            for (_, rule) in list {
                match rule {
                    Rule::Copy { rhs } => {
                        let (terms, rhs) = split_items(rhs);
                        rules.push(SatRule::Copy { lhs, terms, rhs });
                    }
                    Rule::Pop { flag, rhs } => {
                        let (terms, rhs) = split_items(rhs);
                        statics.push((lhs, *flag as usize, terms, rhs));
                    }
                    Rule::Push { target, flags } => {
                        // A -> B^{g1 … gk} as a chain of single pushes through
                        // auxiliary states, pushing gk first.
                        let mut current = lhs;
                        for (i, &f) in flags.iter().enumerate().rev() {
                            let next = if i == 0 {
                                *target
                            } else {
                                states += 1;
                                states - 1
                            };
                            rules.push(SatRule::Push {
                                lhs: current,
                                target: next,
                                flag: f,
                            });
                            current = next;
                        }
                    }
                }
            }
        }
        let mut bound = YieldBound {
            cap,
            bottom,
            trans: vec![vec![Vec::new(); bottom + 1]; states as usize],
            memo: HashMap::new(),
        };
        for (lhs, flag, terms, rhs) in statics {
            if terms < cap {
                let mut targets = Targets::new();
                for y in rhs {
                    add_target(&mut targets, y, 1, cap);
                }
                bound.insert(lhs, flag, Trans { targets, cost: terms });
            }
        }
        bound.saturate(&rules);
        bound
    }

    fn saturate(&mut self, rules: &[SatRule]) {
        loop {
            let mut changed = false;
            for rule in rules {
                match rule {
                    SatRule::Copy { lhs, terms, rhs } => {
                        for s in 0..=self.bottom {
                            let mut acc = vec![Trans {
                                targets: Targets::new(),
                                cost: *terms,
                            }];
                            if *terms >= self.cap {
                                break;
                            }
                            for &y in rhs {
                                acc = self.combine(&acc, y, s, 1);
                                if acc.is_empty() {
                                    break;
                                }
                            }
                            for t in acc {
                                changed |= self.insert(*lhs, s, t);
                            }
                        }
                    }
                    SatRule::Push { lhs, target, flag } => {
                        let pushed = self.trans[*target as usize][*flag as usize].clone();
                        for t in pushed {
                            for s in 0..=self.bottom {
                                let mut acc = vec![Trans {
                                    targets: Targets::new(),
                                    cost: t.cost,
                                }];
                                for &(y, m) in &t.targets {
                                    acc = self.combine(&acc, y, s, m);
                                    if acc.is_empty() {
                                        break;
                                    }
                                }
                                for nt in acc {
                                    changed |= self.insert(*lhs, s, nt);
                                }
                            }
                        }
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }

    /// Extends every partial transition in `acc` by `m` copies of a transition
    /// of `y` on symbol `s`. Using the same transition for all copies loses
    /// nothing: the minimum of a sum of equal terms is attained by equal
    /// choices.
    fn combine(&self, acc: &[Trans], y: u32, s: usize, m: u32) -> Vec<Trans> {
        let mut out: Vec<Trans> = Vec::new();
        for a in acc {
            for t in &self.trans[y as usize][s] {
                let cost = a.cost + t.cost * m;
                if cost >= self.cap {
                    continue;
                }
                let mut targets = a.targets.clone();
                for &(z, k) in &t.targets {
                    add_target(&mut targets, z, k.saturating_mul(m), self.cap);
                }
                let cand = Trans { targets, cost };
                if out.iter().any(|o| o.dominates(&cand)) {
                    continue;
                }
                out.retain(|o| !cand.dominates(o));
                out.push(cand);
            }
        }
        out
    }

    fn insert(&mut self, state: u32, s: usize, t: Trans) -> bool {
        let list = &mut self.trans[state as usize][s];
        if list.iter().any(|o| o.dominates(&t)) {
            return false;
        }
        list.retain(|o| !t.dominates(o));
        list.push(t);
        if list.len() > ANTICHAIN_LIMIT {
            let cost = list.iter().map(|t| t.cost).min().expect("non-empty");
            list.clear();
            list.push(Trans {
                targets: Targets::new(),
                cost,
            });
        }
        true
    }

    /// Lower bound (capped at `n+1`) on the shortest word derived from
    /// nonterminal `state` carrying flag string `stack`.
    pub fn nonterminal(&mut self, state: u32, stack: u32, stacks: &Stacks) -> u32 {
        if let Some(&v) = self.memo.get(&(state, stack)) {
            return v;
        }
        let (sym, tail) = match stacks.split(stack) {
            Some((f, t)) => (f as usize, t),
            None => (self.bottom, Stacks::EMPTY),
        };
        let mut best = self.cap;
        for i in 0..self.trans[state as usize][sym].len() {
            let t = self.trans[state as usize][sym][i].clone();
            let mut v = t.cost;
            for &(y, m) in &t.targets {
                if v >= best {
                    break;
                }
                v = v.saturating_add(self.nonterminal(y, tail, stacks).saturating_mul(m));
            }
            best = best.min(v);
        }
        self.memo.insert((state, stack), best);
        best
    }
}

fn add_target(targets: &mut Targets, y: u32, m: u32, cap: u32) {
    match targets.binary_search_by_key(&y, |&(z, _)| z) {
        Ok(i) => targets[i].1 = (targets[i].1 + m).min(cap),
        Err(i) => targets.insert(i, (y, m.min(cap))),
    }
}
