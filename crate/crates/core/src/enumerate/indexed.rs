use std::collections::{BTreeMap, HashMap};

use indexmap::IndexSet;

use super::bound::YieldBound;
use super::compiled::{Compiled, Item, Rule, Stacks};
use super::witness::{DerivationWitness, WitnessStep};
use super::Budget;
use crate::grammar::IndexedGrammar;
use crate::sample::LanguageSample;
use crate::symbol::Word;

const TERMINAL_BIT: u64 = 1 << 63;

fn pack_nt(a: u32, stack: u32) -> u64 {
    (u64::from(a) << 32) | u64::from(stack)
}

fn unpack(x: u64) -> Result<(u32, u32), u32> {
    if x & TERMINAL_BIT != 0 {
        Err(x as u32)
    } else {
        Ok(((x >> 32) as u32, x as u32))
    }
}

/// Result of a bounded search over an indexed grammar.
#[derive(Debug, Clone)]
pub struct IgEnumeration {
    pub sample: LanguageSample,
    pub witnesses: BTreeMap<Word, DerivationWitness>,
    /// Sentential forms visited.
    pub states: usize,
}

struct Parent {
    form: u32,
    production: u32,
    position: u32,
}

/// Breadth-first leftmost search over deduplicated sentential forms.
///
/// A form is discarded when its terminals plus the shortest possible yields
/// of its nonterminals exceed `n`; this never loses a word. Forms that
/// exceed the flag-depth or form-length caps are discarded too, and the
/// result is then marked non-exhaustive.
pub fn enumerate_ig(g: &IndexedGrammar, n: usize, budget: &Budget) -> IgEnumeration {
    let c = Compiled::new(g);
    let mut bound = YieldBound::new(&c, n);
    let mut stacks = Stacks::new();
    let start_stack = stacks.push(c.end_flag, Stacks::EMPTY);
    let start_form: Box<[u64]> = Box::new([pack_nt(c.start, start_stack)]);

    let mut exhaustive = true;
    let mut forms: IndexSet<Box<[u64]>> = IndexSet::new();
    let mut parents: Vec<Option<Parent>> = Vec::new();
    let mut words: HashMap<Vec<u32>, Parent> = HashMap::new();
    if bound.nonterminal(c.start, start_stack, &stacks) <= n as u32 {
        forms.insert(start_form);
        parents.push(None);
    }

    let mut next = 0;
    let mut scratch: Vec<u64> = Vec::new();
    while next < forms.len() {
        if forms.len() > budget.max_states {
            exhaustive = false;
            break;
        }
        let form = forms[next].clone();
        let pos = form
            .iter()
            .position(|&x| x & TERMINAL_BIT == 0)
            .expect("stored forms contain a nonterminal");
        let (a, stack) = unpack(form[pos]).expect("nonterminal");
        for (prod, rule) in &c.by_lhs[a as usize] {
            scratch.clear();
            scratch.extend_from_slice(&form[..pos]);
            let mut too_deep = false;
            match rule {
                Rule::Push { target, flags } => {
                    let mut s = stack;
                    for &f in flags.iter().rev() {
                        s = stacks.push(f, s);
                    }
                    too_deep = stacks.depth(s) as usize > budget.max_flag_depth;
                    scratch.push(pack_nt(*target, s));
                }
                Rule::Pop { flag, rhs } => match stacks.split(stack) {
                    Some((head, tail)) if head == *flag => push_items(&mut scratch, rhs, tail),
                    _ => continue,
                },
                Rule::Copy { rhs } => push_items(&mut scratch, rhs, stack),
            }
            scratch.extend_from_slice(&form[pos + 1..]);

            let mut size = 0u32;
            let mut complete = true;
            for &x in &scratch {
                size += match unpack(x) {
                    Err(_) => 1,
                    Ok((b, s)) => {
                        complete = false;
                        bound.nonterminal(b, s, &stacks)
                    }
                };
                if size > n as u32 {
                    break;
                }
            }
            if size > n as u32 {
                continue;
            }
            let parent = Parent {
                form: next as u32,
                production: *prod,
                position: pos as u32,
            };
            if complete {
                let word: Vec<u32> = scratch.iter().map(|&x| x as u32).collect();
                words.entry(word).or_insert(parent);
                continue;
            }
            if too_deep || scratch.len() > budget.max_form_len {
                exhaustive = false;
                continue;
            }
            if forms.insert(scratch.as_slice().into()) {
                parents.push(Some(parent));
            }
        }
        next += 1;
    }

    let mut sample = LanguageSample::new(n);
    sample.exhaustive = exhaustive;
    let mut witnesses = BTreeMap::new();
    for (word, last) in words {
        let word = Word(word.iter().map(|&t| c.terminals[t as usize].clone()).collect());
        let mut steps = vec![step(&c, &last)];
        let mut at = last.form as usize;
        while let Some(p) = &parents[at] {
            steps.push(step(&c, p));
            at = p.form as usize;
        }
        steps.reverse();
        sample.insert(word.clone());
        witnesses.insert(word, DerivationWitness { steps });
    }
    IgEnumeration {
        sample,
        witnesses,
        states: forms.len(),
    }
}

fn step(c: &Compiled, p: &Parent) -> WitnessStep {
    WitnessStep {
        production: c.productions[p.production as usize].clone(),
        position: p.position as usize,
    }
}

fn push_items(out: &mut Vec<u64>, rhs: &[Item], stack: u32) {
    for it in rhs {
        out.push(match *it {
            Item::T(t) => TERMINAL_BIT | u64::from(t),
            Item::N(b) => pack_nt(b, stack),
        });
    }
}
