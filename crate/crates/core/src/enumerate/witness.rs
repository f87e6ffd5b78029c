use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grammar::{IgProduction, IndexedGrammar};
use crate::symbol::{Symbol, Word};

/// One derivation step: `production` rewrote the nonterminal at `position`
/// (0-based index into the sentential form).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessStep {
    #[serde(serialize_with = "display")]
    pub production: IgProduction,
    pub position: usize,
}

fn display<S: serde::Serializer>(p: &IgProduction, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

/// A derivation from the start symbol carrying `$`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DerivationWitness {
    pub steps: Vec<WitnessStep>,
}

/// A symbol of a sentential form; the flag string is listed head first and
/// includes `$`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormSymbol {
    Terminal(Symbol),
    Nonterminal(Symbol, Vec<Symbol>),
}

impl fmt::Display for FormSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormSymbol::Terminal(a) => write!(f, "{a}"),
            FormSymbol::Nonterminal(a, flags) => {
                write!(f, "{a}[")?;
                for (i, g) in flags.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{g}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Renders a sentential form as space-separated symbols, `A[f $]` for
/// flagged nonterminals.
pub fn render_form(form: &[FormSymbol]) -> String {
    if form.is_empty() {
        return "eps".into();
    }
    form.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn step_form(g: &IndexedGrammar, form: &[FormSymbol], step: &WitnessStep, index: usize) -> Result<Vec<FormSymbol>> {
    let fail = |message: String| Error::Replay { step: index, message };
    let Some(FormSymbol::Nonterminal(a, flags)) = form.get(step.position) else {
        return Err(fail(format!("no nonterminal at position {}", step.position)));
    };
    let p = &step.production;
    if !g.productions().contains(p) {
        return Err(fail(format!("`{p}` is not a production of the grammar")));
    }
    if p.lhs() != a {
        return Err(fail(format!("`{p}` does not rewrite `{a}`")));
    }
    let expand = |rhs: &[Symbol], flags: &[Symbol]| -> Vec<FormSymbol> {
        rhs.iter()
            .map(|s| {
                if g.is_nonterminal(s) {
                    FormSymbol::Nonterminal(s.clone(), flags.to_vec())
                } else {
                    FormSymbol::Terminal(s.clone())
                }
            })
            .collect()
    };
    let replacement = match p {
        IgProduction::Push {
            target, flags: pushed, ..
        } => {
            let mut stack = pushed.clone();
            stack.extend(flags.iter().cloned());
            vec![FormSymbol::Nonterminal(target.clone(), stack)]
        }
        IgProduction::Pop { flag, rhs, .. } => {
            if flags.first() != Some(flag) {
                return Err(fail(format!(
                    "`{p}` needs flag `{flag}` on top of `{}`",
                    form[step.position]
                )));
            }
            expand(rhs, &flags[1..])
        }
        IgProduction::Copy { rhs, .. } => expand(rhs, flags),
    };
    let mut next = form[..step.position].to_vec();
    next.extend(replacement);
    next.extend_from_slice(&form[step.position + 1..]);
    Ok(next)
}

/// Replays a witness and returns every sentential form along the way,
/// starting with the start symbol carrying `$`.
pub fn replay_forms(g: &IndexedGrammar, witness: &DerivationWitness) -> Result<Vec<Vec<FormSymbol>>> {
    let mut forms = vec![vec![FormSymbol::Nonterminal(
        g.start().clone(),
        vec![Symbol::end_flag()],
    )]];
    for (i, step) in witness.steps.iter().enumerate() {
        let next = step_form(g, forms.last().expect("non-empty"), step, i)?;
        forms.push(next);
    }
    Ok(forms)
}

/// Replays a witness and returns the derived word; fails if any step does
/// not apply or the final form still contains a nonterminal.
pub fn replay_witness(g: &IndexedGrammar, witness: &DerivationWitness) -> Result<Word> {
    let forms = replay_forms(g, witness)?;
    let last = forms.last().expect("non-empty");
    last.iter()
        .map(|s| match s {
            FormSymbol::Terminal(a) => Ok(a.clone()),
            FormSymbol::Nonterminal(..) => Err(Error::Replay {
                step: witness.steps.len(),
                message: format!("derivation ends in a non-terminal form: {}", render_form(last)),
            }),
        })
        .collect::<Result<Vec<_>>>()
        .map(Word)
}
