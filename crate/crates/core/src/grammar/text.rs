//! Line-oriented text format shared by context-free grammars, indexed
//! grammars and automata.
//!
//! ```text
//! type: indexed
//! flags: f            # `$` is implicit
//! start: S
//! S -> T^f | A B      # push and copy
//! A^f -> a A          # pop
//! A^$ -> eps
//! ```
//!
//! A line whose first non-blank character is `#` is a comment, and a
//! standalone `#` token starts a trailing comment. Symbols that appear on a
//! left-hand side are nonterminals; other right-hand-side symbols are
//! terminals unless a `terminals:` declaration is present, in which case every
//! symbol must be declared. Serialization writes every declaration explicitly
//! and sorts productions, so `parse(serialize(g)) == g`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::grammar::{Cfg, CfgProduction, IgProduction, IndexedGrammar, Nfa, Transition};
use crate::symbol::{is_valid_name, Symbol};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrammarFile {
    Cfg(Cfg),
    Indexed(IndexedGrammar),
    Nfa(Nfa),
}

impl GrammarFile {
    pub fn kind(&self) -> &'static str {
        match self {
            GrammarFile::Cfg(_) => "cfg",
            GrammarFile::Indexed(_) => "indexed",
            GrammarFile::Nfa(_) => "nfa",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Cfg,
    Indexed,
    Nfa,
}

#[derive(Debug, Clone)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn symbol(&self) -> Result<Symbol> {
        if !is_valid_name(self.text) {
            return Err(self.syntax(format!("`{}` is not a valid symbol here", self.text)));
        }
        Ok(Symbol::raw(self.text))
    }
}

fn tokenize(line: &str, line_no: usize) -> Vec<Token<'_>> {
    if line.trim_start().starts_with('#') {
        return Vec::new();
    }
    let mut tokens: Vec<Token<'_>> = Vec::new();
    let mut column = 0;
    let mut start: Option<(usize, usize)> = None;
    for (i, c) in line.char_indices() {
        column += 1;
        if c.is_whitespace() {
            if let Some((s, col)) = start.take() {
                tokens.push(Token {
                    text: &line[s..i],
                    line: line_no,
                    column: col,
                });
            }
        } else if start.is_none() {
            start = Some((i, column));
        }
    }
    if let Some((s, col)) = start {
        tokens.push(Token {
            text: &line[s..],
            line: line_no,
            column: col,
        });
    }
    if let Some(cut) = tokens.iter().position(|t| t.text == "#") {
        tokens.truncate(cut);
    }
    tokens
}

#[derive(Default)]
struct Declarations<'a> {
    kind: Option<(Kind, usize)>,
    start: Option<Token<'a>>,
    flags: Option<Vec<Token<'a>>>,
    terminals: Option<Vec<Token<'a>>>,
    nonterminals: Option<Vec<Token<'a>>>,
    states: Option<Vec<Token<'a>>>,
    accept: Option<Vec<Token<'a>>>,
    cnf: bool,
}

fn declare_list<'a>(slot: &mut Option<Vec<Token<'a>>>, values: &[Token<'a>]) -> Result<()> {
    let list = slot.get_or_insert_with(Vec::new);
    for v in values {
        if list.iter().any(|t| t.text == v.text) {
            return Err(Error::Duplicate {
                symbol: v.text.to_string(),
                line: Some(v.line),
            });
        }
        list.push(v.clone());
    }
    Ok(())
}

fn declared_set(tokens: &Option<Vec<Token<'_>>>) -> Result<Option<BTreeSet<Symbol>>> {
    tokens
        .as_ref()
        .map(|ts| ts.iter().map(Token::symbol).collect::<Result<BTreeSet<_>>>())
        .transpose()
}

/// Parses the grammar text format into a context-free grammar, an indexed
/// grammar or an automaton, according to its `type:` line.
pub fn parse_grammar(text: &str) -> Result<GrammarFile> {
    let lines: Vec<Vec<Token<'_>>> = text.lines().enumerate().map(|(i, l)| tokenize(l, i + 1)).collect();
    let mut decls = Declarations::default();
    let mut rules: Vec<&[Token<'_>]> = Vec::new();
    for tokens in &lines {
        let Some(head) = tokens.first() else { continue };
        let values = &tokens[1..];
        match head.text {
            "type:" => {
                if decls.kind.is_some() {
                    return Err(Error::Duplicate {
                        symbol: "type".into(),
                        line: Some(head.line),
                    });
                }
                let kind = match values {
                    [v] if v.text == "cfg" => Kind::Cfg,
                    [v] if v.text == "indexed" => Kind::Indexed,
                    [v] if v.text == "nfa" => Kind::Nfa,
                    _ => return Err(head.syntax("expected `type: cfg | indexed | nfa`")),
                };
                decls.kind = Some((kind, head.line));
            }
            "start:" => {
                if decls.start.is_some() {
                    return Err(Error::Duplicate {
                        symbol: "start".into(),
                        line: Some(head.line),
                    });
                }
                match values {
                    [v] => decls.start = Some(v.clone()),
                    _ => return Err(head.syntax("expected exactly one start symbol")),
                }
            }
            "cnf:" => match values {
                [v] if v.text == "true" => decls.cnf = true,
                [v] if v.text == "false" => decls.cnf = false,
                _ => return Err(head.syntax("expected `cnf: true` or `cnf: false`")),
            },
            "flags:" => declare_list(&mut decls.flags, values)?,
            "terminals:" | "alphabet:" => declare_list(&mut decls.terminals, values)?,
            "nonterminals:" => declare_list(&mut decls.nonterminals, values)?,
            "states:" => declare_list(&mut decls.states, values)?,
            "accept:" => declare_list(&mut decls.accept, values)?,
            t if t.ends_with(':') && t.len() > 1 && !t[..t.len() - 1].contains(':') && rules_look_like_decl(tokens) => {
                return Err(head.syntax(format!("unknown declaration `{t}`")));
            }
            _ => rules.push(tokens),
        }
    }
    let Some((kind, _)) = decls.kind else {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "missing `type:` declaration".into(),
        });
    };
    match kind {
        Kind::Nfa => build_nfa(&decls, &rules).map(GrammarFile::Nfa),
        Kind::Cfg | Kind::Indexed => build_grammar(kind, &decls, &rules),
    }
}

// `foo: x y` is a declaration attempt unless it contains `->`.
fn rules_look_like_decl(tokens: &[Token<'_>]) -> bool {
    !tokens.iter().any(|t| t.text == "->")
}

enum Rhs {
    Symbols(Vec<Symbol>),
    Push(Symbol, Vec<Symbol>),
}

struct RawRule {
    lhs: Symbol,
    pop_flag: Option<(Symbol, usize)>,
    alternatives: Vec<(Rhs, usize)>,
}

fn parse_rule(kind: Kind, tokens: &[Token<'_>]) -> Result<RawRule> {
    let head = &tokens[0];
    let arrow = tokens.get(1).ok_or_else(|| head.syntax("expected `->`"))?;
    if arrow.text != "->" {
        return Err(arrow.syntax(format!("expected `->`, found `{}`", arrow.text)));
    }
    let (lhs, pop_flag) = match head.text.split_once('^') {
        None => (head.symbol()?, None),
        Some((a, f)) => {
            if kind != Kind::Indexed {
                return Err(head.syntax("flags are only allowed in indexed grammars"));
            }
            if a.is_empty() || f.is_empty() || f.contains('^') {
                return Err(head.syntax("expected `A^f` on the left-hand side"));
            }
            let flag = if f == "$" {
                Symbol::end_flag()
            } else {
                sub_symbol(head, f)?
            };
            (sub_symbol(head, a)?, Some((flag, head.line)))
        }
    };
    let mut alternatives = Vec::new();
    let body = &tokens[2..];
    if body.is_empty() {
        return Err(arrow.syntax("missing right-hand side"));
    }
    for alt in body.split(|t| t.text == "|") {
        let Some(first) = alt.first() else {
            return Err(arrow.syntax("empty alternative (write `eps` for the empty word)"));
        };
        alternatives.push((parse_alternative(kind, pop_flag.is_some(), alt)?, first.line));
    }
    Ok(RawRule {
        lhs,
        pop_flag,
        alternatives,
    })
}

fn sub_symbol(tok: &Token<'_>, text: &str) -> Result<Symbol> {
    if !is_valid_name(text) {
        return Err(tok.syntax(format!("`{text}` is not a valid symbol here")));
    }
    Ok(Symbol::raw(text))
}

fn parse_alternative(kind: Kind, is_pop: bool, alt: &[Token<'_>]) -> Result<Rhs> {
    if alt.len() == 1 && alt[0].text == "eps" {
        return Ok(Rhs::Symbols(Vec::new()));
    }
    if let Some(t) = alt.iter().find(|t| t.text == "^") {
        return Err(t.syntax("stray `^`"));
    }
    let first = &alt[0];
    if let Some((target, flag)) = first.text.split_once('^') {
        if kind != Kind::Indexed {
            return Err(first.syntax("flags are only allowed in indexed grammars"));
        }
        if is_pop {
            return Err(first.syntax("a pop production cannot push"));
        }
        if target.is_empty() || flag.is_empty() || flag.contains('^') {
            return Err(first.syntax("expected `B^f` in a push"));
        }
        let mut flags = vec![flag_symbol(first, flag)?];
        for t in &alt[1..] {
            if t.text.contains('^') {
                return Err(t.syntax("stray `^`"));
            }
            flags.push(flag_symbol(t, t.text)?);
        }
        return Ok(Rhs::Push(sub_symbol(first, target)?, flags));
    }
    let mut symbols = Vec::with_capacity(alt.len());
    for t in alt {
        if t.text.contains('^') {
            return Err(t.syntax("stray `^`"));
        }
        if t.text == "eps" {
            return Err(t.syntax("`eps` must stand alone"));
        }
        symbols.push(t.symbol()?);
    }
    Ok(Rhs::Symbols(symbols))
}

fn flag_symbol(tok: &Token<'_>, text: &str) -> Result<Symbol> {
    if text == "$" {
        Ok(Symbol::end_flag())
    } else {
        sub_symbol(tok, text)
    }
}

fn build_grammar(kind: Kind, decls: &Declarations<'_>, rule_lines: &[&[Token<'_>]]) -> Result<GrammarFile> {
    if decls.states.is_some() || decls.accept.is_some() {
        return Err(Error::Invalid("`states:`/`accept:` are only valid in nfa files".into()));
    }
    if kind == Kind::Cfg && decls.flags.is_some() {
        return Err(Error::Invalid("`flags:` is only valid in indexed grammars".into()));
    }
    let start_tok = decls
        .start
        .as_ref()
        .ok_or_else(|| Error::Invalid("missing `start:` declaration".into()))?;
    let start = start_tok.symbol()?;
    let rules: Vec<RawRule> = rule_lines
        .iter()
        .map(|tokens| parse_rule(kind, tokens))
        .collect::<Result<_>>()?;

    let declared_terminals = declared_set(&decls.terminals)?;
    let mut nonterminals = declared_set(&decls.nonterminals)?.unwrap_or_default();
    nonterminals.insert(start.clone());
    for r in &rules {
        nonterminals.insert(r.lhs.clone());
        for (alt, _) in &r.alternatives {
            if let Rhs::Push(target, _) = alt {
                nonterminals.insert(target.clone());
            }
        }
    }
    if let Some(t) = declared_terminals
        .as_ref()
        .and_then(|ts| ts.intersection(&nonterminals).next())
    {
        return Err(Error::Duplicate {
            symbol: t.to_string(),
            line: None,
        });
    }
    let mut flags: BTreeSet<Symbol> = declared_set(&decls.flags)?.unwrap_or_default();
    flags.insert(Symbol::end_flag());
    let mut terminals = declared_terminals.clone().unwrap_or_default();
    let check_flag = |f: &Symbol, line: usize| -> Result<()> {
        if flags.contains(f) {
            Ok(())
        } else {
            Err(Error::Undeclared {
                symbol: f.to_string(),
                line: Some(line),
            })
        }
    };
    for r in &rules {
        if let Some((f, line)) = &r.pop_flag {
            check_flag(f, *line)?;
        }
        for (alt, line) in &r.alternatives {
            match alt {
                Rhs::Push(_, fs) => {
                    for f in fs {
                        check_flag(f, *line)?;
                    }
                }
                Rhs::Symbols(symbols) => {
                    for s in symbols {
                        if nonterminals.contains(s) {
                            continue;
                        }
                        match &declared_terminals {
                            Some(decl) if !decl.contains(s) => {
                                return Err(Error::Undeclared {
                                    symbol: s.to_string(),
                                    line: Some(*line),
                                })
                            }
                            _ => {
                                terminals.insert(s.clone());
                            }
                        }
                    }
                }
            }
        }
    }

    match kind {
        Kind::Cfg => {
            let mut productions = BTreeSet::new();
            for r in rules {
                for (alt, _) in r.alternatives {
                    if let Rhs::Symbols(rhs) = alt {
                        productions.insert(CfgProduction::new(r.lhs.clone(), rhs));
                    }
                }
            }
            Cfg::new(nonterminals, terminals, start, productions, decls.cnf).map(GrammarFile::Cfg)
        }
        _ => {
            if decls.cnf {
                return Err(Error::Invalid("`cnf:` is only valid in cfg files".into()));
            }
            let mut productions = BTreeSet::new();
            for r in rules {
                for (alt, _) in r.alternatives {
                    let p = match (&r.pop_flag, alt) {
                        (Some((f, _)), Rhs::Symbols(rhs)) => IgProduction::pop(&r.lhs, f, rhs),
                        (None, Rhs::Symbols(rhs)) => IgProduction::copy(&r.lhs, rhs),
                        (None, Rhs::Push(target, fs)) => IgProduction::push(&r.lhs, &target, fs),
                        (Some(_), Rhs::Push(..)) => unreachable!("rejected while parsing"),
                    };
                    productions.insert(p);
                }
            }
            IndexedGrammar::new(nonterminals, terminals, flags, start, productions).map(GrammarFile::Indexed)
        }
    }
}

fn build_nfa(decls: &Declarations<'_>, rule_lines: &[&[Token<'_>]]) -> Result<Nfa> {
    if decls.flags.is_some() || decls.nonterminals.is_some() || decls.cnf {
        return Err(Error::Invalid("grammar declarations are not valid in nfa files".into()));
    }
    let states = declared_set(&decls.states)?.ok_or_else(|| Error::Invalid("missing `states:` declaration".into()))?;
    let start = decls
        .start
        .as_ref()
        .ok_or_else(|| Error::Invalid("missing `start:` declaration".into()))?
        .symbol()?;
    let accepts = declared_set(&decls.accept)?.unwrap_or_default();
    let declared_alphabet = declared_set(&decls.terminals)?;
    let mut alphabet = declared_alphabet.clone().unwrap_or_default();
    let mut transitions = BTreeSet::new();
    for tokens in rule_lines {
        let [from, label, arrow, to] = tokens else {
            return Err(tokens[0].syntax("expected `state symbol -> state`"));
        };
        if arrow.text != "->" {
            return Err(arrow.syntax("expected `->`"));
        }
        let undeclared = |t: &Token<'_>| Error::Undeclared {
            symbol: t.text.to_string(),
            line: Some(t.line),
        };
        let (from_s, to_s) = (from.symbol()?, to.symbol()?);
        for (tok, s) in [(from, &from_s), (to, &to_s)] {
            if !states.contains(s) {
                return Err(undeclared(tok));
            }
        }
        let label_s = if label.text == "eps" {
            None
        } else {
            let a = label.symbol()?;
            match &declared_alphabet {
                Some(decl) if !decl.contains(&a) => return Err(undeclared(label)),
                _ => {
                    alphabet.insert(a.clone());
                }
            }
            Some(a)
        };
        transitions.insert(Transition::new(&from_s, label_s.as_ref(), &to_s));
    }
    Nfa::new(states, alphabet, transitions, start, accepts)
}

fn join(set: &BTreeSet<Symbol>) -> String {
    let v: Vec<&str> = set.iter().map(Symbol::as_str).collect();
    v.join(" ")
}

fn decl(out: &mut String, key: &str, value: &str) {
    if value.is_empty() {
        let _ = writeln!(out, "{key}:");
    } else {
        let _ = writeln!(out, "{key}: {value}");
    }
}

fn sorted_lines<T: ToString>(items: impl Iterator<Item = T>) -> Vec<String> {
    let mut lines: Vec<String> = items.map(|p| p.to_string()).collect();
    lines.sort();
    lines
}

pub fn serialize_cfg(g: &Cfg) -> String {
    let mut out = String::new();
    decl(&mut out, "type", "cfg");
    decl(&mut out, "start", g.start().as_str());
    decl(&mut out, "nonterminals", &join(g.nonterminals()));
    decl(&mut out, "terminals", &join(g.terminals()));
    if g.is_marked_cnf() {
        decl(&mut out, "cnf", "true");
    }
    for line in sorted_lines(g.productions().iter()) {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn serialize_indexed(g: &IndexedGrammar) -> String {
    let mut out = String::new();
    decl(&mut out, "type", "indexed");
    decl(&mut out, "start", g.start().as_str());
    decl(&mut out, "nonterminals", &join(g.nonterminals()));
    decl(&mut out, "terminals", &join(g.terminals()));
    let flags: BTreeSet<Symbol> = g.flags().iter().filter(|f| !f.is_end_flag()).cloned().collect();
    decl(&mut out, "flags", &join(&flags));
    for line in sorted_lines(g.productions().iter()) {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn serialize_nfa(m: &Nfa) -> String {
    let mut out = String::new();
    decl(&mut out, "type", "nfa");
    decl(&mut out, "states", &join(m.states()));
    decl(&mut out, "start", m.start().as_str());
    decl(&mut out, "accept", &join(m.accepts()));
    decl(&mut out, "terminals", &join(m.alphabet()));
    for line in sorted_lines(m.transitions().iter()) {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Canonical text: declarations first, then productions (or transitions)
/// one per line in lexicographic order.
pub fn serialize_grammar(g: &GrammarFile) -> String {
    match g {
        GrammarFile::Cfg(g) => serialize_cfg(g),
        GrammarFile::Indexed(g) => serialize_indexed(g),
        GrammarFile::Nfa(m) => serialize_nfa(m),
    }
}

/// Counts productions per left-hand side; handy for summaries.
pub fn production_counts(g: &GrammarFile) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    match g {
        GrammarFile::Cfg(g) => {
            for p in g.productions() {
                *counts.entry(p.lhs.to_string()).or_insert(0) += 1;
            }
        }
        GrammarFile::Indexed(g) => {
            for p in g.productions() {
                *counts.entry(p.lhs().to_string()).or_insert(0) += 1;
            }
        }
        GrammarFile::Nfa(m) => {
            for t in m.transitions() {
                *counts.entry(t.from.to_string()).or_insert(0) += 1;
            }
        }
    }
    counts
}
