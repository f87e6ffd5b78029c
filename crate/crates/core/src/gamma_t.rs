//! Indexed grammars for `L_τ`, `σ(L)` and `C^k(L)` from a context-free `L`.
//!
//! For a tree shape `T`, `Γ_T` first guesses one path skeleton per edge of
//! `T`, recording it on the flag, then checks the branch points against the
//! productions, and finally unpacks the edge sides of the flag in the order
//! the permutation asks for, handing the off-path nonterminals back to the
//! original grammar.
//!
//! Generated names: edge copies `A@e3`, flags `A.L`, `A.R`, `A.al`, `A.om`,
//! `a.om` and `#3`; control symbols `@S0`, `@M`, `@Mbar`, `@M2.1`, `@Mbar2.1`,
//! `@X1`, `@Xbar1`, `@X1:B`, `@Xbar1:B`, `@X1:B:C`, `@Xbar1:B:C`; and `A~` for
//! nonterminals waiting for the bottom of the flag.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::grammar::{cfg_as_indexed, fresh_name, Cfg, IgProduction, IndexedGrammar};
use crate::normal_form::cfg_to_cnf;
use crate::perm::Permutation;
use crate::shape::{enumerate_shapes, Side, TreeShape};
use crate::symbol::Symbol;

fn sym(s: String) -> Symbol {
    Symbol::raw(&s)
}

fn edge_nt(a: &Symbol, e: usize) -> Symbol {
    sym(format!("{a}@e{e}"))
}

fn flag_left(a: &Symbol) -> Symbol {
    sym(format!("{a}.L"))
}

fn flag_right(a: &Symbol) -> Symbol {
    sym(format!("{a}.R"))
}

fn flag_alpha(a: &Symbol) -> Symbol {
    sym(format!("{a}.al"))
}

fn flag_omega(a: &Symbol) -> Symbol {
    sym(format!("{a}.om"))
}

fn flag_hash(i: usize) -> Symbol {
    sym(format!("#{i}"))
}

fn tilde(a: &Symbol) -> Symbol {
    sym(format!("{a}~"))
}

struct Builder {
    prods: BTreeSet<IgProduction>,
    flags: BTreeSet<Symbol>,
}

impl Builder {
    fn copy(&mut self, lhs: &Symbol, rhs: Vec<Symbol>) {
        self.prods.insert(IgProduction::copy(lhs, rhs));
    }

    fn push(&mut self, lhs: &Symbol, target: &Symbol, flags: Vec<Symbol>) {
        self.prods.insert(IgProduction::push(lhs, target, flags));
    }

    fn pop(&mut self, lhs: &Symbol, flag: &Symbol, rhs: Vec<Symbol>) {
        self.prods.insert(IgProduction::pop(lhs, flag, rhs));
    }

    /// `y^g -> y` for every flag `g` except `f`, plus `y^f -> then`.
    fn ready(&mut self, y: &Symbol, f: &Symbol, then: Vec<Symbol>) {
        let others: Vec<Symbol> = self.flags.iter().filter(|g| *g != f).cloned().collect();
        for g in others {
            self.pop(y, &g, vec![y.clone()]);
        }
        self.pop(y, f, then);
    }
}

/// `Γ_T` for a CNF grammar `g`, a permutation `τ` of degree `ℓ ≥ 2` and a
/// shape `t` with `ℓ - 1` leaves. Its language is the set of
/// `w_{τ(1)} … w_{τ(ℓ)}` over the partitions of words of `L(g)` realizable by
/// a skeleton of shape `t`, with `w_2, …, w_ℓ` non-empty.
pub fn gamma_t(g: &Cfg, tau: &Permutation, t: &TreeShape) -> Result<IndexedGrammar> {
    if !g.has_cnf_shape() {
        return Err(Error::NotCnf("gamma_t needs a grammar in Chomsky normal form".into()));
    }
    let ell = tau.degree();
    if ell < 2 || t.parts() != ell {
        return Err(Error::DegreeMismatch(format!(
            "permutation of degree {ell} needs a shape with {} leaves, got {}",
            ell.saturating_sub(1),
            t.leaves()
        )));
    }
    let order = t.order_edges();
    let outline = t.outline(&order);
    let branch_points = t.branch_points(&order);
    let (n_edges, m) = (order.len(), order.non_leaf());
    let nts: Vec<&Symbol> = g.nonterminals().iter().collect();
    let terminals: Vec<&Symbol> = g.terminals().iter().collect();
    let binary: Vec<(&Symbol, &Symbol, &Symbol)> = g
        .productions()
        .iter()
        .filter_map(|p| match p.rhs.as_slice() {
            [b, c] => Some((&p.lhs, b, c)),
            _ => None,
        })
        .collect();
    let unary: Vec<(&Symbol, &Symbol)> = g
        .productions()
        .iter()
        .filter_map(|p| match p.rhs.as_slice() {
            [a] => Some((&p.lhs, a)),
            _ => None,
        })
        .collect();
    // Nonterminals that can hang off a path.
    let siblings: BTreeSet<&Symbol> = binary.iter().flat_map(|&(_, l, r)| [l, r]).collect();

    let mut flags = BTreeSet::from([Symbol::end_flag()]);
    flags.extend((1..=n_edges).map(flag_hash));
    for a in &nts {
        flags.extend([flag_alpha(a), flag_omega(a)]);
    }
    for a in &siblings {
        flags.extend([flag_left(a), flag_right(a)]);
    }
    flags.extend(terminals.iter().map(|a| flag_omega(a)));
    let mut b = Builder {
        prods: BTreeSet::new(),
        flags,
    };

    let s0 = sym("@S0".into());
    let big_m = sym("@M".into());
    let m_bar = sym("@Mbar".into());

    // Guess one path skeleton per edge.
    b.push(&s0, &edge_nt(g.start(), 1), vec![flag_alpha(g.start())]);
    for e in 1..=n_edges {
        for (a, bb, c) in &binary {
            b.push(&edge_nt(a, e), &edge_nt(bb, e), vec![flag_right(c)]);
            b.push(&edge_nt(a, e), &edge_nt(c, e), vec![flag_left(bb)]);
        }
    }
    for i in 1..=m {
        for a in &nts {
            for bb in &nts {
                b.push(
                    &edge_nt(a, i),
                    &edge_nt(bb, i + 1),
                    vec![flag_alpha(bb), flag_hash(i), flag_omega(a)],
                );
            }
        }
    }
    for i in m + 1..n_edges {
        for (a, x) in &unary {
            for bb in &nts {
                b.push(
                    &edge_nt(a, i),
                    &edge_nt(bb, i + 1),
                    vec![flag_alpha(bb), flag_hash(i), flag_omega(x)],
                );
            }
        }
    }
    for (a, x) in &unary {
        b.push(&edge_nt(a, n_edges), &big_m, vec![flag_hash(n_edges), flag_omega(x)]);
    }

    // Check every branch point.
    let mut m_rhs = vec![m_bar.clone()];
    for bp in &branch_points {
        let i = bp.index;
        let x = sym(format!("@X{i}"));
        let x_bar = sym(format!("@Xbar{i}"));
        m_rhs.push(x.clone());
        // The child with the larger edge index sits nearer the flag head.
        let left_first = bp.left > bp.right;
        let (first, second) = if left_first {
            (bp.left, bp.right)
        } else {
            (bp.right, bp.left)
        };
        b.ready(&x, &flag_hash(first), vec![x_bar.clone()]);
        let alpha_flags: Vec<Symbol> = nts.iter().map(|a| flag_alpha(a)).collect();
        let skip_to_alpha = |b: &mut Builder, y: &Symbol| {
            let others: Vec<Symbol> = b.flags.iter().filter(|f| !alpha_flags.contains(f)).cloned().collect();
            for f in others {
                b.pop(y, &f, vec![y.clone()]);
            }
        };
        skip_to_alpha(&mut b, &x_bar);
        // (first child's start, second child's start, parent) for A -> left right
        let triples: BTreeSet<(&Symbol, &Symbol, &Symbol)> = binary
            .iter()
            .map(|&(a, l, r)| if left_first { (l, r, a) } else { (r, l, a) })
            .collect();
        let firsts: BTreeSet<&Symbol> = triples.iter().map(|t| t.0).collect();
        for y in firsts {
            let x_y = sym(format!("@X{i}:{y}"));
            let x_y_bar = sym(format!("@Xbar{i}:{y}"));
            b.pop(&x_bar, &flag_alpha(y), vec![x_y.clone()]);
            b.ready(&x_y, &flag_hash(second), vec![x_y_bar.clone()]);
            skip_to_alpha(&mut b, &x_y_bar);
            let seconds: BTreeSet<&Symbol> = triples.iter().filter(|t| t.0 == y).map(|t| t.1).collect();
            for z in seconds {
                let x_yz = sym(format!("@X{i}:{y}:{z}"));
                let x_yz_bar = sym(format!("@Xbar{i}:{y}:{z}"));
                b.pop(&x_y_bar, &flag_alpha(z), vec![x_yz.clone()]);
                b.ready(&x_yz, &flag_hash(bp.parent), vec![x_yz_bar.clone()]);
                for (_, _, a) in triples.iter().filter(|t| t.0 == y && t.1 == z) {
                    b.pop(&x_yz_bar, &flag_omega(a), vec![]);
                }
            }
        }
    }
    b.copy(&big_m, m_rhs);

    // Unpack the edge sides in the order τ(1), …, τ(ℓ).
    let mut unpack = Vec::new();
    for j in 1..=ell {
        let i = tau.image(j);
        for jj in 1..=outline.lengths()[i - 1] {
            unpack.push(sym(format!("@Mbar{i}.{jj}")));
        }
    }
    b.copy(&m_bar, unpack);
    for i in 1..=ell {
        for j in 1..=outline.lengths()[i - 1] {
            let (rho, d) = outline.side(i, j);
            let mij = sym(format!("@M{i}.{j}"));
            let mij_bar = sym(format!("@Mbar{i}.{j}"));
            b.ready(&mij_bar, &flag_hash(rho), vec![mij.clone()]);
            for x in &terminals {
                let rhs = match d {
                    Side::R => vec![(*x).clone(), mij.clone()],
                    Side::L => vec![mij.clone()],
                };
                b.pop(&mij, &flag_omega(x), rhs);
            }
            for a in &nts {
                b.pop(&mij, &flag_omega(a), vec![mij.clone()]);
                b.pop(&mij, &flag_alpha(a), vec![]);
            }
            for a in &siblings {
                let (left, right) = match d {
                    Side::L => (vec![mij.clone(), tilde(a)], vec![mij.clone()]),
                    Side::R => (vec![mij.clone()], vec![tilde(a), mij.clone()]),
                };
                b.pop(&mij, &flag_left(a), left);
                b.pop(&mij, &flag_right(a), right);
            }
        }
    }
    for a in &siblings {
        b.ready(&tilde(a), &Symbol::end_flag(), vec![(*a).clone()]);
    }

    // Every generated name must be new to the input grammar.
    let mut generated: BTreeSet<&Symbol> = b.prods.iter().map(|p| p.lhs()).collect();
    generated.extend(b.flags.iter().filter(|f| !f.is_end_flag()));
    let edges: Vec<Symbol> = nts.iter().flat_map(|a| (1..=n_edges).map(|e| edge_nt(a, e))).collect();
    generated.extend(&edges);
    if let Some(s) = generated.iter().find(|s| g.is_nonterminal(s) || g.is_terminal(s)) {
        return Err(Error::NameCollision(s.to_string()));
    }
    for p in g.productions() {
        b.copy(&p.lhs, p.rhs.clone());
    }
    IndexedGrammar::infer(s0, b.prods, &b.flags, |s| !g.is_terminal(s))
}

/// One section `#_i ω_i v_i α_i` of a fully built `Γ_T` flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagSection {
    pub edge: usize,
    pub omega: Symbol,
    pub v: Vec<Symbol>,
    pub alpha: Symbol,
}

/// A `Γ_T` flag split into its sections, from `e_N` down to `e_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagSections {
    pub sections: Vec<FlagSection>,
}

impl FlagSections {
    /// The flag string again, head first, ending in `$`.
    pub fn to_flags(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        for s in &self.sections {
            out.push(flag_hash(s.edge));
            out.push(s.omega.clone());
            out.extend(s.v.iter().cloned());
            out.push(s.alpha.clone());
        }
        out.push(Symbol::end_flag());
        out
    }
}

impl fmt::Display for FlagSections {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sections {
            write!(f, "e{}: ω={} v=[", s.edge, s.omega)?;
            for (i, x) in s.v.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            writeln!(f, "] α={}", s.alpha)?;
        }
        Ok(())
    }
}

/// Splits the flag carried by `@M` in a derivation of `gamma_t(g, τ, t)` into
/// per-edge sections and checks their layout.
pub fn decode_flag(flags: &[Symbol], t: &TreeShape, g: &Cfg) -> Result<FlagSections> {
    let order = t.order_edges();
    let malformed = |msg: String| Error::MalformedFlag(msg);
    let split = |f: &Symbol| -> Option<(Symbol, String)> {
        let (base, kind) = f.as_str().rsplit_once('.')?;
        Some((Symbol::raw(base), kind.to_string()))
    };
    let mut rest = flags;
    let mut sections = Vec::new();
    for edge in (1..=order.len()).rev() {
        let expected = flag_hash(edge);
        match rest.split_first() {
            Some((h, tail)) if *h == expected => rest = tail,
            other => {
                return Err(malformed(format!(
                    "expected `{expected}`, found {}",
                    other.map_or("end of flag".into(), |(h, _)| format!("`{h}`"))
                )))
            }
        }
        let (omega, tail) = rest
            .split_first()
            .ok_or_else(|| malformed(format!("section e{edge} has no ω flag")))?;
        let leaf = order.is_leaf(edge);
        let omega_ok = split(omega).is_some_and(|(base, kind)| {
            kind == "om"
                && if leaf {
                    g.is_terminal(&base)
                } else {
                    g.is_nonterminal(&base)
                }
        });
        if !omega_ok {
            return Err(malformed(format!("`{omega}` is not a valid ω flag for e{edge}")));
        }
        rest = tail;
        let mut v = Vec::new();
        loop {
            let (f, tail) = rest
                .split_first()
                .ok_or_else(|| malformed(format!("section e{edge} has no α flag")))?;
            rest = tail;
            match split(f) {
                Some((base, kind)) if g.is_nonterminal(&base) && (kind == "L" || kind == "R") => v.push(f.clone()),
                Some((base, kind)) if g.is_nonterminal(&base) && kind == "al" => {
                    sections.push(FlagSection {
                        edge,
                        omega: omega.clone(),
                        v,
                        alpha: f.clone(),
                    });
                    break;
                }
                _ => return Err(malformed(format!("unexpected flag `{f}` in section e{edge}"))),
            }
        }
    }
    match rest {
        [d] if d.is_end_flag() => Ok(FlagSections { sections }),
        _ => Err(malformed("flag does not end with a single `$`".into())),
    }
}

/// Union of indexed grammars: components are renamed apart with prefixes
/// `u0/`, `u1/`, … and joined under a fresh start symbol. With `epsilon`,
/// the start also derives the empty word.
pub fn ig_union_with_epsilon(gs: &[IndexedGrammar], epsilon: bool) -> Result<IndexedGrammar> {
    let mut taken: BTreeSet<Symbol> = gs.iter().flat_map(IndexedGrammar::all_names).collect();
    let start = fresh_name("_union", &mut taken);
    let mut nonterminals = BTreeSet::from([start.clone()]);
    let mut terminals = BTreeSet::new();
    let mut flags = BTreeSet::new();
    let mut prods = BTreeSet::new();
    for (i, g) in gs.iter().enumerate() {
        let rename = |s: &Symbol| Symbol::raw(&format!("u{i}/{s}"));
        nonterminals.extend(g.nonterminals().iter().map(rename));
        terminals.extend(g.terminals().iter().cloned());
        flags.extend(g.flags().iter().cloned());
        prods.insert(IgProduction::copy(&start, vec![rename(g.start())]));
        for p in g.productions() {
            prods.insert(p.map_nonterminals(|s| g.is_nonterminal(s), rename));
        }
    }
    if epsilon {
        prods.insert(IgProduction::copy(&start, vec![]));
    }
    IndexedGrammar::new(nonterminals, terminals, flags, start, prods)
}

pub fn ig_union(gs: &[IndexedGrammar]) -> Result<IndexedGrammar> {
    ig_union_with_epsilon(gs, false)
}

fn l_tau_of_cnf(cnf: &Cfg, tau: &Permutation) -> Result<IndexedGrammar> {
    match tau.degree() {
        1 => Ok(cfg_as_indexed(cnf)),
        2 => gamma_t(cnf, tau, &TreeShape::single_edge()),
        ell => {
            let parts = enumerate_shapes(ell - 1)?
                .iter()
                .map(|t| gamma_t(cnf, tau, t))
                .collect::<Result<Vec<_>>>()?;
            ig_union(&parts)
        }
    }
}

/// Grammar for `L_τ` with a possibly empty first part (for `ℓ = 1`, simply
/// `L \ {ε}`). Any grammar is accepted; it is brought into CNF first.
pub fn l_tau_grammar(g: &Cfg, tau: &Permutation) -> Result<IndexedGrammar> {
    l_tau_of_cnf(&cfg_to_cnf(g).grammar, tau)
}

/// Grammar for `σ(L)`: the union of `L_τ` over the subpatterns `τ` of `σ`,
/// plus ε when `ε ∈ L`.
pub fn sigma_grammar(g: &Cfg, sigma: &Permutation) -> Result<IndexedGrammar> {
    let cnf = cfg_to_cnf(g);
    let parts = sigma
        .subpatterns()
        .iter()
        .map(|tau| l_tau_of_cnf(&cnf.grammar, tau))
        .collect::<Result<Vec<_>>>()?;
    ig_union_with_epsilon(&parts, cnf.had_epsilon)
}

/// Grammar for `C^k(L)`: the union of `L_τ` over all `τ ∈ S_ℓ`, `ℓ ≤ k`,
/// plus ε when `ε ∈ L`.
pub fn ck_grammar(g: &Cfg, k: usize) -> Result<IndexedGrammar> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let cnf = cfg_to_cnf(g);
    let parts = (1..=k)
        .flat_map(Permutation::all_of_degree)
        .map(|tau| l_tau_of_cnf(&cnf.grammar, &tau))
        .collect::<Result<Vec<_>>>()?;
    ig_union_with_epsilon(&parts, cnf.had_epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_ig, replay_forms, Budget, FormSymbol};
    use crate::fixtures;
    use crate::grammar::IgProduction;
    use crate::sample::LanguageSample;
    use crate::symbol::syms;

    fn ab() -> Cfg {
        Cfg::from_rules("S", &[("S", "A B"), ("A", "a"), ("B", "b")]).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn words(g: &IndexedGrammar, n: usize) -> Vec<String> {
        let r = enumerate_ig(g, n, &Budget::for_len(n));
        assert!(r.sample.exhaustive);
        r.sample.lines()
    }

    #[test]
    fn rejects_bad_input() {
        let t = TreeShape::single_edge();
        let not_cnf = Cfg::from_rules("S", &[("S", "a b")]).unwrap();
        assert!(matches!(gamma_t(&not_cnf, &perm("2,1"), &t), Err(Error::NotCnf(_))));
        assert!(matches!(
            gamma_t(&ab(), &perm("2,3,1"), &t),
            Err(Error::DegreeMismatch(_))
        ));
        assert!(matches!(gamma_t(&ab(), &perm("1"), &t), Err(Error::DegreeMismatch(_))));
        assert!(matches!(ck_grammar(&ab(), 0), Err(Error::Domain(_))));
    }

    #[test]
    fn generated_names_must_be_new() {
        let g = Cfg::from_rules(
            "S",
            &[("S", "A B"), ("A", "a"), ("B", "b"), ("A", "A@e1 B"), ("A@e1", "a")],
        )
        .unwrap();
        let r = gamma_t(&g, &perm("2,1"), &TreeShape::single_edge());
        assert!(matches!(r, Err(Error::NameCollision(s)) if s == "A@e1"));
    }

    #[test]
    fn single_production_swap() {
        let g = gamma_t(&ab(), &perm("2,1"), &TreeShape::single_edge()).unwrap();
        assert_eq!(words(&g, 4), ["ab", "ba"]);
    }

    #[test]
    fn three_letter_word_rotations() {
        let g = l_tau_grammar(&fixtures::g_fin(), &perm("3,1,2")).unwrap();
        assert_eq!(words(&g, 3), ["bca", "cab"]);
        let g = ck_grammar(&fixtures::g_fin(), 3).unwrap();
        assert_eq!(words(&g, 3), ["abc", "acb", "bac", "bca", "cab", "cba"]);
    }

    #[test]
    fn identity_components() {
        let g = Cfg::from_rules("S", &[("S", "a S b"), ("S", "eps")]).unwrap();
        let base = crate::enumerate::enumerate_cfg(&g, 6);
        assert!(base.contains_epsilon());
        let mut non_empty = LanguageSample::new(6);
        for w in base.words.iter().filter(|w| !w.is_empty()) {
            non_empty.insert(w.clone());
        }
        let lines = |s: &LanguageSample| s.lines();
        assert_eq!(words(&l_tau_grammar(&g, &perm("1")).unwrap(), 6), lines(&non_empty));
        assert_eq!(words(&ck_grammar(&g, 1).unwrap(), 6), lines(&base));
        assert_eq!(words(&sigma_grammar(&g, &perm("1,2,3")).unwrap(), 6), lines(&base));
    }

    #[test]
    fn union_of_singletons() {
        let a = cfg_as_indexed(&Cfg::from_rules("S", &[("S", "a")]).unwrap());
        let b = cfg_as_indexed(&Cfg::from_rules("S", &[("S", "b")]).unwrap());
        assert_eq!(words(&ig_union(&[a.clone(), b]).unwrap(), 2), ["a", "b"]);
        assert_eq!(words(&ig_union(&[a.clone(), a]).unwrap(), 2), ["a"]);
    }

    fn shapes_and_perms() -> Vec<(TreeShape, Permutation)> {
        let mut out = vec![(TreeShape::single_edge(), perm("2,1"))];
        for t in enumerate_shapes(2).unwrap() {
            out.push((t, perm("3,1,2")));
        }
        for t in enumerate_shapes(3).unwrap() {
            out.push((t, perm("2,4,1,3")));
        }
        out
    }

    #[test]
    fn structural_invariants() {
        let cnf = cfg_to_cnf(&fixtures::g_fin()).grammar;
        for (t, tau) in shapes_and_perms() {
            let g = gamma_t(&cnf, &tau, &t).unwrap();
            for p in g.productions() {
                for s in [g.start(), cnf.start()] {
                    assert!(!p.rhs_symbols().contains(s), "{p}");
                }
                if let IgProduction::Push { flags, .. } = p {
                    assert!(flags.iter().all(|f| g.flags().contains(f) && !f.is_end_flag()));
                }
            }
            // Every `-ready` symbol skips all flags but one.
            for y in g
                .nonterminals()
                .iter()
                .filter(|y| y.as_str().starts_with("@Mbar") && y.as_str().contains('.'))
            {
                let pops: Vec<&IgProduction> = g.productions().iter().filter(|p| p.lhs() == y).collect();
                assert_eq!(pops.len(), g.flags().len());
                let moving = pops
                    .iter()
                    .filter(|p| !matches!(p, IgProduction::Pop { rhs, .. } if rhs == &vec![(*y).clone()]))
                    .count();
                assert_eq!(moving, 1, "{y}");
            }
        }
    }

    #[test]
    fn decode_single_edge_flag() {
        let t = TreeShape::single_edge();
        let flags = syms("#1 a.om A.R S.al $");
        let d = decode_flag(&flags, &t, &ab()).unwrap();
        assert_eq!(
            d.sections,
            [FlagSection {
                edge: 1,
                omega: Symbol::raw("a.om"),
                v: vec![Symbol::raw("A.R")],
                alpha: Symbol::raw("S.al"),
            }]
        );
        assert_eq!(d.to_flags(), flags);
        for bad in [
            "a.om A.R S.al $",
            "#1 A.om S.al $",
            "#1 a.om A.R $",
            "#1 a.om S.al",
            "#1 a.om S.al $ $",
        ] {
            assert!(
                matches!(decode_flag(&syms(bad), &t, &ab()), Err(Error::MalformedFlag(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn flags_of_derivations_decode() {
        let cnf = cfg_to_cnf(&fixtures::g_ab()).grammar;
        for (t, tau) in shapes_and_perms() {
            let g = gamma_t(&cnf, &tau, &t).unwrap();
            let r = enumerate_ig(&g, 8, &Budget::for_len(8));
            let mut seen = 0;
            for wit in r.witnesses.values() {
                for form in replay_forms(&g, wit).unwrap() {
                    for x in &form {
                        if let FormSymbol::Nonterminal(m, flags) = x {
                            if m.as_str() == "@M" {
                                let d = decode_flag(flags, &t, &cnf).unwrap();
                                assert_eq!(d.sections.len(), t.order_edges().len());
                                assert!(
                                    cnf.is_terminal(&Symbol::raw(d.sections[0].omega.as_str().trim_end_matches(".om")))
                                );
                                assert_eq!(&d.to_flags(), flags);
                                seen += 1;
                            }
                        }
                    }
                }
            }
            assert!(seen > 0 || r.sample.is_empty());
        }
    }
}
