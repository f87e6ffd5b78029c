//! One PASS/FAIL line per acceptance criterion. Comparisons are exact set
//! equalities; wall-time limits are part of each verdict.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use permclose::cli::run;
use permclose::cyc::cyc_grammar;
use permclose::enumerate::{enumerate_cfg, enumerate_ig, enumerate_nfa, replay_witness, Budget};
use permclose::fixtures;
use permclose::gamma_t::{ck_grammar, l_tau_grammar, sigma_grammar};
use permclose::grammar::{cfg_as_indexed, Cfg, CfgProduction, IgProduction, IndexedGrammar};
use permclose::normal_form::{ig_to_normal_form, is_ig_normal_form};
use permclose::oracle::{oracle_ck, oracle_cyc, oracle_ltau, oracle_sigma};
use permclose::perm::Permutation;
use permclose::regular_perm::{random_nfa, sigma_nfa};
use permclose::sample::LanguageSample;
use permclose::shape::enumerate_shapes;
use permclose::symbol::Symbol;

mod common;
use common::{all_words, derives};

/// Enumerates indexed grammars and replays every witness it returns.
#[derive(Default)]
struct Runner {
    words: usize,
    replay_failures: Vec<String>,
}

impl Runner {
    fn enumerate(&mut self, g: &IndexedGrammar, n: usize) -> LanguageSample {
        let r = enumerate_ig(g, n, &Budget::for_len(n));
        for (w, wit) in &r.witnesses {
            self.words += 1;
            match replay_witness(g, wit) {
                Ok(v) if &v == w => {}
                Ok(v) => self.replay_failures.push(format!("{w} replays to {v}")),
                Err(e) => self.replay_failures.push(format!("{w}: {e}")),
            }
        }
        r.sample
    }
}

struct Verdict {
    failures: Vec<String>,
    detail: String,
}

impl Verdict {
    fn new() -> Verdict {
        Verdict {
            failures: Vec::new(),
            detail: String::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    /// Exact equality with both sides exhaustive.
    fn same(&mut self, label: &str, actual: &LanguageSample, expected: &LanguageSample) {
        self.check(actual.exhaustive, || {
            format!("{label}: construction search not exhaustive")
        });
        self.check(expected.exhaustive, || format!("{label}: reference not exhaustive"));
        self.check(actual.words == expected.words, || {
            let missing = expected.words.difference(&actual.words).count();
            let extra = actual.words.difference(&expected.words).count();
            format!("{label}: {missing} missing, {extra} extra")
        });
    }
}

fn report(id: usize, name: &str, limit: Option<Duration>, t0: Instant, mut v: Verdict) -> bool {
    let elapsed = t0.elapsed();
    if let Some(limit) = limit {
        v.check(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"));
    }
    let status = if v.failures.is_empty() { "PASS" } else { "FAIL" };
    let limit = limit.map_or(String::new(), |l| format!(", limit {l:?}"));
    println!("{status} [{id}] {name}: {} ({elapsed:.2?}{limit})", v.detail);
    for f in &v.failures {
        println!("       {f}");
    }
    v.failures.is_empty()
}

fn perms_up_to(k: usize) -> Vec<Permutation> {
    (1..=k).flat_map(Permutation::all_of_degree).collect()
}

fn shape_counts() -> bool {
    let t0 = Instant::now();
    let mut v = Verdict::new();
    let mut counts = Vec::new();
    for (leaves, expected) in (2..=6).zip([1usize, 2, 5, 14, 42]) {
        let mut out = Vec::new();
        let code = run(
            ["permclose", "shapes", "--leaves", &leaves.to_string()],
            &mut out,
            &mut Vec::new(),
        );
        let text = String::from_utf8(out).unwrap();
        let printed: Option<usize> = text.split_whitespace().next().and_then(|n| n.parse().ok());
        let listed = text.matches("\nshape ").count();
        v.check(code == 0 && printed == Some(expected) && listed == expected, || {
            format!("{leaves} leaves: printed {printed:?}, listed {listed}, expected {expected}")
        });
        counts.push(listed.to_string());
    }
    let pair: Vec<String> = enumerate_shapes(3).unwrap().iter().map(ToString::to_string).collect();
    v.check(pair == ["|((o,o),o)", "|(o,(o,o))"], || {
        format!("3-leaf shapes {pair:?}")
    });
    v.detail = format!(
        "counts {} for 2..6 leaves; 3-leaf pair {}",
        counts.join(","),
        pair.join(" ")
    );
    report(1, "shape counts", Some(Duration::from_secs(1)), t0, v)
}

fn regular_construction() -> bool {
    let t0 = Instant::now();
    let mut v = Verdict::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut automata = vec![("(ab)*".to_string(), fixtures::ab_star())];
    for i in 0..20 {
        automata.push((format!("random #{i}"), random_nfa(&mut rng, 4, &["a", "b"])));
    }
    let perms = perms_up_to(3);
    for (name, m) in &automata {
        let base = enumerate_nfa(m, 6);
        for p in &perms {
            v.same(
                &format!("{name} σ={p}"),
                &enumerate_nfa(&sigma_nfa(m, p), 6),
                &oracle_sigma(&base, p),
            );
        }
    }
    v.detail = format!(
        "{} automata × {} permutations at bound 6, seed 2024",
        automata.len(),
        perms.len()
    );
    report(
        2,
        "regular permutation construction",
        Some(Duration::from_secs(10)),
        t0,
        v,
    )
}

fn cyclic_closure(runner: &mut Runner) -> bool {
    let t0 = Instant::now();
    let mut v = Verdict::new();
    let grammars = [
        (
            "abc+ normalized",
            ig_to_normal_form(&fixtures::ig_abc_plus()).unwrap().grammar,
        ),
        ("copy ww", fixtures::ig_copy()),
        ("a^(2^k) b", fixtures::ig_pow()),
    ];
    let mut sizes = Vec::new();
    for (name, g) in &grammars {
        v.check(is_ig_normal_form(g), || format!("{name} is not in normal form"));
        let base = runner.enumerate(g, 9);
        let got = runner.enumerate(&cyc_grammar(g).unwrap(), 9);
        v.same(name, &got, &oracle_cyc(&base));
        sizes.push(format!("{name}: {}", got.len()));
    }
    v.detail = format!("bound 9, words {}", sizes.join(", "));
    report(
        3,
        "cyclic closure of indexed grammars",
        Some(Duration::from_secs(30)),
        t0,
        v,
    )
}

fn l_tau(runner: &mut Runner) -> bool {
    let t0 = Instant::now();
    let mut v = Verdict::new();
    let mut perms: Vec<Permutation> = (2..=3).flat_map(Permutation::all_of_degree).collect();
    perms.push("2,4,1,3".parse().unwrap());
    let mut cases = 0;
    for (name, g) in fixtures::cfgs() {
        let base = enumerate_cfg(&g, 8);
        for tau in &perms {
            let got = runner.enumerate(&l_tau_grammar(&g, tau).unwrap(), 8);
            v.same(&format!("{name} τ={tau}"), &got, &oracle_ltau(&base, tau, true));
            cases += 1;
        }
    }
    v.detail = format!("{cases} grammar/permutation pairs at bound 8, relaxed first part");
    report(4, "L_tau grammars", Some(Duration::from_secs(60)), t0, v)
}

fn decomposition(runner: &mut Runner) -> bool {
    let t0 = Instant::now();
    let mut v = Verdict::new();
    let sigmas: Vec<Permutation> = ["2,1", "1,3,2", "2,3,1", "3,1,2", "3,2,1"]
        .iter()
        .map(|p| p.parse().unwrap())
        .collect();
    for (name, g) in fixtures::cfgs() {
        let base = enumerate_cfg(&g, 8);
        for sigma in &sigmas {
            let got = runner.enumerate(&sigma_grammar(&g, sigma).unwrap(), 8);
            v.same(&format!("{name} σ={sigma}"), &got, &oracle_sigma(&base, sigma));
            let mut union = LanguageSample::from_words(8, base.words.iter().filter(|w| w.is_empty()).cloned());
            for tau in sigma.subpatterns() {
                union = union
                    .union(&runner.enumerate(&l_tau_grammar(&g, &tau).unwrap(), 8))
                    .unwrap();
            }
            v.same(&format!("{name} σ={sigma} subpattern union"), &got, &union);
        }
        for k in 1..=3 {
            let got = runner.enumerate(&ck_grammar(&g, k).unwrap(), 8);
            v.same(&format!("{name} C^{k}"), &got, &oracle_ck(&base, k));
            if k == 2 {
                v.same(&format!("{name} C^2 vs cyc"), &got, &oracle_cyc(&base));
            }
        }
    }
    v.detail = format!(
        "{} fixtures × {} σ and k = 1..3 at bound 8",
        fixtures::cfgs().len(),
        sigmas.len()
    );
    report(5, "decomposition identities", None, t0, v)
}

fn cross_construction(runner: &mut Runner) -> bool {
    let t0 = Instant::now();
    let mut v = Verdict::new();
    for (name, g) in fixtures::cfgs() {
        let via_ck = runner.enumerate(&ck_grammar(&g, 2).unwrap(), 8);
        let nf = ig_to_normal_form(&cfg_as_indexed(&g)).unwrap().grammar;
        let via_cyc = runner.enumerate(&cyc_grammar(&nf).unwrap(), 8);
        v.same(name, &via_ck, &via_cyc);
    }
    v.detail = "C^2 grammar vs cyclic closure of the normalized grammar, all fixtures, bound 8".into();
    report(6, "cross-construction agreement", None, t0, v)
}

fn push_chain_toy() -> IndexedGrammar {
    let s = |n: &str| Symbol::new(n).unwrap();
    let prods = [
        IgProduction::push(&s("S"), &s("A"), vec![s("f"), s("g")]),
        IgProduction::pop(&s("A"), &s("f"), vec![s("a"), s("A")]),
        IgProduction::pop(&s("A"), &s("g"), vec![s("b")]),
    ];
    IndexedGrammar::infer(s("S"), prods.into_iter().collect(), &Default::default(), |x| {
        x.as_str() == "S" || x.as_str() == "A"
    })
    .unwrap()
}

fn normal_form_preservation(runner: &mut Runner) -> bool {
    let t0 = Instant::now();
    let mut v = Verdict::new();
    let mut grammars = vec![
        ("abc+".to_string(), fixtures::ig_abc_plus()),
        ("copy ww".to_string(), fixtures::ig_copy()),
        ("a^(2^k) b".to_string(), fixtures::ig_pow()),
        ("push chain".to_string(), push_chain_toy()),
    ];
    for (name, g) in fixtures::cfgs() {
        grammars.push((format!("{name} as indexed"), cfg_as_indexed(&g)));
    }
    for (name, g) in &grammars {
        let nf = ig_to_normal_form(g).unwrap();
        v.check(is_ig_normal_form(&nf.grammar), || {
            format!("{name}: output not in normal form")
        });
        let mut before = runner.enumerate(g, 8);
        if nf.had_epsilon {
            before.words.remove(&Default::default());
        }
        v.same(name, &runner.enumerate(&nf.grammar, 8), &before);
    }
    v.detail = format!("{} indexed grammars at bound 8", grammars.len());
    report(7, "normal-form preservation", None, t0, v)
}

fn random_binary_cfg(rng: &mut ChaCha8Rng) -> Cfg {
    let sym = |n: &str| Symbol::new(n).unwrap();
    let symbols = ["S", "A", "B", "a", "b", "a", "b"];
    let productions = (0..rng.gen_range(2..7))
        .map(|_| {
            let lhs = sym(["S", "A", "B"][rng.gen_range(0..3)]);
            let rhs = (0..rng.gen_range(0..=3))
                .map(|_| sym(symbols[rng.gen_range(0..symbols.len())]))
                .collect();
            CfgProduction::new(lhs, rhs)
        })
        .collect();
    let nonterminals = ["S", "A", "B"].map(sym).into();
    Cfg::new(nonterminals, [sym("a"), sym("b")].into(), sym("S"), productions, false).unwrap()
}

fn enumerator_soundness(runner: &Runner) -> bool {
    let t0 = Instant::now();
    let mut v = Verdict::new();
    for f in &runner.replay_failures {
        v.failures.push(format!("witness: {f}"));
    }
    let mut grammars: Vec<(String, Cfg)> = fixtures::cfgs()
        .into_iter()
        .filter(|(_, g)| g.terminals().len() == 2)
        .map(|(n, g)| (n.to_string(), g))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..30 {
        grammars.push((format!("random #{i}"), random_binary_cfg(&mut rng)));
    }
    let mut checked = 0;
    for (name, g) in &grammars {
        let alphabet: Vec<Symbol> = g.terminals().iter().cloned().collect();
        let sample = enumerate_cfg(g, 6);
        for w in all_words(&alphabet, 6) {
            checked += 1;
            v.check(sample.contains(&w) == derives(g, &w.0), || {
                format!("{name}: membership of {w}")
            });
        }
    }
    v.detail = format!(
        "{} of {} indexed-grammar words replayed; {} CFGs × Σ^≤6 ({checked} membership checks)",
        runner.words - runner.replay_failures.len(),
        runner.words,
        grammars.len()
    );
    report(8, "enumerator soundness", None, t0, v)
}

fn main() {
    let mut runner = Runner::default();
    let results = [
        shape_counts(),
        regular_construction(),
        cyclic_closure(&mut runner),
        l_tau(&mut runner),
        decomposition(&mut runner),
        cross_construction(&mut runner),
        normal_form_preservation(&mut runner),
        enumerator_soundness(&runner),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
