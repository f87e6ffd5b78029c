//! The `permclose` command line. `run` takes the argument list and output
//! streams so it can be driven from tests as well as from `main`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::cyc::cyc_grammar;
use crate::enumerate::{enumerate_cfg, enumerate_file, enumerate_ig, enumerate_nfa, Budget};
use crate::error::Error;
use crate::gamma_t::{ck_grammar, l_tau_grammar, sigma_grammar};
use crate::grammar::text::{production_counts, serialize_cfg, serialize_indexed, serialize_nfa};
use crate::grammar::{parse_grammar, Cfg, GrammarFile, IndexedGrammar, Nfa};
use crate::normal_form::{cfg_to_cnf, ig_to_normal_form};
use crate::oracle::{oracle_ck, oracle_cyc, oracle_ltau, oracle_sigma};
use crate::perm::Permutation;
use crate::regular_perm::{random_nfa, sigma_nfa};
use crate::sample::{samples_equal, LanguageSample};
use crate::shape::enumerate_shapes;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "permclose",
    version,
    about = "Permutation closures of regular, context-free and indexed languages"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Longest flag string the indexed-grammar search keeps
    #[arg(long)]
    flag_depth: Option<usize>,
    /// Longest sentential form the search keeps
    #[arg(long)]
    form_len: Option<usize>,
    /// Number of sentential forms after which the search gives up
    #[arg(long)]
    states: Option<usize>,
}

impl BudgetArgs {
    fn budget(&self, n: usize) -> Budget {
        let d = Budget::for_len(n);
        Budget {
            max_flag_depth: self.flag_depth.unwrap_or(d.max_flag_depth),
            max_form_len: self.form_len.unwrap_or(d.max_form_len),
            max_states: self.states.unwrap_or(d.max_states),
        }
    }
}

#[derive(Debug, Args)]
struct OutputArg {
    /// Output file; standard output when absent
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a grammar or automaton file and summarize it
    Validate {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Chomsky normal form of a CFG, or normal form of an indexed grammar
    Normalize {
        input: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    /// List the words up to a length bound, shortlex
    Enum {
        input: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Cyclic closure of an indexed grammar in normal form
    Cyc {
        input: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Indexed grammar for L_tau of a CFG (first part may be empty)
    Ltau {
        input: PathBuf,
        #[arg(long)]
        perm: Permutation,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Indexed grammar for sigma(L) of a CFG
    Sigma {
        input: PathBuf,
        #[arg(long)]
        perm: Permutation,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Indexed grammar for C^k(L) of a CFG
    Ck {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Automaton for sigma(L) of an automaton
    Regperm {
        input: PathBuf,
        #[arg(long)]
        perm: Permutation,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Tree shapes with a given number of leaves
    Shapes {
        #[arg(long)]
        leaves: usize,
        /// Also print each shape as a Graphviz description
        #[arg(long)]
        dot: bool,
    },
    /// Build a construction, enumerate it and compare with the brute-force oracle
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// CFG (with --perm or --k), normal-form indexed grammar (cyclic closure)
    /// or automaton (with --perm)
    #[arg(required_unless_present = "fuzz_nfa")]
    input: Option<PathBuf>,
    #[arg(long)]
    perm: Option<Permutation>,
    #[arg(long, conflicts_with = "perm")]
    k: Option<usize>,
    /// Check L_tau for --perm, whose first part may be empty, instead of sigma(L)
    #[arg(long, requires = "perm")]
    relaxed: bool,
    #[arg(long, default_value_t = 8)]
    max_len: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long)]
    json: bool,
    /// Check the automaton construction on this many random automata
    /// (up to 4 states over {a, b}); every permutation of degree ≤ 3 unless
    /// --perm is given
    #[arg(long, conflicts_with_all = ["input", "k", "relaxed"])]
    fuzz_nfa: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Outcome of one `verify` comparison.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub construction: String,
    pub bound: usize,
    pub counts: Pair<usize>,
    pub missing: Vec<String>,
    pub extra: Vec<String>,
    pub exhaustive: Pair<bool>,
    pub equal: bool,
    pub wall_time_ms: u128,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Pair<T> {
    pub actual: T,
    pub expected: T,
}

impl VerifyReport {
    fn new(construction: String, actual: &LanguageSample, expected: &LanguageSample, t0: Instant) -> VerifyReport {
        let diff = samples_equal(actual, expected).expect("both sides use the same bound");
        VerifyReport {
            construction,
            bound: actual.bound,
            counts: Pair {
                actual: actual.len(),
                expected: expected.len(),
            },
            missing: diff.missing.iter().map(ToString::to_string).collect(),
            extra: diff.extra.iter().map(ToString::to_string).collect(),
            exhaustive: Pair {
                actual: actual.exhaustive,
                expected: expected.exhaustive,
            },
            equal: diff.is_exact_match(),
            wall_time_ms: t0.elapsed().as_millis(),
        }
    }
}

enum Failure {
    Input(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the command line `args` (program name first) and returns the exit
/// code: 0 on success, 1 on a verification mismatch, 2 on bad input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let shown = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{shown}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{shown}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Mismatch) => EXIT_MISMATCH,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn read(path: &Path) -> std::result::Result<GrammarFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_grammar(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_cfg(path: &Path) -> std::result::Result<Cfg, Failure> {
    match read(path)? {
        GrammarFile::Cfg(g) => Ok(g),
        other => Err(wrong_kind(path, &other, "a context-free grammar")),
    }
}

fn read_nfa(path: &Path) -> std::result::Result<Nfa, Failure> {
    match read(path)? {
        GrammarFile::Nfa(m) => Ok(m),
        other => Err(wrong_kind(path, &other, "an automaton")),
    }
}

fn wrong_kind(path: &Path, g: &GrammarFile, wanted: &str) -> Failure {
    Failure::Input(format!(
        "{}: expected {wanted}, found type `{}`",
        path.display(),
        g.kind()
    ))
}

fn emit(text: &str, target: &OutputArg, out: &mut dyn Write) -> Outcome {
    match &target.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => write_out(out, text),
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Input(format!("cannot write output: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    // Going through `Value` sorts object keys.
    let value = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&value).expect("serializable") + "\n"
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Validate { input, json } => validate(&input, json, out),
        Command::Normalize { input, out: target } => {
            let text = match read(&input)? {
                GrammarFile::Cfg(g) => {
                    let n = cfg_to_cnf(&g);
                    note_epsilon(n.had_epsilon, err);
                    serialize_cfg(&n.grammar)
                }
                GrammarFile::Indexed(g) => serialize_indexed(&ig_to_normal_form(&g)?.grammar),
                other => return Err(wrong_kind(&input, &other, "a grammar")),
            };
            emit(&text, &target, out)
        }
        Command::Enum {
            input,
            max_len,
            budget,
            json,
        } => {
            let sample = enumerate_file(&read(&input)?, max_len, &budget.budget(max_len));
            if json {
                let lines = sample.lines();
                let doc = json!({"bound": sample.bound, "exhaustive": sample.exhaustive, "words": lines});
                return write_out(out, &to_json(&doc));
            }
            if !sample.exhaustive {
                let _ = writeln!(err, "warning: search budget exhausted; the list may be incomplete");
            }
            write_out(out, &lines_text(&sample))
        }
        Command::Cyc { input, out: target } => {
            let g = match read(&input)? {
                GrammarFile::Indexed(g) => g,
                other => return Err(wrong_kind(&input, &other, "an indexed grammar in normal form")),
            };
            emit(&serialize_indexed(&cyc_grammar(&g)?), &target, out)
        }
        Command::Ltau {
            input,
            perm,
            out: target,
        } => emit(
            &serialize_indexed(&l_tau_grammar(&read_cfg(&input)?, &perm)?),
            &target,
            out,
        ),
        Command::Sigma {
            input,
            perm,
            out: target,
        } => emit(
            &serialize_indexed(&sigma_grammar(&read_cfg(&input)?, &perm)?),
            &target,
            out,
        ),
        Command::Ck { input, k, out: target } => {
            emit(&serialize_indexed(&ck_grammar(&read_cfg(&input)?, k)?), &target, out)
        }
        Command::Regperm {
            input,
            perm,
            out: target,
        } => emit(&serialize_nfa(&sigma_nfa(&read_nfa(&input)?, &perm)), &target, out),
        Command::Shapes { leaves, dot } => write_out(out, &shapes_text(leaves, dot)?),
        Command::Verify(args) => verify(args, out),
    }
}

fn note_epsilon(had_epsilon: bool, err: &mut dyn Write) {
    if had_epsilon {
        let _ = writeln!(
            err,
            "note: the language contains the empty word, which the normal form omits"
        );
    }
}

fn lines_text(sample: &LanguageSample) -> String {
    sample.lines().iter().map(|l| format!("{l}\n")).collect()
}

fn validate(input: &Path, json: bool, out: &mut dyn Write) -> Outcome {
    let g = read(input)?;
    let counts = production_counts(&g);
    let total: usize = counts.values().sum();
    let (symbols, summary) = match &g {
        GrammarFile::Cfg(g) => (
            json!({"start": g.start(), "nonterminals": g.nonterminals().len(), "terminals": g.terminals().len()}),
            format!(
                "start {}, {} nonterminals, {} terminals, {total} productions",
                g.start(),
                g.nonterminals().len(),
                g.terminals().len()
            ),
        ),
        GrammarFile::Indexed(g) => (
            json!({
                "start": g.start(),
                "nonterminals": g.nonterminals().len(),
                "terminals": g.terminals().len(),
                "flags": g.flags().len(),
            }),
            format!(
                "start {}, {} nonterminals, {} terminals, {} flags, {total} productions",
                g.start(),
                g.nonterminals().len(),
                g.terminals().len(),
                g.flags().len()
            ),
        ),
        GrammarFile::Nfa(m) => (
            json!({"start": m.start(), "states": m.states().len(), "alphabet": m.alphabet().len()}),
            format!(
                "start {}, {} states, {} letters, {total} transitions",
                m.start(),
                m.states().len(),
                m.alphabet().len()
            ),
        ),
    };
    if json {
        let doc = json!({"type": g.kind(), "summary": symbols, "by_lhs": counts});
        write_out(out, &to_json(&doc))
    } else {
        write_out(out, &format!("ok: {} ({summary})\n", g.kind()))
    }
}

fn shapes_text(leaves: usize, dot: bool) -> std::result::Result<String, Failure> {
    let shapes = enumerate_shapes(leaves)?;
    let mut text = format!("{} shapes with {leaves} leaves\n", shapes.len());
    for (i, t) in shapes.iter().enumerate() {
        let order = t.order_edges();
        text += &format!("\nshape {}: {t}\n  edges: {order}\n", i + 1);
        for bp in t.branch_points(&order) {
            text += &format!(
                "  branch point {}: e{} splits into e{} (left) and e{} (right)\n",
                bp.index, bp.parent, bp.left, bp.right
            );
        }
        text += &format!("  outline: {}\n", t.outline(&order));
        if dot {
            text += &t.to_dot();
        }
    }
    Ok(text)
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let n = args.max_len;
    let budget = args.budget.budget(n);
    let reports = match (&args.input, args.fuzz_nfa) {
        (_, Some(count)) => fuzz_regular(count, args.seed, args.perm.as_ref(), n),
        (Some(input), None) => vec![verify_file(input, &args, &budget)?],
        (None, None) => unreachable!("clap requires an input without --fuzz-nfa"),
    };
    let ok = reports.iter().all(|r| r.equal);
    if args.json || !ok {
        let shown: Vec<&VerifyReport> = if ok {
            reports.iter().collect()
        } else {
            reports.iter().filter(|r| !r.equal).collect()
        };
        match shown.as_slice() {
            [one] => write_out(out, &to_json(one))?,
            many => write_out(out, &to_json(&many))?,
        }
    } else {
        for r in &reports {
            write_out(
                out,
                &format!(
                    "ok: {} at bound {}: {} words\n",
                    r.construction, r.bound, r.counts.actual
                ),
            )?;
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn verify_file(input: &Path, args: &VerifyArgs, budget: &Budget) -> std::result::Result<VerifyReport, Failure> {
    let n = args.max_len;
    let t0 = Instant::now();
    let run_ig = |g: &IndexedGrammar| enumerate_ig(g, n, budget).sample;
    let usage = |msg: &str| Failure::Input(format!("{}: {msg}", input.display()));
    match read(input)? {
        GrammarFile::Cfg(g) => {
            let base = enumerate_cfg(&g, n);
            let (name, actual, expected) = match (&args.perm, args.k) {
                (Some(p), _) if args.relaxed => (
                    format!("ltau {p}"),
                    run_ig(&l_tau_grammar(&g, p)?),
                    oracle_ltau(&base, p, true),
                ),
                (Some(p), _) => (
                    format!("sigma {p}"),
                    run_ig(&sigma_grammar(&g, p)?),
                    oracle_sigma(&base, p),
                ),
                (None, Some(k)) => (format!("ck {k}"), run_ig(&ck_grammar(&g, k)?), oracle_ck(&base, k)),
                (None, None) => return Err(usage("a context-free grammar needs --perm or --k")),
            };
            Ok(VerifyReport::new(name, &actual, &expected, t0))
        }
        GrammarFile::Indexed(g) => {
            if args.perm.is_some() || args.k.is_some() {
                return Err(usage("indexed grammars are checked for cyclic closure only"));
            }
            let actual = run_ig(&cyc_grammar(&g)?);
            let expected = oracle_cyc(&run_ig(&g));
            Ok(VerifyReport::new("cyc".into(), &actual, &expected, t0))
        }
        GrammarFile::Nfa(m) => {
            let Some(p) = args.perm.as_ref().filter(|_| args.k.is_none()) else {
                return Err(usage("an automaton needs --perm"));
            };
            let actual = enumerate_nfa(&sigma_nfa(&m, p), n);
            let expected = oracle_sigma(&enumerate_nfa(&m, n), p);
            Ok(VerifyReport::new(format!("regperm {p}"), &actual, &expected, t0))
        }
    }
}

fn fuzz_regular(count: usize, seed: u64, perm: Option<&Permutation>, n: usize) -> Vec<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms: Vec<Permutation> = match perm {
        Some(p) => vec![p.clone()],
        None => (1..=3).flat_map(Permutation::all_of_degree).collect(),
    };
    let mut reports = Vec::new();
    for i in 0..count {
        let m = random_nfa(&mut rng, 4, &["a", "b"]);
        let base = enumerate_nfa(&m, n);
        for p in &perms {
            let t0 = Instant::now();
            let actual = enumerate_nfa(&sigma_nfa(&m, p), n);
            let expected = oracle_sigma(&base, p);
            reports.push(VerifyReport::new(
                format!("regperm {p} on random automaton {i}"),
                &actual,
                &expected,
                t0,
            ));
        }
    }
    reports
}
