use std::path::{Path, PathBuf};

use permclose::cli::{run, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK};
use permclose::fixtures;
use permclose::gamma_t::l_tau_grammar;
use permclose::grammar::text::serialize_indexed;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn permclose(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("permclose").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn shapes_with_three_leaves() {
    let (code, out, _) = permclose(&["shapes", "--leaves", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("2 shapes with 3 leaves"));
    assert_eq!(out.matches("\nshape ").count(), 2);
    let (_, dot, _) = permclose(&["shapes", "--leaves", "2", "--dot"]);
    assert_eq!(dot.matches("digraph").count(), 1);
}

#[test]
fn verify_swap_on_g_ab() {
    let g = fixture("g_ab.txt");
    let (code, out, err) = permclose(&["verify", &g, "--perm", "2,1", "--max-len", "8"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.starts_with("ok: sigma 2,1"));
}

#[test]
fn verify_reports_json_with_sorted_keys() {
    let g = fixture("g_fin.txt");
    let (code, out, _) = permclose(&["verify", &g, "--k", "3", "--max-len", "6", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["equal"], true);
    assert_eq!(v["counts"]["actual"], 6);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn exhausted_budget_is_a_mismatch() {
    let g = fixture("g_dyck.txt");
    let (code, out, _) = permclose(&["verify", &g, "--perm", "2,1", "--states", "10"]);
    assert_eq!(code, EXIT_MISMATCH);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["exhaustive"]["actual"], false);
}

#[test]
fn verify_cyclic_closure_and_automata() {
    let (code, _, err) = permclose(&["verify", &fixture("ig_copy.txt"), "--max-len", "8"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let (code, _, _) = permclose(&["verify", &fixture("ab_star.txt"), "--perm", "3,1,2", "--max-len", "6"]);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = permclose(&["verify", "--fuzz-nfa", "2", "--seed", "7", "--max-len", "5", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2 * 9);
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(&dir, "bad.grm", "type: cfg\nstart: S\nS -> a ^ b\n");
    let (code, _, err) = permclose(&["enum", bad.to_str().unwrap(), "--max-len", "5"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("3:"), "{err}");
    let (code, _, _) = permclose(&["enum", "/nonexistent/file", "--max-len", "5"]);
    assert_eq!(code, EXIT_INPUT);
    assert_eq!(permclose(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(permclose(&["shapes", "--leaves", "3", "--bogus"]).0, EXIT_INPUT);
    assert_eq!(
        permclose(&["ltau", &fixture("g_ab.txt"), "--perm", "2,2"]).0,
        EXIT_INPUT
    );
}

#[test]
fn normalize_rejects_epsilon_pops() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_temp(
        &dir,
        "eps.igr",
        "type: indexed\nflags: f\nstart: S\nS -> A^f\nA^f -> eps\n",
    );
    let out = dir.path().join("out.igr");
    let (code, _, err) = permclose(&["normalize", g.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("epsilon"), "{err}");
    assert!(!out.exists());
}

#[test]
fn normalize_then_cyc() {
    let dir = tempfile::tempdir().unwrap();
    let nf = dir.path().join("nf.igr");
    let (code, _, _) = permclose(&["normalize", &fixture("ig_abc_plus.txt"), "-o", nf.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let (code, _, err) = permclose(&["verify", nf.to_str().unwrap(), "--max-len", "6"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let (code, _, err) = permclose(&["cyc", &fixture("ig_abc_plus.txt")]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("normalize"), "{err}");
}

#[test]
fn constructions_match_library_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ltau.igr");
    let (code, stdout, _) = permclose(&["ltau", &fixture("g_ab.txt"), "--perm", "2,3,1"]);
    assert_eq!(code, EXIT_OK);
    permclose(&[
        "ltau",
        &fixture("g_ab.txt"),
        "--perm",
        "2,3,1",
        "-o",
        out.to_str().unwrap(),
    ]);
    let expected = serialize_indexed(&l_tau_grammar(&fixtures::g_ab(), &"2,3,1".parse().unwrap()).unwrap());
    assert_eq!(stdout, expected);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), expected);
}

#[test]
fn enum_lists_words_shortlex() {
    let (code, out, _) = permclose(&["enum", &fixture("g_ab.txt"), "--max-len", "6"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "ab\naabb\naaabbb\n");
    let (_, json, _) = permclose(&["enum", &fixture("ig_abc.txt"), "--max-len", "6", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["words"], serde_json::json!(["eps", "abc", "aabbcc"]));
    assert_eq!(v["exhaustive"], true);
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = permclose(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verify"));
}
