use permclose::cyc::cyc_grammar;
use permclose::enumerate::{enumerate_ig, Budget};
use permclose::fixtures;
use permclose::grammar::IndexedGrammar;
use permclose::normal_form::{ig_to_normal_form, is_ig_normal_form};
use permclose::oracle::oracle_cyc;

fn check(g: &IndexedGrammar, n: usize) {
    let budget = Budget::for_len(n);
    let base = enumerate_ig(g, n, &budget);
    assert!(base.sample.exhaustive);
    let cyc = enumerate_ig(&cyc_grammar(g).unwrap(), n, &budget);
    assert!(
        cyc.sample.exhaustive,
        "cyc search ran out of budget after {} forms",
        cyc.states
    );
    assert_eq!(cyc.sample, oracle_cyc(&base.sample));
}

#[test]
fn abc_plus_normalized() {
    let g = ig_to_normal_form(&fixtures::ig_abc_plus()).unwrap().grammar;
    assert!(is_ig_normal_form(&g));
    check(&g, 9);
}

#[test]
fn copy_language() {
    check(&fixtures::ig_copy(), 9);
}

#[test]
fn power_language() {
    check(&fixtures::ig_pow(), 9);
}
