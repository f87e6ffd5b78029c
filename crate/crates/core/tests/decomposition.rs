use permclose::cyc::cyc_grammar;
use permclose::enumerate::{enumerate_cfg, enumerate_ig, Budget, IgEnumeration};
use permclose::fixtures;
use permclose::gamma_t::{ck_grammar, l_tau_grammar, sigma_grammar};
use permclose::grammar::{cfg_as_indexed, IndexedGrammar};
use permclose::normal_form::ig_to_normal_form;
use permclose::oracle::{oracle_ck, oracle_cyc, oracle_sigma};
use permclose::perm::Permutation;
use permclose::sample::LanguageSample;

const N: usize = 8;

fn run(g: &IndexedGrammar) -> IgEnumeration {
    let r = enumerate_ig(g, N, &Budget::for_len(N));
    assert!(r.sample.exhaustive, "out of budget after {} forms", r.states);
    r
}

#[test]
fn sigma_is_union_of_subpattern_languages() {
    for (name, g) in fixtures::cfgs() {
        let base = enumerate_cfg(&g, N);
        for sigma in ["2,1", "2,3,1", "3,1,2", "1,3,2"] {
            let sigma: Permutation = sigma.parse().unwrap();
            let got = run(&sigma_grammar(&g, &sigma).unwrap()).sample;
            assert_eq!(got, oracle_sigma(&base, &sigma), "{name} σ={sigma}");

            let mut union = LanguageSample::new(N);
            if base.contains_epsilon() {
                union.insert(Vec::new().into());
            }
            for tau in sigma.subpatterns() {
                let part = run(&l_tau_grammar(&g, &tau).unwrap()).sample;
                union = union.union(&part).unwrap();
            }
            assert_eq!(got, union, "{name} σ={sigma} vs subpattern union");
        }
    }
}

#[test]
fn ck_matches_oracle() {
    for (name, g) in fixtures::cfgs() {
        let base = enumerate_cfg(&g, N);
        for k in 1..=3 {
            let got = run(&ck_grammar(&g, k).unwrap()).sample;
            assert_eq!(got, oracle_ck(&base, k), "{name} k={k}");
        }
        let c2 = run(&ck_grammar(&g, 2).unwrap()).sample;
        assert_eq!(c2, oracle_cyc(&base), "{name} C² vs cyc");
    }
}

#[test]
fn c2_agrees_with_cyclic_closure_construction() {
    for (name, g) in fixtures::cfgs() {
        let ig = ig_to_normal_form(&cfg_as_indexed(&g)).unwrap().grammar;
        let via_cyc = run(&cyc_grammar(&ig).unwrap()).sample;
        let via_ck = run(&ck_grammar(&g, 2).unwrap()).sample;
        assert_eq!(via_ck, via_cyc, "{name}");
    }
}
