//! Small grammars used by the tests, the acceptance suite and the CLI.

use crate::grammar::{parse_grammar, Cfg, GrammarFile, IndexedGrammar, Nfa};

macro_rules! fixture {
    ($name:ident, $variant:ident, $ty:ty, $file:literal) => {
        pub fn $name() -> $ty {
            match parse_grammar(include_str!(concat!("../fixtures/", $file))) {
                Ok(GrammarFile::$variant(g)) => g,
                other => panic!("fixture {}: {other:?}", $file),
            }
        }
    };
}

fixture!(g_ab, Cfg, Cfg, "g_ab.txt");
fixture!(g_dyck, Cfg, Cfg, "g_dyck.txt");
fixture!(g_fin, Cfg, Cfg, "g_fin.txt");
fixture!(g_pal, Cfg, Cfg, "g_pal.txt");
fixture!(ig_abc, Indexed, IndexedGrammar, "ig_abc.txt");
fixture!(ig_abc_plus, Indexed, IndexedGrammar, "ig_abc_plus.txt");
fixture!(ig_copy, Indexed, IndexedGrammar, "ig_copy.txt");
fixture!(ig_pow, Indexed, IndexedGrammar, "ig_pow.txt");
fixture!(ab_star, Nfa, Nfa, "ab_star.txt");

/// The context-free fixtures with their names.
pub fn cfgs() -> Vec<(&'static str, Cfg)> {
    vec![
        ("G_ab", g_ab()),
        ("G_dyck", g_dyck()),
        ("G_fin", g_fin()),
        ("G_pal", g_pal()),
    ]
}
