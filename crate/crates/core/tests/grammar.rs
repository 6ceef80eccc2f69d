//! The grammar translation checked behaviourally against the transition
//! system of types, and norms against breadth-first search.

use std::collections::BTreeSet;

use cfst_core::grammar::{show_word, Grammar, Norm, Terminal, Word};
use cfst_core::Type;
use cfst_testkit::oracle::{initial, norm, transitions};
use cfst_testkit::Generator;
use rand::Rng;

fn label(t: &Terminal) -> String {
    match t {
        Terminal::Var(x) => format!("var {x}"),
        other => other.to_string(),
    }
}

/// Follows random transitions of the type and its grammar word together,
/// requiring the same labels at every step.
fn walk_together(g: &Grammar, w: &Word, t: &Type, rng: &mut impl Rng, steps: usize) {
    let mut word = w.clone();
    let mut stack = initial(t);
    for _ in 0..steps {
        let from_grammar = g.step(&word);
        let from_type = transitions(&stack);
        let lg: BTreeSet<String> = from_grammar.keys().map(label).collect();
        let lt: BTreeSet<String> = from_type.keys().cloned().collect();
        assert_eq!(lg, lt, "{t}");
        if lg.is_empty() {
            assert!(word.is_empty(), "{t}: stuck at {}", show_word(&word));
            return;
        }
        let i = rng.gen_range(0..lg.len());
        let (a, next) = from_grammar.into_iter().nth(i).unwrap();
        word = next;
        stack = from_type[&label(&a)].clone();
    }
}

#[test]
fn grammar_words_behave_like_their_types() {
    let mut gen = Generator::new(0x9a);
    gen.free_vars = vec!["alpha".into()];
    for _ in 0..300 {
        let t = gen.session();
        let (g, starts) = Grammar::from_types(&[&t]).unwrap();
        walk_together(&g, &starts[0], &t, gen.rng(), 25);
        let (pg, w, _) = Grammar::build(&t, &t).unwrap();
        walk_together(&pg, &w, &t, gen.rng(), 25);
    }
}

#[test]
fn norms_match_shortest_terminating_runs() {
    let mut gen = Generator::new(0x40);
    let (mut finite, mut infinite) = (0, 0);
    for _ in 0..300 {
        let t = gen.session();
        let (g, starts) = Grammar::from_types(&[&t]).unwrap();
        match (g.word_norm(&starts[0]), norm(&t, 30)) {
            (Norm::Finite(n), Some(m)) => {
                assert_eq!(n as usize, m, "{t}");
                finite += 1;
            }
            (Norm::Infinite, None) => infinite += 1,
            (n, m) => panic!("{t}: grammar norm {n}, search found {m:?}"),
        }
    }
    assert!(
        finite > 50 && infinite > 10,
        "{finite} normed, {infinite} unnormed"
    );
}

#[test]
fn pruning_keeps_behaviour() {
    let mut gen = Generator::new(0x7e);
    for _ in 0..200 {
        let t = Type::semi(gen.session(), gen.session());
        let (g, starts) = Grammar::from_types(&[&t]).unwrap();
        let pruned = g.prune();
        let w = pruned.prune_word(&starts[0]);
        // An unnormed symbol ends the word: nothing after it is reachable.
        if let Some(i) = w.iter().position(|&x| !pruned.norm(x).is_finite()) {
            assert_eq!(i + 1, w.len());
        }
        walk_together(&pruned, &w, &t, gen.rng(), 25);
    }
}
