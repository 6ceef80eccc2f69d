//! Acceptance gate: one PASS or FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use cfst::cli::exit;
use cfst::main_entry;
use cfst_core::dual::dual;
use cfst_core::equiv::{decide, SearchConfig, Simplification, Verdict};
use cfst_core::grammar::Grammar;
use cfst_core::kinds::{contractive, lub, subkind, synth_kind, KindEnv};
use cfst_core::typecheck::GlobalEnv;
use cfst_core::{parse_program, parse_type, Kind, Type};
use cfst_testkit::{gay_hole, k_bisimilar, Generator, Law};
use rand::Rng;

// Pinned tolerances.
const TREE_WALL_CLOCK: Duration = Duration::from_secs(5);
const DEADLOCK_SEEDS: u64 = 100;
/// Deadlock quiescence for the doubled program, in milliseconds.
const WATCHDOG_MS: &str = "50";
const LAW_INSTANCES: usize = 500;
const PERTURBED_PAIRS: usize = 500;
const TAIL_RECURSIVE_PAIRS: usize = 200;
const DUALITY_TYPES: usize = 1000;
const MIN_MUTATIONS: usize = 10;
const UNFOLDING_LEVELS: usize = 3;
const UNFOLDING_WALL_CLOCK: Duration = Duration::from_secs(1);
/// Depth of the bisimulation oracle's search for a distinguishing trace.
const ORACLE_DEPTH: usize = 24;

const EXPECTED_TREE: &str = "Node 36 (Node 22 (Node 8 Leaf Leaf) (Node 12 (Node 5 Leaf Leaf) \
                             (Node 4 Leaf Leaf))) (Node 13 Leaf (Node 7 Leaf Leaf))\n";
const TREE_C: &str = "rec x. +{Leaf: Skip, Node: !Int;x;x;?Int}";
const TREE_S: &str = "rec x. &{Leaf: Skip, Node: ?Int;x;x;!Int}";

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn program(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "programs", name]
        .iter()
        .collect();
    p.display().to_string()
}

fn cfst(args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = main_entry(
        std::iter::once("cfst").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn verdict(a: &Type, b: &Type, config: &SearchConfig) -> Verdict {
    decide(a, b, &mut KindEnv::new(), config).verdict
}

/// A bisimulation depth that decides the instance, when the pruned grammar
/// is small: at most 6 nonterminals, all normed with norm at most 4.
fn decisive_depth(a: &Type, b: &Type) -> Option<usize> {
    let (g, _, _) = Grammar::build(a, b).ok()?;
    if g.len() > 6 {
        return None;
    }
    let mut total = 0;
    for x in g.nonterminals() {
        total += g.norm(x).finite().filter(|&n| n <= 4)? as usize;
    }
    Some(2 * total + 4)
}

/// `Some(verdict)` when the oracle can decide the instance.
fn oracle(a: &Type, b: &Type) -> Option<bool> {
    if !k_bisimilar(a, b, ORACLE_DEPTH) {
        return Some(false);
    }
    let d = decisive_depth(a, b)?;
    Some(d <= ORACLE_DEPTH || k_bisimilar(a, b, d))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let (code, out) = cfst(&["run", &program("tree.fst")]);
    let took = start.elapsed();
    ensure(code == exit::OK && out == EXPECTED_TREE, || {
        format!("exit {code}, printed {out}")
    })?;
    ensure(took < TREE_WALL_CLOCK, || format!("took {took:?}"))?;
    Ok(format!("exact output in {took:?}"))
}

fn criterion_2() -> Check {
    let (cross, doubled) = (program("cross.fst"), program("cross_doubled.fst"));
    let mut deadlocks = 0;
    for seed in 0..DEADLOCK_SEEDS {
        let s = seed.to_string();
        let (code, out) = cfst(&["run", "--seed", &s, "--watchdog-ms", WATCHDOG_MS, &cross]);
        ensure(code == exit::OK && out == "False\n", || {
            format!("cross, seed {seed}: exit {code}")
        })?;
        let (code, _) = cfst(&["run", "--seed", &s, "--watchdog-ms", WATCHDOG_MS, &doubled]);
        deadlocks += usize::from(code == exit::DEADLOCK);
    }
    ensure(deadlocks as u64 == DEADLOCK_SEEDS, || {
        format!("{deadlocks}/{DEADLOCK_SEEDS} deadlocks")
    })?;
    Ok(format!(
        "cross terminates; doubled deadlocks {deadlocks}/{DEADLOCK_SEEDS}"
    ))
}

/// Pairs from the law and perturbation suites, kept for criterion 9.
fn law_suite() -> Vec<(Type, Type)> {
    let mut g = Generator::new(0xacc3);
    let mut pairs = Vec::new();
    for law in Law::ALL {
        for _ in 0..LAW_INSTANCES {
            pairs.push(g.law(law));
        }
    }
    for _ in 0..PERTURBED_PAIRS {
        let law = Law::ALL[g.rng().gen_range(0..Law::ALL.len())];
        let (a, _) = g.law(law);
        let b = g.perturb(&a);
        pairs.push((a, b));
    }
    pairs
}

fn tail_recursive_suite() -> Vec<(Type, Type)> {
    let mut g = Generator::new(0xacc4);
    (0..TAIL_RECURSIVE_PAIRS)
        .map(|i| {
            let a = g.tail_recursive();
            let v = g.variant(&a, true);
            let b = if i % 2 == 0 { v } else { g.perturb(&v) };
            (a, b)
        })
        .collect()
}

fn criterion_3(pairs: &[(Type, Type)]) -> Check {
    let config = SearchConfig::default();
    let (laws, perturbed) = pairs.split_at(Law::ALL.len() * LAW_INSTANCES);
    for (a, b) in laws {
        let v = verdict(a, b, &config);
        ensure(v == Verdict::Equivalent, || {
            format!("{v} for law instance {a} vs {b}")
        })?;
    }
    let (mut decided, mut unequal) = (0, 0);
    for (a, b) in perturbed {
        let v = verdict(a, b, &config);
        ensure(v != Verdict::Inconclusive, || {
            format!("inconclusive on {a} vs {b}")
        })?;
        unequal += usize::from(v == Verdict::NotEquivalent);
        if let Some(expected) = oracle(a, b) {
            decided += 1;
            ensure((v == Verdict::Equivalent) == expected, || {
                format!("{v} for {a} vs {b}")
            })?;
        } else if v == Verdict::Equivalent {
            ensure(k_bisimilar(a, b, ORACLE_DEPTH), || {
                format!("{a} vs {b} differ")
            })?;
        }
    }
    Ok(format!(
        "{} law instances equivalent; {unequal}/{PERTURBED_PAIRS} perturbed pairs not equivalent, \
         0 disagreements on {decided} within the oracle's bound",
        laws.len()
    ))
}

fn criterion_4(pairs: &[(Type, Type)]) -> Check {
    let mut equal = 0;
    for (a, b) in pairs {
        let expected = gay_hole(a, b);
        let v = verdict(a, b, &SearchConfig::default());
        ensure(
            (v == Verdict::Equivalent) == expected && v != Verdict::Inconclusive,
            || format!("{v} for {a} vs {b}, oracle says {expected}"),
        )?;
        equal += usize::from(expected);
    }
    Ok(format!("{} pairs match ({equal} equivalent)", pairs.len()))
}

fn criterion_5() -> Check {
    let tree = parse_program(common::TREE).map_err(|d| format!("{d:?}"))?;
    let (env, _) = GlobalEnv::new(&tree);
    let mut kinds = env.kind_env().with_var("alpha", Kind::SL);
    let claims = [
        ("Skip", Kind::SU),
        ("!Int", Kind::SL),
        ("?Bool", Kind::SL),
        ("+{Leaf: Skip, Node: !Int}", Kind::SL),
        ("&{Leaf: Skip, Node: ?Int}", Kind::SL),
        ("Int -> Bool", Kind::TU),
        ("!Int -> ?Int", Kind::TU),
        ("Int -o Bool", Kind::TL),
        ("TreeC;?Int;alpha", Kind::SL),
        ("TreeC", Kind::SL),
    ];
    for (src, k) in claims {
        let t = env.resolve(&parse_type(src).map_err(|d| d.to_string())?)?;
        let got = synth_kind(&mut kinds, &t);
        ensure(got == Ok(k), || format!("{src}: {got:?}, expected {k}"))?;
    }
    let edges = [
        (Kind::SU, Kind::TU),
        (Kind::SU, Kind::SL),
        (Kind::TU, Kind::TL),
        (Kind::SL, Kind::TL),
    ];
    let below = |a: Kind, b: Kind| {
        a == b
            || edges.contains(&(a, b))
            || edges
                .iter()
                .any(|&(x, y)| x == a && edges.contains(&(y, b)))
    };
    let mut pairs = 0;
    for a in Kind::ALL {
        for b in Kind::ALL {
            ensure(subkind(a, b) == below(a, b), || format!("{a} <= {b}"))?;
            let j = lub(a, b);
            ensure(below(a, j) && below(b, j), || format!("lub {a} {b} = {j}"))?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{} kind claims, {pairs} subkind pairs",
        claims.len()
    ))
}

fn criterion_6() -> Check {
    let mut rejected = 0;
    for n in 1..=3 {
        let binders: String = (1..=n).map(|i| format!("rec x{i}. ")).collect();
        for src in [
            format!("{binders}x1"),
            format!("{binders}(x1;!Int)"),
            format!("{binders}(x1;Skip)"),
        ] {
            let t = parse_type(&src).map_err(|d| d.to_string())?;
            let kinded = synth_kind(&mut KindEnv::new(), &t);
            ensure(!contractive(&t) && kinded.is_err(), || {
                format!("accepted {src}")
            })?;
            rejected += 1;
        }
    }
    let tree = parse_type(TREE_C).map_err(|d| d.to_string())?;
    ensure(contractive(&tree), || "TreeC rejected".into())?;
    ensure(
        synth_kind(&mut KindEnv::new(), &tree) == Ok(Kind::SL),
        || "TreeC not SL".into(),
    )?;
    Ok(format!(
        "{rejected} schema instances rejected, TreeC accepted"
    ))
}

fn criterion_7() -> Check {
    let mut g = Generator::new(0xacc7);
    for _ in 0..DUALITY_TYPES {
        let t = g.session();
        ensure(dual(&dual(&t)) == t, || {
            format!("dual is not an involution on {t}")
        })?;
    }
    let c = parse_type(TREE_C).map_err(|d| d.to_string())?;
    let s = parse_type(TREE_S).map_err(|d| d.to_string())?;
    ensure(dual(&c) == s && dual(&s) == c, || {
        format!("dual of TreeC is {}", dual(&c))
    })?;
    let tree = parse_program(common::TREE).map_err(|d| format!("{d:?}"))?;
    let (env, _) = GlobalEnv::new(&tree);
    ensure(
        dual(&env.abbrevs["TreeC"]).alpha_eq(&env.abbrevs["TreeS"]),
        || "declared TreeC and TreeS are not dual".into(),
    )?;
    Ok(format!("{DUALITY_TYPES} types; TreeC and TreeS dual"))
}

fn criterion_8() -> Check {
    ensure(!common::rejected(common::TREE), || {
        "the unmutated program is rejected".into()
    })?;
    let mut caught = 0;
    for &(from, to) in common::TREE_MUTATIONS {
        ensure(common::rejected(&common::mutate(from, to)), || {
            format!("accepted `{to}`")
        })?;
        caught += 1;
    }
    ensure(caught >= MIN_MUTATIONS, || {
        format!("only {caught} mutations")
    })?;
    Ok(format!(
        "{caught}/{} mutations diagnosed",
        common::TREE_MUTATIONS.len()
    ))
}

fn criterion_9(suite: &[(Type, Type)]) -> Check {
    let tree = parse_type(TREE_C).map_err(|d| d.to_string())?;
    let Type::Rec(x, body) = &tree else {
        unreachable!()
    };
    let mut unfolded = tree.clone();
    for _ in 0..UNFOLDING_LEVELS {
        unfolded = body.subst(x, &unfolded);
    }
    let start = Instant::now();
    let out = decide(
        &tree,
        &unfolded,
        &mut KindEnv::new(),
        &SearchConfig::default(),
    );
    let took = start.elapsed();
    ensure(out.verdict == Verdict::Equivalent, || {
        format!("{}", out.verdict)
    })?;
    ensure(took < UNFOLDING_WALL_CLOCK, || format!("took {took:?}"))?;
    ensure(out.nodes <= SearchConfig::DEFAULT_BUDGET, || {
        format!("{} nodes", out.nodes)
    })?;

    let plain = SearchConfig {
        prioritize: false,
        simplify: Simplification::SinglePass,
        ..SearchConfig::default()
    };
    let (mut full_nodes, mut plain_nodes) = (0, 0);
    for (a, b) in suite {
        let full = decide(a, b, &mut KindEnv::new(), &SearchConfig::default());
        let other = decide(a, b, &mut KindEnv::new(), &plain);
        ensure(full.verdict == other.verdict, || {
            format!(
                "{} with, {} without for {a} vs {b}",
                full.verdict, other.verdict
            )
        })?;
        full_nodes += full.nodes;
        plain_nodes += other.nodes;
    }
    Ok(format!(
        "{UNFOLDING_LEVELS}-level unfolding in {took:?}, {} nodes; {} verdicts unchanged \
         ({full_nodes} vs {plain_nodes} nodes)",
        out.nodes,
        suite.len()
    ))
}

fn main() {
    let laws = law_suite();
    let tail = tail_recursive_suite();
    let whole: Vec<(Type, Type)> = laws.iter().chain(&tail).cloned().collect();
    let criteria: Vec<Criterion> = vec![
        ("tree program end to end", Box::new(criterion_1)),
        ("deadlock pair", Box::new(criterion_2)),
        ("equivalence law suites", Box::new(|| criterion_3(&laws))),
        (
            "regular fragment differential",
            Box::new(|| criterion_4(&tail)),
        ),
        ("kinding", Box::new(criterion_5)),
        ("contractivity", Box::new(criterion_6)),
        ("duality", Box::new(criterion_7)),
        ("linearity mutations", Box::new(criterion_8)),
        ("performance sanity", Box::new(|| criterion_9(&whole))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        match result {
            Ok(detail) => println!("PASS {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
