use cfst_core::equiv::equivalent;
use cfst_core::kinds::KindEnv;
use cfst_core::syntax::parse_expr;
use cfst_core::typecheck::{check_program, check_program_env, synth_closed};
use cfst_core::{parse_program, parse_type, Diagnostic};
use cfst_testkit::Generator;

const TREE: &str = include_str!("../../cfst/programs/tree.fst");
const CROSS: &str = include_str!("../../cfst/programs/cross.fst");
const CROSS_DOUBLED: &str = include_str!("../../cfst/programs/cross_doubled.fst");

fn diags(src: &str) -> Vec<Diagnostic> {
    match parse_program(src) {
        Ok(p) => check_program(&p),
        Err(d) => panic!("{src}\n{d:?}"),
    }
}

fn with_main(defs: &str) -> String {
    format!("{defs}\nmain : Int\nmain = 1\n")
}

#[test]
fn sample_programs_are_well_typed() {
    for src in [TREE, CROSS, CROSS_DOUBLED] {
        assert_eq!(diags(src), Vec::new());
    }
}

#[test]
fn program_level_errors() {
    let d = diags("main : Int -> Int\nmain x = x\n");
    assert_eq!(d.len(), 1);
    let d = parse_program("f x = x\nmain : Int\nmain = 1\n").unwrap_err();
    assert!(d[0].message.contains("lacks a type signature"), "{d:?}");
    let d = diags("main : !Int\nmain = let w, r = new !Int in let _ = r in w\n");
    assert!(!d.is_empty());
    // Mutual recursion through signatures.
    let src = "even : Int -> Bool\neven n = if n == 0 then True else odd (n - 1)\n\
               odd : Int -> Bool\nodd n = if n == 0 then False else even (n - 1)\n";
    assert_eq!(diags(&with_main(src)), Vec::new());
}

#[test]
fn bodies_are_compared_up_to_equivalence() {
    assert_eq!(
        diags(&with_main("f : Skip;!Int -> !Int\nf c = c")),
        Vec::new()
    );
    assert_eq!(
        diags(&with_main(
            "f : (!Int;?Bool);Skip -> !Int;(Skip;?Bool)\nf c = c"
        )),
        Vec::new()
    );
    let d = diags(&with_main("f : !Int -> ?Int\nf c = c"));
    assert!(
        d[0].message.contains("!Int") && d[0].message.contains("?Int"),
        "{}",
        d[0]
    );
}

#[test]
fn session_operations() {
    let p = parse_program(TREE).unwrap();
    let (env, _) = check_program_env(&p);
    let mut kinds = env.kind_env();
    let t = synth_closed(&env, &parse_expr("new TreeC").unwrap()).unwrap();
    let want = env.resolve(&parse_type("(TreeC, TreeS)").unwrap()).unwrap();
    assert!(equivalent(&t, &want, &mut kinds), "{t}");

    let t = synth_closed(&env, &parse_expr("transform[TreeC;?Int;Skip]").unwrap()).unwrap();
    let want = env
        .resolve(&parse_type("Tree -> TreeC;TreeC;?Int;Skip -> (Tree, TreeC;?Int;Skip)").unwrap())
        .unwrap();
    assert!(equivalent(&t, &want, &mut kinds), "{t}");

    let select = "f : +{Leaf: Skip, Node: !Int};?Bool -> Skip;?Bool\nf c = select Leaf c";
    assert_eq!(diags(&with_main(select)), Vec::new());
    let absent = "f : +{Leaf: Skip};?Bool -> ?Bool\nf c = select Node c";
    assert!(!diags(&with_main(absent)).is_empty());
    let wrong_way = "f : ?Int -> Skip\nf c = send 1 c";
    assert!(!diags(&with_main(wrong_way)).is_empty());
    let receive_skip = "f : Skip -> Int\nf c = let x, d = receive c in x";
    assert!(!diags(&with_main(receive_skip)).is_empty());
    let fork_linear =
        "main : Int\nmain = let w, r = new !Int in let _ = fork w in let _, r = receive r in 1\n";
    assert!(!diags(fork_linear).is_empty());
}

#[test]
fn linearity_across_branches() {
    let uneven = "f : Bool -> !Int -> Int\nf b c = if b then let _ = send 1 c in 1 else 2";
    assert!(!diags(&with_main(uneven)).is_empty());
    let case_uneven = "data T = A | B\n\
        f : T -> !Int -> Skip\nf t c = case t of\n  A -> send 1 c\n  B -> let _ = 2 in send 3 c";
    assert_eq!(diags(&with_main(case_uneven)), Vec::new());
    let match_mismatch =
        "f : &{A: !Int, B: Skip} -> Skip\nf c = match c with\n  A c -> c\n  B c -> c";
    assert!(!diags(&with_main(match_mismatch)).is_empty());
    let skip_discard = "main : Int\nmain = let w, r = new Skip in let _ = w in let _ = r in 5\n";
    assert_eq!(diags(skip_discard), Vec::new());
}

#[test]
fn simultaneous_type_application() {
    let src = "swap : forall a:TU, b:TU => a -> b -> (b, a)\nswap x y = (y, x)\n\
               flip : forall a:TU, b:TU => a -> b -> (a, b)\nflip x y = swap[b, a] y x\n";
    assert_eq!(diags(&with_main(src)), Vec::new());
    let wrong = "swap : forall a:TU, b:TU => a -> b -> (b, a)\nswap x y = (y, x)\n\
                 flip : forall a:TU, b:TU => a -> b -> (a, b)\nflip x y = swap[a, b] y x\n";
    assert!(!diags(&with_main(wrong)).is_empty());
}

/// Instantiating a polymorphic function at `S` types exactly like a
/// monomorphic copy written at `S`, and unlike one written at a type that is
/// not equivalent to `S`.
#[test]
fn type_application_agrees_with_substitution() {
    let mut g = Generator::new(0x5b);
    g.depth = 3;
    let mut rejected = 0;
    for _ in 0..60 {
        let s = g.session();
        let other = g.perturb(&s);
        let differs = !equivalent(&s, &other, &mut KindEnv::new());
        let src = format!(
            "f : forall a:SL => ?Int;a -> (Int, a)\nf c = receive c\n\
             viaApp : ?Int;{s} -> (Int, {s})\nviaApp c = f[{s}] c\n\
             copy : ?Int;{s} -> (Int, {s})\ncopy c = receive c\n\
             other : ?Int;{other} -> (Int, {other})\nother c = f[{s}] c\n"
        );
        let d = diags(&with_main(&src));
        assert!(d.iter().all(|d| d.pos.line > 6), "{src}\n{d:?}");
        assert_eq!(!d.is_empty(), differs, "{src}\n{d:?}");
        rejected += usize::from(differs);

        let p = parse_program(&with_main(&src)).unwrap();
        let (env, _) = check_program_env(&p);
        let app = synth_closed(&env, &parse_expr(&format!("f[{s}]")).unwrap()).unwrap();
        let copy = synth_closed(&env, &parse_expr("copy").unwrap()).unwrap();
        assert!(
            equivalent(&app, &copy, &mut KindEnv::new()),
            "{app} vs {copy}"
        );
        let substituted = parse_type("?Int;a -> (Int, a)").unwrap().subst("a", &s);
        assert_eq!(app, substituted);
    }
    assert!(rejected > 10, "{rejected}");
}
