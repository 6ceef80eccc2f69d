use cfst_core::syntax::parse_expr;
use cfst_core::{
    parse_program, parse_type, BasicType, ExprKind, Multiplicity, Polarity, Type, View,
};
use proptest::prelude::*;

const TREE: &str = include_str!("../../cfst/programs/tree.fst");
const CROSS: &str = include_str!("../../cfst/programs/cross.fst");
const CROSS_DOUBLED: &str = include_str!("../../cfst/programs/cross_doubled.fst");

fn basic() -> impl Strategy<Value = BasicType> {
    prop::sample::select(BasicType::ALL.to_vec())
}

/// Arbitrary types, not necessarily well kinded: the printer and parser do
/// not care.
fn any_type() -> impl Strategy<Value = Type> {
    let leaf = prop_oneof![
        basic().prop_map(Type::Basic),
        Just(Type::Skip),
        (basic(), any::<bool>()).prop_map(|(b, out)| {
            Type::Message(if out { Polarity::Out } else { Polarity::In }, b)
        }),
        prop::sample::select(vec!["a", "x", "beta", "x1"]).prop_map(Type::var),
        prop::sample::select(vec!["Tree", "Foo"]).prop_map(|d| Type::Data(d.into())),
    ];
    leaf.prop_recursive(5, 48, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Type::semi(a, b)),
            (any::<bool>(), inner.clone(), inner.clone()).prop_map(|(lin, a, b)| {
                let m = if lin {
                    Multiplicity::Linear
                } else {
                    Multiplicity::Unrestricted
                };
                Type::arrow(m, a, b)
            }),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Type::pair(a, b)),
            (
                any::<bool>(),
                prop::collection::btree_map(
                    prop::sample::select(vec!["A", "B", "Leaf", "Node"]),
                    inner.clone(),
                    1..=3,
                )
            )
                .prop_map(|(int, br)| {
                    Type::choice(if int { View::Internal } else { View::External }, br)
                }),
            (prop::sample::select(vec!["x", "y"]), inner).prop_map(|(x, b)| Type::rec(x, b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printing_then_parsing_is_the_identity(t in any_type()) {
        let printed = t.to_string();
        let back = parse_type(&printed).map_err(|d| TestCaseError::fail(format!("{printed}: {d}")))?;
        prop_assert_eq!(back.reassociate(), t.reassociate(), "{}", printed);
    }
}

#[test]
fn semicolon_is_right_associative() {
    let t = parse_type("!Int;?Bool;Skip").unwrap();
    assert_eq!(
        t,
        Type::semi(
            Type::out(BasicType::Int),
            Type::semi(Type::inp(BasicType::Bool), Type::Skip)
        )
    );
    assert_eq!(
        parse_type("Skip;!Int").unwrap(),
        Type::semi(Type::Skip, Type::out(BasicType::Int))
    );
}

#[test]
fn arrows_bind_looser_than_semicolon() {
    let t = parse_type("!Char;!Char -> !Bool -> Skip").unwrap();
    let Type::Arrow(Multiplicity::Unrestricted, dom, _) = t else {
        panic!("{t}")
    };
    assert_eq!(
        *dom,
        Type::semi(Type::out(BasicType::Char), Type::out(BasicType::Char))
    );
}

#[test]
fn atoms_print_as_written() {
    assert_eq!(Type::Skip.to_string(), "Skip");
    assert_eq!(Type::inp(BasicType::Bool).to_string(), "?Bool");
    let tree = "+{Leaf: Skip, Node: !Int;x;x;?Int}";
    assert_eq!(parse_type(tree).unwrap().to_string(), tree);
}

#[test]
fn empty_choice_is_rejected() {
    let d = parse_type("+{}").unwrap_err();
    assert!(d.message.contains("empty choice"), "{d}");
}

#[test]
fn sample_programs_parse() {
    let p = parse_program(TREE).unwrap();
    assert_eq!(p.type_abbrevs.len(), 3);
    assert_eq!(p.datatypes.len(), 1);
    // transform, treeSum and main, plus the input tree.
    assert_eq!(p.signatures.len(), 4);
    assert_eq!(p.definitions.len(), 4);
    assert_eq!(p.definitions["transform"].params, ["tree", "c"]);
    for src in [CROSS, CROSS_DOUBLED] {
        let p = parse_program(src).unwrap();
        assert_eq!(p.definitions.len(), 3);
    }
}

#[test]
fn parse_errors() {
    let d = parse_program("").unwrap_err();
    assert!(d.iter().any(|d| d.message.contains("missing main")));
    let d = parse_program("f : Int\nmain : Int\nmain = 1\n").unwrap_err();
    assert!(!d.is_empty());
    let d = parse_program("main : Int\nmain = 1\nmain = 2\n").unwrap_err();
    assert!(!d.is_empty());
    let d = parse_program("main : Int\nmain = let x = in 1\n").unwrap_err();
    assert_eq!((d[0].pos.line, d[0].pos.col > 1), (2, true));
}

#[test]
fn type_errors_are_not_parse_errors() {
    assert!(parse_program("f : Int\nf = 1 + True\nmain : Int\nmain = f\n").is_ok());
}

#[test]
fn operators_desugar_to_applications() {
    let e = parse_expr("x + l + r").unwrap();
    let ExprKind::App(f, r) = e.kind else {
        panic!()
    };
    assert_eq!(r.kind, ExprKind::Var("r".into()));
    let ExprKind::App(op, lhs) = f.kind else {
        panic!()
    };
    assert_eq!(op.kind, ExprKind::Var("(+)".into()));
    assert!(matches!(lhs.kind, ExprKind::App(..)));
}
