//! Shared between the mutation suite and the acceptance gate.

use cfst_core::parse_program;
use cfst_core::typecheck::check_program;

pub const TREE: &str = include_str!("../../programs/tree.fst");

/// Single-token edits of the tree program, each of which must be rejected.
pub const TREE_MUTATIONS: &[(&str, &str)] = &[
    // Dropped rebinding: the old channel is used again afterwards.
    ("let c   = select Node c in", "let _   = select Node c in"),
    ("let c   = send x c in", "let _   = send x c in"),
    (
        "let l,c = transform[TreeC;?Int;alpha] l c in",
        "let l,_ = transform[TreeC;?Int;alpha] l c in",
    ),
    ("let y,c = receive c in", "let y,_ = receive c in"),
    ("let x, c = receive c in", "let x, _ = receive c in"),
    (
        "let c    = send (x + l + r) c in",
        "let d    = send (x + l + r) c in",
    ),
    // Duplicated channel use.
    ("transform[Skip] aTree w", "transform[Skip] aTree r"),
    ("fork (treeSum[Skip] r)", "fork (treeSum[Skip] w)"),
    (
        "let r,c = transform[?Int;alpha] r c in",
        "let r,c = transform[?Int;alpha] r l in",
    ),
    // Discarded linear channel.
    (
        "let t,_ = transform[Skip] aTree w in",
        "let t,_ = transform[TreeC] aTree w in",
    ),
    ("fork (treeSum[Skip] r)", "fork (treeSum[TreeS] r)"),
    ("(0, c)", "(0, 0)"),
    // Protocol errors.
    ("select Node c", "select Leaf c"),
    (
        "transform[?Int;alpha] r c",
        "transform[TreeC;?Int;alpha] r c",
    ),
];

/// Replaces the only occurrence of `from` in the tree program.
pub fn mutate(from: &str, to: &str) -> String {
    assert_eq!(TREE.matches(from).count(), 1, "`{from}` is not unique");
    TREE.replacen(from, to, 1)
}

/// Does the program fail to parse or to type check?
pub fn rejected(src: &str) -> bool {
    match parse_program(src) {
        Ok(p) => !check_program(&p).is_empty(),
        Err(_) => true,
    }
}
