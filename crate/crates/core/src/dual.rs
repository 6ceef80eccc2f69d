//! Duality of session types.

use crate::syntax::ast::Type;

/// The dual of a session type: sends become receives, internal choices
/// external, and so on through `;` and `rec`. Recursion variables are fixed
/// points. Functional types are outside the domain and returned unchanged.
pub fn dual(s: &Type) -> Type {
    match s {
        Type::Skip | Type::Var(_) => s.clone(),
        Type::Message(p, b) => Type::Message(p.flip(), *b),
        Type::Choice(v, branches) => Type::Choice(
            v.flip(),
            branches.iter().map(|(l, t)| (l.clone(), dual(t))).collect(),
        ),
        Type::Semi(a, b) => Type::semi(dual(a), dual(b)),
        Type::Rec(x, body) => Type::rec(x.clone(), dual(body)),
        Type::Basic(_) | Type::Arrow(..) | Type::Pair(..) | Type::Data(_) => s.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_type;

    #[test]
    fn tree_channel_duals() {
        let c = parse_type("rec x. +{Leaf: Skip, Node: !Int;x;x;?Int}").unwrap();
        let s = parse_type("rec x. &{Leaf: Skip, Node: ?Int;x;x;!Int}").unwrap();
        assert_eq!(dual(&c), s);
        assert_eq!(dual(&s), c);
        assert_eq!(dual(&Type::Skip), Type::Skip);
    }
}
