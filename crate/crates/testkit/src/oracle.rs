//! Reference decision procedures over the labelled transition system of
//! session types.
//!
//! A state is a stack of session types, the top being the next thing to run.
//! `Skip` pops, `S;T` pushes both halves, `rec` unfolds in place, and the
//! first action found is the transition label. Free type variables are
//! treated as opaque actions, the same way the grammar translation treats
//! them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use cfst_core::{Polarity, Type, View};

/// Right to left: the last element runs first. Never contains `Skip` or
/// `Semi`.
pub type Stack = Vec<Type>;

/// Puts `t` on top of `stack`, flattening `;` and dropping `Skip`.
pub fn push(stack: &mut Stack, t: Type) {
    match t {
        Type::Skip => {}
        Type::Semi(a, b) => {
            push(stack, *b);
            push(stack, *a);
        }
        other => stack.push(other),
    }
}

pub fn initial(t: &Type) -> Stack {
    let mut s = Vec::new();
    push(&mut s, t.clone());
    s
}

fn label(p: Polarity, b: impl std::fmt::Display) -> String {
    match p {
        Polarity::Out => format!("!{b}"),
        Polarity::In => format!("?{b}"),
    }
}

/// All transitions of a state, keyed by label. Session types are
/// deterministic, so each label has one successor.
pub fn transitions(state: &Stack) -> BTreeMap<String, Stack> {
    let mut st = state.clone();
    for _ in 0..100_000 {
        let Some(top) = st.pop() else {
            return BTreeMap::new();
        };
        match top {
            Type::Rec(..) => push(&mut st, top.unfold()),
            Type::Message(p, b) => return BTreeMap::from([(label(p, b), st)]),
            Type::Var(x) => return BTreeMap::from([(format!("var {x}"), st)]),
            Type::Choice(v, br) => {
                let sign = if v == View::Internal { '+' } else { '&' };
                return br
                    .into_iter()
                    .map(|(l, s)| {
                        let mut next = st.clone();
                        push(&mut next, s);
                        (format!("{sign}{l}"), next)
                    })
                    .collect();
            }
            Type::Skip | Type::Semi(..) => unreachable!("stacks are flattened"),
            other => panic!("`{other}` is not a session type"),
        }
    }
    panic!("non-contractive type in state {state:?}")
}

/// Do `t1` and `t2` agree on all transition sequences of length at most
/// `depth`? A `false` answer is a proof of inequivalence.
pub fn k_bisimilar(t1: &Type, t2: &Type, depth: usize) -> bool {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([(initial(t1), initial(t2), 0)]);
    while let Some((a, b, d)) = queue.pop_front() {
        if !seen.insert((a.clone(), b.clone())) {
            continue;
        }
        let ta = transitions(&a);
        let tb = transitions(&b);
        if !ta.keys().eq(tb.keys()) {
            return false;
        }
        if d < depth {
            for ((_, na), (_, nb)) in ta.into_iter().zip(tb) {
                queue.push_back((na, nb, d + 1));
            }
        }
    }
    true
}

/// The minimal number of transitions taking `t` to termination, searched
/// breadth first up to `depth` steps.
pub fn norm(t: &Type, depth: usize) -> Option<usize> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([(initial(t), 0)]);
    while let Some((s, d)) = queue.pop_front() {
        let next = transitions(&s);
        // A contractive state without transitions has terminated, even if
        // something like `rec x. Skip` is still on the stack.
        if next.is_empty() {
            return Some(d);
        }
        if d == depth || !seen.insert(s) {
            continue;
        }
        for (_, next) in next {
            queue.push_back((next, d + 1));
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Shape {
    End,
    Act(String, Type),
    Choice(View, BTreeMap<String, Type>),
}

/// The observable head of a tail-recursive type: every `;` has an action
/// or `Skip` on its left.
fn shape(t: &Type) -> Shape {
    let mut t = t.clone();
    loop {
        match t {
            Type::Rec(..) => t = t.unfold(),
            Type::Skip => return Shape::End,
            Type::Message(p, b) => return Shape::Act(label(p, b), Type::Skip),
            Type::Var(x) => return Shape::Act(format!("var {x}"), Type::Skip),
            Type::Choice(v, br) => return Shape::Choice(v, br),
            Type::Semi(a, rest) => match *a {
                Type::Skip => t = *rest,
                Type::Message(p, b) => return Shape::Act(label(p, b), *rest),
                Type::Var(x) => return Shape::Act(format!("var {x}"), *rest),
                other => panic!("`{other}` on the left of `;` is outside the regular fragment"),
            },
            other => panic!("`{other}` is not a session type"),
        }
    }
}

/// Coinductive equivalence for tail-recursive session types, in the style of
/// Gay and Hole: accumulate the pairs visited so far as assumptions and fail
/// on the first structural mismatch. Terminates because a regular type has
/// finitely many unfoldings up to its subterms.
pub fn gay_hole(t1: &Type, t2: &Type) -> bool {
    let mut assumed = BTreeSet::new();
    let mut work = vec![(t1.clone(), t2.clone())];
    while let Some((a, b)) = work.pop() {
        if !assumed.insert((a.clone(), b.clone())) {
            continue;
        }
        match (shape(&a), shape(&b)) {
            (Shape::End, Shape::End) => {}
            (Shape::Act(la, ka), Shape::Act(lb, kb)) if la == lb => work.push((ka, kb)),
            (Shape::Choice(va, ba), Shape::Choice(vb, bb))
                if va == vb && ba.keys().eq(bb.keys()) =>
            {
                work.extend(ba.into_values().zip(bb.into_values()));
            }
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use cfst_core::parse_type;

    fn t(s: &str) -> Type {
        parse_type(s).unwrap()
    }

    #[test]
    fn bisimulation_up_to_depth() {
        assert!(k_bisimilar(&t("Skip;!Int"), &t("!Int;Skip"), 10));
        assert!(!k_bisimilar(&t("!Int"), &t("?Int"), 10));
        assert!(!k_bisimilar(&t("!Int;!Int"), &t("!Int"), 10));
        assert!(k_bisimilar(&t("!Int;!Int"), &t("!Int"), 0));
        let tree = t("rec x. +{Leaf: Skip, Node: !Int;x;x;?Int}");
        assert!(k_bisimilar(&tree, &tree.unfold(), 20));
    }

    #[test]
    fn norms_by_search() {
        assert_eq!(norm(&t("Skip"), 5), Some(0));
        assert_eq!(norm(&t("!Int;+{A: ?Int, B: Skip}"), 5), Some(2));
        assert_eq!(norm(&t("rec x. !Int;x"), 20), None);
        assert_eq!(
            norm(&t("rec x. +{Leaf: Skip, Node: !Int;x;x;?Int}"), 20),
            Some(1)
        );
    }

    #[test]
    fn regular_fragment() {
        assert!(gay_hole(&t("rec x. !Int;x"), &t("rec y. !Int;!Int;y")));
        assert!(gay_hole(
            &t("rec x. &{A: ?Int;x, B: Skip}"),
            &t("&{A: ?Int;rec x. &{A: ?Int;x, B: Skip}, B: Skip}")
        ));
        assert!(!gay_hole(&t("rec x. !Int;x"), &t("rec x. !Int;!Bool;x")));
        assert!(!gay_hole(&t("+{A: Skip}"), &t("&{A: Skip}")));
    }
}
