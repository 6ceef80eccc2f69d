//! The kind lattice, kind synthesis and contractivity.
//!
//! ```text
//!        TL
//!       /  \
//!     TU    SL
//!       \  /
//!        SU
//! ```

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use crate::syntax::ast::{Kind, Multiplicity, PreKind, Type};

pub fn subkind(k1: Kind, k2: Kind) -> bool {
    k1.prekind <= k2.prekind && k1.multiplicity <= k2.multiplicity
}

pub fn lub(k1: Kind, k2: Kind) -> Kind {
    Kind::new(
        k1.prekind.max(k2.prekind),
        k1.multiplicity.max(k2.multiplicity),
    )
}

/// Kinds of the type variables and datatypes in scope.
#[derive(Clone, Debug, Default)]
pub struct KindEnv {
    vars: BTreeMap<String, Kind>,
    datatypes: BTreeMap<String, Kind>,
}

impl KindEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_var(mut self, name: impl Into<String>, kind: Kind) -> Self {
        self.vars.insert(name.into(), kind);
        self
    }

    /// Binds a variable, returning the binding it shadows.
    pub fn bind(&mut self, name: impl Into<String>, kind: Kind) -> Option<Kind> {
        self.vars.insert(name.into(), kind)
    }

    pub fn restore(&mut self, name: &str, previous: Option<Kind>) {
        match previous {
            Some(k) => {
                self.vars.insert(name.into(), k);
            }
            None => {
                self.vars.remove(name);
            }
        }
    }

    pub fn var(&self, name: &str) -> Option<Kind> {
        self.vars.get(name).copied()
    }

    pub fn set_datatype(&mut self, name: impl Into<String>, kind: Kind) {
        self.datatypes.insert(name.into(), kind);
    }

    pub fn datatype(&self, name: &str) -> Option<Kind> {
        self.datatypes.get(name).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KindError {
    UnboundVar(String),
    UnknownType(String),
    /// An operand of `;` or a choice branch that is not a session type.
    NotSession {
        ty: String,
        context: &'static str,
    },
    /// `rec` over a functional type.
    FunctionalRec(String),
    NonContractive(String),
}

impl fmt::Display for KindError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KindError::UnboundVar(x) => write!(f, "unbound type variable `{x}`"),
            KindError::UnknownType(x) => write!(f, "unknown type `{x}`"),
            KindError::NotSession { ty, context } => {
                write!(f, "`{ty}` is not a session type ({context})")
            }
            KindError::FunctionalRec(t) => {
                write!(f, "only session types can be recursive: `{t}`")
            }
            KindError::NonContractive(t) => write!(f, "recursive type `{t}` is not contractive"),
        }
    }
}

/// Synthesises the least kind of `t`.
pub fn synth_kind(env: &mut KindEnv, t: &Type) -> Result<Kind, KindError> {
    match t {
        Type::Basic(_) => Ok(Kind::TU),
        Type::Arrow(m, a, b) => {
            synth_kind(env, a)?;
            synth_kind(env, b)?;
            Ok(Kind::new(PreKind::Functional, *m))
        }
        Type::Pair(a, b) => {
            let ka = synth_kind(env, a)?;
            let kb = synth_kind(env, b)?;
            Ok(Kind::new(
                PreKind::Functional,
                ka.multiplicity.join(kb.multiplicity),
            ))
        }
        Type::Data(name) => env
            .datatype(name)
            .ok_or_else(|| KindError::UnknownType(name.clone())),
        Type::Skip => Ok(Kind::SU),
        Type::Semi(a, b) => {
            let ka = session_kind(env, a, "operand of `;`")?;
            let kb = session_kind(env, b, "operand of `;`")?;
            Ok(Kind::new(
                PreKind::Session,
                ka.multiplicity.join(kb.multiplicity),
            ))
        }
        Type::Message(..) => Ok(Kind::SL),
        Type::Choice(_, branches) => {
            for s in branches.values() {
                session_kind(env, s, "choice branch")?;
            }
            Ok(Kind::SL)
        }
        Type::Rec(x, body) => {
            let saved = env.bind(x.clone(), Kind::SU);
            let k = synth_kind(env, body);
            env.restore(x, saved);
            let k = k?;
            if !k.is_session() {
                return Err(KindError::FunctionalRec(t.to_string()));
            }
            if unguarded(x, body) {
                return Err(KindError::NonContractive(t.to_string()));
            }
            Ok(k)
        }
        Type::Var(x) => env.var(x).ok_or_else(|| KindError::UnboundVar(x.clone())),
    }
}

fn session_kind(env: &mut KindEnv, t: &Type, context: &'static str) -> Result<Kind, KindError> {
    let k = synth_kind(env, t)?;
    if k.is_session() {
        Ok(k)
    } else {
        Err(KindError::NotSession {
            ty: t.to_string(),
            context,
        })
    }
}

/// Checks `t` against an upper bound.
pub fn check_kind(env: &mut KindEnv, t: &Type, bound: Kind) -> Result<Kind, String> {
    let k = synth_kind(env, t).map_err(|e| e.to_string())?;
    if subkind(k, bound) {
        Ok(k)
    } else {
        Err(format!(
            "type `{t}` has kind {k}, which is not a subkind of {bound}"
        ))
    }
}

/// `false` exactly when some `rec`-bound variable of `t` occurs unguarded.
pub fn contractive(t: &Type) -> bool {
    match t {
        Type::Rec(x, body) => !unguarded(x, body) && contractive(body),
        Type::Arrow(_, a, b) | Type::Pair(a, b) | Type::Semi(a, b) => {
            contractive(a) && contractive(b)
        }
        Type::Choice(_, br) => br.values().all(contractive),
        Type::Basic(_) | Type::Data(_) | Type::Skip | Type::Message(..) | Type::Var(_) => true,
    }
}

/// Does `x` occur in head position of `t`, i.e. reachable without crossing
/// a communication action?
fn unguarded(x: &str, t: &Type) -> bool {
    match t {
        Type::Var(y) => x == y,
        Type::Semi(a, b) => unguarded(x, a) || (may_be_silent(a) && unguarded(x, b)),
        Type::Rec(y, body) => y != x && unguarded(x, body),
        _ => false,
    }
}

/// Could `t` behave as `Skip`? Variables are assumed to possibly do so.
fn may_be_silent(t: &Type) -> bool {
    match t {
        Type::Skip | Type::Var(_) => true,
        Type::Semi(a, b) => may_be_silent(a) && may_be_silent(b),
        Type::Rec(_, body) => may_be_silent(body),
        _ => false,
    }
}

/// Multiplicity shorthand used by the type checker.
pub fn is_linear(env: &mut KindEnv, t: &Type) -> Result<bool, KindError> {
    Ok(synth_kind(env, t)?.multiplicity == Multiplicity::Linear)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::ast::{BasicType, Polarity};
    use crate::syntax::parse_type;

    fn kind_of(src: &str) -> Result<Kind, KindError> {
        let mut env = KindEnv::new().with_var("alpha", Kind::SL);
        synth_kind(&mut env, &parse_type(src).unwrap())
    }

    #[test]
    fn lattice_is_a_diamond() {
        assert!(subkind(Kind::SU, Kind::TL));
        assert!(!subkind(Kind::TU, Kind::SL));
        assert!(!subkind(Kind::SL, Kind::TU));
        assert!(subkind(Kind::SL, Kind::SL));
        assert_eq!(lub(Kind::SU, Kind::TU), Kind::TU);
        assert_eq!(lub(Kind::TU, Kind::SL), Kind::TL);
        assert_eq!(lub(Kind::SU, Kind::SU), Kind::SU);
    }

    #[test]
    fn partial_order_and_join_exhaustively() {
        for a in Kind::ALL {
            assert!(subkind(a, a));
            for b in Kind::ALL {
                if subkind(a, b) && subkind(b, a) {
                    assert_eq!(a, b);
                }
                let j = lub(a, b);
                assert!(subkind(a, j) && subkind(b, j));
                for c in Kind::ALL {
                    if subkind(a, b) && subkind(b, c) {
                        assert!(subkind(a, c));
                    }
                    if subkind(a, c) && subkind(b, c) {
                        assert!(subkind(j, c), "{a} {b} {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn session_kinds() {
        assert_eq!(kind_of("Skip"), Ok(Kind::SU));
        assert_eq!(kind_of("Skip;Skip"), Ok(Kind::SU));
        assert_eq!(kind_of("!Int;alpha"), Ok(Kind::SL));
        assert_eq!(kind_of("+{A: Skip}"), Ok(Kind::SL));
        for b in BasicType::ALL {
            for p in [Polarity::Out, Polarity::In] {
                let mut env = KindEnv::new();
                assert_eq!(synth_kind(&mut env, &Type::Message(p, b)), Ok(Kind::SL));
            }
        }
    }

    #[test]
    fn functional_kinds() {
        assert_eq!(kind_of("Int -> Bool"), Ok(Kind::TU));
        assert_eq!(kind_of("Int -o Bool"), Ok(Kind::TL));
        assert_eq!(kind_of("(Int, Bool)"), Ok(Kind::TU));
        assert_eq!(kind_of("(Int, alpha)"), Ok(Kind::TL));
        assert_eq!(kind_of("(Skip, Skip)"), Ok(Kind::TU));
    }

    #[test]
    fn semicolon_rejects_functional_operands() {
        let err = kind_of("(rec x. +{Leaf: Skip, Node: !Int;x;x;?Int});(Int -> Bool)").unwrap_err();
        assert!(matches!(err, KindError::NotSession { .. }));
        assert!(matches!(kind_of("beta"), Err(KindError::UnboundVar(_))));
    }

    #[test]
    fn contractivity() {
        let bad = [
            "rec x1. x1",
            "rec x1. rec x2. x1",
            "rec x1. rec x2. rec x3. x1",
            "rec x. x;!Int",
            "rec x1. rec x2. x1;!Int",
            "rec x. Skip;x",
            "rec x. alpha;x",
        ];
        for src in bad {
            let t = parse_type(src).unwrap();
            assert!(!contractive(&t), "{src}");
            assert!(
                matches!(kind_of(src), Err(KindError::NonContractive(_))),
                "{src}"
            );
        }
        let good = [
            "rec x. +{Leaf: Skip, Node: !Int;x;x;?Int}",
            "rec x. !Int;x",
            "rec x. Skip;!Int;x",
            "rec x. rec y. !Int;x;y",
        ];
        for src in good {
            assert!(contractive(&parse_type(src).unwrap()), "{src}");
            assert!(kind_of(src).is_ok(), "{src}");
        }
    }

    #[test]
    fn recursion_over_functional_types_is_rejected() {
        assert!(matches!(
            kind_of("rec x. (Int, x)"),
            Err(KindError::NotSession { .. }) | Err(KindError::FunctionalRec(_))
        ));
    }
}
