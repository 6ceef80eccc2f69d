//! Abstract syntax of kinds, types, expressions and programs.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::diagnostic::Pos;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PreKind {
    Session,
    Functional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Unrestricted,
    Linear,
}

impl Multiplicity {
    pub fn join(self, other: Multiplicity) -> Multiplicity {
        self.max(other)
    }
}

/// A kind: a prekind paired with a multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Kind {
    pub prekind: PreKind,
    pub multiplicity: Multiplicity,
}

impl Kind {
    pub const SU: Kind = Kind::new(PreKind::Session, Multiplicity::Unrestricted);
    pub const SL: Kind = Kind::new(PreKind::Session, Multiplicity::Linear);
    pub const TU: Kind = Kind::new(PreKind::Functional, Multiplicity::Unrestricted);
    pub const TL: Kind = Kind::new(PreKind::Functional, Multiplicity::Linear);

    pub const ALL: [Kind; 4] = [Kind::SU, Kind::SL, Kind::TU, Kind::TL];

    pub const fn new(prekind: PreKind, multiplicity: Multiplicity) -> Kind {
        Kind {
            prekind,
            multiplicity,
        }
    }

    pub fn is_session(self) -> bool {
        self.prekind == PreKind::Session
    }

    pub fn is_linear(self) -> bool {
        self.multiplicity == Multiplicity::Linear
    }

    pub fn from_name(name: &str) -> Option<Kind> {
        match name {
            "SU" => Some(Kind::SU),
            "SL" => Some(Kind::SL),
            "TU" => Some(Kind::TU),
            "TL" => Some(Kind::TL),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.prekind {
            PreKind::Session => 'S',
            PreKind::Functional => 'T',
        };
        let m = match self.multiplicity {
            Multiplicity::Unrestricted => 'U',
            Multiplicity::Linear => 'L',
        };
        write!(f, "{p}{m}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasicType {
    Int,
    Bool,
    Char,
    Unit,
}

impl BasicType {
    pub const ALL: [BasicType; 4] = [
        BasicType::Int,
        BasicType::Bool,
        BasicType::Char,
        BasicType::Unit,
    ];
}

impl fmt::Display for BasicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasicType::Int => "Int",
            BasicType::Bool => "Bool",
            BasicType::Char => "Char",
            BasicType::Unit => "()",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Out,
    In,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Out => Polarity::In,
            Polarity::In => Polarity::Out,
        }
    }
}

/// Who picks the branch: `+{..}` is internal, `&{..}` external.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum View {
    Internal,
    External,
}

impl View {
    pub fn flip(self) -> View {
        match self {
            View::Internal => View::External,
            View::External => View::Internal,
        }
    }
}

/// Functional and session types share one syntactic category; kinding
/// tells them apart.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Type {
    Basic(BasicType),
    Arrow(Multiplicity, Box<Type>, Box<Type>),
    Pair(Box<Type>, Box<Type>),
    /// A named datatype, or before resolution any capitalised type name.
    Data(String),
    Skip,
    Semi(Box<Type>, Box<Type>),
    Message(Polarity, BasicType),
    Choice(View, BTreeMap<String, Type>),
    Rec(String, Box<Type>),
    Var(String),
}

impl Type {
    pub fn semi(a: Type, b: Type) -> Type {
        Type::Semi(Box::new(a), Box::new(b))
    }

    pub fn arrow(m: Multiplicity, a: Type, b: Type) -> Type {
        Type::Arrow(m, Box::new(a), Box::new(b))
    }

    pub fn pair(a: Type, b: Type) -> Type {
        Type::Pair(Box::new(a), Box::new(b))
    }

    pub fn rec(x: impl Into<String>, body: Type) -> Type {
        Type::Rec(x.into(), Box::new(body))
    }

    pub fn var(x: impl Into<String>) -> Type {
        Type::Var(x.into())
    }

    pub fn out(b: BasicType) -> Type {
        Type::Message(Polarity::Out, b)
    }

    pub fn inp(b: BasicType) -> Type {
        Type::Message(Polarity::In, b)
    }

    pub fn choice<I, S>(view: View, branches: I) -> Type
    where
        I: IntoIterator<Item = (S, Type)>,
        S: Into<String>,
    {
        Type::Choice(
            view,
            branches.into_iter().map(|(l, t)| (l.into(), t)).collect(),
        )
    }

    /// Right-nested sequential composition of a nonempty list.
    pub fn seq(parts: impl IntoIterator<Item = Type>) -> Type {
        let mut parts: Vec<Type> = parts.into_iter().collect();
        let mut acc = parts.pop().unwrap_or(Type::Skip);
        while let Some(t) = parts.pop() {
            acc = Type::semi(t, acc);
        }
        acc
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Type::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Type::Rec(x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Type::Arrow(_, a, b) | Type::Pair(a, b) | Type::Semi(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Type::Choice(_, br) => br.values().for_each(|t| t.collect_free(bound, out)),
            Type::Basic(_) | Type::Data(_) | Type::Skip | Type::Message(..) => {}
        }
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            Type::Var(y) => x == y,
            Type::Rec(y, body) => y != x && body.occurs_free(x),
            Type::Arrow(_, a, b) | Type::Pair(a, b) | Type::Semi(a, b) => {
                a.occurs_free(x) || b.occurs_free(x)
            }
            Type::Choice(_, br) => br.values().any(|t| t.occurs_free(x)),
            Type::Basic(_) | Type::Data(_) | Type::Skip | Type::Message(..) => false,
        }
    }

    /// Capture-avoiding substitution of `with` for the free occurrences of `x`.
    pub fn subst(&self, x: &str, with: &Type) -> Type {
        let fv = with.free_vars();
        self.subst_inner(x, with, &fv)
    }

    fn subst_inner(&self, x: &str, with: &Type, fv: &BTreeSet<String>) -> Type {
        match self {
            Type::Var(y) if y == x => with.clone(),
            Type::Var(_) | Type::Basic(_) | Type::Data(_) | Type::Skip | Type::Message(..) => {
                self.clone()
            }
            Type::Rec(y, _) if y == x => self.clone(),
            Type::Rec(y, body) => {
                if !body.occurs_free(x) {
                    return self.clone();
                }
                if fv.contains(y) {
                    let mut avoid = fv.clone();
                    avoid.extend(body.free_vars());
                    let fresh = fresh_name(y, &avoid);
                    let renamed = body.subst(y, &Type::Var(fresh.clone()));
                    Type::Rec(fresh, Box::new(renamed.subst_inner(x, with, fv)))
                } else {
                    Type::Rec(y.clone(), Box::new(body.subst_inner(x, with, fv)))
                }
            }
            Type::Arrow(m, a, b) => Type::Arrow(
                *m,
                Box::new(a.subst_inner(x, with, fv)),
                Box::new(b.subst_inner(x, with, fv)),
            ),
            Type::Pair(a, b) => Type::Pair(
                Box::new(a.subst_inner(x, with, fv)),
                Box::new(b.subst_inner(x, with, fv)),
            ),
            Type::Semi(a, b) => Type::Semi(
                Box::new(a.subst_inner(x, with, fv)),
                Box::new(b.subst_inner(x, with, fv)),
            ),
            Type::Choice(v, br) => Type::Choice(
                *v,
                br.iter()
                    .map(|(l, t)| (l.clone(), t.subst_inner(x, with, fv)))
                    .collect(),
            ),
        }
    }

    /// One unfolding of a top-level `rec`.
    pub fn unfold(&self) -> Type {
        match self {
            Type::Rec(x, body) => body.subst(x, self),
            _ => self.clone(),
        }
    }

    /// Alpha-normal form: bound variables renamed by binding depth.
    pub fn canonical(&self) -> Type {
        self.canonical_inner(&mut Vec::new())
    }

    fn canonical_inner(&self, bound: &mut Vec<(String, String)>) -> Type {
        match self {
            Type::Var(x) => match bound.iter().rev().find(|(y, _)| y == x) {
                Some((_, c)) => Type::Var(c.clone()),
                None => self.clone(),
            },
            Type::Rec(x, body) => {
                let c = format!("#{}", bound.len());
                bound.push((x.clone(), c.clone()));
                let body = body.canonical_inner(bound);
                bound.pop();
                Type::Rec(c, Box::new(body))
            }
            Type::Arrow(m, a, b) => Type::Arrow(
                *m,
                Box::new(a.canonical_inner(bound)),
                Box::new(b.canonical_inner(bound)),
            ),
            Type::Pair(a, b) => Type::Pair(
                Box::new(a.canonical_inner(bound)),
                Box::new(b.canonical_inner(bound)),
            ),
            Type::Semi(a, b) => Type::Semi(
                Box::new(a.canonical_inner(bound)),
                Box::new(b.canonical_inner(bound)),
            ),
            Type::Choice(v, br) => Type::Choice(
                *v,
                br.iter()
                    .map(|(l, t)| (l.clone(), t.canonical_inner(bound)))
                    .collect(),
            ),
            Type::Basic(_) | Type::Data(_) | Type::Skip | Type::Message(..) => self.clone(),
        }
    }

    /// Structural equality up to renaming of `rec` binders.
    pub fn alpha_eq(&self, other: &Type) -> bool {
        self.canonical() == other.canonical()
    }

    /// Rewrites every `;` into right-nested form.
    pub fn reassociate(&self) -> Type {
        match self {
            Type::Semi(a, b) => match a.as_ref() {
                Type::Semi(a1, a2) => {
                    Type::Semi(a1.clone(), Box::new(Type::Semi(a2.clone(), b.clone())))
                        .reassociate()
                }
                _ => Type::semi(a.reassociate(), b.reassociate()),
            },
            Type::Rec(x, body) => Type::Rec(x.clone(), Box::new(body.reassociate())),
            Type::Arrow(m, a, b) => Type::arrow(*m, a.reassociate(), b.reassociate()),
            Type::Pair(a, b) => Type::pair(a.reassociate(), b.reassociate()),
            Type::Choice(v, br) => Type::Choice(
                *v,
                br.iter()
                    .map(|(l, t)| (l.clone(), t.reassociate()))
                    .collect(),
            ),
            _ => self.clone(),
        }
    }
}

/// Picks a variant of `base` not contained in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut candidate: String = base.to_owned();
    while avoid.contains(&candidate) {
        candidate.push('\'');
    }
    candidate
}

/// A rank-1 polymorphic type: `forall a:K, b => T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheme {
    pub binders: Vec<(String, Kind)>,
    pub body: Type,
}

impl Scheme {
    pub fn mono(body: Type) -> Scheme {
        Scheme {
            binders: Vec::new(),
            body,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.binders.is_empty() {
            f.write_str("forall ")?;
            for (i, (x, k)) in self.binders.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}:{k}")?;
            }
            f.write_str(" => ")?;
        }
        write!(f, "{}", self.body)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    Int(i64),
    Bool(bool),
    Char(char),
    Unit,
}

impl Literal {
    pub fn basic_type(&self) -> BasicType {
        match self {
            Literal::Int(_) => BasicType::Int,
            Literal::Bool(_) => BasicType::Bool,
            Literal::Char(_) => BasicType::Char,
            Literal::Unit => BasicType::Unit,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Int(n) => write!(f, "{n}"),
            Literal::Bool(true) => f.write_str("True"),
            Literal::Bool(false) => f.write_str("False"),
            Literal::Char(c) => write!(f, "{c:?}"),
            Literal::Unit => f.write_str("()"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl Expr {
    pub fn new(kind: ExprKind, pos: Pos) -> Expr {
        Expr { kind, pos }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseBranch {
    pub constructor: String,
    pub params: Vec<String>,
    pub body: Expr,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchBranch {
    pub label: String,
    pub binder: String,
    pub body: Expr,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Lit(Literal),
    /// Term variables, top-level names, constructors and built-in operators.
    Var(String),
    Lam {
        mult: Multiplicity,
        param: String,
        annot: Option<Type>,
        body: Box<Expr>,
    },
    App(Box<Expr>, Box<Expr>),
    Pair(Box<Expr>, Box<Expr>),
    LetPair {
        fst: String,
        snd: String,
        bound: Box<Expr>,
        body: Box<Expr>,
    },
    Let {
        name: String,
        bound: Box<Expr>,
        body: Box<Expr>,
    },
    Case {
        scrutinee: Box<Expr>,
        branches: Vec<CaseBranch>,
    },
    If(Box<Expr>, Box<Expr>, Box<Expr>),
    TypeApp {
        name: String,
        args: Vec<Type>,
    },
    Fork(Box<Expr>),
    New(Type),
    Send {
        value: Box<Expr>,
        channel: Box<Expr>,
    },
    Receive(Box<Expr>),
    Select {
        label: String,
        channel: Box<Expr>,
    },
    Match {
        scrutinee: Box<Expr>,
        branches: Vec<MatchBranch>,
    },
}

/// `data T = C1 T11 .. | C2 ..`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DataDecl {
    pub constructors: Vec<(String, Vec<Type>)>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeAbbrev {
    pub body: Type,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub scheme: Scheme,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub params: Vec<String>,
    pub body: Expr,
    pub pos: Pos,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub type_abbrevs: BTreeMap<String, TypeAbbrev>,
    pub datatypes: BTreeMap<String, DataDecl>,
    pub signatures: BTreeMap<String, Signature>,
    pub definitions: BTreeMap<String, Definition>,
}

impl Program {
    pub const ENTRY: &'static str = "main";

    pub fn entry(&self) -> Option<&Definition> {
        self.definitions.get(Self::ENTRY)
    }
}
