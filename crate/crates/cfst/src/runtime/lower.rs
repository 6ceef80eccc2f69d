//! Lowering of checked programs into shared, type-erased terms that
//! threads can hold on to.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use cfst_core::diagnostic::Pos;
use cfst_core::typecheck::BUILTINS;
use cfst_core::{Expr, ExprKind, Literal, Program};

use super::value::Value;

#[derive(Debug)]
pub enum Term {
    Lit(Value),
    Local(Arc<str>),
    Global(Arc<str>),
    /// A constructor with its number of fields.
    Con(Arc<str>, usize),
    Builtin(Arc<str>),
    Lam(Arc<str>, Arc<Term>),
    App(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    LetPair(Arc<str>, Arc<str>, Box<Term>, Box<Term>),
    Let(Arc<str>, Box<Term>, Box<Term>),
    Case(Box<Term>, BTreeMap<String, (Vec<Arc<str>>, Term)>),
    If(Box<Term>, Box<Term>, Box<Term>),
    Fork(Arc<Term>),
    New,
    Send(Box<Term>, Box<Term>, Pos),
    Receive(Box<Term>, Pos),
    Select(String, Box<Term>, Pos),
    Match(Box<Term>, BTreeMap<String, (Arc<str>, Term)>, Pos),
}

#[derive(Debug)]
pub struct GlobalDef {
    pub params: Vec<Arc<str>>,
    pub body: Arc<Term>,
}

/// All top-level definitions, lowered.
#[derive(Debug, Default)]
pub struct Globals {
    pub defs: BTreeMap<String, GlobalDef>,
}

pub fn lower_program(p: &Program) -> Globals {
    let constructors: BTreeMap<&str, usize> = p
        .datatypes
        .values()
        .flat_map(|d| d.constructors.iter().map(|(c, f)| (c.as_str(), f.len())))
        .collect();
    let l = Lowerer {
        globals: p.definitions.keys().map(String::as_str).collect(),
        constructors,
    };
    let defs = p
        .definitions
        .iter()
        .map(|(name, d)| {
            let mut scope: Vec<&str> = d.params.iter().map(String::as_str).collect();
            let body = Arc::new(l.lower(&d.body, &mut scope));
            let params = d.params.iter().map(|x| Arc::from(x.as_str())).collect();
            (name.clone(), GlobalDef { params, body })
        })
        .collect();
    Globals { defs }
}

struct Lowerer<'a> {
    globals: BTreeSet<&'a str>,
    constructors: BTreeMap<&'a str, usize>,
}

impl<'a> Lowerer<'a> {
    fn name(&self, x: &str, scope: &[&str]) -> Term {
        if scope.contains(&x) {
            Term::Local(x.into())
        } else if self.globals.contains(x) {
            Term::Global(x.into())
        } else if let Some(&n) = self.constructors.get(x) {
            Term::Con(x.into(), n)
        } else if BUILTINS.contains(&x) {
            Term::Builtin(x.into())
        } else {
            // Unreachable for checked programs; fails at run time if reached.
            Term::Local(x.into())
        }
    }

    fn under<T>(
        &self,
        names: &[&'a str],
        scope: &mut Vec<&'a str>,
        f: impl FnOnce(&mut Vec<&'a str>) -> T,
    ) -> T {
        let n = scope.len();
        scope.extend_from_slice(names);
        let r = f(scope);
        scope.truncate(n);
        r
    }

    fn lower(&self, e: &'a Expr, scope: &mut Vec<&'a str>) -> Term {
        let b = |t: Term| Box::new(t);
        match &e.kind {
            ExprKind::Lit(l) => Term::Lit(match l {
                Literal::Int(n) => Value::Int(*n),
                Literal::Bool(x) => Value::Bool(*x),
                Literal::Char(c) => Value::Char(*c),
                Literal::Unit => Value::Unit,
            }),
            ExprKind::Var(x) | ExprKind::TypeApp { name: x, .. } => self.name(x, scope),
            ExprKind::Lam { param, body, .. } => {
                let body = self.under(&[param], scope, |s| self.lower(body, s));
                Term::Lam(param.as_str().into(), Arc::new(body))
            }
            ExprKind::App(f, a) => Term::App(b(self.lower(f, scope)), b(self.lower(a, scope))),
            ExprKind::Pair(x, y) => Term::Pair(b(self.lower(x, scope)), b(self.lower(y, scope))),
            ExprKind::LetPair {
                fst,
                snd,
                bound,
                body,
            } => {
                let bound = self.lower(bound, scope);
                let body = self.under(&[fst, snd], scope, |s| self.lower(body, s));
                Term::LetPair(fst.as_str().into(), snd.as_str().into(), b(bound), b(body))
            }
            ExprKind::Let { name, bound, body } => {
                let bound = self.lower(bound, scope);
                let body = self.under(&[name], scope, |s| self.lower(body, s));
                Term::Let(name.as_str().into(), b(bound), b(body))
            }
            ExprKind::Case {
                scrutinee,
                branches,
            } => {
                let s = self.lower(scrutinee, scope);
                let arms = branches
                    .iter()
                    .map(|br| {
                        let names: Vec<&str> = br.params.iter().map(String::as_str).collect();
                        let body = self.under(&names, scope, |s| self.lower(&br.body, s));
                        let params = br.params.iter().map(|x| Arc::from(x.as_str())).collect();
                        (br.constructor.clone(), (params, body))
                    })
                    .collect();
                Term::Case(b(s), arms)
            }
            ExprKind::If(c, t, f) => Term::If(
                b(self.lower(c, scope)),
                b(self.lower(t, scope)),
                b(self.lower(f, scope)),
            ),
            ExprKind::Fork(x) => Term::Fork(Arc::new(self.lower(x, scope))),
            ExprKind::New(_) => Term::New,
            ExprKind::Send { value, channel } => Term::Send(
                b(self.lower(value, scope)),
                b(self.lower(channel, scope)),
                e.pos,
            ),
            ExprKind::Receive(c) => Term::Receive(b(self.lower(c, scope)), e.pos),
            ExprKind::Select { label, channel } => {
                Term::Select(label.clone(), b(self.lower(channel, scope)), e.pos)
            }
            ExprKind::Match {
                scrutinee,
                branches,
            } => {
                let s = self.lower(scrutinee, scope);
                let arms = branches
                    .iter()
                    .map(|br| {
                        let body = self.under(&[&br.binder], scope, |s| self.lower(&br.body, s));
                        (br.label.clone(), (Arc::from(br.binder.as_str()), body))
                    })
                    .collect();
                Term::Match(b(s), arms, e.pos)
            }
        }
    }
}
