//! Algorithmic linear type checking.
//!
//! Programs are first resolved: type abbreviations are expanded (recursive
//! ones into `rec`), datatypes receive kinds and signatures are kind-checked.
//! Each definition is then checked against its signature with every other
//! signature in scope. Typing threads a context through subexpressions:
//! linear bindings are marked as consumed when used, must be consumed exactly
//! once, and all branches of a conditional construct must consume the same
//! linear bindings. Types are compared with [`crate::equiv`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::diagnostic::{Diagnostic, Pos};
use crate::dual::dual;
use crate::equiv::{decide, SearchConfig, Verdict};
use crate::kinds::{subkind, synth_kind, KindEnv};
use crate::syntax::ast::{
    BasicType, CaseBranch, DataDecl, Definition, Expr, ExprKind, Kind, MatchBranch, Multiplicity,
    Polarity, Program, Scheme, Type, TypeAbbrev, View,
};

type TResult<T> = Result<T, Diagnostic>;

fn err<T>(pos: Pos, msg: impl Into<String>) -> TResult<T> {
    Err(Diagnostic::error(pos, msg))
}

// ---------------------------------------------------------------- builtins

/// Built-in functions, named as they appear after operator desugaring.
pub const BUILTINS: &[&str] = &[
    "(+)", "(-)", "(*)", "(/)", "div", "mod", "(==)", "(/=)", "(<)", "(<=)", "(>)", "(>=)", "(&&)",
    "(||)", "not", "negate",
];

pub fn builtin_type(name: &str) -> Option<Type> {
    let int = || Type::Basic(BasicType::Int);
    let bool_ = || Type::Basic(BasicType::Bool);
    let un = Multiplicity::Unrestricted;
    let binary = |a: Type, r: Type| Type::arrow(un, a.clone(), Type::arrow(un, a, r));
    Some(match name {
        "(+)" | "(-)" | "(*)" | "(/)" | "div" | "mod" => binary(int(), int()),
        "(==)" | "(/=)" | "(<)" | "(<=)" | "(>)" | "(>=)" => binary(int(), bool_()),
        "(&&)" | "(||)" => binary(bool_(), bool_()),
        "not" => Type::arrow(un, bool_(), bool_()),
        "negate" => Type::arrow(un, int(), int()),
        _ => return None,
    })
}

// -------------------------------------------------------------- resolution

struct Resolver<'a> {
    abbrevs: &'a BTreeMap<String, TypeAbbrev>,
    datatypes: &'a BTreeMap<String, DataDecl>,
}

impl Resolver<'_> {
    fn resolve(&self, t: &Type, stack: &mut Vec<String>) -> Result<Type, String> {
        Ok(match t {
            Type::Data(name) => {
                if stack.contains(name) {
                    Type::Var(name.clone())
                } else if let Some(ab) = self.abbrevs.get(name) {
                    stack.push(name.clone());
                    let body = self.resolve(&ab.body, stack);
                    stack.pop();
                    let body = body?;
                    if body.occurs_free(name) {
                        Type::rec(name.clone(), body)
                    } else {
                        body
                    }
                } else if self.datatypes.contains_key(name) {
                    t.clone()
                } else {
                    return Err(format!("unknown type `{name}`"));
                }
            }
            Type::Basic(_) | Type::Skip | Type::Message(..) | Type::Var(_) => t.clone(),
            Type::Arrow(m, a, b) => {
                Type::arrow(*m, self.resolve(a, stack)?, self.resolve(b, stack)?)
            }
            Type::Pair(a, b) => Type::pair(self.resolve(a, stack)?, self.resolve(b, stack)?),
            Type::Semi(a, b) => Type::semi(self.resolve(a, stack)?, self.resolve(b, stack)?),
            Type::Choice(v, br) => {
                let mut out = BTreeMap::new();
                for (l, s) in br {
                    out.insert(l.clone(), self.resolve(s, stack)?);
                }
                Type::Choice(*v, out)
            }
            Type::Rec(x, body) => Type::rec(x.clone(), self.resolve(body, stack)?),
        })
    }
}

// ------------------------------------------------------------ global scope

/// Everything known at top level once a program has been resolved.
#[derive(Clone, Debug)]
pub struct GlobalEnv {
    /// Abbreviations with their expanded bodies.
    pub abbrevs: BTreeMap<String, Type>,
    /// Datatypes with their constructors in declaration order.
    pub datatypes: BTreeMap<String, Vec<(String, Vec<Type>)>>,
    /// Constructor name to its datatype and field types.
    pub constructors: BTreeMap<String, (String, Vec<Type>)>,
    pub schemes: BTreeMap<String, Scheme>,
    kinds: KindEnv,
    pub search: SearchConfig,
}

impl GlobalEnv {
    /// Resolves the declarations of `p`. Declarations that fail to resolve
    /// are reported and left out.
    pub fn new(p: &Program) -> (GlobalEnv, Vec<Diagnostic>) {
        let mut diags = Vec::new();
        let r = Resolver {
            abbrevs: &p.type_abbrevs,
            datatypes: &p.datatypes,
        };
        let mut env = GlobalEnv {
            abbrevs: BTreeMap::new(),
            datatypes: BTreeMap::new(),
            constructors: BTreeMap::new(),
            schemes: BTreeMap::new(),
            kinds: KindEnv::new(),
            search: SearchConfig::default(),
        };

        for (name, dd) in &p.datatypes {
            let mut cons = Vec::new();
            for (c, fields) in &dd.constructors {
                let mut resolved = Vec::new();
                for f in fields {
                    match r.resolve(f, &mut Vec::new()) {
                        Ok(t) => resolved.push(t),
                        Err(e) => diags.push(Diagnostic::error(dd.pos, e)),
                    }
                }
                cons.push((c.clone(), resolved));
            }
            env.datatypes.insert(name.clone(), cons);
        }
        env.compute_datatype_kinds();
        for (name, dd) in &p.datatypes {
            for (c, fields) in &env.datatypes[name] {
                for f in fields {
                    if let Err(e) = synth_kind(&mut env.kinds, f) {
                        diags.push(Diagnostic::error(
                            dd.pos,
                            format!("in a field of constructor `{c}`: {e}"),
                        ));
                    }
                }
                env.constructors
                    .insert(c.clone(), (name.clone(), fields.clone()));
            }
        }

        for (name, ab) in &p.type_abbrevs {
            match r.resolve(&Type::Data(name.clone()), &mut Vec::new()) {
                Ok(t) => match synth_kind(&mut env.kinds, &t) {
                    Ok(_) => {
                        env.abbrevs.insert(name.clone(), t);
                    }
                    Err(e) => {
                        diags.push(Diagnostic::error(ab.pos, format!("in type `{name}`: {e}")))
                    }
                },
                Err(e) => diags.push(Diagnostic::error(ab.pos, e)),
            }
        }

        for (name, sig) in &p.signatures {
            let body = match r.resolve(&sig.scheme.body, &mut Vec::new()) {
                Ok(t) => t,
                Err(e) => {
                    diags.push(Diagnostic::error(sig.pos, e));
                    continue;
                }
            };
            let mut kinds = env.kinds.clone();
            for (x, k) in &sig.scheme.binders {
                kinds.bind(x.clone(), *k);
            }
            if let Err(e) = synth_kind(&mut kinds, &body) {
                diags.push(Diagnostic::error(
                    sig.pos,
                    format!("in the signature of `{name}`: {e}"),
                ));
                continue;
            }
            env.schemes.insert(
                name.clone(),
                Scheme {
                    binders: sig.scheme.binders.clone(),
                    body,
                },
            );
        }
        (env, diags)
    }

    /// Datatypes are unrestricted unless some field is linear; the kinds are
    /// the least solution, since datatypes may refer to one another.
    fn compute_datatype_kinds(&mut self) {
        for name in self.datatypes.keys() {
            self.kinds.set_datatype(name.clone(), Kind::TU);
        }
        loop {
            let mut changed = false;
            for (name, cons) in &self.datatypes {
                let linear = cons
                    .iter()
                    .flat_map(|(_, f)| f)
                    .any(|t| synth_kind(&mut self.kinds.clone(), t).is_ok_and(|k| k.is_linear()));
                let k = if linear { Kind::TL } else { Kind::TU };
                if self.kinds.datatype(name) != Some(k) {
                    self.kinds.set_datatype(name.clone(), k);
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }

    pub fn kind_env(&self) -> KindEnv {
        self.kinds.clone()
    }

    /// Resolves a type written in the context of this program.
    pub fn resolve(&self, t: &Type) -> Result<Type, String> {
        self.resolve_in(t, &mut Vec::new())
    }

    fn resolve_in(&self, t: &Type, stack: &mut Vec<String>) -> Result<Type, String> {
        Ok(match t {
            Type::Data(name) => {
                if stack.contains(name) {
                    Type::Var(name.clone())
                } else if let Some(body) = self.abbrevs.get(name) {
                    body.clone()
                } else if self.datatypes.contains_key(name) {
                    t.clone()
                } else {
                    return Err(format!("unknown type `{name}`"));
                }
            }
            Type::Basic(_) | Type::Skip | Type::Message(..) | Type::Var(_) => t.clone(),
            Type::Arrow(m, a, b) => {
                Type::arrow(*m, self.resolve_in(a, stack)?, self.resolve_in(b, stack)?)
            }
            Type::Pair(a, b) => Type::pair(self.resolve_in(a, stack)?, self.resolve_in(b, stack)?),
            Type::Semi(a, b) => Type::semi(self.resolve_in(a, stack)?, self.resolve_in(b, stack)?),
            Type::Choice(v, br) => {
                let mut out = BTreeMap::new();
                for (l, s) in br {
                    out.insert(l.clone(), self.resolve_in(s, stack)?);
                }
                Type::Choice(*v, out)
            }
            Type::Rec(x, body) => Type::rec(x.clone(), self.resolve_in(body, stack)?),
        })
    }

    /// The curried type of a constructor. Once a linear field has been
    /// supplied the partial application is itself linear.
    pub fn constructor_type(&self, name: &str) -> Option<Type> {
        let (data, fields) = self.constructors.get(name)?;
        let mut kinds = self.kinds.clone();
        let linear: Vec<bool> = fields
            .iter()
            .map(|f| synth_kind(&mut kinds, f).is_ok_and(|k| k.is_linear()))
            .collect();
        let mut t = Type::Data(data.clone());
        for i in (0..fields.len()).rev() {
            let m = if linear[..i].iter().any(|&l| l) {
                Multiplicity::Linear
            } else {
                Multiplicity::Unrestricted
            };
            t = Type::arrow(m, fields[i].clone(), t);
        }
        Some(t)
    }

    /// One line per signature: `name : scheme`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (name, s) in &self.schemes {
            out.push_str(&format!("{name} : {s}\n"));
        }
        out
    }
}

/// Instantiates a scheme simultaneously with the given arguments.
pub fn instantiate(s: &Scheme, args: &[Type]) -> Type {
    let mut t = s.body.clone();
    for (i, (x, _)) in s.binders.iter().enumerate() {
        t = t.subst(x, &Type::Var(format!("#{i}")));
    }
    for (i, a) in args.iter().enumerate() {
        t = t.subst(&format!("#{i}"), a);
    }
    t
}

// ------------------------------------------------------------ program check

/// Checks a whole program. Empty exactly when the program is well typed.
pub fn check_program(p: &Program) -> Vec<Diagnostic> {
    check_program_env(p).1
}

/// Like [`check_program`], also returning the resolved global scope.
pub fn check_program_env(p: &Program) -> (GlobalEnv, Vec<Diagnostic>) {
    let (env, mut diags) = GlobalEnv::new(p);
    for (name, def) in &p.definitions {
        if !env.schemes.contains_key(name) {
            if !p.signatures.contains_key(name) {
                diags.push(Diagnostic::error(
                    def.pos,
                    format!("definition of `{name}` lacks a type signature"),
                ));
            }
            continue;
        }
        if let Err(d) = check_definition(&env, name, def) {
            diags.push(d);
        }
    }
    match (p.entry(), env.schemes.get(Program::ENTRY)) {
        (None, _) => diags.push(Diagnostic::error(Pos::new(1, 1), "missing main")),
        (Some(def), Some(s)) => {
            let mut kinds = env.kind_env();
            let session = synth_kind(&mut kinds, &s.body).is_ok_and(|k| k.is_session());
            if !s.binders.is_empty() || session || matches!(s.body, Type::Arrow(..)) {
                diags.push(Diagnostic::error(
                    def.pos,
                    format!(
                        "`main` must have a non-function, non-session type, but has `{}`",
                        s
                    ),
                ));
            }
        }
        (Some(_), None) => {}
    }
    diags.sort_by_key(|d| d.pos);
    (env, diags)
}

/// Checks one definition against its signature.
pub fn check_definition(env: &GlobalEnv, name: &str, def: &Definition) -> TResult<()> {
    let scheme = &env.schemes[name];
    let mut kinds = env.kind_env();
    for (x, k) in &scheme.binders {
        kinds.bind(x.clone(), *k);
    }
    let mut c = Checker {
        env,
        kinds,
        ctx: TypingCtx::default(),
    };
    let mut t = scheme.body.clone();
    let mut marks = Vec::new();
    for p in &def.params {
        match t {
            Type::Arrow(_, a, b) => {
                marks.push(c.bind(p, *a, def.pos)?);
                t = *b;
            }
            _ => {
                return err(
                    def.pos,
                    format!(
                        "`{name}` has {} parameters but its type `{}` takes fewer arguments",
                        def.params.len(),
                        scheme.body
                    ),
                )
            }
        }
    }
    c.check(&def.body, &t)?;
    for m in marks.into_iter().rev() {
        c.unbind(m, def.pos)?;
    }
    Ok(())
}

// --------------------------------------------------------------- contexts

#[derive(Clone, Debug)]
struct Entry {
    name: String,
    ty: Type,
    linear: bool,
    consumed: bool,
}

/// Term variables in scope. Linear entries are marked when consumed.
#[derive(Clone, Debug, Default)]
pub struct TypingCtx {
    entries: Vec<Entry>,
}

impl TypingCtx {
    fn consumed(&self) -> BTreeSet<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.linear && e.consumed)
            .map(|(i, _)| i)
            .collect()
    }

    fn names(&self, ix: &BTreeSet<usize>) -> String {
        let names: Vec<String> = ix
            .iter()
            .map(|&i| format!("`{}`", self.entries[i].name))
            .collect();
        if names.is_empty() {
            "none".to_string()
        } else {
            names.join(", ")
        }
    }
}

/// Where a binding lives, so it can be checked for use when leaving scope.
#[derive(Clone, Copy, Debug)]
struct Mark(Option<usize>);

/// The head of a session type under the laws of `Skip`, `;` and unfolding.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Head {
    Skip,
    Msg(Polarity, BasicType, Type),
    /// Branches with the continuation already pushed inside.
    Choice(View, BTreeMap<String, Type>),
    Var(String, Type),
}

fn then(a: Type, b: Type) -> Type {
    match (a, b) {
        (Type::Skip, b) => b,
        (a, Type::Skip) => a,
        (a, b) => Type::semi(a, b),
    }
}

fn head(t: &Type) -> Option<Head> {
    let mut cur = t.clone();
    let mut cont = Type::Skip;
    for _ in 0..10_000 {
        match cur {
            Type::Skip => {
                if cont == Type::Skip {
                    return Some(Head::Skip);
                }
                cur = core::mem::replace(&mut cont, Type::Skip);
            }
            Type::Message(p, b) => return Some(Head::Msg(p, b, cont)),
            Type::Choice(v, br) => {
                return Some(Head::Choice(
                    v,
                    br.into_iter()
                        .map(|(l, s)| (l, then(s, cont.clone())))
                        .collect(),
                ))
            }
            Type::Semi(a, b) => {
                cont = then(*b, cont);
                cur = *a;
            }
            Type::Rec(..) => cur = cur.unfold(),
            Type::Var(x) => return Some(Head::Var(x, cont)),
            Type::Basic(_) | Type::Arrow(..) | Type::Pair(..) | Type::Data(_) => return None,
        }
    }
    None
}

// ---------------------------------------------------------------- checker

struct Checker<'a> {
    env: &'a GlobalEnv,
    kinds: KindEnv,
    ctx: TypingCtx,
}

impl Checker<'_> {
    fn kind(&mut self, t: &Type, pos: Pos) -> TResult<Kind> {
        synth_kind(&mut self.kinds, t).map_err(|e| Diagnostic::error(pos, e.to_string()))
    }

    fn resolve(&mut self, t: &Type, pos: Pos) -> TResult<Type> {
        let t = self.env.resolve(t).map_err(|e| Diagnostic::error(pos, e))?;
        self.kind(&t, pos)?;
        Ok(t)
    }

    fn bind(&mut self, name: &str, ty: Type, pos: Pos) -> TResult<Mark> {
        let linear = self.kind(&ty, pos)?.is_linear();
        if name == "_" {
            if linear && !self.droppable(&ty, pos)? {
                return err(pos, format!("cannot discard a value of linear type `{ty}`"));
            }
            return Ok(Mark(None));
        }
        if let Some(e) = self.ctx.entries.iter().rev().find(|e| e.name == name) {
            if e.linear && !e.consumed {
                return err(
                    pos,
                    format!(
                        "`{name}` shadows a linear variable of type `{}` that is still unused",
                        e.ty
                    ),
                );
            }
        }
        self.ctx.entries.push(Entry {
            name: name.into(),
            ty,
            linear,
            consumed: false,
        });
        Ok(Mark(Some(self.ctx.entries.len() - 1)))
    }

    fn unbind(&mut self, m: Mark, pos: Pos) -> TResult<()> {
        let Mark(Some(i)) = m else { return Ok(()) };
        debug_assert_eq!(i + 1, self.ctx.entries.len());
        let e = self.ctx.entries.pop().expect("binding in scope");
        if e.linear && !e.consumed {
            return err(
                pos,
                format!(
                    "linear variable `{}` of type `{}` is never used",
                    e.name, e.ty
                ),
            );
        }
        Ok(())
    }

    /// Unrestricted values, and sessions that are already finished.
    fn droppable(&mut self, t: &Type, pos: Pos) -> TResult<bool> {
        let k = self.kind(t, pos)?;
        if !k.is_linear() {
            return Ok(true);
        }
        Ok(k.is_session() && self.equivalent(t, &Type::Skip) == Verdict::Equivalent)
    }

    fn equivalent(&mut self, a: &Type, b: &Type) -> Verdict {
        decide(a, b, &mut self.kinds, &self.env.search).verdict
    }

    fn expect_type(&mut self, found: &Type, expected: &Type, pos: Pos) -> TResult<()> {
        match self.equivalent(found, expected) {
            Verdict::Equivalent => Ok(()),
            Verdict::NotEquivalent => err(
                pos,
                format!("expected type `{expected}`, found `{found}`"),
            ),
            Verdict::Inconclusive => err(
                pos,
                format!(
                    "could not decide within the search budget whether `{found}` and `{expected}` are equivalent"
                ),
            ),
        }
    }

    fn var(&mut self, name: &str, pos: Pos) -> TResult<Type> {
        if let Some(e) = self.ctx.entries.iter_mut().rev().find(|e| e.name == name) {
            if e.linear {
                if e.consumed {
                    return err(
                        pos,
                        format!("linear variable `{name}` is used more than once"),
                    );
                }
                e.consumed = true;
            }
            return Ok(e.ty.clone());
        }
        if let Some(s) = self.env.schemes.get(name) {
            if !s.binders.is_empty() {
                return err(
                    pos,
                    format!("`{name}` is polymorphic (`{s}`); supply its type arguments as `{name}[..]`"),
                );
            }
            return Ok(s.body.clone());
        }
        if let Some(t) = self.env.constructor_type(name) {
            return Ok(t);
        }
        if let Some(t) = builtin_type(name) {
            return Ok(t);
        }
        err(pos, format!("unbound variable `{name}`"))
    }

    fn linear_live(&self) -> BTreeSet<usize> {
        self.ctx
            .entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.linear && !e.consumed)
            .map(|(i, _)| i)
            .collect()
    }

    fn lambda(
        &mut self,
        mult: Multiplicity,
        param: &str,
        param_ty: Type,
        body: &Expr,
        expected: Option<&Type>,
        pos: Pos,
    ) -> TResult<Type> {
        let live = self.linear_live();
        let m = self.bind(param, param_ty, pos)?;
        let t = match expected {
            Some(t) => {
                self.check(body, t)?;
                t.clone()
            }
            None => self.synth(body)?,
        };
        self.unbind(m, pos)?;
        if mult == Multiplicity::Unrestricted {
            if let Some(&i) = live.iter().find(|&&i| self.ctx.entries[i].consumed) {
                return err(
                    pos,
                    format!(
                        "unrestricted function captures linear variable `{}`; use `-o`",
                        self.ctx.entries[i].name
                    ),
                );
            }
        }
        Ok(t)
    }

    /// Runs each branch from the same context; all must consume the same
    /// linear bindings. In synthesis mode the branch types must agree.
    fn branches<B>(
        &mut self,
        items: &[B],
        expected: Option<&Type>,
        pos_of: impl Fn(&B) -> Pos,
        mut run: impl FnMut(&mut Self, &B, Option<&Type>) -> TResult<Type>,
    ) -> TResult<Type> {
        let start = self.ctx.clone();
        let mut first: Option<(Type, TypingCtx, BTreeSet<usize>)> = None;
        for b in items {
            self.ctx = start.clone();
            let t = run(self, b, expected)?;
            let used = self.ctx.consumed();
            match &first {
                None => first = Some((t, self.ctx.clone(), used)),
                Some((t0, _, used0)) => {
                    if &used != used0 {
                        let extra: BTreeSet<usize> =
                            used.symmetric_difference(used0).copied().collect();
                        return err(
                            pos_of(b),
                            format!(
                                "this branch and the first one consume different linear variables ({})",
                                self.ctx.names(&extra)
                            ),
                        );
                    }
                    if expected.is_none() {
                        let t0 = t0.clone();
                        self.expect_type(&t, &t0, pos_of(b))?;
                    }
                }
            }
        }
        let (t, ctx, _) = first.expect("at least one branch");
        self.ctx = ctx;
        Ok(t)
    }

    fn check(&mut self, e: &Expr, expected: &Type) -> TResult<()> {
        match &e.kind {
            ExprKind::Lam {
                mult,
                param,
                annot,
                body,
            } => {
                let Type::Arrow(m, dom, cod) = expected else {
                    return err(
                        e.pos,
                        format!("expected type `{expected}`, found a function"),
                    );
                };
                if *mult == Multiplicity::Linear && *m == Multiplicity::Unrestricted {
                    return err(
                        e.pos,
                        format!("expected an unrestricted function of type `{expected}`, found a linear one"),
                    );
                }
                if let Some(a) = annot {
                    let a = self.resolve(a, e.pos)?;
                    self.expect_type(&a, dom, e.pos)?;
                }
                self.lambda(*m, param, (**dom).clone(), body, Some(cod), e.pos)?;
                Ok(())
            }
            ExprKind::Pair(a, b) => match expected {
                Type::Pair(ta, tb) => {
                    self.check(a, ta)?;
                    self.check(b, tb)
                }
                _ => err(e.pos, format!("expected type `{expected}`, found a pair")),
            },
            ExprKind::If(c, t, f) => {
                self.check(c, &Type::Basic(BasicType::Bool))?;
                let arms = [&**t, &**f];
                self.branches(
                    &arms,
                    Some(expected),
                    |x| x.pos,
                    |s, x, exp| {
                        s.check(x, exp.expect("check mode"))?;
                        Ok(exp.expect("check mode").clone())
                    },
                )?;
                Ok(())
            }
            ExprKind::Let { name, bound, body } => {
                let t = self.synth(bound)?;
                let m = self.bind(name, t, e.pos)?;
                self.check(body, expected)?;
                self.unbind(m, e.pos)
            }
            ExprKind::LetPair {
                fst,
                snd,
                bound,
                body,
            } => {
                let (m1, m2) = self.let_pair(fst, snd, bound, e.pos)?;
                self.check(body, expected)?;
                self.unbind(m2, e.pos)?;
                self.unbind(m1, e.pos)
            }
            ExprKind::Case {
                scrutinee,
                branches,
            } => {
                self.case(scrutinee, branches, Some(expected), e.pos)?;
                Ok(())
            }
            ExprKind::Match {
                scrutinee,
                branches,
            } => {
                self.match_(scrutinee, branches, Some(expected), e.pos)?;
                Ok(())
            }
            _ => {
                let t = self.synth(e)?;
                self.expect_type(&t, expected, e.pos)
            }
        }
    }

    fn let_pair(&mut self, fst: &str, snd: &str, bound: &Expr, pos: Pos) -> TResult<(Mark, Mark)> {
        let t = self.synth(bound)?;
        let Type::Pair(a, b) = t else {
            return err(bound.pos, format!("expected a pair, found type `{t}`"));
        };
        let m1 = self.bind(fst, *a, pos)?;
        let m2 = self.bind(snd, *b, pos)?;
        Ok((m1, m2))
    }

    fn case(
        &mut self,
        scrutinee: &Expr,
        branches: &[CaseBranch],
        expected: Option<&Type>,
        pos: Pos,
    ) -> TResult<Type> {
        let t = self.synth(scrutinee)?;
        let Type::Data(d) = &t else {
            return err(
                scrutinee.pos,
                format!("`case` needs a value of a datatype, found type `{t}`"),
            );
        };
        let cons = self.env.datatypes[d].clone();
        for b in branches {
            match cons.iter().find(|(c, _)| *c == b.constructor) {
                None => {
                    return err(
                        b.pos,
                        format!("`{}` is not a constructor of `{d}`", b.constructor),
                    )
                }
                Some((c, fields)) if fields.len() != b.params.len() => {
                    return err(
                        b.pos,
                        format!(
                            "constructor `{c}` has {} fields but the pattern binds {}",
                            fields.len(),
                            b.params.len()
                        ),
                    )
                }
                Some(_) => {}
            }
        }
        if let Some((c, _)) = cons
            .iter()
            .find(|(c, _)| !branches.iter().any(|b| b.constructor == *c))
        {
            return err(pos, format!("non-exhaustive `case`: no branch for `{c}`"));
        }
        self.branches(
            branches,
            expected,
            |b| b.pos,
            |s, b, exp| {
                let fields = &cons
                    .iter()
                    .find(|(c, _)| *c == b.constructor)
                    .expect("checked")
                    .1;
                let mut marks = Vec::new();
                for (x, ft) in b.params.iter().zip(fields) {
                    marks.push(s.bind(x, ft.clone(), b.pos)?);
                }
                let t = s.body(&b.body, exp)?;
                for m in marks.into_iter().rev() {
                    s.unbind(m, b.pos)?;
                }
                Ok(t)
            },
        )
    }

    fn match_(
        &mut self,
        scrutinee: &Expr,
        branches: &[MatchBranch],
        expected: Option<&Type>,
        pos: Pos,
    ) -> TResult<Type> {
        let t = self.synth(scrutinee)?;
        let choices = match head(&t) {
            Some(Head::Choice(View::External, br)) => br,
            _ => {
                return err(
                    scrutinee.pos,
                    format!("`match` needs a channel offering an external choice `&{{..}}`, found type `{t}`"),
                )
            }
        };
        for b in branches {
            if !choices.contains_key(&b.label) {
                return err(
                    b.pos,
                    format!("label `{}` is not offered by type `{t}`", b.label),
                );
            }
        }
        if let Some(l) = choices
            .keys()
            .find(|l| !branches.iter().any(|b| b.label == **l))
        {
            return err(
                pos,
                format!("non-exhaustive `match`: no branch for label `{l}`"),
            );
        }
        self.branches(
            branches,
            expected,
            |b| b.pos,
            |s, b, exp| {
                let m = s.bind(&b.binder, choices[&b.label].clone(), b.pos)?;
                let t = s.body(&b.body, exp)?;
                s.unbind(m, b.pos)?;
                Ok(t)
            },
        )
    }

    fn body(&mut self, e: &Expr, expected: Option<&Type>) -> TResult<Type> {
        match expected {
            Some(t) => {
                self.check(e, t)?;
                Ok(t.clone())
            }
            None => self.synth(e),
        }
    }

    fn session_head(&mut self, channel: &Expr, op: &str) -> TResult<(Type, Head)> {
        let t = self.synth(channel)?;
        let session = self.kind(&t, channel.pos)?.is_session();
        match head(&t) {
            Some(h) if session => Ok((t, h)),
            _ => err(
                channel.pos,
                format!("`{op}` needs a channel, found type `{t}`"),
            ),
        }
    }

    fn synth(&mut self, e: &Expr) -> TResult<Type> {
        let pos = e.pos;
        match &e.kind {
            ExprKind::Lit(l) => Ok(Type::Basic(l.basic_type())),
            ExprKind::Var(x) => self.var(x, pos),
            ExprKind::Lam {
                mult,
                param,
                annot,
                body,
            } => {
                let Some(a) = annot else {
                    return err(
                        pos,
                        format!("cannot infer the type of parameter `{param}`; write `\\({param} : T) -> ..`"),
                    );
                };
                let a = self.resolve(a, pos)?;
                let cod = self.lambda(*mult, param, a.clone(), body, None, pos)?;
                Ok(Type::arrow(*mult, a, cod))
            }
            ExprKind::App(f, a) => {
                let ft = self.synth(f)?;
                let Type::Arrow(_, dom, cod) = ft else {
                    return err(
                        f.pos,
                        format!("expected a function, found an expression of type `{ft}`"),
                    );
                };
                self.check(a, &dom)?;
                Ok(*cod)
            }
            ExprKind::Pair(a, b) => {
                let ta = self.synth(a)?;
                let tb = self.synth(b)?;
                Ok(Type::pair(ta, tb))
            }
            ExprKind::LetPair {
                fst,
                snd,
                bound,
                body,
            } => {
                let (m1, m2) = self.let_pair(fst, snd, bound, pos)?;
                let t = self.synth(body)?;
                self.unbind(m2, pos)?;
                self.unbind(m1, pos)?;
                Ok(t)
            }
            ExprKind::Let { name, bound, body } => {
                let t = self.synth(bound)?;
                let m = self.bind(name, t, pos)?;
                let t = self.synth(body)?;
                self.unbind(m, pos)?;
                Ok(t)
            }
            ExprKind::Case {
                scrutinee,
                branches,
            } => self.case(scrutinee, branches, None, pos),
            ExprKind::If(c, t, f) => {
                self.check(c, &Type::Basic(BasicType::Bool))?;
                let arms = [&**t, &**f];
                self.branches(&arms, None, |x| x.pos, |s, x, _| s.synth(x))
            }
            ExprKind::TypeApp { name, args } => {
                if self.ctx.entries.iter().any(|en| en.name == *name) {
                    return err(
                        pos,
                        format!("type arguments can only be given to top-level functions, and `{name}` is local"),
                    );
                }
                let Some(s) = self.env.schemes.get(name).cloned() else {
                    return err(pos, format!("unknown function `{name}`"));
                };
                if s.binders.len() != args.len() {
                    return err(
                        pos,
                        format!(
                            "`{name}` expects {} type argument(s), found {}",
                            s.binders.len(),
                            args.len()
                        ),
                    );
                }
                let mut resolved = Vec::new();
                for ((x, bound), a) in s.binders.iter().zip(args) {
                    let a = self.resolve(a, pos)?;
                    let k = self.kind(&a, pos)?;
                    if !subkind(k, *bound) {
                        return err(
                            pos,
                            format!("type argument `{a}` for `{x}` has kind {k}, which is not a subkind of {bound}"),
                        );
                    }
                    resolved.push(a);
                }
                Ok(instantiate(&s, &resolved))
            }
            ExprKind::Fork(body) => {
                let t = self.synth(body)?;
                if !self.droppable(&t, body.pos)? {
                    return err(
                        body.pos,
                        format!("a forked expression must have an unrestricted type, found `{t}`"),
                    );
                }
                Ok(Type::Basic(BasicType::Unit))
            }
            ExprKind::New(s) => {
                let s = self.resolve(s, pos)?;
                if !self.kind(&s, pos)?.is_session() {
                    return err(pos, format!("`new` needs a session type, found `{s}`"));
                }
                if let Some(x) = s.free_vars().into_iter().next() {
                    return err(
                        pos,
                        format!("`new` needs a closed session type, but `{s}` mentions `{x}`"),
                    );
                }
                let d = dual(&s);
                Ok(Type::pair(s, d))
            }
            ExprKind::Send { value, channel } => {
                let (t, h) = self.session_head(channel, "send")?;
                match h {
                    Head::Msg(Polarity::Out, b, cont) => {
                        self.check(value, &Type::Basic(b))?;
                        Ok(cont)
                    }
                    _ => err(
                        channel.pos,
                        format!("`send` needs a channel ready to output `!B`, found type `{t}`"),
                    ),
                }
            }
            ExprKind::Receive(channel) => {
                let (t, h) = self.session_head(channel, "receive")?;
                match h {
                    Head::Msg(Polarity::In, b, cont) => Ok(Type::pair(Type::Basic(b), cont)),
                    _ => err(
                        channel.pos,
                        format!("`receive` needs a channel ready to input `?B`, found type `{t}`"),
                    ),
                }
            }
            ExprKind::Select { label, channel } => {
                let (t, h) = self.session_head(channel, "select")?;
                match h {
                    Head::Choice(View::Internal, mut br) => match br.remove(label) {
                        Some(s) => Ok(s),
                        None => err(
                            pos,
                            format!("label `{label}` is not offered by type `{t}`"),
                        ),
                    },
                    _ => err(
                        channel.pos,
                        format!("`select` needs a channel offering an internal choice `+{{..}}`, found type `{t}`"),
                    ),
                }
            }
            ExprKind::Match {
                scrutinee,
                branches,
            } => self.match_(scrutinee, branches, None, pos),
        }
    }
}

/// Synthesises the type of a closed expression in the scope of `env`.
/// Any linear value it leaves unused is reported.
pub fn synth_closed(env: &GlobalEnv, e: &Expr) -> TResult<Type> {
    let mut c = Checker {
        env,
        kinds: env.kind_env(),
        ctx: TypingCtx::default(),
    };
    c.synth(e)
}
