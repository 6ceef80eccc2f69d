//! Recursive descent parser.
//!
//! There is no layout rule. A token in column 1 starts a new top-level
//! declaration; inside a declaration, `case`/`match` branches are recognised
//! by their head (`Label binders ->`), optionally separated by commas.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::ast::*;
use super::lexer::{lex, Tok, Token};
use crate::diagnostic::{Diagnostic, Pos};

type PResult<T> = Result<T, Diagnostic>;

pub(crate) struct Parser {
    toks: Vec<Token>,
    at: usize,
    rec_scope: Vec<String>,
}

impl Parser {
    pub(crate) fn new(toks: Vec<Token>) -> Parser {
        Parser {
            toks,
            at: 0,
            rec_scope: Vec::new(),
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let i = (self.at + n).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> Diagnostic {
        Diagnostic::error(
            self.pos(),
            format!(
                "syntax error: expected {what}, found {}",
                self.peek().describe()
            ),
        )
    }

    pub(crate) fn expect_end(&self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn lower(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Lower(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn upper(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Upper(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn binder(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Lower(s) => {
                self.bump();
                Ok(s)
            }
            Tok::Underscore => {
                self.bump();
                Ok("_".to_owned())
            }
            _ => Err(self.unexpected(what)),
        }
    }

    // ----------------------------------------------------------------- types

    /// `T -> T`, `T -o T` (right associative, loosest) over [`Self::semi_type`].
    pub(crate) fn ty(&mut self) -> PResult<Type> {
        let lhs = self.semi_type()?;
        let mult = match self.peek() {
            Tok::Arrow => Multiplicity::Unrestricted,
            Tok::Lolli => Multiplicity::Linear,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.ty()?;
        Ok(Type::arrow(mult, lhs, rhs))
    }

    /// `S;T`, right associative.
    pub(crate) fn semi_type(&mut self) -> PResult<Type> {
        let lhs = self.type_atom()?;
        if self.eat(&Tok::Semi) {
            let rhs = self.semi_type()?;
            Ok(Type::semi(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn type_atom(&mut self) -> PResult<Type> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Upper(name) => {
                self.bump();
                Ok(match name.as_str() {
                    "Skip" => Type::Skip,
                    "Int" => Type::Basic(BasicType::Int),
                    "Bool" => Type::Basic(BasicType::Bool),
                    "Char" => Type::Basic(BasicType::Char),
                    "Unit" => Type::Basic(BasicType::Unit),
                    _ if self.rec_scope.contains(&name) => Type::Var(name),
                    _ => Type::Data(name),
                })
            }
            Tok::Lower(name) => {
                self.bump();
                Ok(Type::Var(name))
            }
            Tok::LParen => {
                self.bump();
                if self.eat(&Tok::RParen) {
                    return Ok(Type::Basic(BasicType::Unit));
                }
                let first = self.ty()?;
                if self.eat(&Tok::Comma) {
                    let second = self.ty()?;
                    self.expect(&Tok::RParen, "`)`")?;
                    Ok(Type::pair(first, second))
                } else {
                    self.expect(&Tok::RParen, "`)`")?;
                    Ok(first)
                }
            }
            Tok::Bang | Tok::Question => {
                let polarity = if self.bump() == Tok::Bang {
                    Polarity::Out
                } else {
                    Polarity::In
                };
                let payload = self.basic_payload()?;
                Ok(Type::Message(polarity, payload))
            }
            Tok::Plus | Tok::Amp => {
                let view = if self.bump() == Tok::Plus {
                    View::Internal
                } else {
                    View::External
                };
                self.choice_body(view, pos)
            }
            Tok::Rec => {
                self.bump();
                let var = match self.peek().clone() {
                    Tok::Lower(s) | Tok::Upper(s) => {
                        self.bump();
                        s
                    }
                    _ => return Err(self.unexpected("a recursion variable")),
                };
                self.expect(&Tok::Dot, "`.`")?;
                self.rec_scope.push(var.clone());
                let body = self.semi_type();
                self.rec_scope.pop();
                Ok(Type::rec(var, body?))
            }
            _ => Err(self.unexpected("a type")),
        }
    }

    fn basic_payload(&mut self) -> PResult<BasicType> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Upper(name) => {
                let b = match name.as_str() {
                    "Int" => BasicType::Int,
                    "Bool" => BasicType::Bool,
                    "Char" => BasicType::Char,
                    "Unit" => BasicType::Unit,
                    _ => {
                        return Err(Diagnostic::error(
                            pos,
                            format!("messages carry basic types only, found `{name}`"),
                        ))
                    }
                };
                self.bump();
                Ok(b)
            }
            Tok::LParen if *self.peek_at(1) == Tok::RParen => {
                self.bump();
                self.bump();
                Ok(BasicType::Unit)
            }
            _ => Err(self.unexpected("a basic type (Int, Bool, Char or ())")),
        }
    }

    fn choice_body(&mut self, view: View, pos: Pos) -> PResult<Type> {
        self.expect(&Tok::LBrace, "`{`")?;
        if self.eat(&Tok::RBrace) {
            return Err(Diagnostic::error(pos, "empty choice"));
        }
        let mut branches = BTreeMap::new();
        loop {
            let lpos = self.pos();
            let label = match self.peek().clone() {
                Tok::Upper(s) | Tok::Lower(s) => {
                    self.bump();
                    s
                }
                _ => return Err(self.unexpected("a choice label")),
            };
            self.expect(&Tok::Colon, "`:`")?;
            let t = self.ty()?;
            if branches.insert(label.clone(), t).is_some() {
                return Err(Diagnostic::error(
                    lpos,
                    format!("duplicate label `{label}` in choice"),
                ));
            }
            if self.eat(&Tok::Comma) {
                continue;
            }
            self.expect(&Tok::RBrace, "`,` or `}`")?;
            break;
        }
        Ok(Type::Choice(view, branches))
    }

    pub(crate) fn scheme(&mut self) -> PResult<Scheme> {
        if !self.eat(&Tok::Forall) {
            return Ok(Scheme::mono(self.ty()?));
        }
        let mut binders: Vec<(String, Kind)> = Vec::new();
        loop {
            let pos = self.pos();
            let name = self.lower("a type variable")?;
            let kind = if self.eat(&Tok::Colon) {
                let kpos = self.pos();
                let k = self.upper("a kind (SU, SL, TU or TL)")?;
                Kind::from_name(&k)
                    .ok_or_else(|| Diagnostic::error(kpos, format!("unknown kind `{k}`")))?
            } else {
                Kind::SL
            };
            if binders.iter().any(|(b, _)| *b == name) {
                return Err(Diagnostic::error(
                    pos,
                    format!("type variable `{name}` bound twice"),
                ));
            }
            binders.push((name, kind));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(&Tok::FatArrow, "`=>`")?;
        let body = self.ty()?;
        Ok(Scheme { binders, body })
    }

    // ----------------------------------------------------------- expressions

    pub(crate) fn expr(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        match self.peek() {
            Tok::Let => self.let_expr(),
            Tok::If => {
                self.bump();
                let c = self.expr()?;
                self.expect(&Tok::Then, "`then`")?;
                let t = self.expr()?;
                self.expect(&Tok::Else, "`else`")?;
                let e = self.expr()?;
                Ok(Expr::new(
                    ExprKind::If(Box::new(c), Box::new(t), Box::new(e)),
                    pos,
                ))
            }
            Tok::Case => self.case_expr(),
            Tok::Match => self.match_expr(),
            Tok::Backslash => self.lambda(),
            _ => self.or_expr(),
        }
    }

    fn let_expr(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        self.bump();
        let first = self.binder("a variable")?;
        let second = if self.eat(&Tok::Comma) {
            Some(self.binder("a variable")?)
        } else {
            None
        };
        self.expect(&Tok::Eq, "`=`")?;
        let bound = Box::new(self.expr()?);
        self.expect(&Tok::In, "`in`")?;
        let body = Box::new(self.expr()?);
        let kind = match second {
            Some(snd) => ExprKind::LetPair {
                fst: first,
                snd,
                bound,
                body,
            },
            None => ExprKind::Let {
                name: first,
                bound,
                body,
            },
        };
        Ok(Expr::new(kind, pos))
    }

    fn lambda(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        self.bump();
        let (param, annot) = if self.eat(&Tok::LParen) {
            let p = self.binder("a parameter")?;
            self.expect(&Tok::Colon, "`:`")?;
            let t = self.ty()?;
            self.expect(&Tok::RParen, "`)`")?;
            (p, Some(t))
        } else {
            (self.binder("a parameter")?, None)
        };
        let mult = match self.bump() {
            Tok::Arrow => Multiplicity::Unrestricted,
            Tok::Lolli => Multiplicity::Linear,
            _ => {
                self.at -= 1;
                return Err(self.unexpected("`->` or `-o`"));
            }
        };
        let body = self.expr()?;
        Ok(Expr::new(
            ExprKind::Lam {
                mult,
                param,
                annot,
                body: Box::new(body),
            },
            pos,
        ))
    }

    /// `Upper binder* ->` ahead?
    fn at_branch_head(&self) -> bool {
        if !matches!(self.peek(), Tok::Upper(_)) {
            return false;
        }
        let mut n = 1;
        loop {
            match self.peek_at(n) {
                Tok::Lower(_) | Tok::Underscore => n += 1,
                Tok::Arrow => return true,
                _ => return false,
            }
        }
    }

    fn case_expr(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        self.bump();
        let scrutinee = self.expr()?;
        self.expect(&Tok::Of, "`of`")?;
        let mut branches: Vec<CaseBranch> = Vec::new();
        loop {
            let bpos = self.pos();
            if !self.at_branch_head() {
                return Err(self.unexpected("a case branch `Constructor x1 .. xn -> e`"));
            }
            let constructor = self.upper("a constructor")?;
            let mut params = Vec::new();
            while *self.peek() != Tok::Arrow {
                params.push(self.binder("a pattern variable")?);
            }
            self.bump();
            let body = self.expr()?;
            if branches.iter().any(|b| b.constructor == constructor) {
                return Err(Diagnostic::error(
                    bpos,
                    format!("duplicate branch for constructor `{constructor}`"),
                ));
            }
            branches.push(CaseBranch {
                constructor,
                params,
                body,
                pos: bpos,
            });
            let comma = self.eat(&Tok::Comma);
            if !self.at_branch_head() {
                if comma {
                    return Err(self.unexpected("a case branch"));
                }
                break;
            }
        }
        Ok(Expr::new(
            ExprKind::Case {
                scrutinee: Box::new(scrutinee),
                branches,
            },
            pos,
        ))
    }

    fn match_expr(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        self.bump();
        let scrutinee = self.expr()?;
        self.expect(&Tok::With, "`with`")?;
        let mut branches: Vec<MatchBranch> = Vec::new();
        loop {
            let bpos = self.pos();
            if !self.at_branch_head() || *self.peek_at(2) != Tok::Arrow {
                return Err(self.unexpected("a match branch `Label c -> e`"));
            }
            let label = self.upper("a label")?;
            let binder = self.binder("a channel variable")?;
            self.bump();
            let body = self.expr()?;
            if branches.iter().any(|b| b.label == label) {
                return Err(Diagnostic::error(
                    bpos,
                    format!("duplicate branch for label `{label}`"),
                ));
            }
            branches.push(MatchBranch {
                label,
                binder,
                body,
                pos: bpos,
            });
            let comma = self.eat(&Tok::Comma);
            if !self.at_branch_head() {
                if comma {
                    return Err(self.unexpected("a match branch"));
                }
                break;
            }
        }
        Ok(Expr::new(
            ExprKind::Match {
                scrutinee: Box::new(scrutinee),
                branches,
            },
            pos,
        ))
    }

    fn binop(name: &str, lhs: Expr, rhs: Expr, pos: Pos) -> Expr {
        let op = Expr::new(ExprKind::Var(format!("({name})")), pos);
        let partial = Expr::new(ExprKind::App(Box::new(op), Box::new(lhs)), pos);
        Expr::new(ExprKind::App(Box::new(partial), Box::new(rhs)), pos)
    }

    fn or_expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.and_expr()?;
        while *self.peek() == Tok::OrOr {
            let pos = self.pos();
            self.bump();
            let rhs = self.and_expr()?;
            lhs = Self::binop("||", lhs, rhs, pos);
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.cmp_expr()?;
        while *self.peek() == Tok::AndAnd {
            let pos = self.pos();
            self.bump();
            let rhs = self.cmp_expr()?;
            lhs = Self::binop("&&", lhs, rhs, pos);
        }
        Ok(lhs)
    }

    fn cmp_expr(&mut self) -> PResult<Expr> {
        let lhs = self.add_expr()?;
        let op = match self.peek() {
            Tok::EqEq => "==",
            Tok::NotEq => "/=",
            Tok::Lt => "<",
            Tok::Le => "<=",
            Tok::Gt => ">",
            Tok::Ge => ">=",
            _ => return Ok(lhs),
        };
        let pos = self.pos();
        self.bump();
        let rhs = self.add_expr()?;
        Ok(Self::binop(op, lhs, rhs, pos))
    }

    fn add_expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.mul_expr()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => "+",
                Tok::Minus => "-",
                _ => return Ok(lhs),
            };
            let pos = self.pos();
            self.bump();
            let rhs = self.mul_expr()?;
            lhs = Self::binop(op, lhs, rhs, pos);
        }
    }

    fn mul_expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => "*",
                Tok::Slash => "/",
                _ => return Ok(lhs),
            };
            let pos = self.pos();
            self.bump();
            let rhs = self.unary()?;
            lhs = Self::binop(op, lhs, rhs, pos);
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        if self.eat(&Tok::Minus) {
            if let Tok::Int(n) = *self.peek() {
                self.bump();
                return Ok(Expr::new(ExprKind::Lit(Literal::Int(-n)), pos));
            }
            let operand = self.unary()?;
            let neg = Expr::new(ExprKind::Var("negate".to_owned()), pos);
            return Ok(Expr::new(
                ExprKind::App(Box::new(neg), Box::new(operand)),
                pos,
            ));
        }
        self.app_expr()
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Int(_) | Tok::Char(_) | Tok::Lower(_) | Tok::LParen => true,
            Tok::Upper(_) => !self.at_branch_head(),
            _ => false,
        }
    }

    fn app_expr(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Send => {
                self.bump();
                let value = self.atom()?;
                let channel = self.atom()?;
                return Ok(Expr::new(
                    ExprKind::Send {
                        value: Box::new(value),
                        channel: Box::new(channel),
                    },
                    pos,
                ));
            }
            Tok::Receive => {
                self.bump();
                let c = self.atom()?;
                return Ok(Expr::new(ExprKind::Receive(Box::new(c)), pos));
            }
            Tok::Select => {
                self.bump();
                let label = self.upper("a label")?;
                let channel = self.atom()?;
                return Ok(Expr::new(
                    ExprKind::Select {
                        label,
                        channel: Box::new(channel),
                    },
                    pos,
                ));
            }
            Tok::Fork => {
                self.bump();
                let e = self.atom()?;
                return Ok(Expr::new(ExprKind::Fork(Box::new(e)), pos));
            }
            Tok::New => {
                self.bump();
                let t = self.semi_type()?;
                return Ok(Expr::new(ExprKind::New(t), pos));
            }
            _ => {}
        }
        let mut e = self.atom()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            let apos = e.pos;
            e = Expr::new(ExprKind::App(Box::new(e), Box::new(arg)), apos);
        }
        Ok(e)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        let kind = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                ExprKind::Lit(Literal::Int(n))
            }
            Tok::Char(c) => {
                self.bump();
                ExprKind::Lit(Literal::Char(c))
            }
            Tok::Upper(name) => {
                self.bump();
                match name.as_str() {
                    "True" => ExprKind::Lit(Literal::Bool(true)),
                    "False" => ExprKind::Lit(Literal::Bool(false)),
                    _ => ExprKind::Var(name),
                }
            }
            Tok::Lower(name) => {
                self.bump();
                if self.eat(&Tok::LBracket) {
                    let mut args = Vec::new();
                    loop {
                        args.push(self.ty()?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(&Tok::RBracket, "`,` or `]`")?;
                    ExprKind::TypeApp { name, args }
                } else {
                    ExprKind::Var(name)
                }
            }
            Tok::LParen => {
                self.bump();
                if self.eat(&Tok::RParen) {
                    ExprKind::Lit(Literal::Unit)
                } else {
                    let first = self.expr()?;
                    if self.eat(&Tok::Comma) {
                        let second = self.expr()?;
                        self.expect(&Tok::RParen, "`)`")?;
                        ExprKind::Pair(Box::new(first), Box::new(second))
                    } else {
                        self.expect(&Tok::RParen, "`)`")?;
                        return Ok(first);
                    }
                }
            }
            _ => return Err(self.unexpected("an expression")),
        };
        Ok(Expr::new(kind, pos))
    }
}

// ------------------------------------------------------------------ programs

enum Decl {
    Abbrev(String, TypeAbbrev),
    Data(String, DataDecl),
    Sig(String, Signature),
    Def(String, Definition),
}

fn decl(p: &mut Parser) -> PResult<Decl> {
    let pos = p.pos();
    let d = match p.peek().clone() {
        Tok::TypeKw => {
            p.bump();
            let name = p.upper("a type name")?;
            p.expect(&Tok::Eq, "`=`")?;
            // self references stay `Data(name)` until resolution
            let body = p.ty()?;
            Decl::Abbrev(name, TypeAbbrev { body, pos })
        }
        Tok::Data => {
            p.bump();
            let name = p.upper("a datatype name")?;
            p.expect(&Tok::Eq, "`=`")?;
            let mut constructors: Vec<(String, Vec<Type>)> = Vec::new();
            loop {
                let cpos = p.pos();
                let con = p.upper("a constructor")?;
                let mut fields = Vec::new();
                while matches!(p.peek(), Tok::Upper(_) | Tok::Lower(_) | Tok::LParen) {
                    fields.push(p.type_atom()?);
                }
                if constructors.iter().any(|(c, _)| *c == con) {
                    return Err(Diagnostic::error(
                        cpos,
                        format!("duplicate constructor `{con}`"),
                    ));
                }
                constructors.push((con, fields));
                if !p.eat(&Tok::Bar) {
                    break;
                }
            }
            Decl::Data(name, DataDecl { constructors, pos })
        }
        Tok::Lower(name) => {
            p.bump();
            if p.eat(&Tok::Colon) || p.eat(&Tok::DoubleColon) {
                let scheme = p.scheme()?;
                Decl::Sig(name, Signature { scheme, pos })
            } else {
                let mut params = Vec::new();
                while *p.peek() != Tok::Eq {
                    params.push(p.binder("a parameter or `=`")?);
                }
                p.bump();
                let body = p.expr()?;
                Decl::Def(name, Definition { params, body, pos })
            }
        }
        _ => return Err(p.unexpected("a declaration")),
    };
    p.expect_end()?;
    Ok(d)
}

/// Splits the token stream into declarations: each starts with a token in
/// column 1.
fn chunks(tokens: Vec<Token>) -> Vec<Vec<Token>> {
    let mut out: Vec<Vec<Token>> = Vec::new();
    let mut eof = None;
    for t in tokens {
        if t.tok == Tok::Eof {
            eof = Some(t);
            break;
        }
        if t.pos.col == 1 || out.is_empty() {
            out.push(Vec::new());
        }
        out.last_mut().expect("chunk").push(t);
    }
    let eof = eof.expect("lexer emits Eof");
    let n = out.len();
    for i in 0..n {
        let end_pos = if i + 1 < n {
            out[i + 1][0].pos
        } else {
            eof.pos
        };
        out[i].push(Token {
            tok: Tok::Eof,
            pos: end_pos,
        });
    }
    out
}

pub fn parse_program(src: &str) -> Result<Program, Vec<Diagnostic>> {
    let tokens = lex(src).map_err(|d| alloc::vec![d])?;
    let mut diags = Vec::new();
    let mut prog = Program::default();
    let mut seen_types: BTreeMap<String, Pos> = BTreeMap::new();
    let mut seen_cons: BTreeMap<String, Pos> = BTreeMap::new();
    for chunk in chunks(tokens) {
        let mut p = Parser::new(chunk);
        let d = match decl(&mut p) {
            Ok(d) => d,
            Err(e) => {
                diags.push(e);
                continue;
            }
        };
        match d {
            Decl::Abbrev(name, ab) => {
                if let Some(prev) = seen_types.insert(name.clone(), ab.pos) {
                    diags.push(duplicate(ab.pos, "type", &name, prev));
                } else {
                    prog.type_abbrevs.insert(name, ab);
                }
            }
            Decl::Data(name, dd) => {
                if let Some(prev) = seen_types.insert(name.clone(), dd.pos) {
                    diags.push(duplicate(dd.pos, "type", &name, prev));
                    continue;
                }
                for (c, _) in &dd.constructors {
                    if let Some(prev) = seen_cons.insert(c.clone(), dd.pos) {
                        diags.push(duplicate(dd.pos, "constructor", c, prev));
                    }
                }
                prog.datatypes.insert(name, dd);
            }
            Decl::Sig(name, sig) => {
                if let Some(prev) = prog.signatures.get(&name) {
                    diags.push(duplicate(sig.pos, "signature for", &name, prev.pos));
                } else {
                    prog.signatures.insert(name, sig);
                }
            }
            Decl::Def(name, def) => {
                if let Some(prev) = prog.definitions.get(&name) {
                    diags.push(duplicate(def.pos, "definition of", &name, prev.pos));
                } else {
                    prog.definitions.insert(name, def);
                }
            }
        }
    }
    // A declaration that failed to parse would show up again as a missing
    // partner, so pairing is only checked for otherwise clean input.
    let clean = diags.is_empty();
    for (name, def) in prog.definitions.iter().filter(|_| clean) {
        if !prog.signatures.contains_key(name) {
            diags.push(Diagnostic::error(
                def.pos,
                format!("definition of `{name}` lacks a type signature"),
            ));
        }
    }
    for (name, sig) in prog.signatures.iter().filter(|_| clean) {
        if !prog.definitions.contains_key(name) {
            diags.push(Diagnostic::error(
                sig.pos,
                format!("signature for `{name}` lacks a definition"),
            ));
        }
    }
    if prog.entry().is_none() && diags.is_empty() {
        diags.push(Diagnostic::error(Pos::new(1, 1), "missing main"));
    }
    diags.sort_by_key(|d| d.pos);
    if diags.is_empty() {
        Ok(prog)
    } else {
        Err(diags)
    }
}

fn duplicate(pos: Pos, what: &str, name: &str, prev: Pos) -> Diagnostic {
    Diagnostic::error(
        pos,
        format!("duplicate {what} `{name}` (first declared at {prev})"),
    )
}

pub fn parse_type(src: &str) -> Result<Type, Diagnostic> {
    let tokens = lex(src)?;
    let mut p = Parser::new(tokens);
    let t = p.ty()?;
    p.expect_end()?;
    Ok(t)
}

pub fn parse_scheme(src: &str) -> Result<Scheme, Diagnostic> {
    let tokens = lex(src)?;
    let mut p = Parser::new(tokens);
    let s = p.scheme()?;
    p.expect_end()?;
    Ok(s)
}

pub fn parse_expr(src: &str) -> Result<Expr, Diagnostic> {
    let tokens = lex(src)?;
    let mut p = Parser::new(tokens);
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}
