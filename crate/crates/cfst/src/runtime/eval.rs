//! Call-by-value evaluation, strictly left to right.

use std::sync::Arc;

use super::channel::{new_channel, ChannelEnd, Payload};
use super::lower::{Globals, Term};
use super::sched::ThreadCtx;
use super::value::{Callee, Closure, Env, Value};
use super::RunError;

pub struct Interp {
    pub globals: Arc<Globals>,
}

fn internal<T>(msg: impl Into<String>) -> Result<T, RunError> {
    Err(RunError::Internal(msg.into()))
}

fn arith(msg: &str) -> RunError {
    RunError::Arithmetic(msg.to_string())
}

impl Interp {
    pub fn eval_global(&self, ctx: &mut ThreadCtx, name: &str) -> Result<Value, RunError> {
        let Some(def) = self.globals.defs.get(name) else {
            return internal(format!("no definition for `{name}`"));
        };
        if def.params.is_empty() {
            let body = def.body.clone();
            self.eval(ctx, &Env::default(), &body)
        } else {
            Ok(Value::Partial {
                callee: Callee::Global(name.into()),
                arity: def.params.len(),
                args: Arc::from([]),
            })
        }
    }

    fn channel(v: Value) -> Result<ChannelEnd, RunError> {
        match v {
            Value::Chan(c) => Ok(c),
            other => internal(format!("expected a channel, found {other}")),
        }
    }

    pub fn eval(&self, ctx: &mut ThreadCtx, env: &Env, t: &Term) -> Result<Value, RunError> {
        match t {
            Term::Lit(v) => Ok(v.clone()),
            Term::Local(x) => match env.get(x) {
                Some(v) => Ok(v.clone()),
                None => internal(format!("unbound variable `{x}`")),
            },
            Term::Global(x) => self.eval_global(ctx, x),
            Term::Con(c, 0) => Ok(Value::Con(c.clone(), Arc::from([]))),
            Term::Con(c, n) => Ok(Value::Partial {
                callee: Callee::Constructor(c.clone()),
                arity: *n,
                args: Arc::from([]),
            }),
            Term::Builtin(b) => Ok(Value::Partial {
                callee: Callee::Builtin(b.clone()),
                arity: if matches!(&**b, "not" | "negate") {
                    1
                } else {
                    2
                },
                args: Arc::from([]),
            }),
            Term::Lam(x, body) => Ok(Value::Closure(Arc::new(Closure {
                param: x.clone(),
                body: body.clone(),
                env: env.clone(),
            }))),
            Term::App(f, a) => {
                let f = self.eval(ctx, env, f)?;
                let a = self.eval(ctx, env, a)?;
                self.apply(ctx, f, a)
            }
            Term::Pair(a, b) => {
                let a = self.eval(ctx, env, a)?;
                let b = self.eval(ctx, env, b)?;
                Ok(Value::pair(a, b))
            }
            Term::LetPair(x, y, bound, body) => match self.eval(ctx, env, bound)? {
                Value::Pair(p) => {
                    let (a, b) = (*p).clone();
                    let env = env.bind(x.clone(), a).bind(y.clone(), b);
                    self.eval(ctx, &env, body)
                }
                other => internal(format!("expected a pair, found {other}")),
            },
            Term::Let(x, bound, body) => {
                let v = self.eval(ctx, env, bound)?;
                self.eval(ctx, &env.bind(x.clone(), v), body)
            }
            Term::Case(s, arms) => match self.eval(ctx, env, s)? {
                Value::Con(c, fields) => {
                    let Some((params, body)) = arms.get(&*c) else {
                        return internal(format!("no branch for constructor `{c}`"));
                    };
                    let mut env = env.clone();
                    for (x, v) in params.iter().zip(fields.iter()) {
                        env = env.bind(x.clone(), v.clone());
                    }
                    self.eval(ctx, &env, body)
                }
                other => internal(format!("expected a constructor, found {other}")),
            },
            Term::If(c, a, b) => match self.eval(ctx, env, c)? {
                Value::Bool(true) => self.eval(ctx, env, a),
                Value::Bool(false) => self.eval(ctx, env, b),
                other => internal(format!("expected a boolean, found {other}")),
            },
            Term::Fork(body) => {
                let globals = self.globals.clone();
                let env = env.clone();
                let body = body.clone();
                ctx.spawn(move |ctx| {
                    Interp { globals }.eval(ctx, &env, &body)?;
                    Ok(())
                });
                Ok(Value::Unit)
            }
            Term::New => {
                let (a, b) = new_channel();
                Ok(Value::pair(Value::Chan(a), Value::Chan(b)))
            }
            Term::Send(v, c, pos) => {
                let v = self.eval(ctx, env, v)?;
                let c = Self::channel(self.eval(ctx, env, c)?)?;
                c.send(ctx, Payload::Value(v), &format!("send at {pos}"))?;
                Ok(Value::Chan(c))
            }
            Term::Receive(c, pos) => {
                let c = Self::channel(self.eval(ctx, env, c)?)?;
                match c.receive(ctx, &format!("receive at {pos}"))? {
                    Payload::Value(v) => Ok(Value::pair(v, Value::Chan(c))),
                    Payload::Label(l) => {
                        internal(format!("received label `{l}` where a value was expected"))
                    }
                }
            }
            Term::Select(l, c, pos) => {
                let c = Self::channel(self.eval(ctx, env, c)?)?;
                c.send(ctx, Payload::Label(l.clone()), &format!("select at {pos}"))?;
                Ok(Value::Chan(c))
            }
            Term::Match(s, arms, pos) => {
                let c = Self::channel(self.eval(ctx, env, s)?)?;
                match c.receive(ctx, &format!("match at {pos}"))? {
                    Payload::Label(l) => match arms.get(&l) {
                        Some((x, body)) => {
                            let env = env.bind(x.clone(), Value::Chan(c));
                            self.eval(ctx, &env, body)
                        }
                        None => internal(format!("no branch for label `{l}`")),
                    },
                    Payload::Value(v) => {
                        internal(format!("received {v} where a label was expected"))
                    }
                }
            }
        }
    }

    pub fn apply(&self, ctx: &mut ThreadCtx, f: Value, a: Value) -> Result<Value, RunError> {
        match f {
            Value::Closure(c) => {
                let env = c.env.bind(c.param.clone(), a);
                self.eval(ctx, &env, &c.body)
            }
            Value::Partial {
                callee,
                arity,
                args,
            } => {
                let mut args = args.to_vec();
                args.push(a);
                if args.len() < arity {
                    return Ok(Value::Partial {
                        callee,
                        arity,
                        args: args.into(),
                    });
                }
                match callee {
                    Callee::Constructor(c) => Ok(Value::Con(c, args.into())),
                    Callee::Builtin(b) => builtin(&b, &args),
                    Callee::Global(g) => {
                        let def = &self.globals.defs[&*g];
                        let mut env = Env::default();
                        for (x, v) in def.params.iter().zip(args) {
                            env = env.bind(x.clone(), v);
                        }
                        let body = def.body.clone();
                        self.eval(ctx, &env, &body)
                    }
                }
            }
            other => internal(format!("cannot apply {other}")),
        }
    }
}

fn floor_div(a: i64, b: i64) -> Result<i64, RunError> {
    if b == 0 {
        return Err(arith("division by zero"));
    }
    let q = a.checked_div(b).ok_or_else(|| arith("integer overflow"))?;
    Ok(if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    })
}

fn floor_mod(a: i64, b: i64) -> Result<i64, RunError> {
    if b == 0 {
        return Err(arith("division by zero"));
    }
    let r = a.checked_rem(b).unwrap_or(0);
    Ok(if r != 0 && ((r < 0) != (b < 0)) {
        r + b
    } else {
        r
    })
}

/// Applies a built-in operator to all of its arguments.
pub fn builtin(name: &str, args: &[Value]) -> Result<Value, RunError> {
    use Value::{Bool, Int};
    let overflow = || arith("integer overflow");
    Ok(match (name, args) {
        ("(+)", [Int(a), Int(b)]) => Int(a.checked_add(*b).ok_or_else(overflow)?),
        ("(-)", [Int(a), Int(b)]) => Int(a.checked_sub(*b).ok_or_else(overflow)?),
        ("(*)", [Int(a), Int(b)]) => Int(a.checked_mul(*b).ok_or_else(overflow)?),
        ("(/)" | "div", [Int(a), Int(b)]) => Int(floor_div(*a, *b)?),
        ("mod", [Int(a), Int(b)]) => Int(floor_mod(*a, *b)?),
        ("(==)", [Int(a), Int(b)]) => Bool(a == b),
        ("(/=)", [Int(a), Int(b)]) => Bool(a != b),
        ("(<)", [Int(a), Int(b)]) => Bool(a < b),
        ("(<=)", [Int(a), Int(b)]) => Bool(a <= b),
        ("(>)", [Int(a), Int(b)]) => Bool(a > b),
        ("(>=)", [Int(a), Int(b)]) => Bool(a >= b),
        ("(&&)", [Bool(a), Bool(b)]) => Bool(*a && *b),
        ("(||)", [Bool(a), Bool(b)]) => Bool(*a || *b),
        ("not", [Bool(a)]) => Bool(!a),
        ("negate", [Int(a)]) => Int(a.checked_neg().ok_or_else(overflow)?),
        _ => return internal(format!("bad arguments to `{name}`")),
    })
}
