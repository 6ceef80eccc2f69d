use std::fmt;
use std::sync::Arc;

use super::channel::ChannelEnd;
use super::lower::Term;

/// Variables in scope at run time, innermost first.
#[derive(Clone, Debug, Default)]
pub struct Env(Option<Arc<Frame>>);

#[derive(Debug)]
struct Frame {
    name: Arc<str>,
    value: Value,
    next: Env,
}

impl Env {
    pub fn bind(&self, name: Arc<str>, value: Value) -> Env {
        if &*name == "_" {
            return self.clone();
        }
        Env(Some(Arc::new(Frame {
            name,
            value,
            next: self.clone(),
        })))
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        let mut cur = &self.0;
        while let Some(f) = cur {
            if &*f.name == name {
                return Some(&f.value);
            }
            cur = &f.next.0;
        }
        None
    }
}

/// Something that becomes a call once enough arguments arrive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Callee {
    Global(Arc<str>),
    Constructor(Arc<str>),
    Builtin(Arc<str>),
}

#[derive(Debug)]
pub struct Closure {
    pub param: Arc<str>,
    pub body: Arc<Term>,
    pub env: Env,
}

#[derive(Clone, Debug)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Char(char),
    Unit,
    Pair(Arc<(Value, Value)>),
    Con(Arc<str>, Arc<[Value]>),
    Closure(Arc<Closure>),
    Partial {
        callee: Callee,
        arity: usize,
        args: Arc<[Value]>,
    },
    Chan(ChannelEnd),
}

impl Value {
    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Arc::new((a, b)))
    }

    fn atomic(&self) -> bool {
        match self {
            Value::Int(n) => *n >= 0,
            Value::Con(_, args) => args.is_empty(),
            _ => true,
        }
    }
}

/// Values print in source syntax: `Node 1 Leaf (Node 2 Leaf Leaf)`.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Bool(true) => f.write_str("True"),
            Value::Bool(false) => f.write_str("False"),
            Value::Char(c) => write!(f, "{c:?}"),
            Value::Unit => f.write_str("()"),
            Value::Pair(p) => write!(f, "({}, {})", p.0, p.1),
            Value::Con(c, args) => {
                f.write_str(c)?;
                for a in args.iter() {
                    if a.atomic() {
                        write!(f, " {a}")?;
                    } else {
                        write!(f, " ({a})")?;
                    }
                }
                Ok(())
            }
            Value::Closure(_) | Value::Partial { .. } => f.write_str("<function>"),
            Value::Chan(_) => f.write_str("<channel>"),
        }
    }
}

/// Structural equality on data; functions and channels are never equal.
impl PartialEq for Value {
    fn eq(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a == b,
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Char(a), Value::Char(b)) => a == b,
            (Value::Unit, Value::Unit) => true,
            (Value::Pair(a), Value::Pair(b)) => a.0 == b.0 && a.1 == b.1,
            (Value::Con(c, a), Value::Con(d, b)) => c == d && a == b,
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(v: i64, l: Value, r: Value) -> Value {
        Value::Con("Node".into(), vec![Value::Int(v), l, r].into())
    }

    #[test]
    fn printing_matches_source_syntax() {
        let leaf = Value::Con("Leaf".into(), Vec::new().into());
        let t = node(1, leaf.clone(), node(-2, leaf.clone(), leaf));
        assert_eq!(t.to_string(), "Node 1 Leaf (Node (-2) Leaf Leaf)");
        assert_eq!(
            Value::pair(Value::Char('c'), Value::Bool(false)).to_string(),
            "('c', False)"
        );
    }

    #[test]
    fn wildcard_binds_nothing() {
        let env = Env::default().bind("x".into(), Value::Int(1));
        let env = env.bind("_".into(), Value::Int(2));
        assert_eq!(env.get("x"), Some(&Value::Int(1)));
        assert_eq!(env.get("_"), None);
    }
}
