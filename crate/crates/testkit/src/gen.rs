//! Seeded random session types, law instances and rewrites.

use cfst_core::kinds::contractive;
use cfst_core::{BasicType, Polarity, Type, View};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const LABELS: [&str; 4] = ["A", "B", "C", "D"];

/// The equivalence laws of sequential composition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    /// `Skip;S` and `S`.
    LeftUnit,
    /// `S;Skip` and `S`.
    RightUnit,
    /// `(S;T);U` and `S;(T;U)`.
    Associativity,
    /// `+{l: S_l};U` and `+{l: S_l;U}`, for either view.
    Distributivity,
}

impl Law {
    pub const ALL: [Law; 4] = [
        Law::LeftUnit,
        Law::RightUnit,
        Law::Associativity,
        Law::Distributivity,
    ];
}

pub struct Generator {
    rng: StdRng,
    /// Maximum nesting depth of generated types.
    pub depth: u32,
    /// Free (polymorphic) variables that may appear in generated types.
    pub free_vars: Vec<String>,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: StdRng::seed_from_u64(seed),
            depth: 4,
            free_vars: Vec::new(),
        }
    }

    pub fn with_depth(mut self, depth: u32) -> Self {
        self.depth = depth;
        self
    }

    pub fn rng(&mut self) -> &mut StdRng {
        &mut self.rng
    }

    pub fn basic(&mut self) -> BasicType {
        *BasicType::ALL.choose(&mut self.rng).expect("nonempty")
    }

    fn message(&mut self) -> Type {
        let p = if self.rng.gen() {
            Polarity::Out
        } else {
            Polarity::In
        };
        Type::Message(p, self.basic())
    }

    fn view(&mut self) -> View {
        if self.rng.gen() {
            View::Internal
        } else {
            View::External
        }
    }

    fn labels(&mut self) -> Vec<&'static str> {
        let n = self.rng.gen_range(1..=3);
        let mut ls: Vec<&str> = LABELS.choose_multiple(&mut self.rng, n).copied().collect();
        ls.sort_unstable();
        ls
    }

    /// A closed (up to `free_vars`) contractive session type, possibly
    /// context-free.
    pub fn session(&mut self) -> Type {
        loop {
            let t = self.session_at(self.depth, &mut Vec::new());
            if contractive(&t) {
                return t;
            }
        }
    }

    fn session_at(&mut self, depth: u32, bound: &mut Vec<String>) -> Type {
        if depth == 0 || self.rng.gen_bool(0.25) {
            let r = self.rng.gen_range(0..10);
            return match r {
                0 | 1 => Type::Skip,
                2..=5 => self.message(),
                6..=8 if !bound.is_empty() => {
                    Type::Var(bound.choose(&mut self.rng).unwrap().clone())
                }
                9 if !self.free_vars.is_empty() => {
                    Type::Var(self.free_vars.choose(&mut self.rng).unwrap().clone())
                }
                _ => self.message(),
            };
        }
        match self.rng.gen_range(0..8) {
            0..=3 => {
                let a = self.session_at(depth - 1, bound);
                let b = self.session_at(depth - 1, bound);
                Type::semi(a, b)
            }
            4 | 5 => {
                let v = self.view();
                let branches: Vec<(&str, Type)> = self
                    .labels()
                    .into_iter()
                    .map(|l| (l, self.session_at(depth - 1, bound)))
                    .collect();
                Type::choice(v, branches)
            }
            _ => {
                let x = format!("x{}", bound.len());
                bound.push(x.clone());
                let body = self.session_at(depth - 1, bound);
                bound.pop();
                Type::rec(x, body)
            }
        }
    }

    /// A closed tail-recursive session type: the left operand of every `;`
    /// is a message.
    pub fn tail_recursive(&mut self) -> Type {
        self.regular_at(self.depth + 1, &mut Vec::new(), true)
    }

    fn regular_at(&mut self, depth: u32, bound: &mut Vec<String>, guarded: bool) -> Type {
        if depth == 0 || self.rng.gen_bool(0.2) {
            if guarded && !bound.is_empty() && self.rng.gen_bool(0.75) {
                return Type::Var(bound.choose(&mut self.rng).unwrap().clone());
            }
            return Type::Skip;
        }
        match self.rng.gen_range(0..7) {
            0..=3 => {
                let m = self.message();
                match self.regular_at(depth - 1, bound, true) {
                    Type::Skip => m,
                    rest => Type::semi(m, rest),
                }
            }
            4 | 5 => {
                let v = self.view();
                let branches: Vec<(&str, Type)> = self
                    .labels()
                    .into_iter()
                    .map(|l| (l, self.regular_at(depth - 1, bound, true)))
                    .collect();
                Type::choice(v, branches)
            }
            _ => {
                let x = format!("y{}", bound.len());
                bound.push(x.clone());
                let body = self.regular_at(depth - 1, bound, false);
                bound.pop();
                Type::rec(x, body)
            }
        }
    }

    /// Two sides of a random instance of `law`.
    pub fn law(&mut self, law: Law) -> (Type, Type) {
        match law {
            Law::LeftUnit => {
                let s = self.session();
                (Type::semi(Type::Skip, s.clone()), s)
            }
            Law::RightUnit => {
                let s = self.session();
                (Type::semi(s.clone(), Type::Skip), s)
            }
            Law::Associativity => {
                let (s, t, u) = (self.session(), self.session(), self.session());
                (
                    Type::semi(Type::semi(s.clone(), t.clone()), u.clone()),
                    Type::semi(s, Type::semi(t, u)),
                )
            }
            Law::Distributivity => {
                let v = self.view();
                let ls = self.labels();
                let branches: Vec<(&str, Type)> =
                    ls.into_iter().map(|l| (l, self.session())).collect();
                let u = self.session();
                let lhs = Type::semi(Type::choice(v, branches.clone()), u.clone());
                let rhs = Type::choice(
                    v,
                    branches
                        .into_iter()
                        .map(|(l, s)| (l, Type::semi(s, u.clone()))),
                );
                (lhs, rhs)
            }
        }
    }

    /// Changes one message or choice: flips a polarity, changes a payload,
    /// flips a view or renames a label. Usually, but not always, yields an
    /// inequivalent type.
    pub fn perturb(&mut self, t: &Type) -> Type {
        let targets = count(t, &|n| matches!(n, Type::Message(..) | Type::Choice(..)));
        if targets == 0 {
            return Type::semi(self.message(), t.clone());
        }
        let k = self.rng.gen_range(0..targets);
        let choice = self.rng.gen_range(0..2);
        let fresh = self.basic();
        replace_nth(
            t,
            &|n| matches!(n, Type::Message(..) | Type::Choice(..)),
            &mut (k as isize),
            &mut |n| match n {
                Type::Message(p, b) if choice == 0 || fresh == *b => Type::Message(p.flip(), *b),
                Type::Message(p, _) => Type::Message(*p, fresh),
                Type::Choice(v, br) if choice == 0 => Type::Choice(v.flip(), br.clone()),
                Type::Choice(v, br) => {
                    let mut br = br.clone();
                    let (l, s) = br.pop_first().expect("nonempty choice");
                    br.insert(format!("{l}'"), s);
                    Type::Choice(*v, br)
                }
                _ => unreachable!(),
            },
        )
    }

    /// Applies one to three equivalence-preserving rewrites. With `regular`
    /// set, the rewrites keep tail-recursive types tail-recursive.
    pub fn variant(&mut self, t: &Type, regular: bool) -> Type {
        let mut t = t.clone();
        for _ in 0..self.rng.gen_range(1..=3) {
            let kinds = if regular { 3 } else { 6 };
            t = match self.rng.gen_range(0..kinds) {
                0 => self.at_random(&t, &|n| matches!(n, Type::Rec(..)), &|n| n.unfold()),
                1 => self.at_random(&t, &|n| matches!(n, Type::Rec(..)), &|n| match n {
                    Type::Rec(x, b) => Type::rec(x.clone(), b.subst(x, b)),
                    _ => unreachable!(),
                }),
                2 => self.at_random(&t, &|n| matches!(n, Type::Rec(..)), &|n| match n {
                    Type::Rec(x, b) => {
                        let y = format!("{x}r");
                        Type::rec(y.clone(), b.subst(x, &Type::Var(y)))
                    }
                    _ => unreachable!(),
                }),
                3 => {
                    let left = self.rng.gen();
                    self.at_random(&t, &|_| true, &|n| {
                        if left {
                            Type::semi(Type::Skip, n.clone())
                        } else {
                            Type::semi(n.clone(), Type::Skip)
                        }
                    })
                }
                4 => self.at_random(
                    &t,
                    &|n| matches!(n, Type::Semi(a, _) if matches!(**a, Type::Semi(..))),
                    &|n| match n {
                        Type::Semi(ab, c) => match &**ab {
                            Type::Semi(a, b) => {
                                Type::semi((**a).clone(), Type::semi((**b).clone(), (**c).clone()))
                            }
                            _ => unreachable!(),
                        },
                        _ => unreachable!(),
                    },
                ),
                _ => self.at_random(
                    &t,
                    &|n| matches!(n, Type::Semi(a, _) if matches!(**a, Type::Choice(..))),
                    &|n| match n {
                        Type::Semi(ch, u) => match &**ch {
                            Type::Choice(v, br) => Type::choice(
                                *v,
                                br.iter().map(|(l, s)| {
                                    (l.clone(), Type::semi(s.clone(), (**u).clone()))
                                }),
                            ),
                            _ => unreachable!(),
                        },
                        _ => unreachable!(),
                    },
                ),
            };
        }
        debug_assert!(contractive(&t));
        t
    }

    fn at_random(
        &mut self,
        t: &Type,
        pred: &dyn Fn(&Type) -> bool,
        f: &dyn Fn(&Type) -> Type,
    ) -> Type {
        let n = count(t, pred);
        if n == 0 {
            return t.clone();
        }
        let mut k = self.rng.gen_range(0..n) as isize;
        replace_nth(t, pred, &mut k, &mut |x| f(x))
    }

    /// A pair drawn from a mix of law instances, rewrites, perturbations,
    /// tail-recursive pairs and unrelated types.
    pub fn mixed_pair(&mut self) -> (Type, Type) {
        match self.rng.gen_range(0..6) {
            0 => {
                let law = *Law::ALL.choose(&mut self.rng).unwrap();
                self.law(law)
            }
            1 => {
                let t = self.session();
                let v = self.variant(&t, false);
                (t, v)
            }
            2 => {
                let t = self.session();
                let v = self.variant(&t, false);
                let p = self.perturb(&v);
                (t, p)
            }
            3 => {
                let t = self.tail_recursive();
                let v = self.variant(&t, true);
                if self.rng.gen() {
                    (t, v)
                } else {
                    let p = self.perturb(&v);
                    (t, p)
                }
            }
            _ => (self.session(), self.session()),
        }
    }
}

/// Number of nodes of `t` satisfying `pred`, in preorder.
pub fn count(t: &Type, pred: &dyn Fn(&Type) -> bool) -> usize {
    let here = usize::from(pred(t));
    here + match t {
        Type::Semi(a, b) | Type::Arrow(_, a, b) | Type::Pair(a, b) => {
            count(a, pred) + count(b, pred)
        }
        Type::Choice(_, br) => br.values().map(|s| count(s, pred)).sum(),
        Type::Rec(_, b) => count(b, pred),
        _ => 0,
    }
}

/// Replaces the `k`-th node (in preorder) satisfying `pred` by `f` of it.
fn replace_nth(
    t: &Type,
    pred: &dyn Fn(&Type) -> bool,
    k: &mut isize,
    f: &mut dyn FnMut(&Type) -> Type,
) -> Type {
    if pred(t) {
        if *k == 0 {
            *k = -1;
            return f(t);
        }
        *k -= 1;
    }
    if *k < 0 {
        return t.clone();
    }
    match t {
        Type::Semi(a, b) => {
            let a = replace_nth(a, pred, k, f);
            Type::semi(a, replace_nth(b, pred, k, f))
        }
        Type::Arrow(m, a, b) => {
            let a = replace_nth(a, pred, k, f);
            Type::arrow(*m, a, replace_nth(b, pred, k, f))
        }
        Type::Pair(a, b) => {
            let a = replace_nth(a, pred, k, f);
            Type::pair(a, replace_nth(b, pred, k, f))
        }
        Type::Choice(v, br) => Type::Choice(
            *v,
            br.iter()
                .map(|(l, s)| (l.clone(), replace_nth(s, pred, k, f)))
                .collect(),
        ),
        Type::Rec(x, b) => Type::rec(x.clone(), replace_nth(b, pred, k, f)),
        _ => t.clone(),
    }
}
