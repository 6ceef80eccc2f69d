//! Translation of session types into deterministic grammars in Greibach
//! normal form, together with norms and pruning of unnormed words.
//!
//! Every nonterminal has one production per terminal. A word (a sequence of
//! nonterminals) behaves like a process: `X·γ` performs `a` and becomes
//! `δ·γ` for each production `X -> a δ`. The empty word is the terminated
//! protocol, the image of `Skip`.

use alloc::collections::{btree_map, BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;

use crate::syntax::ast::{BasicType, Polarity, Type, View};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Nt(pub u32);

impl Nt {
    fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Nt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.0)
    }
}

pub type Word = Vec<Nt>;

/// Formats a word as space-separated nonterminals, `ε` when empty.
pub fn show_word(w: &[Nt]) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    let mut out = String::new();
    for (i, x) in w.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&x.to_string());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Terminal {
    Out(BasicType),
    In(BasicType),
    Select(String),
    Branch(String),
    /// A free (polymorphic) type variable, treated as an opaque action.
    Var(String),
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Terminal::Out(b) => write!(f, "!{b}"),
            Terminal::In(b) => write!(f, "?{b}"),
            Terminal::Select(l) => write!(f, "+{l}"),
            Terminal::Branch(l) => write!(f, "&{l}"),
            Terminal::Var(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Norm {
    Finite(u64),
    Infinite,
}

impl Norm {
    pub fn is_finite(self) -> bool {
        matches!(self, Norm::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Norm::Finite(n) => Some(n),
            Norm::Infinite => None,
        }
    }
}

impl Add for Norm {
    type Output = Norm;

    fn add(self, rhs: Norm) -> Norm {
        match (self, rhs) {
            (Norm::Finite(a), Norm::Finite(b)) => Norm::Finite(a.saturating_add(b)),
            _ => Norm::Infinite,
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Norm::Finite(n) => write!(f, "{n}"),
            Norm::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrammarError {
    /// A recursion variable is reachable without performing any action.
    NonContractive(String),
    /// A functional type where a session type was expected.
    NotSession(String),
}

impl fmt::Display for GrammarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrammarError::NonContractive(t) => write!(f, "type `{t}` is not contractive"),
            GrammarError::NotSession(t) => write!(f, "`{t}` is not a session type"),
        }
    }
}

pub type Productions = BTreeMap<Terminal, Word>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    productions: Vec<Productions>,
    norms: Vec<Norm>,
}

impl Grammar {
    /// Builds a grammar from explicit productions, indexed by nonterminal.
    ///
    /// # Panics
    /// If a right-hand side mentions a nonterminal without an entry.
    pub fn from_productions(productions: Vec<Productions>) -> Grammar {
        let n = productions.len();
        for p in &productions {
            for w in p.values() {
                assert!(w.iter().all(|x| x.index() < n), "dangling nonterminal");
            }
        }
        let norms = compute_norms(&productions);
        Grammar { productions, norms }
    }

    /// Translates session types into one shared grammar, returning the
    /// start word of each type. Norms are computed; the grammar is not
    /// pruned.
    pub fn from_types(types: &[&Type]) -> Result<(Grammar, Vec<Word>), GrammarError> {
        let mut b = Builder::default();
        let mut starts = Vec::with_capacity(types.len());
        for t in types {
            starts.push(b.word(t, &mut Vec::new())?);
        }
        b.resolve_all()?;
        let productions: Vec<Productions> = b
            .prods
            .into_iter()
            .map(|p| p.expect("every nonterminal resolved"))
            .collect();
        Ok(collect_garbage(&productions, starts))
    }

    /// The shared, pruned grammar of two session types with their start words.
    pub fn build(t1: &Type, t2: &Type) -> Result<(Grammar, Word, Word), GrammarError> {
        let (g, starts) = Grammar::from_types(&[t1, t2])?;
        let g = g.prune();
        let w1 = g.prune_word(&starts[0]);
        let w2 = g.prune_word(&starts[1]);
        Ok((g, w1, w2))
    }

    pub fn len(&self) -> usize {
        self.productions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.productions.is_empty()
    }

    pub fn nonterminals(&self) -> impl Iterator<Item = Nt> {
        (0..self.productions.len() as u32).map(Nt)
    }

    pub fn productions(&self, x: Nt) -> &Productions {
        &self.productions[x.index()]
    }

    pub fn norm(&self, x: Nt) -> Norm {
        self.norms[x.index()]
    }

    pub fn word_norm(&self, w: &[Nt]) -> Norm {
        w.iter().fold(Norm::Finite(0), |acc, &x| acc + self.norm(x))
    }

    /// Truncates every right-hand side after its first unnormed nonterminal.
    /// Whatever follows such a symbol can never be reached.
    pub fn prune(&self) -> Grammar {
        let productions = self
            .productions
            .iter()
            .map(|p| {
                p.iter()
                    .map(|(a, w)| (a.clone(), self.prune_word(w)))
                    .collect()
            })
            .collect();
        Grammar {
            productions,
            norms: self.norms.clone(),
        }
    }

    pub fn prune_word(&self, w: &[Nt]) -> Word {
        match w.iter().position(|&x| !self.norm(x).is_finite()) {
            Some(i) => w[..=i].to_vec(),
            None => w.to_vec(),
        }
    }

    /// The transitions of a word: for `X·γ`, `a ↦ δ·γ` for every `X -> a δ`.
    pub fn step(&self, w: &[Nt]) -> BTreeMap<Terminal, Word> {
        let Some((&head, rest)) = w.split_first() else {
            return BTreeMap::new();
        };
        self.productions(head)
            .iter()
            .map(|(a, d)| {
                let mut next = d.clone();
                next.extend_from_slice(rest);
                (a.clone(), next)
            })
            .collect()
    }

    /// Words reachable from `w` in exactly `steps` transitions, each of which
    /// lowers the norm by one. Empty when `w` is unnormed.
    pub fn norm_reducing_descendants(&self, w: &[Nt], steps: u64) -> BTreeSet<Word> {
        let mut layer: BTreeSet<Word> = BTreeSet::new();
        if !self.word_norm(w).is_finite() {
            return layer;
        }
        layer.insert(w.to_vec());
        for _ in 0..steps {
            let mut next = BTreeSet::new();
            for u in &layer {
                let Norm::Finite(n) = self.word_norm(u) else {
                    continue;
                };
                for v in self.step(u).into_values() {
                    if n > 0 && self.word_norm(&v) == Norm::Finite(n - 1) {
                        next.insert(v);
                    }
                }
            }
            layer = next;
        }
        layer
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in self.nonterminals() {
            for (a, w) in self.productions(x) {
                write!(f, "{x} -> {a}")?;
                for y in w {
                    write!(f, " {y}")?;
                }
                writeln!(f)?;
            }
        }
        for x in self.nonterminals() {
            writeln!(f, "norm({x}) = {}", self.norm(x))?;
        }
        Ok(())
    }
}

/// Least fixed point of `norm(X) = 1 + min over X -> a δ of norm(δ)`,
/// iterated from all-infinite.
pub fn compute_norms(productions: &[Productions]) -> Vec<Norm> {
    let mut norms = vec![Norm::Infinite; productions.len()];
    loop {
        let mut changed = false;
        for (i, p) in productions.iter().enumerate() {
            let best = p
                .values()
                .map(|w| {
                    w.iter()
                        .fold(Norm::Finite(1), |acc, x| acc + norms[x.index()])
                })
                .min()
                .unwrap_or(Norm::Infinite);
            if best < norms[i] {
                norms[i] = best;
                changed = true;
            }
        }
        if !changed {
            return norms;
        }
    }
}

/// Keeps the nonterminals reachable from the start words, numbered in
/// order of discovery.
fn collect_garbage(productions: &[Productions], starts: Vec<Word>) -> (Grammar, Vec<Word>) {
    let mut renumber: BTreeMap<Nt, Nt> = BTreeMap::new();
    let mut order: Vec<Nt> = Vec::new();
    let visit = |x: Nt, renumber: &mut BTreeMap<Nt, Nt>, order: &mut Vec<Nt>| {
        if let btree_map::Entry::Vacant(e) = renumber.entry(x) {
            e.insert(Nt(order.len() as u32));
            order.push(x);
        }
    };
    for w in &starts {
        for &x in w {
            visit(x, &mut renumber, &mut order);
        }
    }
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for w in productions[x.index()].values() {
            for &y in w {
                visit(y, &mut renumber, &mut order);
            }
        }
        i += 1;
    }
    let rename = |w: &Word| -> Word { w.iter().map(|x| renumber[x]).collect() };
    let new_prods: Vec<Productions> = order
        .iter()
        .map(|x| {
            productions[x.index()]
                .iter()
                .map(|(a, w)| (a.clone(), rename(w)))
                .collect()
        })
        .collect();
    let starts = starts.iter().map(rename).collect();
    (Grammar::from_productions(new_prods), starts)
}

#[derive(Default)]
struct Builder {
    /// `None` while a recursive nonterminal waits for its head to resolve.
    prods: Vec<Option<Productions>>,
    pending: BTreeMap<Nt, Word>,
    atoms: BTreeMap<Terminal, Nt>,
    choices: BTreeMap<Productions, Nt>,
    recs: BTreeMap<(String, Vec<Nt>), Word>,
}

impl Builder {
    fn fresh(&mut self, p: Option<Productions>) -> Nt {
        self.prods.push(p);
        Nt(self.prods.len() as u32 - 1)
    }

    fn atom(&mut self, a: Terminal) -> Nt {
        if let Some(&x) = self.atoms.get(&a) {
            return x;
        }
        let x = self.fresh(Some(BTreeMap::from([(a.clone(), Word::new())])));
        self.atoms.insert(a, x);
        x
    }

    fn word(&mut self, t: &Type, env: &mut Vec<(String, Nt)>) -> Result<Word, GrammarError> {
        match t {
            Type::Skip => Ok(Word::new()),
            Type::Semi(a, b) => {
                let mut w = self.word(a, env)?;
                w.extend(self.word(b, env)?);
                Ok(w)
            }
            Type::Message(p, b) => {
                let a = match p {
                    Polarity::Out => Terminal::Out(*b),
                    Polarity::In => Terminal::In(*b),
                };
                Ok(vec![self.atom(a)])
            }
            Type::Choice(v, branches) => {
                let mut p = Productions::new();
                for (l, s) in branches {
                    let a = match v {
                        View::Internal => Terminal::Select(l.clone()),
                        View::External => Terminal::Branch(l.clone()),
                    };
                    p.insert(a, self.word(s, env)?);
                }
                if let Some(&x) = self.choices.get(&p) {
                    return Ok(vec![x]);
                }
                let x = self.fresh(Some(p.clone()));
                self.choices.insert(p, x);
                Ok(vec![x])
            }
            Type::Var(x) => match env.iter().rev().find(|(y, _)| y == x) {
                Some(&(_, nt)) => Ok(vec![nt]),
                None => Ok(vec![self.atom(Terminal::Var(x.clone()))]),
            },
            Type::Rec(x, body) => {
                let free: Vec<Nt> = t
                    .free_vars()
                    .iter()
                    .filter_map(|y| env.iter().rev().find(|(z, _)| z == y).map(|&(_, n)| n))
                    .collect();
                let key = (t.canonical().to_string(), free);
                if let Some(w) = self.recs.get(&key) {
                    return Ok(w.clone());
                }
                let nt = self.fresh(None);
                env.push((x.clone(), nt));
                let w = self.word(body, env);
                env.pop();
                let w = w?;
                let result = if w.is_empty() {
                    self.prods[nt.index()] = Some(Productions::new());
                    Word::new()
                } else {
                    self.pending.insert(nt, w);
                    vec![nt]
                };
                self.recs.insert(key, result.clone());
                Ok(result)
            }
            Type::Basic(_) | Type::Arrow(..) | Type::Pair(..) | Type::Data(_) => {
                Err(GrammarError::NotSession(t.to_string()))
            }
        }
    }

    fn resolve_all(&mut self) -> Result<(), GrammarError> {
        let pending: Vec<Nt> = self.pending.keys().copied().collect();
        for x in pending {
            self.resolve(x, &mut Vec::new())?;
        }
        Ok(())
    }

    fn resolve(&mut self, x: Nt, visiting: &mut Vec<Nt>) -> Result<(), GrammarError> {
        if self.prods[x.index()].is_some() {
            return Ok(());
        }
        if visiting.contains(&x) {
            return Err(GrammarError::NonContractive(x.to_string()));
        }
        visiting.push(x);
        let w = self.pending[&x].clone();
        let head = w[0];
        self.resolve(head, visiting)?;
        let p = self.prods[head.index()]
            .as_ref()
            .expect("head resolved")
            .iter()
            .map(|(a, d)| {
                let mut next = d.clone();
                next.extend_from_slice(&w[1..]);
                (a.clone(), next)
            })
            .collect();
        self.prods[x.index()] = Some(p);
        visiting.pop();
        Ok(())
    }
}
