//! Type equivalence.
//!
//! Session types are compared by deciding bisimilarity of their grammar
//! words. The search grows an expansion tree whose nodes are sets of word
//! pairs: expansion matches the transitions of every pair, and simplification
//! deletes pairs justified by the pairs seen so far or splits a pair into
//! simpler ones. A branch succeeds when it reaches a node with no pairs; the
//! types are inequivalent when every branch has failed to expand.
//!
//! Functional types are compared structurally, with session components
//! compared by the search.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::fmt;

use crate::grammar::{show_word, Grammar, Nt, Word};
use crate::kinds::{synth_kind, KindEnv};
use crate::syntax::ast::Type;

pub type Pair = (Word, Word);
pub type PairSet = BTreeSet<Pair>;

fn orient(a: Word, b: Word) -> Pair {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
    /// The node budget ran out before a decision.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equivalent => "equivalent",
            Verdict::NotEquivalent => "not equivalent",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Simplification {
    /// Only drop reflexive pairs and pairs already present on the path.
    Off,
    /// One pass of each rule per node.
    SinglePass,
    /// Rules applied until nothing changes.
    FixedPoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of nodes taken from the frontier.
    pub budget: usize,
    /// Push shrinking nodes to the front of the frontier.
    pub prioritize: bool,
    pub simplify: Simplification,
}

impl SearchConfig {
    pub const DEFAULT_BUDGET: usize = 100_000;
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: Self::DEFAULT_BUDGET,
            prioritize: true,
            simplify: Simplification::FixedPoint,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub verdict: Verdict,
    /// Nodes taken from the frontier.
    pub nodes: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    /// The node had no pairs: success.
    Empty,
    /// Expanded; this many simplified children entered the frontier.
    Expanded { children: usize },
    /// Some pair offered different actions on its two sides.
    Failed,
    /// The budget ran out at this node.
    OutOfBudget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub depth: usize,
    pub pairs: usize,
    pub action: Action,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "depth {} pairs {} ", self.depth, self.pairs)?;
        match self.action {
            Action::Empty => f.write_str("empty"),
            Action::Expanded { children } => write!(f, "expand -> {children} children"),
            Action::Failed => f.write_str("fail"),
            Action::OutOfBudget => f.write_str("budget exhausted"),
        }
    }
}

/// Pairs seen on the path from the root, shared between siblings.
#[derive(Debug)]
pub struct History {
    pairs: Vec<Pair>,
    parent: Option<Rc<History>>,
}

impl History {
    fn collect(this: &Option<Rc<History>>) -> BTreeSet<Pair> {
        let mut out = BTreeSet::new();
        let mut cur = this.as_deref();
        while let Some(h) = cur {
            out.extend(h.pairs.iter().cloned());
            cur = h.parent.as_deref();
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct Node {
    pub pairs: PairSet,
    /// The pairs produced by expansion, before simplification.
    pre: PairSet,
    history: Option<Rc<History>>,
    pub depth: usize,
}

fn total_len(pairs: &PairSet) -> usize {
    pairs.iter().map(|(a, b)| a.len() + b.len()).sum()
}

/// Matches the transitions of every pair. `None` when some pair disagrees
/// on its available actions or on its norm.
pub fn expand(g: &Grammar, pairs: &PairSet) -> Option<PairSet> {
    let mut out = PairSet::new();
    for (u, v) in pairs {
        if g.word_norm(u) != g.word_norm(v) {
            return None;
        }
        let su = g.step(u);
        let sv = g.step(v);
        if su.len() != sv.len() || !su.keys().eq(sv.keys()) {
            return None;
        }
        for ((_, u1), (_, v1)) in su.into_iter().zip(sv) {
            out.insert(orient(g.prune_word(&u1), g.prune_word(&v1)));
        }
    }
    Some(out)
}

/// Upper bound on the sibling nodes produced by one simplification.
const MAX_SIBLINGS: usize = 24;
/// Candidates considered for one application of the split rule.
const MAX_CANDIDATES: usize = 8;
/// Nested applications of the split rule within one simplification.
const SPLIT_DEPTH: usize = 2;
/// Recursive calls allowed for one congruence test.
const CONGRUENCE_FUEL: u32 = 48;

/// Applies the simplification rules to the pairs of a freshly expanded node,
/// given the pairs on its path. Returns the sibling nodes, the first of which
/// never uses the splitting rule.
pub fn simplify(
    g: &Grammar,
    pairs: PairSet,
    history: &BTreeSet<Pair>,
    mode: Simplification,
) -> Vec<PairSet> {
    let s = Simplifier { g, history };
    match mode {
        Simplification::Off => vec_of(
            pairs
                .into_iter()
                .filter(|p| p.0 != p.1 && !history.contains(p))
                .collect(),
        ),
        Simplification::SinglePass => {
            let (node, _) = s.pass(pairs);
            let mut out = vec_of(node.clone());
            out.extend(s.split(&node));
            dedup(out)
        }
        Simplification::FixedPoint => {
            let mut out = Vec::new();
            s.fixed_point(pairs, SPLIT_DEPTH, &mut out);
            dedup(out)
        }
    }
}

fn vec_of(p: PairSet) -> Vec<PairSet> {
    alloc::vec![p]
}

fn dedup(v: Vec<PairSet>) -> Vec<PairSet> {
    let mut seen = BTreeSet::new();
    v.into_iter().filter(|p| seen.insert(p.clone())).collect()
}

struct Simplifier<'a> {
    g: &'a Grammar,
    history: &'a BTreeSet<Pair>,
}

impl Simplifier<'_> {
    fn fixed_point(&self, pairs: PairSet, depth: usize, out: &mut Vec<PairSet>) {
        let mut node = pairs;
        loop {
            let (next, changed) = self.pass(node);
            node = next;
            if !changed {
                break;
            }
        }
        let splits = if depth > 0 {
            self.split(&node)
        } else {
            Vec::new()
        };
        out.push(node);
        for sibling in splits {
            if out.len() >= MAX_SIBLINGS {
                return;
            }
            self.fixed_point(sibling, depth - 1, out);
        }
    }

    /// One sweep of the deterministic rules: reflexivity, membership in the
    /// path, congruence, and cancellation of common heads.
    fn pass(&self, pairs: PairSet) -> (PairSet, bool) {
        let mut live: Vec<Pair> = pairs.into_iter().collect();
        let mut changed = false;
        let mut i = 0;
        while i < live.len() {
            let (u, v) = &live[i];
            if u == v || self.history.contains(&live[i]) {
                live.remove(i);
                changed = true;
                continue;
            }
            let prefix = u.iter().zip(v.iter()).take_while(|(a, b)| a == b).count();
            if prefix > 0 {
                // Common heads are normed here: pruning leaves an unnormed
                // symbol last, so equal unnormed heads mean equal words.
                let p = orient(u[prefix..].to_vec(), v[prefix..].to_vec());
                live.remove(i);
                changed = true;
                if !live.contains(&p) {
                    live.insert(i, p);
                }
                continue;
            }
            if self.congruent_to_rest(&live, i) {
                live.remove(i);
                changed = true;
                continue;
            }
            i += 1;
        }
        (live.into_iter().collect(), changed)
    }

    fn congruent_to_rest(&self, live: &[Pair], skip: usize) -> bool {
        let mut rel: Vec<(&[Nt], &[Nt])> = Vec::new();
        let pairs = self.history.iter().chain(
            live.iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, p)| p),
        );
        for (a, b) in pairs {
            if a.is_empty() || b.is_empty() || a == b {
                continue;
            }
            rel.push((a, b));
            rel.push((b, a));
        }
        if rel.is_empty() {
            return false;
        }
        let (u, v) = &live[skip];
        let mut fuel = CONGRUENCE_FUEL;
        congruent(u, v, &rel, &mut fuel)
    }

    /// Splits the first pair `(X·γ, Y·δ)` with distinct normed heads and
    /// `norm(X) <= norm(Y)` into `(Y, X·β)` and `(γ, β·δ)`, one sibling per
    /// candidate `β`. The unsplit node is not included.
    fn split(&self, node: &PairSet) -> Vec<PairSet> {
        let g = self.g;
        for p in node {
            let (u, v) = p;
            if u.len() < 2 || v.len() < 2 || u[0] == v[0] {
                continue;
            }
            let (Some(nu), Some(nv)) = (g.norm(u[0]).finite(), g.norm(v[0]).finite()) else {
                continue;
            };
            let (xg, yd, nx) = if nu <= nv { (u, v, nu) } else { (v, u, nv) };
            let (x, gamma) = (xg[0], &xg[1..]);
            let (y, delta) = (yd[0], &yd[1..]);
            let candidates = g.norm_reducing_descendants(&[y], nx);
            let mut out = Vec::new();
            for beta in candidates.into_iter().take(MAX_CANDIDATES) {
                let mut rest = node.clone();
                rest.remove(p);
                let mut xb = Vec::with_capacity(beta.len() + 1);
                xb.push(x);
                xb.extend_from_slice(&beta);
                let mut bd = beta;
                bd.extend_from_slice(delta);
                rest.insert(orient(vec_word(&[y]), g.prune_word(&xb)));
                rest.insert(orient(gamma.to_vec(), g.prune_word(&bd)));
                out.push(rest);
            }
            return out;
        }
        Vec::new()
    }
}

fn vec_word(w: &[Nt]) -> Word {
    w.to_vec()
}

fn strip_common<'a>(mut u: &'a [Nt], mut v: &'a [Nt]) -> (&'a [Nt], &'a [Nt]) {
    while let (Some(a), Some(b)) = (u.first(), v.first()) {
        if a != b {
            break;
        }
        u = &u[1..];
        v = &v[1..];
    }
    while let (Some(a), Some(b)) = (u.last(), v.last()) {
        if a != b {
            break;
        }
        u = &u[..u.len() - 1];
        v = &v[..v.len() - 1];
    }
    (u, v)
}

/// A bounded test for membership of `(u, v)` in the least congruence
/// (for concatenation) containing `rel`. `rel` must be symmetric and free of
/// empty words. Only ever answers `true` with a derivation in hand.
pub fn congruent(u: &[Nt], v: &[Nt], rel: &[(&[Nt], &[Nt])], fuel: &mut u32) -> bool {
    if *fuel == 0 {
        return false;
    }
    *fuel -= 1;
    let (u, v) = strip_common(u, v);
    if u == v {
        return true;
    }
    if rel.iter().any(|&(a, b)| a == u && b == v) {
        return true;
    }
    for &(a, b) in rel {
        if u.starts_with(a)
            && v.starts_with(b)
            && congruent(&u[a.len()..], &v[b.len()..], rel, fuel)
        {
            return true;
        }
        if u.ends_with(a)
            && v.ends_with(b)
            && congruent(&u[..u.len() - a.len()], &v[..v.len() - b.len()], rel, fuel)
        {
            return true;
        }
    }
    for &(a, b) in rel {
        for (from, to, left) in [(u, v, true), (v, u, false)] {
            if a.len() > from.len() {
                continue;
            }
            for i in 0..=from.len() - a.len() {
                if &from[i..i + a.len()] != a {
                    continue;
                }
                let mut w = Vec::with_capacity(from.len() - a.len() + b.len());
                w.extend_from_slice(&from[..i]);
                w.extend_from_slice(b);
                w.extend_from_slice(&from[i + a.len()..]);
                let (x, y) = if left {
                    strip_common(&w, to)
                } else {
                    strip_common(to, &w)
                };
                if x == y || rel.iter().any(|&(c, d)| c == x && d == y) {
                    return true;
                }
            }
        }
    }
    false
}

/// Puts shrinking children (fewer pairs and shorter words than their parent)
/// and empty children at the front of the frontier, others at the back.
pub fn prioritize(frontier: &mut VecDeque<Node>, parent: &PairSet, child: Node, enabled: bool) {
    let shrinks = child.pairs.is_empty()
        || (child.pairs.len() < parent.len() && total_len(&child.pairs) < total_len(parent));
    if enabled && shrinks {
        frontier.push_front(child);
    } else {
        frontier.push_back(child);
    }
}

/// Decides bisimilarity of two words of a pruned grammar.
pub fn search(
    g: &Grammar,
    w1: &[Nt],
    w2: &[Nt],
    config: &SearchConfig,
    trace: &mut dyn FnMut(&TraceEvent),
) -> Outcome {
    let root: PairSet = [orient(w1.to_vec(), w2.to_vec())].into_iter().collect();
    let mut frontier: VecDeque<Node> = VecDeque::new();
    let mut visited: BTreeSet<PairSet> = BTreeSet::new();
    for pairs in simplify(g, root.clone(), &BTreeSet::new(), config.simplify) {
        if visited.insert(pairs.clone()) {
            let node = Node {
                pairs,
                pre: root.clone(),
                history: None,
                depth: 0,
            };
            prioritize(&mut frontier, &root, node, config.prioritize);
        }
    }
    let mut processed = 0;
    while let Some(node) = frontier.pop_front() {
        processed += 1;
        let event = |action| TraceEvent {
            depth: node.depth,
            pairs: node.pairs.len(),
            action,
        };
        if node.pairs.is_empty() {
            trace(&event(Action::Empty));
            return Outcome {
                verdict: Verdict::Equivalent,
                nodes: processed,
            };
        }
        if processed > config.budget {
            trace(&event(Action::OutOfBudget));
            return Outcome {
                verdict: Verdict::Inconclusive,
                nodes: processed,
            };
        }
        let Some(expanded) = expand(g, &node.pairs) else {
            trace(&event(Action::Failed));
            continue;
        };
        let mut own: Vec<Pair> = node.pre.iter().cloned().collect();
        own.extend(
            node.pairs
                .iter()
                .filter(|p| !node.pre.contains(*p))
                .cloned(),
        );
        let history = Some(Rc::new(History {
            pairs: own,
            parent: node.history.clone(),
        }));
        let seen = History::collect(&history);
        let mut children = 0;
        for pairs in simplify(g, expanded.clone(), &seen, config.simplify) {
            if visited.insert(pairs.clone()) {
                children += 1;
                let child = Node {
                    pairs,
                    pre: expanded.clone(),
                    history: history.clone(),
                    depth: node.depth + 1,
                };
                prioritize(&mut frontier, &node.pairs, child, config.prioritize);
            }
        }
        trace(&event(Action::Expanded { children }));
    }
    Outcome {
        verdict: Verdict::NotEquivalent,
        nodes: processed,
    }
}

/// Decides equivalence of two well-kinded types under the default
/// configuration. An inconclusive search counts as inequivalent.
pub fn equivalent(t1: &Type, t2: &Type, env: &mut KindEnv) -> bool {
    decide(t1, t2, env, &SearchConfig::default()).verdict == Verdict::Equivalent
}

pub fn decide(t1: &Type, t2: &Type, env: &mut KindEnv, config: &SearchConfig) -> Outcome {
    decide_traced(t1, t2, env, config, &mut |_| {})
}

pub fn decide_traced(
    t1: &Type,
    t2: &Type,
    env: &mut KindEnv,
    config: &SearchConfig,
    trace: &mut dyn FnMut(&TraceEvent),
) -> Outcome {
    let mut nodes = 0;
    let verdict = compare(t1, t2, env, config, trace, &mut nodes);
    Outcome { verdict, nodes }
}

fn compare(
    t1: &Type,
    t2: &Type,
    env: &mut KindEnv,
    config: &SearchConfig,
    trace: &mut dyn FnMut(&TraceEvent),
    nodes: &mut usize,
) -> Verdict {
    if t1 == t2 {
        return Verdict::Equivalent;
    }
    let (Ok(k1), Ok(k2)) = (synth_kind(env, t1), synth_kind(env, t2)) else {
        return Verdict::NotEquivalent;
    };
    match (k1.is_session(), k2.is_session()) {
        (true, true) => {
            let Ok((g, w1, w2)) = Grammar::build(t1, t2) else {
                return Verdict::NotEquivalent;
            };
            if w1 == w2 {
                return Verdict::Equivalent;
            }
            let out = search(&g, &w1, &w2, config, trace);
            *nodes += out.nodes;
            out.verdict
        }
        (false, false) => match (t1, t2) {
            (Type::Arrow(m1, a1, b1), Type::Arrow(m2, a2, b2)) if m1 == m2 => {
                both(compare(a1, a2, env, config, trace, nodes), || {
                    compare(b1, b2, env, config, trace, nodes)
                })
            }
            (Type::Pair(a1, b1), Type::Pair(a2, b2)) => {
                both(compare(a1, a2, env, config, trace, nodes), || {
                    compare(b1, b2, env, config, trace, nodes)
                })
            }
            _ => Verdict::NotEquivalent,
        },
        _ => Verdict::NotEquivalent,
    }
}

fn both(first: Verdict, second: impl FnOnce() -> Verdict) -> Verdict {
    match first {
        Verdict::NotEquivalent => Verdict::NotEquivalent,
        Verdict::Equivalent => second(),
        Verdict::Inconclusive => match second() {
            Verdict::NotEquivalent => Verdict::NotEquivalent,
            _ => Verdict::Inconclusive,
        },
    }
}

/// Renders a pair set for diagnostics and tests.
pub fn show_pairs(pairs: &PairSet) -> alloc::string::String {
    let mut out = alloc::string::String::from("{");
    for (i, (a, b)) in pairs.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push('(');
        out.push_str(&show_word(a));
        out.push_str(", ");
        out.push_str(&show_word(b));
        out.push(')');
    }
    out.push('}');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::Terminal;
    use crate::syntax::ast::{BasicType, Kind};
    use crate::syntax::parse_type;
    use alloc::collections::BTreeMap;
    use alloc::vec;

    const TREE_C: &str = "rec x. +{Leaf: Skip, Node: !Int;x;x;?Int}";

    fn verdict(a: &str, b: &str) -> Verdict {
        let mut env = KindEnv::new().with_var("alpha", Kind::SL);
        let t1 = parse_type(a).unwrap();
        let t2 = parse_type(b).unwrap();
        decide(&t1, &t2, &mut env, &SearchConfig::default()).verdict
    }

    #[test]
    fn monoid_associativity_and_distributivity() {
        assert_eq!(verdict("Skip;!Int", "!Int"), Verdict::Equivalent);
        assert_eq!(verdict("!Int;Skip", "!Int"), Verdict::Equivalent);
        assert_eq!(
            verdict(
                "+{l: !Int, m: ?Bool};!Char",
                "+{l: !Int;!Char, m: ?Bool;!Char}"
            ),
            Verdict::Equivalent
        );
        assert_eq!(
            verdict("!Int;(?Bool;!Char)", "(!Int;?Bool);!Char"),
            Verdict::Equivalent
        );
        assert_eq!(verdict("!Int", "?Int"), Verdict::NotEquivalent);
    }

    #[test]
    fn recursive_types() {
        let unfolded = "+{Leaf: Skip, Node: !Int;(rec x. +{Leaf: Skip, Node: !Int;x;x;?Int});(rec x. +{Leaf: Skip, Node: !Int;x;x;?Int});?Int}";
        assert_eq!(verdict(TREE_C, unfolded), Verdict::Equivalent);
        assert_eq!(
            verdict("rec x. !Int;x", "rec y. !Int;!Int;y"),
            Verdict::Equivalent
        );
        assert_eq!(
            verdict("rec x. !Int;x", "rec y. !Int;?Int;y"),
            Verdict::NotEquivalent
        );
        assert_eq!(
            verdict("(rec x. !Int;x);?Bool", "rec x. !Int;x"),
            Verdict::Equivalent
        );
    }

    #[test]
    fn polymorphic_variables_are_opaque() {
        assert_eq!(verdict("alpha;Skip", "alpha"), Verdict::Equivalent);
        assert_eq!(verdict("alpha", "Skip"), Verdict::NotEquivalent);
    }

    #[test]
    fn functional_types_compare_structurally() {
        assert_eq!(
            verdict("Int -> Skip;!Int", "Int -> !Int"),
            Verdict::Equivalent
        );
        assert_eq!(verdict("Int -> Int", "Int -o Int"), Verdict::NotEquivalent);
        assert_eq!(verdict("(Int, Skip)", "Skip"), Verdict::NotEquivalent);
    }

    #[test]
    fn expansion() {
        let a = Terminal::Out(BasicType::Int);
        let b = Terminal::In(BasicType::Int);
        let g = Grammar::from_productions(vec![
            BTreeMap::from([(a.clone(), vec![])]),
            BTreeMap::from([(b, vec![])]),
        ]);
        let eps: PairSet = [(vec![], vec![])].into_iter().collect();
        assert_eq!(expand(&g, &eps), Some(PairSet::new()));
        let xy: PairSet = [(vec![Nt(0)], vec![Nt(1)])].into_iter().collect();
        assert_eq!(expand(&g, &xy), None);
    }

    #[test]
    fn simplification_rules() {
        let a = Terminal::Out(BasicType::Int);
        let g = Grammar::from_productions(vec![
            BTreeMap::from([(a.clone(), vec![])]),
            BTreeMap::from([(a.clone(), vec![Nt(1)])]),
            BTreeMap::from([(a, vec![Nt(2)])]),
        ]);
        let w = vec![Nt(1), Nt(0)];
        let refl: PairSet = [(w.clone(), w)].into_iter().collect();
        let none = BTreeSet::new();
        assert_eq!(
            simplify(&g, refl, &none, Simplification::FixedPoint),
            vec![PairSet::new()]
        );
        // a shared normed head cancels
        let head: PairSet = [(vec![Nt(0), Nt(1)], vec![Nt(0), Nt(2)])]
            .into_iter()
            .collect();
        let out = simplify(&g, head, &none, Simplification::FixedPoint);
        assert!(out.contains(&[(vec![Nt(1)], vec![Nt(2)])].into_iter().collect()));
        // a pair implied by the history disappears
        let hist: BTreeSet<Pair> = [(vec![Nt(1)], vec![Nt(2)])].into_iter().collect();
        let cong: PairSet = [(vec![Nt(0), Nt(1)], vec![Nt(0), Nt(2)])]
            .into_iter()
            .collect();
        assert_eq!(
            simplify(&g, cong, &hist, Simplification::FixedPoint),
            vec![PairSet::new()]
        );
    }

    #[test]
    fn frontier_priority() {
        let parent: PairSet = [(vec![Nt(0)], vec![Nt(1)]), (vec![Nt(1)], vec![Nt(2)])]
            .into_iter()
            .collect();
        let mk = |pairs: PairSet| Node {
            pairs,
            pre: PairSet::new(),
            history: None,
            depth: 1,
        };
        let mut f = VecDeque::new();
        f.push_back(mk(parent.clone()));
        prioritize(
            &mut f,
            &parent,
            mk([(vec![Nt(0)], vec![Nt(2)])].into_iter().collect()),
            true,
        );
        assert_eq!(f[0].pairs.len(), 1);
        let bigger: PairSet = [
            (vec![Nt(0)], vec![Nt(1)]),
            (vec![Nt(1)], vec![Nt(2)]),
            (vec![Nt(0)], vec![Nt(2)]),
        ]
        .into_iter()
        .collect();
        prioritize(&mut f, &parent, mk(bigger), true);
        assert_eq!(f.back().unwrap().pairs.len(), 3);
        prioritize(&mut f, &parent, mk(PairSet::new()), true);
        assert!(f[0].pairs.is_empty());
    }
}
