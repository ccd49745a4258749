//! Length-stratified bottom-up evaluation.
//!
//! The pattern is compiled to a small operator tree. For each operator and
//! each exact path length the answer set is computed once and memoized;
//! concatenation at length ℓ joins answers of lengths `i` and `ℓ - i`.
//!
//! Repetitions with variables are evaluated over group states (closed
//! groups plus the unified assignment of the current edgeless run). Once an
//! edgeless segment has been used, it can be repeated any number of times
//! without changing the collected value, so such states carry a `pumpable`
//! flag instead of enumerating ever larger iteration counts.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::hash::Hash;
use std::sync::Arc;

use super::collect::CollectState;
use super::novars::pairs_no_vars;
use super::{edge_pattern_paths, satisfies, EvalConfig, EvalError};
use crate::graph::{NodeId, Path, PropertyGraph};
use crate::syntax::{Condition, Direction, Pattern, Var};
use crate::typing::CollectMode;
use crate::value::{Assignment, Value};

pub(crate) type Ans = (Path, Assignment);
type Set = Arc<Vec<Ans>>;
type Index = Arc<HashMap<NodeId, Vec<usize>>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PathFilter {
    None,
    Trail,
    Simple,
}

impl PathFilter {
    fn admits(self, p: &Path) -> bool {
        match self {
            PathFilter::None => true,
            PathFilter::Trail => p.is_trail(),
            PathFilter::Simple => p.is_simple(),
        }
    }
}

enum Op {
    Node { label: Option<String>, var: Option<Var> },
    Edge { dir: Direction, label: Option<String>, var: Option<Var> },
    Union { a: usize, b: usize, pad_a: Vec<Var>, pad_b: Vec<Var> },
    Concat { a: usize, b: usize },
    Cond { a: usize, theta: Condition },
    Repeat { body: usize, min: u64, max: Option<u64>, vars: BTreeSet<Var>, pattern: Pattern },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct RepState {
    path: Path,
    collect: CollectState,
    /// Some edgeless segment has been used and may be repeated freely.
    pumpable: bool,
    /// Iterations so far (the minimum, if pumpable); capped at the lower
    /// bound when there is no upper bound.
    count: u64,
}

pub(crate) struct Engine<'g> {
    g: &'g PropertyGraph,
    mode: CollectMode,
    lenient: bool,
    limit: usize,
    filter: PathFilter,
    ops: Vec<Op>,
    root: usize,
    exact: HashMap<(usize, usize), Set>,
    index: HashMap<(usize, usize), Index>,
    states: HashMap<(usize, usize), Arc<Vec<RepState>>>,
    candidates: HashMap<(usize, usize), Arc<Vec<Path>>>,
}

impl<'g> Engine<'g> {
    pub(crate) fn new(g: &'g PropertyGraph, p: &Pattern, cfg: &EvalConfig, filter: PathFilter) -> Engine<'g> {
        let mut ops = Vec::new();
        let root = compile(p, &mut ops);
        Engine {
            g,
            mode: cfg.collect_mode,
            lenient: cfg.lenient_unify,
            limit: cfg.max_answers,
            filter,
            ops,
            root,
            exact: HashMap::new(),
            index: HashMap::new(),
            states: HashMap::new(),
            candidates: HashMap::new(),
        }
    }

    pub(crate) fn root_exact(&mut self, len: usize) -> Result<Set, EvalError> {
        self.exact(self.root, len)
    }

    fn check<T>(&self, v: &[T], what: &str) -> Result<(), EvalError> {
        if v.len() > self.limit {
            return Err(EvalError::ResourceLimit { limit: self.limit, context: what.to_string() });
        }
        Ok(())
    }

    fn index_of(&mut self, id: usize, len: usize) -> Result<(Set, Index), EvalError> {
        let set = self.exact(id, len)?;
        if let Some(ix) = self.index.get(&(id, len)) {
            return Ok((set, ix.clone()));
        }
        let mut ix: HashMap<NodeId, Vec<usize>> = HashMap::new();
        for (i, (p, _)) in set.iter().enumerate() {
            ix.entry(p.src()).or_default().push(i);
        }
        let ix = Arc::new(ix);
        self.index.insert((id, len), ix.clone());
        Ok((set, ix))
    }

    fn exact(&mut self, id: usize, len: usize) -> Result<Set, EvalError> {
        if let Some(s) = self.exact.get(&(id, len)) {
            return Ok(s.clone());
        }
        let set = Arc::new(self.compute(id, len)?);
        self.check(&set, "a subpattern")?;
        self.exact.insert((id, len), set.clone());
        Ok(set)
    }

    fn compute(&mut self, id: usize, len: usize) -> Result<Vec<Ans>, EvalError> {
        let g = self.g;
        match &self.ops[id] {
            Op::Node { label, var } => {
                if len != 0 {
                    return Ok(Vec::new());
                }
                Ok(g.nodes()
                    .filter(|&u| label.as_ref().is_none_or(|l| g.node_has_label(u, l)))
                    .map(|u| (Path::single(u), bind(var, || Value::Node(u))))
                    .collect())
            }
            Op::Edge { dir, label, var } => {
                if len != 1 {
                    return Ok(Vec::new());
                }
                let filter = self.filter;
                Ok(edge_pattern_paths(g, *dir, label.as_deref())
                    .into_iter()
                    .filter(|(_, p)| filter.admits(p))
                    .map(|(e, p)| (p, bind(var, || Value::Edge(e))))
                    .collect())
            }
            Op::Union { a, b, pad_a, pad_b } => {
                let (a, b, pad_a, pad_b) = (*a, *b, pad_a.clone(), pad_b.clone());
                let left = self.exact(a, len)?;
                let right = self.exact(b, len)?;
                let mut out = Dedup::default();
                for (set, pad) in [(left, pad_a), (right, pad_b)] {
                    for (p, mu) in set.iter() {
                        let mut mu = mu.clone();
                        for x in &pad {
                            mu.insert(x.clone(), Value::Nothing);
                        }
                        out.push((p.clone(), mu));
                    }
                }
                Ok(out.into_vec())
            }
            Op::Concat { a, b } => {
                let (a, b) = (*a, *b);
                let mut out = Dedup::default();
                for i in 0..=len {
                    let left = self.exact(a, i)?;
                    if left.is_empty() {
                        continue;
                    }
                    let (right, ix) = self.index_of(b, len - i)?;
                    for (p, mu) in left.iter() {
                        let Some(matches) = ix.get(&p.tgt()) else { continue };
                        for &j in matches {
                            let (q, nu) = &right[j];
                            let Some(m) = super::unify(mu, nu, false) else { continue };
                            let path = p.concat(q).expect("indexed by source node");
                            if self.filter.admits(&path) {
                                out.push((path, m));
                            }
                        }
                        self.check(&out.items, "a concatenation")?;
                    }
                }
                Ok(out.into_vec())
            }
            Op::Cond { a, theta } => {
                let (a, theta) = (*a, theta.clone());
                let set = self.exact(a, len)?;
                Ok(set.iter().filter(|(_, mu)| satisfies(g, mu, &theta)).cloned().collect())
            }
            Op::Repeat { vars, .. } => {
                if vars.is_empty() {
                    self.repeat_var_free(id, len)
                } else {
                    self.repeat_with_vars(id, len)
                }
            }
        }
    }

    fn repeat_parts(&self, id: usize) -> (usize, u64, Option<u64>) {
        match &self.ops[id] {
            Op::Repeat { body, min, max, .. } => (*body, *min, *max),
            _ => unreachable!("not a repetition"),
        }
    }

    /// Paths obtained by concatenating positive-length body answers (or a
    /// single node); a superset of the repetition's answer paths.
    fn candidates(&mut self, id: usize, len: usize) -> Result<Arc<Vec<Path>>, EvalError> {
        if let Some(c) = self.candidates.get(&(id, len)) {
            return Ok(c.clone());
        }
        let (body, _, _) = self.repeat_parts(id);
        let mut out = Dedup::default();
        if len == 0 {
            for u in self.g.nodes() {
                out.push(Path::single(u));
            }
        } else {
            for k in 1..=len {
                let prefixes = self.candidates(id, len - k)?;
                if prefixes.is_empty() {
                    continue;
                }
                let (segs, ix) = self.index_of(body, k)?;
                for c in prefixes.iter() {
                    for &j in ix.get(&c.tgt()).into_iter().flatten() {
                        let path = c.concat(&segs[j].0).expect("indexed by source node");
                        if self.filter.admits(&path) {
                            out.push(path);
                        }
                    }
                }
                self.check(&out.items, "a repetition")?;
            }
        }
        let c = Arc::new(out.into_vec());
        self.candidates.insert((id, len), c.clone());
        Ok(c)
    }

    fn repeat_var_free(&mut self, id: usize, len: usize) -> Result<Vec<Ans>, EvalError> {
        let (body, min, max) = self.repeat_parts(id);
        let candidates = self.candidates(id, len)?;
        let mut out = Vec::new();
        if max.is_none() && min <= 1 {
            // every positive candidate is some power k >= 1; edgeless ones
            // need power 0 or an edgeless body match
            if len > 0 {
                out.extend(candidates.iter().map(|p| (p.clone(), Assignment::new())));
            } else {
                let (_, zero_ix) = self.index_of(body, 0)?;
                for p in candidates.iter() {
                    let zero_ok = self.mode == CollectMode::Grouping && zero_ix.contains_key(&p.src());
                    if min == 0 || zero_ok {
                        out.push((p.clone(), Assignment::new()));
                    }
                }
            }
            return Ok(out);
        }
        let pattern = match &self.ops[id] {
            Op::Repeat { pattern, .. } => pattern.clone(),
            _ => unreachable!(),
        };
        for p in candidates.iter() {
            if pairs_no_vars(self.g, &pattern, p, self.mode)?.contains(&(0, len)) {
                out.push((p.clone(), Assignment::new()));
            }
        }
        Ok(out)
    }

    fn repeat_states(&mut self, id: usize, len: usize) -> Result<Arc<Vec<RepState>>, EvalError> {
        if let Some(s) = self.states.get(&(id, len)) {
            return Ok(s.clone());
        }
        let (body, min, max) = self.repeat_parts(id);
        let bump = |c: u64| match max {
            None => (c + 1).min(min),
            Some(_) => c + 1,
        };
        let within = |c: u64| max.is_none_or(|m| c <= m);

        let mut out = Dedup::default();
        if len == 0 {
            for u in self.g.nodes() {
                out.push(RepState { path: Path::single(u), collect: CollectState::new(), pumpable: false, count: 0 });
            }
        } else {
            for k in 1..=len {
                let prev = self.repeat_states(id, len - k)?;
                if prev.is_empty() {
                    continue;
                }
                let (segs, ix) = self.index_of(body, k)?;
                for s in prev.iter() {
                    for &j in ix.get(&s.path.tgt()).into_iter().flatten() {
                        let (q, nu) = &segs[j];
                        let count = bump(s.count);
                        if !within(count) {
                            continue;
                        }
                        let path = s.path.concat(q).expect("indexed by source node");
                        if !self.filter.admits(&path) {
                            continue;
                        }
                        let Some(collect) = s.collect.push(q, nu, self.lenient) else { continue };
                        out.push(RepState { path, collect, pumpable: s.pumpable, count });
                    }
                }
                self.check(&out.items, "a repetition")?;
            }
        }

        if self.mode == CollectMode::Grouping {
            let (zeros, zero_ix) = self.index_of(body, 0)?;
            let mut i = 0;
            while i < out.items.len() {
                let s = out.items[i].clone();
                i += 1;
                for &j in zero_ix.get(&s.path.tgt()).into_iter().flatten() {
                    let (q, nu) = &zeros[j];
                    let Some(collect) = s.collect.push(q, nu, self.lenient) else { continue };
                    if s.collect.open_assignment().is_some() && collect == s.collect {
                        // repeating a fused segment: covered by `pumpable`
                        continue;
                    }
                    let count = bump(s.count);
                    if !within(count) {
                        continue;
                    }
                    out.push(RepState { path: s.path.clone(), collect, pumpable: true, count });
                }
                self.check(&out.items, "a repetition")?;
            }
        }

        let states = Arc::new(out.into_vec());
        self.states.insert((id, len), states.clone());
        Ok(states)
    }

    fn repeat_with_vars(&mut self, id: usize, len: usize) -> Result<Vec<Ans>, EvalError> {
        let (_, min, max) = self.repeat_parts(id);
        let vars = match &self.ops[id] {
            Op::Repeat { vars, .. } => vars.clone(),
            _ => unreachable!(),
        };
        let states = self.repeat_states(id, len)?;
        let mut out = Dedup::default();
        for s in states.iter() {
            let count_ok = max.is_none_or(|m| s.count <= m) && (s.count >= min || s.pumpable);
            if count_ok {
                out.push((s.path.clone(), s.collect.finish(&vars)));
            }
        }
        Ok(out.into_vec())
    }
}

fn bind(var: &Option<Var>, value: impl FnOnce() -> Value) -> Assignment {
    match var {
        Some(x) => Assignment::singleton(x.clone(), value()),
        None => Assignment::new(),
    }
}

fn compile(p: &Pattern, ops: &mut Vec<Op>) -> usize {
    let op = match p {
        Pattern::Node(d) => Op::Node { label: d.label.clone(), var: d.var.clone() },
        Pattern::Edge(dir, d) => Op::Edge { dir: *dir, label: d.label.clone(), var: d.var.clone() },
        Pattern::Union(a, b) => {
            let (va, vb) = (a.vars(), b.vars());
            let pad_a = vb.difference(&va).cloned().collect();
            let pad_b = va.difference(&vb).cloned().collect();
            Op::Union { a: compile(a, ops), b: compile(b, ops), pad_a, pad_b }
        }
        Pattern::Concat(a, b) => Op::Concat { a: compile(a, ops), b: compile(b, ops) },
        Pattern::Cond(a, theta) => Op::Cond { a: compile(a, ops), theta: theta.clone() },
        Pattern::Repeat(a, min, max) => {
            Op::Repeat { body: compile(a, ops), min: *min, max: *max, vars: a.vars(), pattern: p.clone() }
        }
    };
    ops.push(op);
    ops.len() - 1
}

/// Insertion-ordered set.
struct Dedup<T> {
    seen: HashSet<T>,
    items: Vec<T>,
}

impl<T> Default for Dedup<T> {
    fn default() -> Self {
        Dedup { seen: HashSet::new(), items: Vec::new() }
    }
}

impl<T: Clone + Eq + Hash> Dedup<T> {
    fn push(&mut self, x: T) {
        if self.seen.insert(x.clone()) {
            self.items.push(x);
        }
    }

    fn into_vec(self) -> Vec<T> {
        self.items
    }
}
