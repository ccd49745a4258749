//! Literal pattern and query semantics over explicitly enumerated paths.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use super::paths::enumerate_paths;
use super::{OracleConfig, OracleError};
use crate::graph::{EdgeEnds, ElementRef, Path, PropertyGraph};
use crate::syntax::{Condition, Descriptor, Direction, Pattern, Query, Restrictor, Var};
use crate::typing::{infer_pattern, infer_query, validate_pattern_for_mode, validate_query_for_mode, CollectMode};
use crate::value::{Answer, Assignment, Value};

/// `{ μ : (p, μ) ∈ ⟦π⟧ }` for one fixed path.
pub fn naive_match(
    g: &PropertyGraph,
    pattern: &Pattern,
    path: &Path,
    cfg: &OracleConfig,
) -> Result<BTreeSet<Assignment>, OracleError> {
    infer_pattern(pattern)?;
    validate_pattern_for_mode(pattern, cfg.collect_mode)?;
    let mut m = Matcher { g, path, cfg, memo: HashMap::new() };
    Ok((*m.matches(pattern, 0, path.len())?).clone())
}

/// `⟦Q⟧` by enumerating all paths up to the length bound and matching each.
pub fn brute_force_query(g: &PropertyGraph, q: &Query, cfg: &OracleConfig) -> Result<BTreeSet<Answer>, OracleError> {
    infer_query(q)?;
    validate_query_for_mode(q, cfg.collect_mode)?;
    query(g, q, cfg)
}

fn query(g: &PropertyGraph, q: &Query, cfg: &OracleConfig) -> Result<BTreeSet<Answer>, OracleError> {
    match q {
        Query::Restricted(r, p) => Ok(restricted(g, *r, p, cfg)?
            .into_iter()
            .map(|(path, mu)| Answer { paths: vec![path], bindings: mu })
            .collect()),
        Query::Bound(x, r, p) => Ok(restricted(g, *r, p, cfg)?
            .into_iter()
            .map(|(path, mut mu)| {
                mu.insert(x.clone(), Value::Path(path.clone()));
                Answer { paths: vec![path], bindings: mu }
            })
            .collect()),
        Query::Join(a, b) => {
            let left = query(g, a, cfg)?;
            let right = query(g, b, cfg)?;
            let mut out = BTreeSet::new();
            for l in &left {
                for r in &right {
                    if let Some(bindings) = unify(&l.bindings, &r.bindings, false) {
                        let paths = l.paths.iter().chain(&r.paths).cloned().collect();
                        out.insert(Answer { paths, bindings });
                    }
                }
                check(out.len(), cfg)?;
            }
            Ok(out)
        }
    }
}

fn restricted(
    g: &PropertyGraph,
    r: Restrictor,
    p: &Pattern,
    cfg: &OracleConfig,
) -> Result<Vec<(Path, Assignment)>, OracleError> {
    let bound = cfg.max_len.unwrap_or_else(|| length_bound(g, r, p));
    let mut answers = Vec::new();
    for path in enumerate_paths(g, bound, &cfg.budget)? {
        let keep = match r {
            Restrictor::Trail | Restrictor::ShortestTrail => no_repeats(path.edges()),
            Restrictor::Simple | Restrictor::ShortestSimple => no_repeats(path.nodes()),
            Restrictor::Shortest => true,
        };
        if !keep {
            continue;
        }
        let mut m = Matcher { g, path: &path, cfg, memo: HashMap::new() };
        for mu in m.matches(p, 0, path.len())?.iter() {
            answers.push((path.clone(), mu.clone()));
        }
        check(answers.len(), cfg)?;
    }
    if matches!(r, Restrictor::Shortest | Restrictor::ShortestTrail | Restrictor::ShortestSimple) {
        let mut best = BTreeMap::new();
        for (path, _) in &answers {
            let entry = best.entry((path.src(), path.tgt())).or_insert(usize::MAX);
            *entry = (*entry).min(path.len());
        }
        answers.retain(|(path, _)| best[&(path.src(), path.tgt())] == path.len());
    }
    Ok(answers)
}

fn no_repeats<T: Ord>(items: &[T]) -> bool {
    let set: BTreeSet<&T> = items.iter().collect();
    set.len() == items.len()
}

/// |N| for simple paths, |E| for trails, (|N|+|E|)·2^size for shortest
/// (capped at 10⁶); combinations take the smaller, and never below 1.
fn length_bound(g: &PropertyGraph, r: Restrictor, p: &Pattern) -> usize {
    let n = g.node_count() as u128;
    let e = g.edge_count() as u128;
    let shortest = if n + e == 0 { 0 } else { ((n + e) << p.size().min(100)).min(1_000_000) };
    let b = match r {
        Restrictor::Simple => n,
        Restrictor::Trail => e,
        Restrictor::Shortest => shortest,
        Restrictor::ShortestSimple => n.min(shortest),
        Restrictor::ShortestTrail => e.min(shortest),
    };
    b.max(1) as usize
}

fn check(n: usize, cfg: &OracleConfig) -> Result<(), OracleError> {
    if n > cfg.budget.max_answers {
        Err(OracleError::Budget(format!("more than {} answers", cfg.budget.max_answers)))
    } else {
        Ok(())
    }
}

/// Merge of two assignments agreeing on shared variables; with `lenient`,
/// `Nothing` agrees with anything and gives way to the other value.
fn unify(a: &Assignment, b: &Assignment, lenient: bool) -> Option<Assignment> {
    let mut out = a.clone();
    for (x, vb) in b.iter() {
        let merged = match a.get(x) {
            None => vb.clone(),
            Some(va) if va == vb => va.clone(),
            Some(Value::Nothing) if lenient => vb.clone(),
            Some(va) if lenient && *vb == Value::Nothing => va.clone(),
            Some(_) => return None,
        };
        out.insert(x.clone(), merged);
    }
    Some(out)
}

fn holds(g: &PropertyGraph, mu: &Assignment, theta: &Condition) -> bool {
    let lookup = |x: &Var, key: &str| {
        let el = match mu.get(x) {
            Some(Value::Node(n)) => ElementRef::Node(*n),
            Some(Value::Edge(e)) => ElementRef::Edge(*e),
            _ => return None,
        };
        g.property(el, key).cloned()
    };
    match theta {
        Condition::PropEqConst { var, key, value } => lookup(var, key).is_some_and(|c| c == *value),
        Condition::PropEqProp { left, left_key, right, right_key } => {
            match (lookup(left, left_key), lookup(right, right_key)) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            }
        }
        Condition::And(a, b) => holds(g, mu, a) && holds(g, mu, b),
        Condition::Or(a, b) => holds(g, mu, a) || holds(g, mu, b),
        Condition::Not(a) => !holds(g, mu, a),
    }
}

fn bind(d: &Descriptor, v: Value) -> Assignment {
    let mut mu = Assignment::new();
    if let Some(x) = &d.var {
        mu.insert(x.clone(), v);
    }
    mu
}

type Matches = Rc<BTreeSet<Assignment>>;

struct Matcher<'a> {
    g: &'a PropertyGraph,
    path: &'a Path,
    cfg: &'a OracleConfig,
    /// Keyed by subpattern address and node positions.
    memo: HashMap<(usize, usize, usize), Matches>,
}

/// Repetition prefix: the segments matched so far, grouped as the final
/// `collect` will see them.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Prefix {
    pos: usize,
    closed: Vec<(Path, Assignment)>,
    /// Assignments of the trailing run of edgeless segments (grouping mode).
    open: BTreeSet<Assignment>,
}

impl Matcher<'_> {
    /// Assignments μ with `(p[i..j], μ) ∈ ⟦π⟧`, where `p[i..j]` is the
    /// subpath between node positions `i ≤ j`.
    fn matches(&mut self, pat: &Pattern, i: usize, j: usize) -> Result<Matches, OracleError> {
        let key = (pat as *const Pattern as usize, i, j);
        if let Some(m) = self.memo.get(&key) {
            return Ok(m.clone());
        }
        let out = Rc::new(self.compute(pat, i, j)?);
        check(out.len(), self.cfg)?;
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    fn compute(&mut self, pat: &Pattern, i: usize, j: usize) -> Result<BTreeSet<Assignment>, OracleError> {
        let g = self.g;
        let nodes = self.path.nodes();
        let mut out = BTreeSet::new();
        match pat {
            Pattern::Node(d) => {
                let u = nodes[i];
                if i == j && d.label.as_ref().is_none_or(|l| g.labels(ElementRef::Node(u)).contains(l)) {
                    out.insert(bind(d, Value::Node(u)));
                }
            }
            Pattern::Edge(dir, d) => {
                if j != i + 1 {
                    return Ok(out);
                }
                let (u, e, v) = (nodes[i], self.path.edges()[i], nodes[j]);
                if d.label.as_ref().is_some_and(|l| !g.labels(ElementRef::Edge(e)).contains(l)) {
                    return Ok(out);
                }
                let ok = match (dir, g.ends(e)) {
                    (Direction::Forward, EdgeEnds::Directed { src, tgt }) => (src, tgt) == (u, v),
                    (Direction::Backward, EdgeEnds::Directed { src, tgt }) => (src, tgt) == (v, u),
                    (Direction::Undirected, EdgeEnds::Undirected { a, b }) => (a, b) == (u, v) || (a, b) == (v, u),
                    _ => false,
                };
                if ok {
                    out.insert(bind(d, Value::Edge(e)));
                }
            }
            Pattern::Union(a, b) => {
                let all = pat.vars();
                for side in [a, b] {
                    for mu in self.matches(side, i, j)?.iter() {
                        let mut mu = mu.clone();
                        for x in &all {
                            if !mu.contains(x) {
                                mu.insert(x.clone(), Value::Nothing);
                            }
                        }
                        out.insert(mu);
                    }
                }
            }
            Pattern::Concat(a, b) => {
                for k in i..=j {
                    let left = self.matches(a, i, k)?;
                    if left.is_empty() {
                        continue;
                    }
                    let right = self.matches(b, k, j)?;
                    for l in left.iter() {
                        for r in right.iter() {
                            if let Some(mu) = unify(l, r, false) {
                                out.insert(mu);
                            }
                        }
                    }
                    check(out.len(), self.cfg)?;
                }
            }
            Pattern::Cond(a, theta) => {
                out.extend(self.matches(a, i, j)?.iter().filter(|mu| holds(g, mu, theta)).cloned());
            }
            Pattern::Repeat(body, min, max) => out = self.repeat(body, *min, *max, i, j)?,
        }
        Ok(out)
    }

    /// Union of the powers `n..=m` on `p[i..j]`. In grouping mode, powers
    /// above `max(n, B)` with `B = (L+1)(M+1)` add nothing, where `L = j - i`
    /// and `M` bounds the number of edgeless answers of the body at a node.
    /// In the other modes every segment has an edge, so at most `L` count.
    fn repeat(
        &mut self,
        body: &Pattern,
        min: u64,
        max: Option<u64>,
        i: usize,
        j: usize,
    ) -> Result<BTreeSet<Assignment>, OracleError> {
        let vars = body.vars();
        let len = (j - i) as u64;
        let mut out = BTreeSet::new();
        if min == 0 && i == j {
            out.insert(vars.iter().map(|x| (x.clone(), Value::group(Vec::new()))).collect());
        }
        let top = match self.cfg.collect_mode {
            CollectMode::Grouping => {
                let mut most = 0;
                for t in i..=j {
                    most = most.max(self.matches(body, t, t)?.len() as u64);
                }
                min.max((len + 1) * (most + 1))
            }
            CollectMode::Dynamic | CollectMode::Syntactic => len,
        };
        let top = max.map_or(top, |m| m.min(top));

        let mut level: BTreeSet<Prefix> = BTreeSet::from([Prefix { pos: i, closed: Vec::new(), open: BTreeSet::new() }]);
        for k in 1..=top {
            let mut next = BTreeSet::new();
            for prefix in &level {
                for t in prefix.pos..=j {
                    for mu in self.matches(body, prefix.pos, t)?.iter() {
                        if let Some(p) = self.extend(prefix, t, mu) {
                            next.insert(p);
                        }
                    }
                }
                check(next.len(), self.cfg)?;
            }
            level = next;
            if level.is_empty() {
                break;
            }
            if k >= min {
                for prefix in level.iter().filter(|p| p.pos == j) {
                    out.insert(self.finish(prefix, &vars));
                }
            }
        }
        Ok(out)
    }

    fn extend(&self, prefix: &Prefix, t: usize, mu: &Assignment) -> Option<Prefix> {
        let lenient = self.cfg.lenient_unify;
        let segment = self.path.subpath(prefix.pos, t);
        let mut next = prefix.clone();
        next.pos = t;
        match self.cfg.collect_mode {
            CollectMode::Dynamic if segment.is_edgeless() => return None,
            CollectMode::Dynamic | CollectMode::Syntactic => next.closed.push((segment, mu.clone())),
            CollectMode::Grouping if segment.is_edgeless() => {
                if prefix.open.iter().any(|other| unify(other, mu, lenient).is_none()) {
                    return None;
                }
                next.open.insert(mu.clone());
            }
            CollectMode::Grouping => {
                if let Some(run) = self.close_run(prefix) {
                    next.closed.push(run);
                }
                next.open.clear();
                next.closed.push((segment, mu.clone()));
            }
        }
        Some(next)
    }

    /// The fused group for the trailing edgeless run, if any.
    fn close_run(&self, prefix: &Prefix) -> Option<(Path, Assignment)> {
        let mut members = prefix.open.iter();
        let first = members.next()?.clone();
        let merged = members
            .try_fold(first, |acc, mu| unify(&acc, mu, self.cfg.lenient_unify))
            .expect("members of an edgeless run unify pairwise");
        Some((Path::single(self.path.nodes()[prefix.pos]), merged))
    }

    fn finish(&self, prefix: &Prefix, vars: &BTreeSet<Var>) -> Assignment {
        let mut groups = prefix.closed.clone();
        groups.extend(self.close_run(prefix));
        vars.iter()
            .map(|x| {
                let items = groups.iter().map(|(p, mu)| (p.clone(), mu.get(x).cloned().unwrap_or(Value::Nothing)));
                (x.clone(), Value::group(items.collect()))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;
    use crate::syntax::{parse_pattern, parse_query};

    fn chain() -> PropertyGraph {
        GraphBuilder::new()
            .node("n1", &[])
            .node("n2", &[])
            .node("n3", &[])
            .directed("e1", "n1", "n2", &[])
            .directed("e2", "n2", "n3", &[])
            .build()
            .unwrap()
    }

    fn names(g: &PropertyGraph, set: &BTreeSet<Assignment>) -> Vec<String> {
        set.iter().map(|mu| mu.display(g)).collect()
    }

    #[test]
    fn fixed_path_matches() {
        let g = chain();
        let cfg = OracleConfig::default();
        let p1 = g.path(&["n1"]).unwrap();
        assert_eq!(names(&g, &naive_match(&g, &parse_pattern("()").unwrap(), &p1, &cfg).unwrap()), vec!["{}"]);
        assert_eq!(
            names(&g, &naive_match(&g, &parse_pattern("(x)(y)").unwrap(), &p1, &cfg).unwrap()),
            vec!["{x↦n1, y↦n1}"]
        );
        let p = g.path(&["n1", "e1", "n2"]).unwrap();
        assert!(naive_match(&g, &parse_pattern("[-[g]->]{0..0}").unwrap(), &p, &cfg).unwrap().is_empty());
        let p = g.path(&["n1", "e1", "n2", "e2", "n3"]).unwrap();
        assert_eq!(
            names(&g, &naive_match(&g, &parse_pattern("[-[g]->]{2}").unwrap(), &p, &cfg).unwrap()),
            vec!["{g↦list((path(n1,e1,n2), e1), (path(n2,e2,n3), e2))}"]
        );
    }

    #[test]
    fn edgeless_runs_fuse() {
        let g = GraphBuilder::new().node("u", &[]).build().unwrap();
        let p = g.path(&["u"]).unwrap();
        let cfg = OracleConfig::default();
        let got = naive_match(&g, &parse_pattern("[(x)]{0..}").unwrap(), &p, &cfg).unwrap();
        assert_eq!(names(&g, &got), vec!["{x↦list()}", "{x↦list((path(u), u))}"]);
        let dynamic = OracleConfig { collect_mode: CollectMode::Dynamic, ..cfg };
        assert_eq!(naive_match(&g, &parse_pattern("[(x)]{0..}").unwrap(), &p, &dynamic).unwrap().len(), 1);
    }

    #[test]
    fn simple_paths_of_triangle() {
        let g = GraphBuilder::new()
            .node("a", &[])
            .node("b", &[])
            .node("c", &[])
            .directed("ab", "a", "b", &[])
            .directed("bc", "b", "c", &[])
            .directed("ca", "c", "a", &[])
            .build()
            .unwrap();
        let q = parse_query("SIMPLE ->{0..}").unwrap();
        let answers = brute_force_query(&g, &q, &OracleConfig::default()).unwrap();
        assert_eq!(answers.len(), 3 + 3 + 3);
    }

    #[test]
    fn empty_graph() {
        let g = GraphBuilder::new().build().unwrap();
        let q = parse_query("TRAIL -[e]->").unwrap();
        assert!(brute_force_query(&g, &q, &OracleConfig::default()).unwrap().is_empty());
    }
}
