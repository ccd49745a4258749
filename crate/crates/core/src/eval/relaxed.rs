//! Endpoint relation of a pattern, used to stop shortest-path search early.
//!
//! Tracks triples `(src, tgt, σ)` where σ binds the node and edge variables
//! that are not under a repetition (the only ones that can be shared by a
//! concatenation or mentioned by a condition outside it). Concatenation,
//! union and conditions are computed exactly on these triples; repetitions
//! are projected to endpoint pairs and composed. The only information lost
//! is whether a grouping-mode `collect` succeeds, and a failing edgeless run
//! can always be replaced by repeating one of its segments, so the endpoint
//! pairs are exactly those of the unbounded semantics.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use super::{edge_pattern_paths, satisfies, unify};
use crate::graph::{NodeId, PropertyGraph};
use crate::syntax::{Pattern, Var};
use crate::typing::CollectMode;
use crate::value::{Assignment, Value};

#[derive(Clone, PartialEq, Eq, Hash)]
struct Entry {
    src: NodeId,
    tgt: NodeId,
    sigma: Assignment,
    /// Some witness path has at least one edge.
    positive: bool,
}

/// Lower bounds above this are not unrolled; the caller falls back to the
/// plain length bound.
const MAX_UNROLL: u64 = 10_000;

/// Endpoint pairs of all answers to `p`, or `None` if the relation grows
/// beyond `limit` entries.
pub(crate) fn endpoint_pairs(
    g: &PropertyGraph,
    p: &Pattern,
    mode: CollectMode,
    limit: usize,
) -> Option<HashSet<(NodeId, NodeId)>> {
    let rel = relation(g, p, mode, limit)?;
    Some(rel.into_iter().map(|e| (e.src, e.tgt)).collect())
}

fn tracked(p: &Pattern) -> BTreeSet<Var> {
    match p {
        Pattern::Node(d) | Pattern::Edge(_, d) => d.var.iter().cloned().collect(),
        Pattern::Union(a, b) | Pattern::Concat(a, b) => {
            let mut s = tracked(a);
            s.extend(tracked(b));
            s
        }
        Pattern::Cond(a, _) => tracked(a),
        Pattern::Repeat(..) => BTreeSet::new(),
    }
}

fn relation(g: &PropertyGraph, p: &Pattern, mode: CollectMode, limit: usize) -> Option<Vec<Entry>> {
    let out: Vec<Entry> = match p {
        Pattern::Node(d) => g
            .nodes()
            .filter(|&u| d.label.as_ref().is_none_or(|l| g.node_has_label(u, l)))
            .map(|u| Entry { src: u, tgt: u, sigma: bind(&d.var, Value::Node(u)), positive: false })
            .collect(),
        Pattern::Edge(dir, d) => edge_pattern_paths(g, *dir, d.label.as_deref())
            .into_iter()
            .map(|(e, path)| Entry {
                src: path.src(),
                tgt: path.tgt(),
                sigma: bind(&d.var, Value::Edge(e)),
                positive: true,
            })
            .collect(),
        Pattern::Union(a, b) => {
            let (ta, tb) = (tracked(a), tracked(b));
            let mut out = HashSet::new();
            for (side, pad) in [(a, tb.difference(&ta)), (b, ta.difference(&tb))] {
                let pad: Vec<&Var> = pad.collect();
                for mut e in relation(g, side, mode, limit)? {
                    for x in &pad {
                        e.sigma.insert((*x).clone(), Value::Nothing);
                    }
                    out.insert(e);
                }
            }
            out.into_iter().collect()
        }
        Pattern::Concat(a, b) => {
            let left = relation(g, a, mode, limit)?;
            let right = relation(g, b, mode, limit)?;
            let mut by_src: HashMap<NodeId, Vec<&Entry>> = HashMap::new();
            for e in &right {
                by_src.entry(e.src).or_default().push(e);
            }
            let mut out = HashSet::new();
            for l in &left {
                for r in by_src.get(&l.tgt).into_iter().flatten() {
                    if let Some(sigma) = unify(&l.sigma, &r.sigma, false) {
                        out.insert(Entry { src: l.src, tgt: r.tgt, sigma, positive: l.positive || r.positive });
                        if out.len() > limit {
                            return None;
                        }
                    }
                }
            }
            out.into_iter().collect()
        }
        Pattern::Cond(a, theta) => {
            relation(g, a, mode, limit)?.into_iter().filter(|e| satisfies(g, &e.sigma, theta)).collect()
        }
        Pattern::Repeat(a, min, max) => {
            if *min > MAX_UNROLL {
                return None;
            }
            let mut steps: HashMap<NodeId, HashSet<(NodeId, bool)>> = HashMap::new();
            for e in relation(g, a, mode, limit)? {
                if mode == CollectMode::Dynamic && !e.positive {
                    continue;
                }
                steps.entry(e.src).or_default().insert((e.tgt, e.positive));
            }
            let advance = |from: &HashSet<(NodeId, NodeId, bool)>| {
                let mut next = HashSet::new();
                for &(s, t, pos) in from {
                    for &(t2, pos2) in steps.get(&t).into_iter().flatten() {
                        next.insert((s, t2, pos || pos2));
                    }
                }
                next
            };
            let mut level: HashSet<(NodeId, NodeId, bool)> = g.nodes().map(|u| (u, u, false)).collect();
            for _ in 0..*min {
                level = advance(&level);
                if level.is_empty() || level.len() > limit {
                    break;
                }
            }
            if level.len() > limit {
                return None;
            }
            // breadth-first search from the min-th power, at most max - min more steps
            let budget = max.map(|m| m - min);
            let mut dist: HashMap<(NodeId, NodeId, bool), u64> = level.iter().map(|&t| (t, 0)).collect();
            let mut queue: VecDeque<(NodeId, NodeId, bool)> = level.into_iter().collect();
            while let Some(t) = queue.pop_front() {
                let d = dist[&t];
                if budget.is_some_and(|b| d >= b) {
                    continue;
                }
                let (s, v, pos) = t;
                for &(v2, pos2) in steps.get(&v).into_iter().flatten() {
                    let next = (s, v2, pos || pos2);
                    if let std::collections::hash_map::Entry::Vacant(slot) = dist.entry(next) {
                        slot.insert(d + 1);
                        queue.push_back(next);
                    }
                }
                if dist.len() > limit {
                    return None;
                }
            }
            dist.into_keys()
                .map(|(src, tgt, positive)| Entry { src, tgt, sigma: Assignment::new(), positive })
                .collect()
        }
    };
    if out.len() > limit {
        return None;
    }
    Some(out)
}

fn bind(var: &Option<Var>, v: Value) -> Assignment {
    match var {
        Some(x) => Assignment::singleton(x.clone(), v),
        None => Assignment::new(),
    }
}
