//! Query evaluation: restrictors, path binding and joins.

use std::collections::{BTreeSet, HashSet};

use super::engine::Engine;
use super::relaxed::endpoint_pairs;
use super::{restrictor_filter, unify, EvalConfig, EvalError, MaxLen};
use crate::graph::{Path, PropertyGraph};
use crate::syntax::{Pattern, Query, Restrictor};
use crate::typing::{infer_query, validate_query_for_mode};
use crate::value::{Answer, Assignment, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryResult {
    /// The answer set in a deterministic order.
    pub answers: Vec<Answer>,
    /// Largest path-length bound used by any path query of the join.
    pub bound_used: usize,
}

/// Upper bound on the length of any answer path for a restricted pattern:
/// |N| for simple paths, |E| for trails, and (|N| + |E|)·2^|π| (capped) for
/// shortest paths; combined restrictors take the smaller bound.
pub fn default_length_bound(r: Restrictor, g: &PropertyGraph, p: &Pattern, shortest_cap: u64) -> usize {
    let simple = g.node_count() as u64;
    let trail = (g.directed_edge_count() + g.undirected_edge_count()) as u64;
    let shortest = {
        let base = (g.node_count() + g.edge_count()) as u64;
        let size = p.size();
        if base == 0 {
            0
        } else if size >= 64 {
            shortest_cap
        } else {
            base.saturating_mul(1u64 << size).min(shortest_cap)
        }
    };
    let bound = match r {
        Restrictor::Simple => simple,
        Restrictor::Trail => trail,
        Restrictor::Shortest => shortest,
        Restrictor::ShortestSimple => simple.min(shortest),
        Restrictor::ShortestTrail => trail.min(shortest),
    };
    bound.max(1) as usize
}

/// Evaluates a query. Type errors and mode violations are reported before
/// any evaluation happens.
pub fn eval_query(g: &PropertyGraph, q: &Query, cfg: &EvalConfig) -> Result<QueryResult, EvalError> {
    infer_query(q)?;
    validate_query_for_mode(q, cfg.collect_mode)?;
    let mut bound_used = 0;
    let mut answers = eval(g, q, cfg, &mut bound_used)?;
    answers.sort();
    answers.dedup();
    Ok(QueryResult { answers, bound_used })
}

fn eval(g: &PropertyGraph, q: &Query, cfg: &EvalConfig, bound_used: &mut usize) -> Result<Vec<Answer>, EvalError> {
    match q {
        Query::Restricted(r, p) => {
            let pairs = eval_restricted(g, *r, p, cfg, bound_used)?;
            Ok(pairs.into_iter().map(|(path, mu)| Answer { paths: vec![path], bindings: mu }).collect())
        }
        Query::Bound(x, r, p) => {
            let pairs = eval_restricted(g, *r, p, cfg, bound_used)?;
            Ok(pairs
                .into_iter()
                .map(|(path, mut mu)| {
                    mu.insert(x.clone(), Value::Path(path.clone()));
                    Answer { paths: vec![path], bindings: mu }
                })
                .collect())
        }
        Query::Join(a, b) => {
            let left = eval(g, a, cfg, bound_used)?;
            let right = eval(g, b, cfg, bound_used)?;
            let mut out = Vec::new();
            for l in &left {
                for r in &right {
                    if let Some(bindings) = unify(&l.bindings, &r.bindings, false) {
                        let mut paths = l.paths.clone();
                        paths.extend(r.paths.iter().cloned());
                        out.push(Answer { paths, bindings });
                        if out.len() > cfg.max_answers {
                            return Err(EvalError::ResourceLimit { limit: cfg.max_answers, context: "a join".into() });
                        }
                    }
                }
            }
            Ok(out)
        }
    }
}

fn eval_restricted(
    g: &PropertyGraph,
    r: Restrictor,
    p: &Pattern,
    cfg: &EvalConfig,
    bound_used: &mut usize,
) -> Result<Vec<(Path, Assignment)>, EvalError> {
    let bound = match cfg.max_len {
        MaxLen::Fixed(n) => n,
        MaxLen::Auto => default_length_bound(r, g, p, cfg.shortest_cap),
    };
    *bound_used = (*bound_used).max(bound);
    let mut engine = Engine::new(g, p, cfg, restrictor_filter(r));
    let mut out = Vec::new();
    let limit_err = || EvalError::ResourceLimit { limit: cfg.max_answers, context: "query answers".into() };

    if !r.is_shortest() {
        for len in 0..=bound {
            out.extend(engine.root_exact(len)?.iter().cloned());
            if out.len() > cfg.max_answers {
                return Err(limit_err());
            }
        }
        return Ok(out);
    }

    // Lengths are explored in increasing order; the first length at which
    // an endpoint pair shows up is its minimum.
    let target = endpoint_pairs(g, p, cfg.collect_mode, cfg.max_answers);
    let mut found = HashSet::new();
    for len in 0..=bound {
        let layer = engine.root_exact(len)?;
        let mut fresh = BTreeSet::new();
        for (path, mu) in layer.iter() {
            let pair = (path.src(), path.tgt());
            if !found.contains(&pair) {
                fresh.insert(pair);
                out.push((path.clone(), mu.clone()));
            }
        }
        if out.len() > cfg.max_answers {
            return Err(limit_err());
        }
        found.extend(fresh);
        if target.as_ref().is_some_and(|t| t.iter().all(|pair| found.contains(pair))) {
            break;
        }
    }
    Ok(out)
}
