//! Pattern and query evaluation.
//!
//! Patterns denote possibly infinite sets of `(path, assignment)` pairs, so
//! evaluation is always bounded by a maximum path length. Queries pick the
//! bound from their restrictor unless one is configured explicitly.

mod collect;
mod engine;
mod novars;
mod query;
mod relaxed;

use thiserror::Error;

use crate::graph::{Constant, EdgeEnds, EdgeId, ElementRef, NodeId, Path, PropertyGraph};
use crate::syntax::{Condition, Direction, Pattern, Restrictor};
use crate::typing::{infer_pattern, validate_pattern_for_mode, TypeError};
use crate::value::{Assignment, Value};

pub use crate::typing::CollectMode;
pub use collect::{collect_fn, refactor, refactor_groups, unify, CollectState};
pub use novars::pairs_no_vars;
pub use query::{default_length_bound, eval_query, QueryResult};

/// Default ceiling on the size of any answer set built during evaluation.
pub const DEFAULT_MAX_ANSWERS: usize = 100_000;

/// Default cap on the length bound used for `SHORTEST` queries.
pub const DEFAULT_SHORTEST_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxLen {
    /// Derive the bound from the restrictor (queries) or the graph size
    /// (bare patterns).
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalConfig {
    pub collect_mode: CollectMode,
    pub max_len: MaxLen,
    pub lenient_unify: bool,
    pub max_answers: usize,
    pub shortest_cap: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            collect_mode: CollectMode::Grouping,
            max_len: MaxLen::Auto,
            lenient_unify: false,
            max_answers: DEFAULT_MAX_ANSWERS,
            shortest_cap: DEFAULT_SHORTEST_CAP,
        }
    }
}

impl EvalConfig {
    pub fn with_mode(mut self, mode: CollectMode) -> Self {
        self.collect_mode = mode;
        self
    }

    pub fn with_max_len(mut self, len: usize) -> Self {
        self.max_len = MaxLen::Fixed(len);
        self
    }

    pub fn with_lenient_unify(mut self, lenient: bool) -> Self {
        self.lenient_unify = lenient;
        self
    }

    pub fn with_max_answers(mut self, n: usize) -> Self {
        self.max_answers = n;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("resource limit exceeded: more than {limit} answers while evaluating {context}")]
    ResourceLimit { limit: usize, context: String },
    #[error("{0}")]
    Precondition(String),
}

/// Length bound for a bare pattern: the configured one, or |N| + |E| under
/// `MaxLen::Auto`. Patterns have no restrictor, so any automatic bound is a
/// convention.
pub fn pattern_length_bound(g: &PropertyGraph, cfg: &EvalConfig) -> usize {
    match cfg.max_len {
        MaxLen::Fixed(n) => n,
        MaxLen::Auto => (g.node_count() + g.edge_count()).max(1),
    }
}

/// All `(p, μ)` in the pattern's semantics with `len(p)` at most the
/// configured bound, in a deterministic order.
pub fn eval_pattern(g: &PropertyGraph, p: &Pattern, cfg: &EvalConfig) -> Result<Vec<(Path, Assignment)>, EvalError> {
    infer_pattern(p)?;
    validate_pattern_for_mode(p, cfg.collect_mode)?;
    let bound = pattern_length_bound(g, cfg);
    let mut engine = engine::Engine::new(g, p, cfg, engine::PathFilter::None);
    let mut out = Vec::new();
    for len in 0..=bound {
        out.extend(engine.root_exact(len)?.iter().cloned());
        if out.len() > cfg.max_answers {
            return Err(EvalError::ResourceLimit { limit: cfg.max_answers, context: "pattern answers".into() });
        }
    }
    out.sort();
    Ok(out)
}

/// Answers of the pattern whose path has exactly length `len`.
pub fn eval_pattern_at(
    g: &PropertyGraph,
    p: &Pattern,
    len: usize,
    cfg: &EvalConfig,
) -> Result<Vec<(Path, Assignment)>, EvalError> {
    infer_pattern(p)?;
    validate_pattern_for_mode(p, cfg.collect_mode)?;
    let mut engine = engine::Engine::new(g, p, cfg, engine::PathFilter::None);
    let mut out = engine.root_exact(len)?.to_vec();
    out.sort();
    Ok(out)
}

/// The `i`-th power of the pattern's answer set, length-bounded as in
/// [`eval_pattern`].
pub fn power(g: &PropertyGraph, p: &Pattern, i: u64, cfg: &EvalConfig) -> Result<Vec<(Path, Assignment)>, EvalError> {
    eval_pattern(g, &Pattern::repeat(p.clone(), i, Some(i)), cfg)
}

/// Boolean semantics of a condition; undefined properties make atoms false.
pub fn satisfies(g: &PropertyGraph, mu: &Assignment, theta: &Condition) -> bool {
    fn prop<'g>(g: &'g PropertyGraph, mu: &Assignment, x: &str, key: &str) -> Option<&'g Constant> {
        let el = match mu.get(x)? {
            Value::Node(n) => ElementRef::Node(*n),
            Value::Edge(e) => ElementRef::Edge(*e),
            _ => return None,
        };
        g.property(el, key)
    }
    match theta {
        Condition::PropEqConst { var, key, value } => prop(g, mu, var.as_str(), key) == Some(value),
        Condition::PropEqProp { left, left_key, right, right_key } => {
            match (prop(g, mu, left.as_str(), left_key), prop(g, mu, right.as_str(), right_key)) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            }
        }
        Condition::And(a, b) => satisfies(g, mu, a) && satisfies(g, mu, b),
        Condition::Or(a, b) => satisfies(g, mu, a) || satisfies(g, mu, b),
        Condition::Not(a) => !satisfies(g, mu, a),
    }
}

/// Does traversing `e` from `u` to `v` match an edge pattern with this
/// direction and optional label?
pub(crate) fn edge_step_matches(
    g: &PropertyGraph,
    dir: Direction,
    label: Option<&str>,
    u: NodeId,
    e: EdgeId,
    v: NodeId,
) -> bool {
    if label.is_some_and(|l| !g.edge_has_label(e, l)) {
        return false;
    }
    match (dir, g.ends(e)) {
        (Direction::Forward, EdgeEnds::Directed { src, tgt }) => src == u && tgt == v,
        (Direction::Backward, EdgeEnds::Directed { src, tgt }) => src == v && tgt == u,
        (Direction::Undirected, EdgeEnds::Undirected { a, b }) => (a == u && b == v) || (a == v && b == u),
        _ => false,
    }
}

/// The one-edge paths matching an edge pattern. An undirected self-loop
/// yields a single path.
pub(crate) fn edge_pattern_paths(g: &PropertyGraph, dir: Direction, label: Option<&str>) -> Vec<(EdgeId, Path)> {
    let mut out = Vec::new();
    for e in g.edges() {
        if label.is_some_and(|l| !g.edge_has_label(e, l)) {
            continue;
        }
        match (dir, g.ends(e)) {
            (Direction::Forward, EdgeEnds::Directed { src, tgt }) => out.push((e, Path::step(src, e, tgt))),
            (Direction::Backward, EdgeEnds::Directed { src, tgt }) => out.push((e, Path::step(tgt, e, src))),
            (Direction::Undirected, EdgeEnds::Undirected { a, b }) => {
                out.push((e, Path::step(a, e, b)));
                if a != b {
                    out.push((e, Path::step(b, e, a)));
                }
            }
            _ => {}
        }
    }
    out
}

/// Which restrictor-imposed path shape every intermediate answer must have.
pub(crate) fn restrictor_filter(r: Restrictor) -> engine::PathFilter {
    if r.requires_trail() {
        engine::PathFilter::Trail
    } else if r.requires_simple() {
        engine::PathFilter::Simple
    } else {
        engine::PathFilter::None
    }
}
