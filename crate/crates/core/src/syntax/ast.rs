//! Abstract syntax for patterns, queries and rule sets.

use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::graph::Constant;

/// A variable name. Cheap to clone.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Var {
        Var(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for Var {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Var {
        Var::new(s)
    }
}

/// Optional variable and optional label inside a node or edge pattern.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Descriptor {
    pub var: Option<Var>,
    pub label: Option<String>,
}

impl Descriptor {
    pub fn new(var: Option<&str>, label: Option<&str>) -> Descriptor {
        Descriptor { var: var.map(Var::new), label: label.map(str::to_string) }
    }

    pub fn is_empty(&self) -> bool {
        self.var.is_none() && self.label.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
    Undirected,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `x.key = c`
    PropEqConst { var: Var, key: String, value: Constant },
    /// `x.key = y.key2`
    PropEqProp { left: Var, left_key: String, right: Var, right_key: String },
    And(Box<Condition>, Box<Condition>),
    Or(Box<Condition>, Box<Condition>),
    Not(Box<Condition>),
}

impl Condition {
    /// Variables mentioned by the condition, in order of first occurrence.
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<Var>) {
        let mut push = |v: &Var| {
            if !out.contains(v) {
                out.push(v.clone());
            }
        };
        match self {
            Condition::PropEqConst { var, .. } => push(var),
            Condition::PropEqProp { left, right, .. } => {
                push(left);
                push(right);
            }
            Condition::And(a, b) | Condition::Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Condition::Not(a) => a.collect_vars(out),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Condition::PropEqConst { .. } | Condition::PropEqProp { .. } => 1,
            Condition::And(a, b) | Condition::Or(a, b) => 1 + a.size() + b.size(),
            Condition::Not(a) => 1 + a.size(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Pattern {
    Node(Descriptor),
    Edge(Direction, Descriptor),
    Union(Box<Pattern>, Box<Pattern>),
    Concat(Box<Pattern>, Box<Pattern>),
    Cond(Box<Pattern>, Condition),
    /// `π{min..max}`; `max = None` is unbounded.
    Repeat(Box<Pattern>, u64, Option<u64>),
}

impl Pattern {
    pub fn node(var: Option<&str>, label: Option<&str>) -> Pattern {
        Pattern::Node(Descriptor::new(var, label))
    }

    pub fn edge(dir: Direction, var: Option<&str>, label: Option<&str>) -> Pattern {
        Pattern::Edge(dir, Descriptor::new(var, label))
    }

    pub fn union(a: Pattern, b: Pattern) -> Pattern {
        Pattern::Union(Box::new(a), Box::new(b))
    }

    pub fn concat(a: Pattern, b: Pattern) -> Pattern {
        Pattern::Concat(Box::new(a), Box::new(b))
    }

    /// Left-nested concatenation of a non-empty sequence.
    pub fn concat_all(parts: impl IntoIterator<Item = Pattern>) -> Pattern {
        let mut it = parts.into_iter();
        let first = it.next().expect("concat_all needs at least one pattern");
        it.fold(first, Pattern::concat)
    }

    pub fn cond(p: Pattern, theta: Condition) -> Pattern {
        Pattern::Cond(Box::new(p), theta)
    }

    pub fn repeat(p: Pattern, min: u64, max: Option<u64>) -> Pattern {
        Pattern::Repeat(Box::new(p), min, max)
    }

    /// var(π): variables bound by descriptors anywhere in the pattern.
    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Pattern::Node(d) | Pattern::Edge(_, d) => {
                if let Some(v) = &d.var {
                    out.insert(v.clone());
                }
            }
            Pattern::Union(a, b) | Pattern::Concat(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Pattern::Cond(a, _) | Pattern::Repeat(a, _, _) => a.collect_vars(out),
        }
    }

    /// Structural size: parse-tree nodes (conditions included) plus the bit
    /// length of every repetition bound.
    pub fn size(&self) -> u64 {
        fn bits(n: u64) -> u64 {
            (64 - n.leading_zeros() as u64).max(1)
        }
        match self {
            Pattern::Node(_) | Pattern::Edge(..) => 1,
            Pattern::Union(a, b) | Pattern::Concat(a, b) => 1 + a.size() + b.size(),
            Pattern::Cond(a, t) => 1 + a.size() + t.size() as u64,
            Pattern::Repeat(a, n, m) => 1 + a.size() + bits(*n) + m.map_or(0, bits),
        }
    }

    /// Height of the syntax tree, counting atoms as depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Pattern::Node(_) | Pattern::Edge(..) => 1,
            Pattern::Union(a, b) | Pattern::Concat(a, b) => 1 + a.depth().max(b.depth()),
            Pattern::Cond(a, _) | Pattern::Repeat(a, _, _) => 1 + a.depth(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Restrictor {
    Simple,
    Trail,
    Shortest,
    ShortestSimple,
    ShortestTrail,
}

impl Restrictor {
    pub fn is_shortest(self) -> bool {
        matches!(self, Restrictor::Shortest | Restrictor::ShortestSimple | Restrictor::ShortestTrail)
    }

    pub fn requires_trail(self) -> bool {
        matches!(self, Restrictor::Trail | Restrictor::ShortestTrail)
    }

    pub fn requires_simple(self) -> bool {
        matches!(self, Restrictor::Simple | Restrictor::ShortestSimple)
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Restrictor::Simple => "SIMPLE",
            Restrictor::Trail => "TRAIL",
            Restrictor::Shortest => "SHORTEST",
            Restrictor::ShortestSimple => "SHORTEST SIMPLE",
            Restrictor::ShortestTrail => "SHORTEST TRAIL",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Query {
    Restricted(Restrictor, Pattern),
    /// `x = ρ π`
    Bound(Var, Restrictor, Pattern),
    Join(Box<Query>, Box<Query>),
}

impl Query {
    pub fn join(a: Query, b: Query) -> Query {
        Query::Join(Box::new(a), Box::new(b))
    }

    /// var(Q), including path variables.
    pub fn vars(&self) -> BTreeSet<Var> {
        match self {
            Query::Restricted(_, p) => p.vars(),
            Query::Bound(x, _, p) => {
                let mut v = p.vars();
                v.insert(x.clone());
                v
            }
            Query::Join(a, b) => {
                let mut v = a.vars();
                v.extend(b.vars());
                v
            }
        }
    }

    /// Number of paths in each answer.
    pub fn arity(&self) -> usize {
        match self {
            Query::Restricted(..) | Query::Bound(..) => 1,
            Query::Join(a, b) => a.arity() + b.arity(),
        }
    }

    /// The path queries of a join, left to right.
    pub fn leaves(&self) -> Vec<&Query> {
        match self {
            Query::Join(a, b) => {
                let mut out = a.leaves();
                out.extend(b.leaves());
                out
            }
            leaf => vec![leaf],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: Vec<Var>,
    pub body: Query,
}

/// A GPC+ query: rules sharing one head arity, answered by the union of
/// their projections.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleSet {
    pub rules: Vec<Rule>,
}

impl RuleSet {
    pub fn arity(&self) -> usize {
        self.rules.first().map_or(0, |r| r.head.len())
    }
}

/// Any top-level expression the front end accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Pattern(Pattern),
    Query(Query),
    RuleSet(RuleSet),
}
