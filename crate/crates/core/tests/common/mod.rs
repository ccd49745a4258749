//! Seeded generators for graphs, patterns, queries and regular expressions,
//! plus an independent typing-derivability checker.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use gpc::gpcplus::{Atom, C2rpq, Nre, Regex};
use gpc::graph::{Constant, GraphBuilder, PropertyGraph};
use gpc::syntax::{Condition, Direction, Pattern, Query, Restrictor, Var};
use gpc::typing::{Schema, Type};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn load(name: &str) -> PropertyGraph {
    PropertyGraph::from_json_file(data(name)).expect("fixture graph loads")
}

fn random_constant(rng: &mut TestRng) -> Constant {
    match rng.gen_range(0..4) {
        0 => Constant::Str("1".into()),
        1 => Constant::Str("2".into()),
        2 => Constant::Int(1),
        _ => Constant::Bool(true),
    }
}

/// A property graph with up to `max_nodes` nodes and `max_edges` edges,
/// mixing directed edges, undirected edges and self-loops.
pub fn random_graph(rng: &mut TestRng, max_nodes: usize, max_edges: usize) -> PropertyGraph {
    let n = rng.gen_range(1..=max_nodes);
    let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let mut b = GraphBuilder::new();
    for name in &names {
        let labels: Vec<&str> = ["A", "B"].into_iter().filter(|_| rng.gen_bool(0.4)).collect();
        b = b.node(name, &labels);
        if rng.gen_bool(0.6) {
            b = b.prop(name, "k", random_constant(rng));
        }
    }
    let m = rng.gen_range(0..=max_edges);
    for i in 0..m {
        let id = format!("e{i}");
        let labels: Vec<&str> = ["a", "b"].into_iter().filter(|_| rng.gen_bool(0.45)).collect();
        let u = names.choose(rng).unwrap().clone();
        let v = names.choose(rng).unwrap().clone();
        b = if rng.gen_bool(0.75) {
            b.directed(&id, &u, &v, &labels)
        } else if u == v {
            b.undirected(&id, &[&u], &labels)
        } else {
            b.undirected(&id, &[&u, &v], &labels)
        };
        if rng.gen_bool(0.3) {
            b = b.prop(&id, "k", random_constant(rng));
        }
    }
    b.build().expect("generated graphs are valid")
}

/// A graph with directed labelled edges only, for regular path queries.
pub fn random_labelled_graph(rng: &mut TestRng, max_nodes: usize, max_edges: usize) -> PropertyGraph {
    let n = rng.gen_range(2..=max_nodes);
    let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let mut b = GraphBuilder::new();
    for name in &names {
        b = b.node(name, &[]);
    }
    for i in 0..rng.gen_range(1..=max_edges) {
        let label = *["a", "b", "c"].choose(rng).unwrap();
        let u = names.choose(rng).unwrap().clone();
        let v = names.choose(rng).unwrap().clone();
        b = b.directed(&format!("e{i}"), &u, &v, &[label]);
    }
    b.build().unwrap()
}

const NODE_VARS: &[&str] = &["x", "y", "z"];
const EDGE_VARS: &[&str] = &["e", "f"];

#[derive(Debug, Clone, Copy)]
pub struct PatternGen {
    pub max_depth: usize,
    /// Probability that a descriptor carries a variable.
    pub var_prob: f64,
    /// Mix node and edge variable names freely (produces more type errors).
    pub mix_vars: bool,
}

impl Default for PatternGen {
    fn default() -> Self {
        PatternGen { max_depth: 3, var_prob: 0.5, mix_vars: false }
    }
}

impl PatternGen {
    pub fn pattern(&self, rng: &mut TestRng) -> Pattern {
        self.gen(rng, self.max_depth)
    }

    fn var(&self, rng: &mut TestRng, edge: bool) -> Option<String> {
        if !rng.gen_bool(self.var_prob) {
            return None;
        }
        let pool = if self.mix_vars {
            if rng.gen_bool(0.5) {
                NODE_VARS
            } else {
                EDGE_VARS
            }
        } else if edge {
            EDGE_VARS
        } else {
            NODE_VARS
        };
        Some(pool.choose(rng).unwrap().to_string())
    }

    fn atom(&self, rng: &mut TestRng) -> Pattern {
        if rng.gen_bool(0.45) {
            let label = ["A", "B"].choose(rng).copied().filter(|_| rng.gen_bool(0.4));
            Pattern::node(self.var(rng, false).as_deref(), label)
        } else {
            let dir = *[Direction::Forward, Direction::Forward, Direction::Backward, Direction::Undirected]
                .choose(rng)
                .unwrap();
            let label = ["a", "b"].choose(rng).copied().filter(|_| rng.gen_bool(0.4));
            Pattern::edge(dir, self.var(rng, true).as_deref(), label)
        }
    }

    fn gen(&self, rng: &mut TestRng, depth: usize) -> Pattern {
        if depth <= 1 || rng.gen_bool(0.25) {
            return self.atom(rng);
        }
        match rng.gen_range(0..10) {
            0..=1 => Pattern::union(self.gen(rng, depth - 1), self.gen(rng, depth - 1)),
            2..=5 => Pattern::concat(self.gen(rng, depth - 1), self.gen(rng, depth - 1)),
            6 => {
                let inner = self.gen(rng, depth - 1);
                let theta = random_condition(rng, &inner);
                Pattern::cond(inner, theta)
            }
            _ => {
                let (min, max) = *[(0, None), (1, None), (0, Some(1)), (1, Some(2)), (2, Some(2)), (0, Some(2))]
                    .choose(rng)
                    .unwrap();
                Pattern::repeat(self.gen(rng, depth - 1), min, max)
            }
        }
    }
}

/// A condition over variables of `p` (occasionally an unbound one, which
/// typing rejects).
pub fn random_condition(rng: &mut TestRng, p: &Pattern) -> Condition {
    let vars: Vec<Var> = p.vars().into_iter().collect();
    match rng.gen_range(0..6) {
        0 => Condition::Not(Box::new(condition_atom(rng, &vars))),
        1 => Condition::And(Box::new(condition_atom(rng, &vars)), Box::new(condition_atom(rng, &vars))),
        2 => Condition::Or(Box::new(condition_atom(rng, &vars)), Box::new(condition_atom(rng, &vars))),
        _ => condition_atom(rng, &vars),
    }
}

fn pick_var(rng: &mut TestRng, vars: &[Var]) -> Var {
    if vars.is_empty() || rng.gen_bool(0.05) {
        Var::new("x")
    } else {
        vars.choose(rng).unwrap().clone()
    }
}

fn condition_atom(rng: &mut TestRng, vars: &[Var]) -> Condition {
    if rng.gen_bool(0.6) {
        Condition::PropEqConst { var: pick_var(rng, vars), key: "k".into(), value: random_constant(rng) }
    } else {
        let left = pick_var(rng, vars);
        Condition::PropEqProp { left, left_key: "k".into(), right: pick_var(rng, vars), right_key: "k".into() }
    }
}

pub const RESTRICTORS: [Restrictor; 5] = [
    Restrictor::Simple,
    Restrictor::Trail,
    Restrictor::Shortest,
    Restrictor::ShortestSimple,
    Restrictor::ShortestTrail,
];

/// A query: one or two restricted (possibly path-bound) patterns.
pub fn random_query(rng: &mut TestRng, pg: &PatternGen) -> Query {
    if rng.gen_bool(0.3) {
        Query::join(random_leaf(rng, pg, "p"), random_leaf(rng, pg, "q"))
    } else {
        random_leaf(rng, pg, "p")
    }
}

fn random_leaf(rng: &mut TestRng, pg: &PatternGen, name: &str) -> Query {
    let r = *RESTRICTORS.choose(rng).unwrap();
    let p = pg.pattern(rng);
    if rng.gen_bool(0.3) {
        Query::Bound(Var::new(name), r, p)
    } else {
        Query::Restricted(r, p)
    }
}

/// A random regular expression over labels a, b, c with at most `max_ops`
/// operators; nests appear when `nests` is set.
pub fn random_nre(rng: &mut TestRng, max_depth: usize, nests: bool) -> Nre {
    if max_depth <= 1 || rng.gen_bool(0.3) {
        let l = *["a", "b", "c"].choose(rng).unwrap();
        return if rng.gen_bool(0.25) { Nre::inverse(l) } else { Nre::label(l) };
    }
    let d = max_depth - 1;
    match rng.gen_range(0..if nests { 6 } else { 5 }) {
        0 | 1 => Nre::concat(random_nre(rng, d, nests), random_nre(rng, d, nests)),
        2 => Nre::union(random_nre(rng, d, nests), random_nre(rng, d, nests)),
        3 => Nre::plus(random_nre(rng, d, nests)),
        4 => Nre::star(random_nre(rng, d, nests)),
        _ => Nre::nest(random_nre(rng, d, nests)),
    }
}

pub fn random_regex(rng: &mut TestRng, max_ops: usize) -> Regex {
    loop {
        let e = random_nre(rng, 4, false);
        if e.operators() <= max_ops {
            return Regex::new(e).unwrap();
        }
    }
}

pub fn random_c2rpq(rng: &mut TestRng) -> C2rpq {
    let vars = ["x", "y", "z"];
    let n_atoms = rng.gen_range(1..=3);
    let mut atoms = Vec::new();
    for _ in 0..n_atoms {
        atoms.push(Atom {
            src: Var::new(vars.choose(rng).unwrap()),
            regex: random_regex(rng, 3),
            tgt: Var::new(vars.choose(rng).unwrap()),
        });
    }
    let used: Vec<Var> = atoms.iter().flat_map(|a| [a.src.clone(), a.tgt.clone()]).collect::<BTreeSet<_>>().into_iter().collect();
    let k = rng.gen_range(1..=used.len().min(2));
    let head = used.choose_multiple(rng, k).cloned().collect();
    C2rpq { head, atoms }
}

// ---------------------------------------------------------------------------
// Typing derivability, written directly against the typing rules. Every rule
// instance that applies is tried, so the result is the set of all derivable
// schemas.

fn maybe(t: &Type) -> Type {
    match t {
        Type::Maybe(_) => t.clone(),
        _ => Type::Maybe(Box::new(t.clone())),
    }
}

fn union_rules(a: &Type, b: &Type) -> Vec<Type> {
    let mut out = Vec::new();
    if a == b {
        out.push(a.clone());
    }
    if let Type::Maybe(inner) = b {
        if **inner == *a {
            out.push(b.clone());
        }
    }
    if let Type::Maybe(inner) = a {
        if **inner == *b {
            out.push(a.clone());
        }
    }
    out
}

fn shared_rules(a: &Type, b: &Type) -> Vec<Type> {
    if a == b && matches!(a, Type::Node | Type::Edge) {
        vec![a.clone()]
    } else {
        Vec::new()
    }
}

fn combine(a: &Schema, b: &Schema, both: fn(&Type, &Type) -> Vec<Type>, one_sided: fn(&Type) -> Type) -> BTreeSet<Schema> {
    let mut partial: Vec<Schema> = vec![Schema::new()];
    let keys: BTreeSet<&Var> = a.keys().chain(b.keys()).collect();
    for x in keys {
        let options = match (a.get(x), b.get(x)) {
            (Some(ta), Some(tb)) => both(ta, tb),
            (Some(t), None) | (None, Some(t)) => vec![one_sided(t)],
            (None, None) => unreachable!(),
        };
        let mut next = Vec::new();
        for s in &partial {
            for t in &options {
                let mut s = s.clone();
                s.insert(x.clone(), t.clone());
                next.push(s);
            }
        }
        partial = next;
    }
    partial.into_iter().collect()
}

fn combine_all(
    left: &BTreeSet<Schema>,
    right: &BTreeSet<Schema>,
    both: fn(&Type, &Type) -> Vec<Type>,
    one_sided: fn(&Type) -> Type,
) -> BTreeSet<Schema> {
    let mut out = BTreeSet::new();
    for a in left {
        for b in right {
            out.extend(combine(a, b, both, one_sided));
        }
    }
    out
}

fn cond_vars(c: &Condition, out: &mut Vec<Var>) {
    match c {
        Condition::PropEqConst { var, .. } => out.push(var.clone()),
        Condition::PropEqProp { left, right, .. } => {
            out.push(left.clone());
            out.push(right.clone());
        }
        Condition::And(a, b) | Condition::Or(a, b) => {
            cond_vars(a, out);
            cond_vars(b, out);
        }
        Condition::Not(a) => cond_vars(a, out),
    }
}

pub fn derivable_pattern(p: &Pattern) -> BTreeSet<Schema> {
    match p {
        Pattern::Node(d) => BTreeSet::from([d.var.iter().map(|x| (x.clone(), Type::Node)).collect()]),
        Pattern::Edge(_, d) => BTreeSet::from([d.var.iter().map(|x| (x.clone(), Type::Edge)).collect()]),
        Pattern::Union(a, b) => combine_all(&derivable_pattern(a), &derivable_pattern(b), union_rules, maybe),
        Pattern::Concat(a, b) => combine_all(&derivable_pattern(a), &derivable_pattern(b), shared_rules, Type::clone),
        Pattern::Cond(a, theta) => {
            let mut vs = Vec::new();
            cond_vars(theta, &mut vs);
            derivable_pattern(a)
                .into_iter()
                .filter(|s| vs.iter().all(|x| matches!(s.get(x), Some(Type::Node | Type::Edge))))
                .collect()
        }
        Pattern::Repeat(a, _, _) => derivable_pattern(a)
            .into_iter()
            .map(|s| s.into_iter().map(|(x, t)| (x, Type::Group(Box::new(t)))).collect())
            .collect(),
    }
}

pub fn derivable_query(q: &Query) -> BTreeSet<Schema> {
    match q {
        Query::Restricted(_, p) => derivable_pattern(p),
        Query::Bound(x, _, p) => derivable_pattern(p)
            .into_iter()
            .filter(|s| !s.contains_key(x))
            .map(|mut s| {
                s.insert(x.clone(), Type::Path);
                s
            })
            .collect(),
        Query::Join(a, b) => combine_all(&derivable_query(a), &derivable_query(b), shared_rules, Type::clone),
    }
}

pub fn schema_display(s: &Schema) -> String {
    let m: BTreeMap<String, String> = s.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    format!("{m:?}")
}
