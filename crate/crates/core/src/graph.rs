//! Property graphs and paths.
//!
//! A [`PropertyGraph`] is a mixed multigraph: nodes, directed edges and
//! undirected edges live in three disjoint id spaces, every element carries a
//! (possibly empty) label set, and a partial property map assigns typed
//! constants to `(element, key)` pairs.
//!
//! External identity is the string id from the graph file. Internally ids are
//! interned to dense indices ([`NodeId`], [`EdgeId`]) so that paths and
//! bindings are cheap to hash and compare.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::path::Path as FsPath;

use serde::Deserialize;
use thiserror::Error;

/// Index of a node inside one [`PropertyGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

/// Index of a directed or undirected edge inside one [`PropertyGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A property value. Equality is same-kind only: `"5"` and `5` differ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constant {
    Str(String),
    Int(i64),
    Bool(bool),
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::Str(s) => write!(f, "{s:?}"),
            Constant::Int(i) => write!(f, "{i}"),
            Constant::Bool(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeEnds {
    Directed { src: NodeId, tgt: NodeId },
    /// `a == b` for a self-loop.
    Undirected { a: NodeId, b: NodeId },
}

#[derive(Debug, Clone)]
struct Element {
    name: String,
    labels: BTreeSet<String>,
    properties: BTreeMap<String, Constant>,
}

#[derive(Debug, Clone)]
struct EdgeData {
    element: Element,
    ends: EdgeEnds,
}

/// An immutable, validated property graph.
#[derive(Debug, Clone, Default)]
pub struct PropertyGraph {
    nodes: Vec<Element>,
    edges: Vec<EdgeData>,
    node_index: HashMap<String, NodeId>,
    edge_index: HashMap<String, EdgeId>,
    directed_count: usize,
}

/// Reference to any graph element, used for property lookups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementRef {
    Node(NodeId),
    Edge(EdgeId),
}

impl PropertyGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn directed_edge_count(&self) -> usize {
        self.directed_count
    }

    pub fn undirected_edge_count(&self) -> usize {
        self.edges.len() - self.directed_count
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn node_name(&self, n: NodeId) -> &str {
        &self.nodes[n.index()].name
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].element.name
    }

    pub fn node(&self, name: &str) -> Option<NodeId> {
        self.node_index.get(name).copied()
    }

    pub fn edge(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn ends(&self, e: EdgeId) -> EdgeEnds {
        self.edges[e.index()].ends
    }

    pub fn is_directed(&self, e: EdgeId) -> bool {
        matches!(self.ends(e), EdgeEnds::Directed { .. })
    }

    pub fn node_has_label(&self, n: NodeId, label: &str) -> bool {
        self.nodes[n.index()].labels.contains(label)
    }

    pub fn edge_has_label(&self, e: EdgeId, label: &str) -> bool {
        self.edges[e.index()].element.labels.contains(label)
    }

    pub fn labels(&self, el: ElementRef) -> &BTreeSet<String> {
        match el {
            ElementRef::Node(n) => &self.nodes[n.index()].labels,
            ElementRef::Edge(e) => &self.edges[e.index()].element.labels,
        }
    }

    /// The partial property function: `None` when `key` is undefined.
    pub fn property(&self, el: ElementRef, key: &str) -> Option<&Constant> {
        match el {
            ElementRef::Node(n) => self.nodes[n.index()].properties.get(key),
            ElementRef::Edge(e) => self.edges[e.index()].element.properties.get(key),
        }
    }

    /// Builds a path from alternating string ids, e.g. `["n1", "e1", "n2"]`.
    /// Returns `None` when the sequence is malformed or names unknown ids.
    /// Graph validity is not checked; see [`PropertyGraph::path_is_valid`].
    pub fn path(&self, elements: &[&str]) -> Option<Path> {
        if elements.len().is_multiple_of(2) {
            return None;
        }
        let mut nodes = Vec::with_capacity(elements.len() / 2 + 1);
        let mut edges = Vec::with_capacity(elements.len() / 2);
        for (i, name) in elements.iter().enumerate() {
            if i % 2 == 0 {
                nodes.push(self.node(name)?);
            } else {
                edges.push(self.edge(name)?);
            }
        }
        Some(Path { nodes, edges })
    }

    /// True iff every step of `p` is a forward, backward, or undirected
    /// traversal of its edge, and every id belongs to this graph.
    pub fn path_is_valid(&self, p: &Path) -> bool {
        if p.nodes.iter().any(|n| n.index() >= self.nodes.len())
            || p.edges.iter().any(|e| e.index() >= self.edges.len())
        {
            return false;
        }
        p.edges.iter().enumerate().all(|(i, &e)| {
            let (u, v) = (p.nodes[i], p.nodes[i + 1]);
            self.step_is_valid(u, e, v)
        })
    }

    fn step_is_valid(&self, u: NodeId, e: EdgeId, v: NodeId) -> bool {
        match self.ends(e) {
            EdgeEnds::Directed { src, tgt } => (src == u && tgt == v) || (src == v && tgt == u),
            EdgeEnds::Undirected { a, b } => (a == u && b == v) || (a == v && b == u),
        }
    }

    /// Element names of `p` in order, as used by the answer serialization.
    pub fn path_names(&self, p: &Path) -> Vec<String> {
        let mut out = Vec::with_capacity(p.nodes.len() + p.edges.len());
        for (i, &n) in p.nodes.iter().enumerate() {
            if i > 0 {
                out.push(self.edge_name(p.edges[i - 1]).to_string());
            }
            out.push(self.node_name(n).to_string());
        }
        out
    }

    pub fn display_path(&self, p: &Path) -> String {
        format!("path({})", self.path_names(p).join(","))
    }

    pub fn from_json_str(text: &str) -> Result<PropertyGraph, GraphError> {
        let raw: RawGraph = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        validate_graph(&raw).map_err(GraphError::Invalid)
    }

    pub fn from_json_file(path: impl AsRef<FsPath>) -> Result<PropertyGraph, GraphError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| GraphError::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_json_str(&text)
    }
}

/// A path: `nodes.len() == edges.len() + 1`, alternating node, edge, ..., node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    nodes: Vec<NodeId>,
    edges: Vec<EdgeId>,
}

// `len` counts edges; a path is never empty.
#[allow(clippy::len_without_is_empty)]
impl Path {
    /// The edgeless path `path(u)`.
    pub fn single(u: NodeId) -> Path {
        Path { nodes: vec![u], edges: Vec::new() }
    }

    /// One-step path `path(u, e, v)`.
    pub fn step(u: NodeId, e: EdgeId, v: NodeId) -> Path {
        Path { nodes: vec![u, v], edges: vec![e] }
    }

    /// Builds a path from its parts. Panics if the lengths do not alternate.
    pub fn from_parts(nodes: Vec<NodeId>, edges: Vec<EdgeId>) -> Path {
        assert_eq!(nodes.len(), edges.len() + 1, "a path alternates nodes and edges");
        Path { nodes, edges }
    }

    pub fn src(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn tgt(&self) -> NodeId {
        *self.nodes.last().expect("paths are never empty")
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// `self · other`, defined iff `tgt(self) = src(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.tgt() != other.src() {
            return None;
        }
        let mut nodes = Vec::with_capacity(self.nodes.len() + other.nodes.len() - 1);
        nodes.extend_from_slice(&self.nodes);
        nodes.extend_from_slice(&other.nodes[1..]);
        let mut edges = Vec::with_capacity(self.edges.len() + other.edges.len());
        edges.extend_from_slice(&self.edges);
        edges.extend_from_slice(&other.edges);
        Some(Path { nodes, edges })
    }

    /// The subpath between node positions `i` and `j` (inclusive), `i <= j`.
    pub fn subpath(&self, i: usize, j: usize) -> Path {
        Path { nodes: self.nodes[i..=j].to_vec(), edges: self.edges[i..j].to_vec() }
    }

    /// No edge occurs twice.
    pub fn is_trail(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|e| seen.insert(*e))
    }

    /// No node occurs twice.
    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.nodes.len());
        self.nodes.iter().all(|n| seen.insert(*n))
    }
}

/// Serialized graph description, as read from JSON.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGraph {
    #[serde(default)]
    pub nodes: Vec<RawNode>,
    #[serde(default)]
    pub directed_edges: Vec<RawDirectedEdge>,
    #[serde(default)]
    pub undirected_edges: Vec<RawUndirectedEdge>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawNode {
    pub id: String,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default)]
    pub properties: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDirectedEdge {
    pub id: String,
    pub src: String,
    pub tgt: String,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default)]
    pub properties: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawUndirectedEdge {
    pub id: String,
    pub endpoints: Vec<String>,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default)]
    pub properties: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("empty id")]
    EmptyId,
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
    #[error("dangling endpoint: edge {edge:?} references missing node {node:?}")]
    DanglingEndpoint { edge: String, node: String },
    #[error("undirected edge {edge:?} has {count} endpoints, expected 1 or 2")]
    EndpointCount { edge: String, count: usize },
    #[error("unsupported value for property {key:?} of {element:?}: only strings, integers and booleans are constants")]
    UnsupportedProperty { element: String, key: String },
}

#[derive(Debug, Clone, Error)]
pub enum GraphError {
    #[error("{0}")]
    Io(String),
    #[error("malformed graph JSON: {0}")]
    Json(String),
    #[error("invalid graph: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

fn constant_from_json(v: &serde_json::Value) -> Option<Constant> {
    match v {
        serde_json::Value::String(s) => Some(Constant::Str(s.clone())),
        serde_json::Value::Bool(b) => Some(Constant::Bool(*b)),
        serde_json::Value::Number(n) => n.as_i64().map(Constant::Int),
        _ => None,
    }
}

/// Checks every graph invariant and builds the interned graph, or reports
/// all violations found.
pub fn validate_graph(raw: &RawGraph) -> Result<PropertyGraph, Vec<Violation>> {
    let mut violations = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut check_id = |id: &str, violations: &mut Vec<Violation>| {
        if id.is_empty() {
            violations.push(Violation::EmptyId);
        } else if !seen.insert(id.to_string()) {
            violations.push(Violation::DuplicateId(id.to_string()));
        }
    };
    for n in &raw.nodes {
        check_id(&n.id, &mut violations);
    }
    for e in &raw.directed_edges {
        check_id(&e.id, &mut violations);
    }
    for e in &raw.undirected_edges {
        check_id(&e.id, &mut violations);
    }

    let mut g = PropertyGraph::default();
    let element = |id: &str,
                       labels: &[String],
                       props: &BTreeMap<String, serde_json::Value>,
                       violations: &mut Vec<Violation>| {
        let mut properties = BTreeMap::new();
        for (k, v) in props {
            match constant_from_json(v) {
                Some(c) => {
                    properties.insert(k.clone(), c);
                }
                None => violations.push(Violation::UnsupportedProperty {
                    element: id.to_string(),
                    key: k.clone(),
                }),
            }
        }
        Element { name: id.to_string(), labels: labels.iter().cloned().collect(), properties }
    };

    for n in &raw.nodes {
        if g.node_index.contains_key(&n.id) {
            continue;
        }
        let id = NodeId(g.nodes.len() as u32);
        let el = element(&n.id, &n.labels, &n.properties, &mut violations);
        g.node_index.insert(n.id.clone(), id);
        g.nodes.push(el);
    }

    let resolve = |g: &PropertyGraph, edge: &str, node: &str, violations: &mut Vec<Violation>| {
        let found = g.node_index.get(node).copied();
        if found.is_none() {
            violations.push(Violation::DanglingEndpoint { edge: edge.to_string(), node: node.to_string() });
        }
        found
    };

    for e in &raw.directed_edges {
        let src = resolve(&g, &e.id, &e.src, &mut violations);
        let tgt = resolve(&g, &e.id, &e.tgt, &mut violations);
        let el = element(&e.id, &e.labels, &e.properties, &mut violations);
        if let (Some(src), Some(tgt)) = (src, tgt) {
            if g.edge_index.contains_key(&e.id) || g.node_index.contains_key(&e.id) {
                continue;
            }
            let id = EdgeId(g.edges.len() as u32);
            g.edge_index.insert(e.id.clone(), id);
            g.edges.push(EdgeData { element: el, ends: EdgeEnds::Directed { src, tgt } });
            g.directed_count += 1;
        }
    }

    for e in &raw.undirected_edges {
        let count = e.endpoints.len();
        if !(1..=2).contains(&count) {
            violations.push(Violation::EndpointCount { edge: e.id.clone(), count });
            continue;
        }
        let ends: Vec<Option<NodeId>> =
            e.endpoints.iter().map(|n| resolve(&g, &e.id, n, &mut violations)).collect();
        let el = element(&e.id, &e.labels, &e.properties, &mut violations);
        if ends.iter().any(Option::is_none) {
            continue;
        }
        if g.edge_index.contains_key(&e.id) || g.node_index.contains_key(&e.id) {
            continue;
        }
        let a = ends[0].unwrap();
        let b = ends.last().copied().flatten().unwrap();
        // endpoints are a set: [a, b] and [b, a] are the same edge
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let id = EdgeId(g.edges.len() as u32);
        g.edge_index.insert(e.id.clone(), id);
        g.edges.push(EdgeData { element: el, ends: EdgeEnds::Undirected { a, b } });
    }

    if violations.is_empty() {
        Ok(g)
    } else {
        Err(violations)
    }
}

/// Programmatic graph construction, mainly for tests and examples.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    raw: RawGraph,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node(mut self, id: &str, labels: &[&str]) -> Self {
        self.raw.nodes.push(RawNode {
            id: id.to_string(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            properties: BTreeMap::new(),
        });
        self
    }

    /// Sets a property on the most recently added element with this id.
    pub fn prop(mut self, id: &str, key: &str, value: Constant) -> Self {
        let v = match value {
            Constant::Str(s) => serde_json::Value::String(s),
            Constant::Int(i) => serde_json::Value::from(i),
            Constant::Bool(b) => serde_json::Value::Bool(b),
        };
        let key = key.to_string();
        if let Some(n) = self.raw.nodes.iter_mut().rev().find(|n| n.id == id) {
            n.properties.insert(key, v);
        } else if let Some(e) = self.raw.directed_edges.iter_mut().rev().find(|e| e.id == id) {
            e.properties.insert(key, v);
        } else if let Some(e) = self.raw.undirected_edges.iter_mut().rev().find(|e| e.id == id) {
            e.properties.insert(key, v);
        }
        self
    }

    pub fn directed(mut self, id: &str, src: &str, tgt: &str, labels: &[&str]) -> Self {
        self.raw.directed_edges.push(RawDirectedEdge {
            id: id.to_string(),
            src: src.to_string(),
            tgt: tgt.to_string(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            properties: BTreeMap::new(),
        });
        self
    }

    pub fn undirected(mut self, id: &str, endpoints: &[&str], labels: &[&str]) -> Self {
        self.raw.undirected_edges.push(RawUndirectedEdge {
            id: id.to_string(),
            endpoints: endpoints.iter().map(|s| s.to_string()).collect(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            properties: BTreeMap::new(),
        });
        self
    }

    pub fn raw(&self) -> &RawGraph {
        &self.raw
    }

    pub fn build(self) -> Result<PropertyGraph, Vec<Violation>> {
        validate_graph(&self.raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> PropertyGraph {
        GraphBuilder::new()
            .node("n1", &["A"])
            .node("n2", &[])
            .node("n3", &[])
            .directed("e1", "n1", "n2", &["a"])
            .directed("e2", "n2", "n3", &[])
            .build()
            .unwrap()
    }

    #[test]
    fn empty_description_is_empty_graph() {
        let g = validate_graph(&RawGraph::default()).unwrap();
        assert_eq!(g.node_count(), 0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn dangling_target_is_reported() {
        let err = GraphBuilder::new().node("n1", &[]).directed("e1", "n1", "nX", &[]).build().unwrap_err();
        assert_eq!(err, vec![Violation::DanglingEndpoint { edge: "e1".into(), node: "nX".into() }]);
    }

    #[test]
    fn undirected_self_loop_accepted() {
        let g = GraphBuilder::new().node("n2", &[]).undirected("u1", &["n2"], &[]).build().unwrap();
        let u1 = g.edge("u1").unwrap();
        let n2 = g.node("n2").unwrap();
        assert_eq!(g.ends(u1), EdgeEnds::Undirected { a: n2, b: n2 });
    }

    #[test]
    fn all_violations_are_collected() {
        let err = GraphBuilder::new()
            .node("n1", &[])
            .node("n1", &[])
            .undirected("u1", &["n1", "n1", "n1"], &[])
            .directed("n1", "n1", "n9", &[])
            .build()
            .unwrap_err();
        assert!(err.contains(&Violation::DuplicateId("n1".into())));
        assert!(err.contains(&Violation::EndpointCount { edge: "u1".into(), count: 3 }));
        assert!(err.contains(&Violation::DanglingEndpoint { edge: "n1".into(), node: "n9".into() }));
    }

    #[test]
    fn endpoints_are_a_set() {
        let g = GraphBuilder::new()
            .node("a", &[])
            .node("b", &[])
            .undirected("u", &["b", "a"], &[])
            .build()
            .unwrap();
        let p = g.path(&["a", "u", "b"]).unwrap();
        let q = g.path(&["b", "u", "a"]).unwrap();
        assert!(g.path_is_valid(&p) && g.path_is_valid(&q));
    }

    #[test]
    fn path_validity_clauses() {
        let g = chain();
        assert!(g.path_is_valid(&g.path(&["n1"]).unwrap()));
        assert!(g.path_is_valid(&g.path(&["n1", "e1", "n2"]).unwrap()));
        // backward traversal
        assert!(g.path_is_valid(&g.path(&["n2", "e1", "n1"]).unwrap()));
        assert!(!g.path_is_valid(&g.path(&["n1", "e2", "n3"]).unwrap()));
    }

    #[test]
    fn directed_self_loop_is_both_directions() {
        let g = GraphBuilder::new().node("n", &[]).directed("l", "n", "n", &[]).build().unwrap();
        assert!(g.path_is_valid(&g.path(&["n", "l", "n"]).unwrap()));
    }

    #[test]
    fn concat_and_endpoints() {
        let g = chain();
        let p = g.path(&["n1", "e1", "n2"]).unwrap();
        let q = g.path(&["n2", "e2", "n3"]).unwrap();
        assert_eq!(p.concat(&g.path(&["n2"]).unwrap()), Some(p.clone()));
        assert_eq!(p.concat(&q), g.path(&["n1", "e1", "n2", "e2", "n3"]));
        assert_eq!(p.concat(&g.path(&["n3"]).unwrap()), None);

        let single = g.path(&["n1"]).unwrap();
        assert_eq!((single.src(), single.tgt(), single.len()), (g.node("n1").unwrap(), g.node("n1").unwrap(), 0));
        assert_eq!(p.len(), 1);
        let back = g.path(&["n1", "e1", "n2", "e1", "n1"]).unwrap();
        assert_eq!((back.src(), back.tgt(), back.len()), (g.node("n1").unwrap(), g.node("n1").unwrap(), 2));
    }

    #[test]
    fn json_format_parses() {
        let g = PropertyGraph::from_json_str(
            r#"{"nodes":[{"id":"n1","labels":["A"],"properties":{"k":"5"}},{"id":"n2"}],
                "directed_edges":[{"id":"e1","src":"n1","tgt":"n2","labels":["a"],"properties":{}}],
                "undirected_edges":[{"id":"u1","endpoints":["n2"],"labels":["s"],"properties":{}}]}"#,
        )
        .unwrap();
        let n1 = g.node("n1").unwrap();
        assert_eq!(g.property(ElementRef::Node(n1), "k"), Some(&Constant::Str("5".into())));
        assert_eq!(g.directed_edge_count(), 1);
        assert_eq!(g.undirected_edge_count(), 1);
    }

    #[test]
    fn float_property_rejected() {
        let err = PropertyGraph::from_json_str(r#"{"nodes":[{"id":"n","properties":{"w":1.5}}]}"#).unwrap_err();
        assert!(matches!(err, GraphError::Invalid(v) if matches!(v[0], Violation::UnsupportedProperty { .. })));
    }
}
