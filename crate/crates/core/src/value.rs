//! Values, assignments and answers.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::graph::{EdgeId, NodeId, Path, PropertyGraph};
use crate::syntax::Var;
use crate::typing::{Schema, Type};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Node(NodeId),
    Edge(EdgeId),
    Path(Path),
    Nothing,
    /// `list((p₁,v₁),…,(pₙ,vₙ))`
    Group(Arc<Vec<(Path, Value)>>),
}

impl Value {
    pub fn group(items: Vec<(Path, Value)>) -> Value {
        Value::Group(Arc::new(items))
    }

    pub fn empty_group() -> Value {
        Value::Group(Arc::new(Vec::new()))
    }

    /// Membership in the semantics of `t`.
    pub fn conforms(&self, t: &Type) -> bool {
        match (self, t) {
            (Value::Node(_), Type::Node) | (Value::Edge(_), Type::Edge) | (Value::Path(_), Type::Path) => true,
            (Value::Nothing, Type::Maybe(_)) => true,
            (v, Type::Maybe(inner)) => v.conforms(inner),
            (Value::Group(items), Type::Group(inner)) => items.iter().all(|(_, v)| v.conforms(inner)),
            _ => false,
        }
    }

    /// Human-readable rendering using graph ids.
    pub fn display(&self, g: &PropertyGraph) -> String {
        match self {
            Value::Node(n) => g.node_name(*n).to_string(),
            Value::Edge(e) => g.edge_name(*e).to_string(),
            Value::Path(p) => g.display_path(p),
            Value::Nothing => "Nothing".to_string(),
            Value::Group(items) => {
                let parts: Vec<String> =
                    items.iter().map(|(p, v)| format!("({}, {})", g.display_path(p), v.display(g))).collect();
                format!("list({})", parts.join(", "))
            }
        }
    }
}

/// A finite map from variables to values.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(BTreeMap<Var, Value>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment(BTreeMap::new())
    }

    pub fn singleton(x: Var, v: Value) -> Assignment {
        let mut a = Assignment::new();
        a.insert(x, v);
        a
    }

    pub fn get<Q: ?Sized + Ord>(&self, x: &Q) -> Option<&Value>
    where
        Var: std::borrow::Borrow<Q>,
    {
        self.0.get(x)
    }

    pub fn insert(&mut self, x: Var, v: Value) {
        self.0.insert(x, v);
    }

    pub fn contains<Q: ?Sized + Ord>(&self, x: &Q) -> bool
    where
        Var: std::borrow::Borrow<Q>,
    {
        self.0.contains_key(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Value)> {
        self.0.iter()
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.0.keys()
    }

    /// Conformance: same domain as the schema, and every value inhabits its type.
    pub fn conforms(&self, schema: &Schema) -> bool {
        self.0.len() == schema.len()
            && self.0.iter().all(|(x, v)| schema.get(x).is_some_and(|t| v.conforms(t)))
    }

    pub fn display(&self, g: &PropertyGraph) -> String {
        let parts: Vec<String> = self.0.iter().map(|(x, v)| format!("{x}↦{}", v.display(g))).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl FromIterator<(Var, Value)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Var, Value)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

/// An element of a query's answer set: a tuple of paths with bindings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Answer {
    pub paths: Vec<Path>,
    pub bindings: Assignment,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NodeId;

    #[test]
    fn conformance() {
        let n = Value::Node(NodeId(0));
        assert!(n.conforms(&Type::Node));
        assert!(!n.conforms(&Type::Edge));
        assert!(Value::Nothing.conforms(&Type::Maybe(Box::new(Type::Edge))));
        assert!(n.conforms(&Type::Maybe(Box::new(Type::Node))));
        let g = Value::group(vec![(Path::single(NodeId(0)), n.clone())]);
        assert!(g.conforms(&Type::group(Type::Node)));
        assert!(!g.conforms(&Type::group(Type::Edge)));
        assert!(Value::empty_group().conforms(&Type::group(Type::Edge)));
    }
}
