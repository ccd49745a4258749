//! Schema inference and well-typedness.
//!
//! Types are inferred bottom-up; every rule is syntax-directed, so each
//! variable of a well-typed expression gets exactly one type.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{render_pattern, render_query, Condition, Pattern, Query, RuleSet, Var};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Type {
    Node,
    Edge,
    Path,
    Maybe(Box<Type>),
    Group(Box<Type>),
}

impl Type {
    pub fn group(t: Type) -> Type {
        Type::Group(Box::new(t))
    }

    /// Node or Edge.
    pub fn is_singleton(&self) -> bool {
        matches!(self, Type::Node | Type::Edge)
    }

    /// True if `Maybe` occurs directly inside `Maybe` anywhere in the type.
    pub fn has_nested_maybe(&self) -> bool {
        match self {
            Type::Maybe(inner) => matches!(**inner, Type::Maybe(_)) || inner.has_nested_maybe(),
            Type::Group(inner) => inner.has_nested_maybe(),
            _ => false,
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Node => f.write_str("Node"),
            Type::Edge => f.write_str("Edge"),
            Type::Path => f.write_str("Path"),
            Type::Maybe(t) => write!(f, "Maybe({t})"),
            Type::Group(t) => write!(f, "Group({t})"),
        }
    }
}

impl Serialize for Type {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `τ?`: wraps in `Maybe` unless already a `Maybe`.
pub fn maybe_wrap(t: Type) -> Type {
    match t {
        Type::Maybe(_) => t,
        other => Type::Maybe(Box::new(other)),
    }
}

pub type Schema = BTreeMap<Var, Type>;

/// Renders a schema as the JSON object used by the `check` command.
pub fn schema_json(schema: &Schema) -> serde_json::Value {
    let map = schema.iter().map(|(k, t)| (k.to_string(), serde_json::Value::String(t.to_string()))).collect();
    serde_json::Value::Object(map)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TypeErrorKind {
    ConflictingTypes,
    GroupOrMaybeJoin,
    PathVarReuse,
    NonSingletonCondition,
    UnboundConditionVariable,
    EdgelessRepetition,
}

impl fmt::Display for TypeErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeErrorKind::ConflictingTypes => "conflicting types",
            TypeErrorKind::GroupOrMaybeJoin => "join on a variable that is not a node or edge",
            TypeErrorKind::PathVarReuse => "path variable reused inside its pattern",
            TypeErrorKind::NonSingletonCondition => "condition over a non-singleton variable",
            TypeErrorKind::UnboundConditionVariable => "condition variable not bound by the pattern",
            TypeErrorKind::EdgelessRepetition => "repeated pattern may match an edgeless path",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("type error: {kind}{} in {context}", variable.as_ref().map(|v| format!(" for variable {v}")).unwrap_or_default())]
pub struct TypeError {
    pub kind: TypeErrorKind,
    pub variable: Option<String>,
    /// Rendered subexpression at which the failing rule applies.
    pub context: String,
    pub detail: String,
}

impl TypeError {
    fn new(kind: TypeErrorKind, variable: Option<&Var>, context: String, detail: String) -> TypeError {
        TypeError { kind, variable: variable.map(|v| v.to_string()), context, detail }
    }
}

/// Which binary operator combines two schemas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combine {
    Union,
    Concat,
    Join,
}

/// Combines two operand schemas with the rule for `op`. `context` renders
/// the combined expression for error messages.
pub fn combine_schemas(op: Combine, a: &Schema, b: &Schema, context: impl Fn() -> String) -> Result<Schema, TypeError> {
    let mut out = Schema::new();
    for (x, ta) in a {
        match b.get(x) {
            None => {
                out.insert(x.clone(), if op == Combine::Union { maybe_wrap(ta.clone()) } else { ta.clone() });
            }
            Some(tb) => {
                let t = match op {
                    Combine::Union => union_type(ta, tb).ok_or_else(|| {
                        TypeError::new(
                            TypeErrorKind::ConflictingTypes,
                            Some(x),
                            context(),
                            format!("{x} is {ta} on one side of the union and {tb} on the other"),
                        )
                    })?,
                    Combine::Concat | Combine::Join => {
                        if ta != tb {
                            return Err(TypeError::new(
                                TypeErrorKind::ConflictingTypes,
                                Some(x),
                                context(),
                                format!("{x} is both {ta} and {tb}"),
                            ));
                        }
                        if !ta.is_singleton() {
                            return Err(TypeError::new(
                                TypeErrorKind::GroupOrMaybeJoin,
                                Some(x),
                                context(),
                                format!("shared variable {x} has type {ta}; only Node and Edge variables can be shared"),
                            ));
                        }
                        ta.clone()
                    }
                };
                out.insert(x.clone(), t);
            }
        }
    }
    for (x, tb) in b {
        if !a.contains_key(x) {
            out.insert(x.clone(), if op == Combine::Union { maybe_wrap(tb.clone()) } else { tb.clone() });
        }
    }
    Ok(out)
}

fn union_type(a: &Type, b: &Type) -> Option<Type> {
    if a == b {
        return Some(a.clone());
    }
    match (a, b) {
        (Type::Maybe(inner), other) if **inner == *other => Some(a.clone()),
        (other, Type::Maybe(inner)) if **inner == *other => Some(b.clone()),
        _ => None,
    }
}

pub fn infer_pattern(p: &Pattern) -> Result<Schema, TypeError> {
    match p {
        Pattern::Node(d) => Ok(d.var.iter().map(|v| (v.clone(), Type::Node)).collect()),
        Pattern::Edge(_, d) => Ok(d.var.iter().map(|v| (v.clone(), Type::Edge)).collect()),
        Pattern::Union(a, b) => {
            combine_schemas(Combine::Union, &infer_pattern(a)?, &infer_pattern(b)?, || render_pattern(p))
        }
        Pattern::Concat(a, b) => {
            combine_schemas(Combine::Concat, &infer_pattern(a)?, &infer_pattern(b)?, || render_pattern(p))
        }
        Pattern::Cond(a, theta) => {
            let s = infer_pattern(a)?;
            check_condition_in(&s, theta, || render_pattern(p))?;
            Ok(s)
        }
        Pattern::Repeat(a, _, _) => Ok(infer_pattern(a)?.into_iter().map(|(x, t)| (x, Type::group(t))).collect()),
    }
}

/// Checks `θ : Bool` against the schema of the conditioned pattern.
pub fn check_condition(pattern: &Pattern, theta: &Condition) -> Result<(), TypeError> {
    let s = infer_pattern(pattern)?;
    check_condition_in(&s, theta, || render_pattern(&Pattern::cond(pattern.clone(), theta.clone())))
}

fn check_condition_in(s: &Schema, theta: &Condition, context: impl Fn() -> String) -> Result<(), TypeError> {
    for x in theta.vars() {
        match s.get(&x) {
            None => {
                return Err(TypeError::new(
                    TypeErrorKind::UnboundConditionVariable,
                    Some(&x),
                    context(),
                    format!("{x} does not occur in the conditioned pattern"),
                ))
            }
            Some(t) if !t.is_singleton() => {
                return Err(TypeError::new(
                    TypeErrorKind::NonSingletonCondition,
                    Some(&x),
                    context(),
                    format!("{x} has type {t}; conditions may only mention Node and Edge variables"),
                ))
            }
            Some(_) => {}
        }
    }
    Ok(())
}

pub fn infer_query(q: &Query) -> Result<Schema, TypeError> {
    match q {
        Query::Restricted(_, p) => infer_pattern(p),
        Query::Bound(x, _, p) => {
            let mut s = infer_pattern(p)?;
            if s.contains_key(x) {
                return Err(TypeError::new(
                    TypeErrorKind::PathVarReuse,
                    Some(x),
                    render_query(q),
                    format!("path variable {x} also occurs in its pattern"),
                ));
            }
            s.insert(x.clone(), Type::Path);
            Ok(s)
        }
        Query::Join(a, b) => combine_schemas(Combine::Join, &infer_query(a)?, &infer_query(b)?, || render_query(q)),
    }
}

/// Checks every rule body; returns the schema of each.
pub fn infer_ruleset(rs: &RuleSet) -> Result<Vec<Schema>, TypeError> {
    rs.rules.iter().map(|r| infer_query(&r.body)).collect()
}

/// Complement of the inductive "allowed" predicate: false only when the
/// pattern is guaranteed to match paths with at least one edge.
pub fn may_match_edgeless(p: &Pattern) -> bool {
    !allowed(p)
}

fn allowed(p: &Pattern) -> bool {
    match p {
        Pattern::Edge(..) => true,
        Pattern::Node(_) => false,
        Pattern::Cond(a, _) => allowed(a),
        Pattern::Repeat(a, n, _) => *n > 0 && allowed(a),
        Pattern::Concat(a, b) => allowed(a) || allowed(b),
        Pattern::Union(a, b) => allowed(a) && allowed(b),
    }
}

/// How repetitions assemble the bindings of their iterations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CollectMode {
    /// Repetition bodies must never match edgeless paths (checked statically).
    Syntactic,
    /// Iterations that match edgeless paths are discarded at run time.
    Dynamic,
    /// Consecutive edgeless iterations are fused into one group.
    #[default]
    Grouping,
}

impl CollectMode {
    pub fn name(self) -> &'static str {
        match self {
            CollectMode::Syntactic => "syntactic",
            CollectMode::Dynamic => "dynamic",
            CollectMode::Grouping => "grouping",
        }
    }
}

impl std::str::FromStr for CollectMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "syntactic" => Ok(CollectMode::Syntactic),
            "dynamic" => Ok(CollectMode::Dynamic),
            "grouping" => Ok(CollectMode::Grouping),
            other => Err(format!("unknown collect mode {other:?}")),
        }
    }
}

/// In syntactic mode, rejects repetitions whose body may match an edgeless
/// path. Other modes accept everything.
pub fn validate_pattern_for_mode(p: &Pattern, mode: CollectMode) -> Result<(), TypeError> {
    if mode != CollectMode::Syntactic {
        return Ok(());
    }
    match p {
        Pattern::Node(_) | Pattern::Edge(..) => Ok(()),
        Pattern::Union(a, b) | Pattern::Concat(a, b) => {
            validate_pattern_for_mode(a, mode)?;
            validate_pattern_for_mode(b, mode)
        }
        Pattern::Cond(a, _) => validate_pattern_for_mode(a, mode),
        Pattern::Repeat(a, _, _) => {
            if may_match_edgeless(a) {
                return Err(TypeError::new(
                    TypeErrorKind::EdgelessRepetition,
                    None,
                    render_pattern(p),
                    "the repeated pattern may match an edgeless path, which syntactic mode forbids".to_string(),
                ));
            }
            validate_pattern_for_mode(a, mode)
        }
    }
}

pub fn validate_query_for_mode(q: &Query, mode: CollectMode) -> Result<(), TypeError> {
    match q {
        Query::Restricted(_, p) | Query::Bound(_, _, p) => validate_pattern_for_mode(p, mode),
        Query::Join(a, b) => {
            validate_query_for_mode(a, mode)?;
            validate_query_for_mode(b, mode)
        }
    }
}
