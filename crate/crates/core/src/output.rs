//! JSON rendering of values and answers, in a canonical order.

use serde_json::{json, Map, Value as Json};

use crate::graph::{Path, PropertyGraph};
use crate::value::{Answer, Assignment, Value};

pub fn path_json(g: &PropertyGraph, p: &Path) -> Json {
    json!({ "elements": g.path_names(p) })
}

pub fn value_json(g: &PropertyGraph, v: &Value) -> Json {
    match v {
        Value::Node(n) => json!({ "kind": "node", "id": g.node_name(*n) }),
        Value::Edge(e) => json!({ "kind": "edge", "id": g.edge_name(*e) }),
        Value::Path(p) => json!({ "kind": "path", "elements": g.path_names(p) }),
        Value::Nothing => json!({ "kind": "nothing" }),
        Value::Group(items) => {
            let items: Vec<Json> = items.iter().map(|(p, v)| json!([path_json(g, p), value_json(g, v)])).collect();
            json!({ "kind": "group", "items": items })
        }
    }
}

pub fn bindings_json(g: &PropertyGraph, mu: &Assignment) -> Json {
    let map: Map<String, Json> = mu.iter().map(|(x, v)| (x.to_string(), value_json(g, v))).collect();
    Json::Object(map)
}

pub fn answer_json(g: &PropertyGraph, a: &Answer) -> Json {
    let paths: Vec<Json> = a.paths.iter().map(|p| path_json(g, p)).collect();
    json!({ "paths": paths, "bindings": bindings_json(g, &a.bindings) })
}

pub fn tuple_json(g: &PropertyGraph, t: &[Value]) -> Json {
    json!({ "tuple": t.iter().map(|v| value_json(g, v)).collect::<Vec<_>>() })
}

/// Answers sorted by the element names of their paths, then by the
/// serialized bindings. Independent of internal id numbering.
pub fn canonical_answers<'a>(g: &PropertyGraph, answers: impl IntoIterator<Item = &'a Answer>) -> Vec<Json> {
    let mut keyed: Vec<(Vec<Vec<String>>, String, Json)> = answers
        .into_iter()
        .map(|a| {
            let key = a.paths.iter().map(|p| g.path_names(p)).collect();
            let j = answer_json(g, a);
            (key, j["bindings"].to_string(), j)
        })
        .collect();
    keyed.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    keyed.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
    keyed.into_iter().map(|(_, _, j)| j).collect()
}

/// Tuples sorted by their serialized form.
pub fn canonical_tuples<'a>(g: &PropertyGraph, tuples: impl IntoIterator<Item = &'a Vec<Value>>) -> Vec<Json> {
    let mut out: Vec<(String, Json)> = tuples
        .into_iter()
        .map(|t| {
            let j = tuple_json(g, t);
            (j.to_string(), j)
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.dedup_by(|a, b| a.0 == b.0);
    out.into_iter().map(|(_, j)| j).collect()
}

pub fn ndjson(lines: &[Json]) -> String {
    let mut out = String::new();
    for l in lines {
        out.push_str(&l.to_string());
        out.push('\n');
    }
    out
}

/// Tab-separated rendering: one column for the paths and one per variable.
pub fn answers_table(g: &PropertyGraph, answers: &[Answer]) -> String {
    let mut order: Vec<&Answer> = answers.iter().collect();
    order.sort_by_cached_key(|a| (a.paths.iter().map(|p| g.path_names(p)).collect::<Vec<_>>(), a.bindings.display(g)));
    let vars: Vec<String> = answers.first().map(|a| a.bindings.vars().map(|v| v.to_string()).collect()).unwrap_or_default();
    let mut rows = vec![std::iter::once("paths".to_string()).chain(vars.iter().cloned()).collect::<Vec<_>>()];
    for a in order {
        let paths: Vec<String> = a.paths.iter().map(|p| g.display_path(p)).collect();
        let mut row = vec![paths.join(" ")];
        row.extend(a.bindings.iter().map(|(_, v)| v.display(g)));
        rows.push(row);
    }
    rows.into_iter().map(|r| r.join("\t") + "\n").collect()
}

pub fn tuples_table(g: &PropertyGraph, tuples: &[Vec<Value>]) -> String {
    let mut rows: Vec<String> =
        tuples.iter().map(|t| t.iter().map(|v| v.display(g)).collect::<Vec<_>>().join("\t")).collect();
    rows.sort();
    rows.into_iter().map(|r| r + "\n").collect()
}
