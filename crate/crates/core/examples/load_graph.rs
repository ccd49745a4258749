//! Builds a property graph in code, loads another from JSON, and shows how
//! validation failures are reported.

use gpc::graph::{Constant, GraphBuilder, PropertyGraph};

fn main() {
    let g = GraphBuilder::new()
        .node("alice", &["Person"])
        .prop("alice", "age", Constant::Int(31))
        .node("bob", &["Person"])
        .directed("knows", "alice", "bob", &["knows"])
        .undirected("met", &["alice", "bob"], &[])
        .build()
        .expect("valid graph");
    println!("built: {} nodes, {} directed, {} undirected", g.node_count(), g.directed_edge_count(), g.undirected_edge_count());

    let path = g.path(&["alice", "knows", "bob", "met", "alice"]).unwrap();
    println!("path {} valid={} trail={} simple={}", g.display_path(&path), g.path_is_valid(&path), path.is_trail(), path.is_simple());

    let text = r#"{"nodes": [{"id": "a"}], "directed_edges": [{"id": "e", "src": "a", "tgt": "b"}]}"#;
    match PropertyGraph::from_json_str(text) {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected: {e}"),
    }
}
