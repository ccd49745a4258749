//! Evaluates restricted path queries over a small graph.

use gpc::eval::{eval_query, EvalConfig};
use gpc::graph::GraphBuilder;
use gpc::syntax::parse_query;

fn main() {
    let g = GraphBuilder::new()
        .node("a", &["Start"])
        .node("b", &[])
        .node("c", &[])
        .node("d", &["End"])
        .directed("ab", "a", "b", &[])
        .directed("bd", "b", "d", &[])
        .directed("ac", "a", "c", &[])
        .directed("cd", "c", "d", &[])
        .directed("ad", "a", "d", &["slow"])
        .directed("da", "d", "a", &[])
        .build()
        .unwrap();
    for text in [
        "SHORTEST (:Start) ->{1..} (:End)",
        "p = SHORTEST (:Start) -[:slow]-> (:End)",
        "SHORTEST TRAIL (:Start) -[e]->{2..} (:End)",
        "SIMPLE (x:Start) ->{1..} (y)",
    ] {
        let q = parse_query(text).unwrap();
        let res = eval_query(&g, &q, &EvalConfig::default()).unwrap();
        println!("{text}  ({} answers, bound {})", res.answers.len(), res.bound_used);
        for a in &res.answers {
            let paths: Vec<String> = a.paths.iter().map(|p| g.display_path(p)).collect();
            println!("    {}  {}", paths.join(" "), a.bindings.display(&g));
        }
    }
}
