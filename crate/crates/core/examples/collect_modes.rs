//! Compares the three ways of collecting variables under repetition on a
//! pattern whose body can match without moving.

use gpc::eval::{eval_query, CollectMode, EvalConfig};
use gpc::graph::GraphBuilder;
use gpc::syntax::parse_query;

fn main() {
    let g = GraphBuilder::new()
        .node("u", &[])
        .node("v", &[])
        .directed("e", "u", "v", &[])
        .build()
        .unwrap();
    let q = parse_query("TRAIL [(x) + (x)->(y)]{1..3}").unwrap();
    for mode in [CollectMode::Grouping, CollectMode::Dynamic, CollectMode::Syntactic] {
        let cfg = EvalConfig::default().with_mode(mode);
        match eval_query(&g, &q, &cfg) {
            Ok(res) => {
                println!("{}: {} answers", mode.name(), res.answers.len());
                for a in &res.answers {
                    println!("    {}  {}", g.display_path(&a.paths[0]), a.bindings.display(&g));
                }
            }
            Err(e) => println!("{}: {e}", mode.name()),
        }
    }
}
