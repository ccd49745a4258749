//! Projects query answers onto rule heads.

use gpc::eval::EvalConfig;
use gpc::gpcplus::eval_ruleset;
use gpc::graph::GraphBuilder;
use gpc::syntax::parse_ruleset;

fn main() {
    let g = GraphBuilder::new()
        .node("ann", &["Person"])
        .node("bo", &["Person"])
        .node("cy", &["Person"])
        .node("acme", &["Company"])
        .directed("f1", "ann", "bo", &["follows"])
        .directed("f2", "bo", "cy", &["follows"])
        .directed("w1", "cy", "acme", &["worksAt"])
        .build()
        .unwrap();
    let rules = parse_ruleset(
        "Ans(p, c) <- SHORTEST (p:Person) -[:follows]->{0..} () -[:worksAt]-> (c:Company); \
         Ans(p, c) <- SHORTEST (p:Person) -[:worksAt]-> (c)",
    )
    .unwrap();
    let res = eval_ruleset(&g, &rules, &EvalConfig::default()).unwrap();
    for t in &res.tuples {
        let names: Vec<String> = t.iter().map(|v| v.display(&g)).collect();
        println!("({})", names.join(", "));
    }
}
