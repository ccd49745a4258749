//! Translates regular path queries, conjunctive queries and nested regular
//! expressions into rule sets, and evaluates them.

use gpc::eval::EvalConfig;
use gpc::gpcplus::{eval_ruleset, parse_c2rpq, parse_nre, translate_c2rpq, translate_nre};
use gpc::graph::GraphBuilder;
use gpc::syntax::render_ruleset;

fn main() {
    let g = GraphBuilder::new()
        .node("s", &[])
        .node("m", &[])
        .node("t", &[])
        .node("w", &[])
        .directed("a1", "s", "m", &["a"])
        .directed("b1", "m", "w", &["b"])
        .directed("c1", "m", "t", &["c"])
        .build()
        .unwrap();
    let cfg = EvalConfig::default();
    let show = |rules: &gpc::syntax::RuleSet| {
        println!("{}", render_ruleset(rules).trim_end());
        for t in eval_ruleset(&g, rules, &cfg).unwrap().tuples {
            let names: Vec<String> = t.iter().map(|v| v.display(&g)).collect();
            println!("    ({})", names.join(", "));
        }
    };
    show(&translate_nre(&parse_nre("a.c").unwrap()));
    show(&translate_nre(&parse_nre("a[b].c").unwrap()));
    show(&translate_nre(&parse_nre("c^-.a^-").unwrap()));
    show(&translate_c2rpq(&parse_c2rpq("Ans(x, z) <- (x, a, y), (y, b|c, z)").unwrap()));
}
