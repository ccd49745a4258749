//! Checks the engine against the brute-force matcher on random graphs.

use std::collections::BTreeSet;

use gpc::eval::{eval_query, EvalConfig};
use gpc::graph::GraphBuilder;
use gpc::oracle::{brute_force_query, OracleConfig};
use gpc::syntax::parse_query;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let queries = ["TRAIL (x) -[e]->{1..} (y)", "SIMPLE [(x) -> (y)]{0..2}", "SHORTEST [(x) <-{0..} (y)] <x.k = y.k>"];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for round in 0..20 {
        let n = rng.gen_range(1..=4);
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b = b.node(&format!("n{i}"), &[]).prop(&format!("n{i}"), "k", gpc::graph::Constant::Int(i % 2));
        }
        for i in 0..rng.gen_range(0..=5) {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            b = b.directed(&format!("e{i}"), &format!("n{u}"), &format!("n{v}"), &[]);
        }
        let g = b.build().unwrap();
        for text in queries {
            let q = parse_query(text).unwrap();
            let engine: BTreeSet<_> =
                eval_query(&g, &q, &EvalConfig::default().with_max_len(4)).unwrap().answers.into_iter().collect();
            let oracle = brute_force_query(&g, &q, &OracleConfig { max_len: Some(4), ..Default::default() }).unwrap();
            assert_eq!(engine, oracle, "round {round}: {text}");
            checked += engine.len();
        }
    }
    println!("engine and oracle agree on {checked} answers over 20 graphs");
}
