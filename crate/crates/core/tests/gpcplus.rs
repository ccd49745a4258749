mod common;

use std::collections::BTreeSet;

use common::*;
use gpc::eval::EvalConfig;
use gpc::gpcplus::{
    eval_ruleset, parse_c2rpq, parse_nre, translate_2rpq, translate_c2rpq, translate_nre, Nre, Regex,
};
use gpc::oracle::{product_2rpq, recursive_nre};
use gpc::syntax::{parse_ruleset_with, render_ruleset, ParseOptions, Query};
use gpc::typing::infer_ruleset;
use gpc::value::Value;
use proptest::prelude::*;

fn pairs(tuples: BTreeSet<Vec<Value>>) -> BTreeSet<(Value, Value)> {
    tuples.into_iter().map(|t| (t[0].clone(), t[1].clone())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn nre_display_round_trips(seed in any::<u64>()) {
        let e = random_nre(&mut rng(seed), 4, true);
        prop_assert_eq!(parse_nre(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn c2rpq_display_round_trips(seed in any::<u64>()) {
        let q = random_c2rpq(&mut rng(seed));
        prop_assert_eq!(parse_c2rpq(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn translations_are_well_typed_and_render(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let rules = if seed % 2 == 0 { translate_nre(&random_nre(&mut rng, 4, true)) } else { translate_c2rpq(&random_c2rpq(&mut rng)) };
        prop_assert!(infer_ruleset(&rules).is_ok());
        let text = render_ruleset(&rules);
        let back = parse_ruleset_with(&text, ParseOptions { allow_reserved: true }).unwrap();
        prop_assert_eq!(back, rules);
    }

    #[test]
    fn nest_free_nres_translate_like_2rpqs(seed in any::<u64>()) {
        let e = random_nre(&mut rng(seed), 4, false);
        let rules = translate_nre(&e);
        let Query::Restricted(_, p) = &rules.rules[0].body else { panic!("expected a restricted body") };
        prop_assert_eq!(p, &translate_2rpq(&Regex::new(e).unwrap()));
    }

    #[test]
    fn nested_tests_return_to_their_node(seed in any::<u64>()) {
        // the back walk of a nested test always cancels the forward walk
        let mut rng = rng(seed);
        let g = random_labelled_graph(&mut rng, 4, 6);
        let f = random_nre(&mut rng, 3, true);
        let got = pairs(eval_ruleset(&g, &translate_nre(&Nre::nest(f.clone())), &EvalConfig::default()).unwrap().tuples);
        let want: BTreeSet<(Value, Value)> =
            recursive_nre(&g, &f).into_iter().map(|(u, _)| (Value::Node(u), Value::Node(u))).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn regex_queries_match_the_product_construction(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let g = random_labelled_graph(&mut rng, 4, 6);
        let r = random_regex(&mut rng, 5);
        let got = pairs(eval_ruleset(&g, &translate_nre(r.as_nre()), &EvalConfig::default()).unwrap().tuples);
        let want: BTreeSet<(Value, Value)> =
            product_2rpq(&g, &r).into_iter().map(|(u, v)| (Value::Node(u), Value::Node(v))).collect();
        prop_assert_eq!(got, want);
    }
}

#[test]
fn fixture_queries() {
    let g = load("nested.json");
    let name = |v: &Value| match v {
        Value::Node(n) => g.node_name(*n).to_string(),
        other => panic!("expected a node, got {other:?}"),
    };
    let text = std::fs::read_to_string(data("nested.nre")).unwrap();
    let e = parse_nre(text.lines().filter(|l| !l.starts_with('#')).collect::<String>().trim()).unwrap();
    let got = eval_ruleset(&g, &translate_nre(&e), &EvalConfig::default()).unwrap().tuples;
    let names: Vec<Vec<String>> = got.iter().map(|t| t.iter().map(name).collect()).collect();
    assert_eq!(names, vec![vec!["s".to_string(), "t".to_string()]]);
}
