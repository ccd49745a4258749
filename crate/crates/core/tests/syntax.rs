mod common;

use common::*;
use gpc::graph::Constant;
use gpc::syntax::{
    parse_pattern, parse_query, parse_ruleset, render_pattern, render_query, render_ruleset, Condition, Pattern, Var,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pattern_render_round_trips(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let pg = PatternGen { mix_vars: true, ..PatternGen::default() };
        let p = pg.pattern(&mut rng);
        let text = render_pattern(&p);
        let back = parse_pattern(&text).map_err(|e| TestCaseError::fail(format!("`{text}`: {e}")))?;
        prop_assert_eq!(&back, &p, "{}", text);
        prop_assert_eq!(render_pattern(&back), text);
    }

    #[test]
    fn query_render_round_trips(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let q = random_query(&mut rng, &PatternGen::default());
        let text = render_query(&q);
        let back = parse_query(&text).map_err(|e| TestCaseError::fail(format!("`{text}`: {e}")))?;
        prop_assert_eq!(back, q, "{}", text);
    }

    #[test]
    fn string_constants_round_trip(s in "\\PC{0,12}|[\"\\\\\n\t]{0,4}") {
        let p = Pattern::cond(
            Pattern::node(Some("x"), None),
            Condition::PropEqConst { var: Var::new("x"), key: "k".into(), value: Constant::Str(s) },
        );
        let text = render_pattern(&p);
        prop_assert_eq!(parse_pattern(&text).unwrap(), p, "{}", text);
    }
}

#[test]
fn exact_repetition_is_sugar() {
    assert_eq!(parse_pattern("(x)-[:a]->{2}(y)").unwrap(), parse_pattern("(x)-[:a]->{2..2}(y)").unwrap());
    assert_eq!(parse_pattern("[(u)->]{0}").unwrap(), parse_pattern("[(u)->]{0..0}").unwrap());
}

#[test]
fn postfix_binds_tighter_than_concatenation() {
    // the repetition applies to the edge only, the condition to the last node only
    let p = parse_pattern("(x) -[:a]->{1..} (y) <y.k = 1>").unwrap();
    let Pattern::Concat(left, right) = p else { panic!("expected a concatenation") };
    assert!(matches!(*left, Pattern::Concat(_, ref r) if matches!(**r, Pattern::Repeat(..))));
    assert!(matches!(*right, Pattern::Cond(ref inner, _) if matches!(**inner, Pattern::Node(_))));
    // union is loosest
    assert!(matches!(parse_pattern("(x) -> (y) + (x)").unwrap(), Pattern::Union(..)));
}

#[test]
fn rulesets_round_trip() {
    let rs = parse_ruleset("Ans(x, y) <- SHORTEST (x)-[:a]->{1..}(y); Ans(x, y) <- p = TRAIL (x)<-(y), SIMPLE (y)").unwrap();
    assert_eq!(parse_ruleset(&render_ruleset(&rs)).unwrap(), rs);
}

#[test]
fn malformed_inputs_are_rejected() {
    for bad in ["(x", "(x)-[e]>", "()-[:]->()", "->{2..1}", "SHORTEST", "(x) <x.k = >", "Ans(x) <-"] {
        assert!(parse_query(bad).is_err() && parse_pattern(bad).is_err(), "{bad} accepted");
    }
}
