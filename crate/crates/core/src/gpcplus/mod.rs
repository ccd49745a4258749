//! GPC+: rule sets answered by the union of their projections, plus
//! translators from 2RPQs, C2RPQs and nested regular expressions.

pub mod lang;
pub mod translate;

use std::collections::BTreeSet;

use crate::eval::{eval_query, EvalConfig, EvalError};
use crate::graph::PropertyGraph;
use crate::syntax::RuleSet;
use crate::typing::infer_ruleset;
use crate::value::Value;

pub use lang::{parse_c2rpq, parse_nre, parse_regex, Atom, C2rpq, LangError, Nre, Regex};
pub use translate::{regex_pattern, translate_2rpq, translate_c2rpq, translate_nre};

/// A projected answer `μ(x̄)`.
pub type ValueTuple = Vec<Value>;

/// Result of a rule set: the projected tuples and the largest length bound
/// used by any rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSetResult {
    pub tuples: BTreeSet<ValueTuple>,
    pub bound_used: usize,
}

/// The set `⟦Q₁⟧^{x̄} ∪ … ∪ ⟦Q_k⟧^{x̄}`.
pub fn eval_ruleset(g: &PropertyGraph, rules: &RuleSet, cfg: &EvalConfig) -> Result<RuleSetResult, EvalError> {
    infer_ruleset(rules)?;
    let mut tuples = BTreeSet::new();
    let mut bound_used = 0;
    for rule in &rules.rules {
        let res = eval_query(g, &rule.body, cfg)?;
        bound_used = bound_used.max(res.bound_used);
        for a in res.answers {
            let tuple = rule
                .head
                .iter()
                .map(|x| {
                    a.bindings
                        .get(x)
                        .cloned()
                        .ok_or_else(|| EvalError::Precondition(format!("head variable {x} is not bound by its rule body")))
                })
                .collect::<Result<ValueTuple, _>>()?;
            tuples.insert(tuple);
        }
    }
    Ok(RuleSetResult { tuples, bound_used })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Constant, GraphBuilder};
    use crate::syntax::parse_ruleset;

    fn g_tiny() -> PropertyGraph {
        GraphBuilder::new()
            .node("n1", &["A"])
            .prop("n1", "k", Constant::Str("5".into()))
            .node("n2", &["B"])
            .prop("n2", "k", Constant::Str("5".into()))
            .directed("e1", "n1", "n2", &["a"])
            .undirected("u1", &["n2"], &["s"])
            .build()
            .unwrap()
    }

    #[test]
    fn single_rule_projection() {
        let g = g_tiny();
        let rs = parse_ruleset("Ans(x, y) <- SHORTEST (x)->(y)").unwrap();
        let res = eval_ruleset(&g, &rs, &EvalConfig::default()).unwrap();
        let n = |s| Value::Node(g.node(s).unwrap());
        assert_eq!(res.tuples, BTreeSet::from([vec![n("n1"), n("n2")]]));
    }

    #[test]
    fn union_of_rules() {
        let g = g_tiny();
        let rs = parse_ruleset("Ans(x) <- SHORTEST (x:A); Ans(x) <- SHORTEST (x:B)").unwrap();
        let res = eval_ruleset(&g, &rs, &EvalConfig::default()).unwrap();
        assert_eq!(res.tuples.len(), 2);
    }

    #[test]
    fn projection_collapses_answers() {
        let g = GraphBuilder::new()
            .node("a", &[])
            .node("b", &[])
            .directed("e1", "a", "b", &[])
            .directed("e2", "a", "b", &[])
            .build()
            .unwrap();
        let rs = parse_ruleset("Ans(x) <- SHORTEST (x)-[e]->()").unwrap();
        let answers = eval_query(&g, &rs.rules[0].body, &EvalConfig::default()).unwrap().answers;
        let res = eval_ruleset(&g, &rs, &EvalConfig::default()).unwrap();
        assert_eq!(answers.len(), 2);
        assert_eq!(res.tuples.len(), 1);
    }
}
