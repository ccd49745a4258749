//! Translations of 2RPQs, C2RPQs and NREs into GPC+ rule sets.
//!
//! Expressions become sequences of pattern factors that are concatenated
//! left to right. Two adjacent edge-level factors get an anonymous `()`
//! between them, so `a.b` reads `-[:a]->()-[:b]->`.
//!
//! A nest `[f]` at a point is an excursion: `(z) π_f () ρ_f (z)` where `z` is
//! fresh and `ρ_f` walks back to `z`. For `f = b` and `f = b+` the walk is
//! unlabelled (`<-[]-` and `<-[]-{1..}`); otherwise it is the inverted copy
//! of `π_f`, which retraces the same labels in reverse.

use crate::syntax::{Direction, Pattern, Query, Restrictor, Rule, RuleSet, Var, FRESH_PREFIX};

use super::lang::{C2rpq, Nre, Regex};

/// Endpoint variables of translated 2RPQs and NREs.
pub const SRC_VAR: &str = "x";
pub const TGT_VAR: &str = "y";

/// The pattern for a regular expression, without endpoint variables.
pub fn regex_pattern(r: &Regex) -> Pattern {
    Pattern::concat_all(Translator::default().forward(r.as_nre()))
}

/// `(x) π_r (y)`.
pub fn translate_2rpq(r: &Regex) -> Pattern {
    wrap(Translator::default().forward(r.as_nre()))
}

/// One rule whose body joins `SHORTEST (x) π_r (y)` per atom.
pub fn translate_c2rpq(q: &C2rpq) -> RuleSet {
    let mut body: Option<Query> = None;
    for atom in &q.atoms {
        let mut parts = vec![Pattern::node(Some(atom.src.as_str()), None)];
        parts = join(parts, Translator::default().forward(atom.regex.as_nre()));
        parts = join(parts, vec![Pattern::node(Some(atom.tgt.as_str()), None)]);
        let leaf = Query::Restricted(Restrictor::Shortest, Pattern::concat_all(parts));
        body = Some(match body {
            None => leaf,
            Some(b) => Query::join(b, leaf),
        });
    }
    let body = body.expect("a C2RPQ has at least one atom");
    RuleSet { rules: vec![Rule { head: q.head.clone(), body }] }
}

/// `Ans(x, y) <- SHORTEST (x) π_e (y)`.
pub fn translate_nre(e: &Nre) -> RuleSet {
    let pattern = wrap(Translator::default().forward(e));
    RuleSet {
        rules: vec![Rule {
            head: vec![Var::new(SRC_VAR), Var::new(TGT_VAR)],
            body: Query::Restricted(Restrictor::Shortest, pattern),
        }],
    }
}

fn wrap(parts: Vec<Pattern>) -> Pattern {
    let parts = join(vec![Pattern::node(Some(SRC_VAR), None)], parts);
    Pattern::concat_all(join(parts, vec![Pattern::node(Some(TGT_VAR), None)]))
}

fn join(mut left: Vec<Pattern>, right: Vec<Pattern>) -> Vec<Pattern> {
    let node_between =
        matches!(left.last(), Some(Pattern::Node(_))) || matches!(right.first(), Some(Pattern::Node(_)));
    if !node_between {
        left.push(Pattern::node(None, None));
    }
    left.extend(right);
    left
}

#[derive(Default)]
struct Translator {
    next_fresh: usize,
}

impl Translator {
    fn fresh(&mut self) -> Var {
        let v = Var::new(&format!("{FRESH_PREFIX}{}", self.next_fresh));
        self.next_fresh += 1;
        v
    }

    fn forward(&mut self, e: &Nre) -> Vec<Pattern> {
        match e {
            Nre::Label(a) => vec![Pattern::edge(Direction::Forward, None, Some(a))],
            Nre::Inverse(a) => vec![Pattern::edge(Direction::Backward, None, Some(a))],
            Nre::Concat(a, b) => {
                let left = self.forward(a);
                join(left, self.forward(b))
            }
            Nre::Union(a, b) => {
                let left = Pattern::concat_all(self.forward(a));
                vec![Pattern::union(left, Pattern::concat_all(self.forward(b)))]
            }
            Nre::Plus(a) => vec![Pattern::repeat(Pattern::concat_all(self.forward(a)), 1, None)],
            Nre::Star(a) => vec![Pattern::repeat(Pattern::concat_all(self.forward(a)), 0, None)],
            Nre::Nest(f) => {
                let z = self.fresh();
                let mut parts = vec![Pattern::node(Some(z.as_str()), None)];
                parts.extend(self.forward(f));
                parts.push(Pattern::node(None, None));
                parts.extend(back_walk(f));
                parts.push(Pattern::node(Some(z.as_str()), None));
                parts
            }
        }
    }
}

fn back_walk(f: &Nre) -> Vec<Pattern> {
    let any_back = || Pattern::edge(Direction::Backward, None, None);
    match f {
        Nre::Label(_) => vec![any_back()],
        Nre::Plus(inner) if matches!(**inner, Nre::Label(_)) => vec![Pattern::repeat(any_back(), 1, None)],
        _ => inverted(f),
    }
}

/// Matches the reversal of every path matched by the forward translation.
fn inverted(e: &Nre) -> Vec<Pattern> {
    match e {
        Nre::Label(a) => vec![Pattern::edge(Direction::Backward, None, Some(a))],
        Nre::Inverse(a) => vec![Pattern::edge(Direction::Forward, None, Some(a))],
        Nre::Concat(a, b) => join(inverted(b), inverted(a)),
        Nre::Union(a, b) => {
            vec![Pattern::union(Pattern::concat_all(inverted(a)), Pattern::concat_all(inverted(b)))]
        }
        Nre::Plus(a) => vec![Pattern::repeat(Pattern::concat_all(inverted(a)), 1, None)],
        Nre::Star(a) => vec![Pattern::repeat(Pattern::concat_all(inverted(a)), 0, None)],
        // an excursion ends where it starts
        Nre::Nest(_) => vec![Pattern::node(None, None)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpcplus::lang::{parse_c2rpq, parse_nre, parse_regex};
    use crate::syntax::{parse_pattern, parse_pattern_with, parse_ruleset, render_ruleset, ParseOptions};

    #[test]
    fn concatenation_exposes_endpoints() {
        let p = translate_2rpq(&parse_regex("a.b").unwrap());
        assert_eq!(p, parse_pattern("(x)-[:a]->()-[:b]->(y)").unwrap());
    }

    #[test]
    fn operators() {
        let p = translate_2rpq(&parse_regex("(a|b^-)*.c+").unwrap());
        assert_eq!(p, parse_pattern("(x)[[-[:a]->] + [<-[:b]-]]{0..}()-[:c]->{1..}(y)").unwrap());
    }

    #[test]
    fn nested_example_shape() {
        let rs = translate_nre(&parse_nre("(a[b+]c)+").unwrap());
        let want = "SHORTEST (x)[-[:a]->(_v0)-[:b]->{1..}()<-[]-{1..}(_v0)-[:c]->]{1..}(y)";
        let want = parse_pattern_with(&want["SHORTEST ".len()..], ParseOptions { allow_reserved: true }).unwrap();
        assert_eq!(rs.rules[0].body, Query::Restricted(Restrictor::Shortest, want));
    }

    #[test]
    fn nest_free_nre_matches_2rpq() {
        let text = "a^-.(b|c)*";
        let rs = translate_nre(&parse_nre(text).unwrap());
        assert_eq!(rs.rules[0].body, Query::Restricted(Restrictor::Shortest, translate_2rpq(&parse_regex(text).unwrap())));
    }

    #[test]
    fn general_nests_use_inverted_copies() {
        let rs = translate_nre(&parse_nre("[a.b^-]").unwrap());
        let want = parse_pattern_with("(x)(_v0)-[:a]->()<-[:b]-()-[:b]->()<-[:a]-(_v0)(y)", ParseOptions { allow_reserved: true })
            .unwrap();
        assert_eq!(rs.rules[0].body, Query::Restricted(Restrictor::Shortest, want));
    }

    #[test]
    fn c2rpq_joins_shortest_atoms() {
        let rs = translate_c2rpq(&parse_c2rpq("Ans(x, z) <- (x, a+, y), (y, b, z)").unwrap());
        let want = parse_ruleset("Ans(x, z) <- SHORTEST (x)-[:a]->{1..}(y), SHORTEST (y)-[:b]->(z)").unwrap();
        assert_eq!(rs, want);
        assert_eq!(parse_ruleset(&render_ruleset(&rs)).unwrap(), rs);
    }
}
