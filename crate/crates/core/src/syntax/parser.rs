//! Scannerless recursive-descent parser.
//!
//! Multi-character tokens (`-[`, `]->`, `<-[`, `->`, `<-`, `--`, `..`) must be
//! written without inner whitespace; whitespace is otherwise free. A `<`
//! opens a condition unless the next character is `-`, in which case it
//! starts a backward edge.

use thiserror::Error;

use super::ast::*;
use crate::graph::Constant;

/// Words that cannot be used as variable names.
pub const RESERVED_WORDS: &[&str] = &["simple", "trail", "shortest", "and", "or", "not", "true", "false"];

/// Prefix reserved for variables generated by translators.
pub const FRESH_PREFIX: &str = "_v";

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Accept variables starting with [`FRESH_PREFIX`].
    pub allow_reserved: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub message: String,
    offset: usize,
}

impl ParseError {
    /// Byte offset of the error in the input.
    pub fn offset(&self) -> usize {
        self.offset
    }
}

pub fn parse_pattern(text: &str) -> Result<Pattern, ParseError> {
    parse_pattern_with(text, ParseOptions::default())
}

pub fn parse_pattern_with(text: &str, opts: ParseOptions) -> Result<Pattern, ParseError> {
    let mut p = Parser::new(text, opts);
    let pat = p.pattern()?;
    p.end()?;
    Ok(pat)
}

pub fn parse_query(text: &str) -> Result<Query, ParseError> {
    parse_query_with(text, ParseOptions::default())
}

pub fn parse_query_with(text: &str, opts: ParseOptions) -> Result<Query, ParseError> {
    let mut p = Parser::new(text, opts);
    let q = p.query()?;
    p.end()?;
    Ok(q)
}

pub fn parse_ruleset(text: &str) -> Result<RuleSet, ParseError> {
    parse_ruleset_with(text, ParseOptions::default())
}

pub fn parse_ruleset_with(text: &str, opts: ParseOptions) -> Result<RuleSet, ParseError> {
    let mut p = Parser::new(text, opts);
    let rs = p.ruleset()?;
    p.end()?;
    Ok(rs)
}

/// Parses a rule set, a query or a pattern, whichever the text is. On
/// failure, reports the error that got furthest into the input.
pub fn parse_expr(text: &str, opts: ParseOptions) -> Result<Expr, ParseError> {
    let rs = parse_ruleset_with(text, opts);
    let rs_err = match rs {
        Ok(r) => return Ok(Expr::RuleSet(r)),
        Err(e) => e,
    };
    let q_err = match parse_query_with(text, opts) {
        Ok(q) => return Ok(Expr::Query(q)),
        Err(e) => e,
    };
    let p_err = match parse_pattern_with(text, opts) {
        Ok(p) => return Ok(Expr::Pattern(p)),
        Err(e) => e,
    };
    // prefer the interpretation that consumed the most input
    let mut best = p_err;
    for e in [q_err, rs_err] {
        if e.offset > best.offset {
            best = e;
        }
    }
    Err(best)
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub fn is_reserved_word(s: &str) -> bool {
    RESERVED_WORDS.iter().any(|w| w.eq_ignore_ascii_case(s))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    opts: ParseOptions,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(src: &'a str, opts: ParseOptions) -> Self {
        Parser { src, pos: 0, opts }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn peek2(&self) -> Option<char> {
        self.rest().chars().nth(1)
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn starts_with(&self, s: &str) -> bool {
        self.rest().starts_with(s)
    }

    fn bump(&mut self, s: &str) {
        debug_assert!(self.starts_with(s));
        self.pos += s.len();
    }

    /// Skips whitespace, then consumes `s` if present.
    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.starts_with(s) {
            self.bump(s);
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> PResult<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(&[s], format!("expected {s:?}")))
        }
    }

    fn error_at(&self, offset: usize, expected: &[&str], message: String) -> ParseError {
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError { line, col, expected: expected.iter().map(|s| s.to_string()).collect(), message, offset }
    }

    fn error(&self, expected: &[&str], message: String) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        };
        self.error_at(self.pos, expected, format!("{message}, found {found}"))
    }

    fn end(&mut self) -> PResult<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.error(&["end of input"], "unexpected trailing input".to_string()))
        }
    }

    /// Reads an identifier without skipping leading whitespace.
    fn raw_ident(&mut self) -> Option<&'a str> {
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if is_ident_start(c) => {}
            _ => return None,
        }
        let end = chars.find(|&(_, c)| !is_ident_char(c)).map_or(rest.len(), |(i, _)| i);
        self.pos += end;
        Some(&rest[..end])
    }

    fn peek_ident(&self) -> Option<&'a str> {
        let rest = self.rest().trim_start();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if is_ident_start(c) => {}
            _ => return None,
        }
        let end = chars.find(|&(_, c)| !is_ident_char(c)).map_or(rest.len(), |(i, _)| i);
        Some(&rest[..end])
    }

    fn ident(&mut self, what: &str) -> PResult<&'a str> {
        self.skip_ws();
        self.raw_ident().ok_or_else(|| self.error(&[what], format!("expected {what}")))
    }

    fn keyword(&mut self, kw: &str) -> bool {
        match self.peek_ident() {
            Some(w) if w.eq_ignore_ascii_case(kw) => {
                self.skip_ws();
                self.pos += w.len();
                true
            }
            _ => false,
        }
    }

    fn var(&mut self) -> PResult<Var> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident("variable")?;
        self.check_var_name(name, start)?;
        Ok(Var::new(name))
    }

    fn check_var_name(&self, name: &str, start: usize) -> PResult<()> {
        if is_reserved_word(name) {
            return Err(self.error_at(start, &["variable"], format!("{name:?} is a reserved word")));
        }
        if name.starts_with(FRESH_PREFIX) && !self.opts.allow_reserved {
            return Err(self.error_at(
                start,
                &["variable"],
                format!("variable names starting with {FRESH_PREFIX:?} are reserved for generated variables"),
            ));
        }
        Ok(())
    }

    // ---- patterns ----

    fn pattern(&mut self) -> PResult<Pattern> {
        let mut left = self.concat()?;
        loop {
            self.skip_ws();
            if self.starts_with("+") {
                self.bump("+");
                let right = self.concat()?;
                left = Pattern::union(left, right);
            } else {
                return Ok(left);
            }
        }
    }

    fn starts_primary(&mut self) -> bool {
        self.skip_ws();
        match self.peek() {
            Some('(') | Some('[') | Some('-') => true,
            Some('<') => self.peek2() == Some('-'),
            _ => false,
        }
    }

    fn concat(&mut self) -> PResult<Pattern> {
        let mut left = self.postfix()?;
        while self.starts_primary() {
            let right = self.postfix()?;
            left = Pattern::concat(left, right);
        }
        Ok(left)
    }

    fn postfix(&mut self) -> PResult<Pattern> {
        let mut p = self.primary()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('<') if self.peek2() != Some('-') => {
                    self.bump("<");
                    let theta = self.condition()?;
                    self.expect(">")?;
                    p = Pattern::cond(p, theta);
                }
                Some('{') => {
                    let (n, m) = self.quantifier()?;
                    p = Pattern::repeat(p, n, m);
                }
                _ => return Ok(p),
            }
        }
    }

    fn primary(&mut self) -> PResult<Pattern> {
        self.skip_ws();
        if self.starts_with("(") {
            self.bump("(");
            let d = self.descriptor()?;
            self.expect(")")?;
            return Ok(Pattern::Node(d));
        }
        if self.starts_with("[") {
            self.bump("[");
            let p = self.pattern()?;
            self.expect("]")?;
            return Ok(p);
        }
        if self.starts_with("-[") {
            self.bump("-[");
            let d = self.descriptor()?;
            self.skip_ws();
            if self.starts_with("]->") {
                self.bump("]->");
                return Ok(Pattern::Edge(Direction::Forward, d));
            }
            if self.starts_with("]-") {
                self.bump("]-");
                return Ok(Pattern::Edge(Direction::Undirected, d));
            }
            return Err(self.error(&["]->", "]-"], "unterminated edge pattern".to_string()));
        }
        if self.starts_with("<-[") {
            self.bump("<-[");
            let d = self.descriptor()?;
            self.skip_ws();
            if self.starts_with("]->") {
                return Err(self.error(&["]-"], "edges have exactly one direction".to_string()));
            }
            if self.starts_with("]-") {
                self.bump("]-");
                return Ok(Pattern::Edge(Direction::Backward, d));
            }
            return Err(self.error(&["]-"], "unterminated edge pattern".to_string()));
        }
        for (tok, dir) in [("->", Direction::Forward), ("<-", Direction::Backward), ("--", Direction::Undirected)] {
            if self.starts_with(tok) {
                self.bump(tok);
                return Ok(Pattern::Edge(dir, Descriptor::default()));
            }
        }
        Err(self.error(&["(", "[", "-[", "<-[", "->", "<-", "--"], "expected a pattern".to_string()))
    }

    fn descriptor(&mut self) -> PResult<Descriptor> {
        self.skip_ws();
        let mut d = Descriptor::default();
        if self.peek().is_some_and(is_ident_start) {
            d.var = Some(self.var()?);
        }
        if self.eat(":") {
            d.label = Some(self.ident("label")?.to_string());
        }
        Ok(d)
    }

    fn number(&mut self, what: &str) -> PResult<u64> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if end == 0 {
            return Err(self.error(&[what], format!("expected {what}")));
        }
        let start = self.pos;
        let n = rest[..end]
            .parse::<u64>()
            .map_err(|_| self.error_at(start, &[what], "number out of range".to_string()))?;
        self.pos += end;
        Ok(n)
    }

    fn quantifier(&mut self) -> PResult<(u64, Option<u64>)> {
        let start = self.pos;
        self.expect("{")?;
        let n = self.number("lower bound")?;
        let m = if self.eat("..") {
            self.skip_ws();
            if self.starts_with("}") {
                None
            } else {
                Some(self.number("upper bound")?)
            }
        } else {
            Some(n)
        };
        self.expect("}")?;
        if let Some(m) = m {
            if n > m {
                return Err(self.error_at(
                    start,
                    &["quantifier"],
                    format!("lower bound {n} exceeds upper bound {m}"),
                ));
            }
        }
        Ok((n, m))
    }

    // ---- conditions ----

    fn condition(&mut self) -> PResult<Condition> {
        let mut left = self.cond_and()?;
        while self.keyword("or") {
            let right = self.cond_and()?;
            left = Condition::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn cond_and(&mut self) -> PResult<Condition> {
        let mut left = self.cond_not()?;
        while self.keyword("and") {
            let right = self.cond_not()?;
            left = Condition::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn cond_not(&mut self) -> PResult<Condition> {
        if self.keyword("not") {
            let inner = self.cond_not()?;
            return Ok(Condition::Not(Box::new(inner)));
        }
        if self.eat("(") {
            let inner = self.condition()?;
            self.expect(")")?;
            return Ok(inner);
        }
        self.cond_atom()
    }

    fn cond_atom(&mut self) -> PResult<Condition> {
        let var = self.var()?;
        self.expect(".")?;
        let key = self.ident("property key")?.to_string();
        self.expect("=")?;
        self.skip_ws();
        match self.peek() {
            Some('"') => Ok(Condition::PropEqConst { var, key, value: Constant::Str(self.string()?) }),
            Some(c) if c == '-' || c.is_ascii_digit() => {
                Ok(Condition::PropEqConst { var, key, value: Constant::Int(self.integer()?) })
            }
            _ => {
                if self.keyword("true") {
                    return Ok(Condition::PropEqConst { var, key, value: Constant::Bool(true) });
                }
                if self.keyword("false") {
                    return Ok(Condition::PropEqConst { var, key, value: Constant::Bool(false) });
                }
                if !self.peek().is_some_and(is_ident_start) {
                    return Err(self.error(&["constant", "variable"], "expected a constant or property".to_string()));
                }
                let right = self.var()?;
                self.expect(".")?;
                let right_key = self.ident("property key")?.to_string();
                Ok(Condition::PropEqProp { left: var, left_key: key, right, right_key })
            }
        }
    }

    fn integer(&mut self) -> PResult<i64> {
        let start = self.pos;
        let neg = self.starts_with("-");
        if neg {
            self.bump("-");
        }
        let rest = self.rest();
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if end == 0 {
            return Err(self.error(&["integer"], "expected digits".to_string()));
        }
        let text = &self.src[start..self.pos + end];
        let n = text
            .parse::<i64>()
            .map_err(|_| self.error_at(start, &["integer"], "integer out of range".to_string()))?;
        self.pos += end;
        Ok(n)
    }

    fn string(&mut self) -> PResult<String> {
        let start = self.pos;
        self.bump("\"");
        let mut out = String::new();
        let mut chars = self.rest().char_indices();
        while let Some((i, c)) = chars.next() {
            match c {
                '"' => {
                    self.pos += i + 1;
                    return Ok(out);
                }
                '\\' => {
                    let esc = chars.next().map(|(_, c)| c);
                    match esc {
                        Some('"') => out.push('"'),
                        Some('\\') => out.push('\\'),
                        Some('n') => out.push('\n'),
                        Some('t') => out.push('\t'),
                        Some('r') => out.push('\r'),
                        Some('u') => {
                            let mut hex = String::new();
                            let ok = matches!(chars.next(), Some((_, '{')));
                            for (_, h) in chars.by_ref() {
                                if h == '}' {
                                    break;
                                }
                                hex.push(h);
                            }
                            match u32::from_str_radix(&hex, 16).ok().and_then(char::from_u32) {
                                Some(ch) if ok => out.push(ch),
                                _ => {
                                    return Err(self.error_at(
                                        start,
                                        &["string"],
                                        "invalid unicode escape".to_string(),
                                    ))
                                }
                            }
                        }
                        _ => return Err(self.error_at(start, &["string"], "invalid escape sequence".to_string())),
                    }
                }
                c => out.push(c),
            }
        }
        Err(self.error_at(start, &["\""], "unterminated string".to_string()))
    }

    // ---- queries ----

    fn query(&mut self) -> PResult<Query> {
        let mut left = self.query_item()?;
        while self.eat(",") {
            let right = self.query_item()?;
            left = Query::join(left, right);
        }
        Ok(left)
    }

    fn query_item(&mut self) -> PResult<Query> {
        if self.eat("(") {
            let q = self.query()?;
            self.expect(")")?;
            return Ok(q);
        }
        self.skip_ws();
        let save = self.pos;
        if let Some(name) = self.peek_ident() {
            if !is_reserved_word(name) || !self.is_restrictor_start() {
                self.skip_ws();
                let start = self.pos;
                self.raw_ident();
                if self.eat("=") {
                    self.check_var_name(name, start)?;
                    let r = self.restrictor()?;
                    let p = self.pattern()?;
                    return Ok(Query::Bound(Var::new(name), r, p));
                }
                self.pos = save;
            }
        }
        let r = self.restrictor()?;
        let p = self.pattern()?;
        Ok(Query::Restricted(r, p))
    }

    fn is_restrictor_start(&self) -> bool {
        matches!(self.peek_ident(), Some(w) if ["simple", "trail", "shortest"].iter().any(|k| w.eq_ignore_ascii_case(k)))
    }

    fn restrictor(&mut self) -> PResult<Restrictor> {
        if self.keyword("shortest") {
            if self.keyword("simple") {
                return Ok(Restrictor::ShortestSimple);
            }
            if self.keyword("trail") {
                return Ok(Restrictor::ShortestTrail);
            }
            return Ok(Restrictor::Shortest);
        }
        if self.keyword("simple") {
            return Ok(Restrictor::Simple);
        }
        if self.keyword("trail") {
            return Ok(Restrictor::Trail);
        }
        self.skip_ws();
        Err(self.error(&["SIMPLE", "TRAIL", "SHORTEST"], "expected a restrictor".to_string()))
    }

    // ---- rule sets ----

    fn ruleset(&mut self) -> PResult<RuleSet> {
        let mut rules = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            let rule = self.rule()?;
            if let Some(first) = rules.first() {
                let first: &Rule = first;
                if first.head.len() != rule.head.len() {
                    return Err(self.error_at(
                        start,
                        &["rule"],
                        format!("rule head has arity {}, expected {}", rule.head.len(), first.head.len()),
                    ));
                }
            }
            let body_vars = rule.body.vars();
            if let Some(v) = rule.head.iter().find(|v| !body_vars.contains(*v)) {
                return Err(self.error_at(start, &["rule"], format!("head variable {v} does not occur in the rule body")));
            }
            rules.push(rule);
            if !self.eat(";") {
                break;
            }
            self.skip_ws();
            if self.pos == self.src.len() {
                break;
            }
        }
        Ok(RuleSet { rules })
    }

    fn rule(&mut self) -> PResult<Rule> {
        self.skip_ws();
        match self.peek_ident() {
            Some("Ans") => {
                self.raw_ident();
            }
            _ => return Err(self.error(&["Ans"], "expected a rule head".to_string())),
        }
        self.expect("(")?;
        let mut head = Vec::new();
        if !self.eat(")") {
            loop {
                head.push(self.var()?);
                if self.eat(")") {
                    break;
                }
                self.expect(",")?;
            }
        }
        self.expect("<-")?;
        let body = self.query()?;
        Ok(Rule { head, body })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(var: Option<&str>, label: Option<&str>) -> Pattern {
        Pattern::node(var, label)
    }

    #[test]
    fn labelled_edge_pattern() {
        let p = parse_pattern("(x:A) -[e:b]-> (y:A)").unwrap();
        let expected = Pattern::concat(
            Pattern::concat(n(Some("x"), Some("A")), Pattern::edge(Direction::Forward, Some("e"), Some("b"))),
            n(Some("y"), Some("A")),
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn empty_node() {
        assert_eq!(parse_pattern("()").unwrap(), n(None, None));
    }

    #[test]
    fn unbounded_repetition() {
        let p = parse_pattern("(x:A) -[y]->{1..} (z:B)").unwrap();
        let expected = Pattern::concat(
            Pattern::concat(
                n(Some("x"), Some("A")),
                Pattern::repeat(Pattern::edge(Direction::Forward, Some("y"), None), 1, None),
            ),
            n(Some("z"), Some("B")),
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn unbound_condition_still_parses() {
        let p = parse_pattern("[()] <x.a = \"5\">").unwrap();
        assert!(matches!(p, Pattern::Cond(..)));
    }

    #[test]
    fn precedence_matches_bracketing() {
        let p = parse_pattern("(a)(b)<x.k=\"1\">+(c)").unwrap();
        let theta = Condition::PropEqConst { var: Var::new("x"), key: "k".into(), value: Constant::Str("1".into()) };
        let expected = Pattern::union(
            Pattern::concat(n(Some("a"), None), Pattern::cond(n(Some("b"), None), theta)),
            n(Some("c"), None),
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn quantifier_sugar() {
        assert_eq!(parse_pattern("->{3}").unwrap(), parse_pattern("->{3..3}").unwrap());
        assert!(parse_pattern("->{3..2}").is_err());
    }

    #[test]
    fn edge_shorthands() {
        assert_eq!(parse_pattern("->").unwrap(), Pattern::edge(Direction::Forward, None, None));
        assert_eq!(parse_pattern("<-").unwrap(), Pattern::edge(Direction::Backward, None, None));
        assert_eq!(parse_pattern("--").unwrap(), Pattern::edge(Direction::Undirected, None, None));
        assert_eq!(parse_pattern("-[z]-").unwrap(), Pattern::edge(Direction::Undirected, Some("z"), None));
        assert_eq!(parse_pattern("<-[:a]-").unwrap(), Pattern::edge(Direction::Backward, None, Some("a")));
        // `<-` followed by a group needs a space to not read as `<-[`
        assert_eq!(
            parse_pattern("<- [()]").unwrap(),
            Pattern::concat(Pattern::edge(Direction::Backward, None, None), n(None, None))
        );
    }

    #[test]
    fn condition_connectives() {
        let p = parse_pattern("(x) <NOT x.a = 1 AND (x.b = true or x.c = y.d)>").unwrap();
        let Pattern::Cond(_, theta) = p else { panic!() };
        assert!(matches!(theta, Condition::And(ref a, ref b)
            if matches!(**a, Condition::Not(_)) && matches!(**b, Condition::Or(..))));
    }

    #[test]
    fn negative_and_escaped_constants() {
        let p = parse_pattern(r#"(x) <x.a = -12 AND x.b = "q\"\\\n">"#).unwrap();
        let Pattern::Cond(_, Condition::And(a, b)) = p else { panic!() };
        assert_eq!(*a, Condition::PropEqConst { var: Var::new("x"), key: "a".into(), value: Constant::Int(-12) });
        assert_eq!(
            *b,
            Condition::PropEqConst { var: Var::new("x"), key: "b".into(), value: Constant::Str("q\"\\\n".into()) }
        );
    }

    #[test]
    fn queries_and_joins() {
        let q = parse_query("p1 = SHORTEST (x:A) ->(y:B), p2 = SHORTEST (y) -> (z:C)").unwrap();
        let Query::Join(a, b) = q else { panic!() };
        assert!(matches!(*a, Query::Bound(ref v, Restrictor::Shortest, _) if v.as_str() == "p1"));
        assert!(matches!(*b, Query::Bound(ref v, Restrictor::Shortest, _) if v.as_str() == "p2"));
        assert!(matches!(parse_query("shortest trail ()").unwrap(), Query::Restricted(Restrictor::ShortestTrail, _)));
        assert!(parse_query("()").is_err());
    }

    #[test]
    fn reserved_names() {
        assert!(parse_pattern("(trail)").is_err());
        assert!(parse_pattern("(_v0)").is_err());
        assert!(parse_pattern_with("(_v0)", ParseOptions { allow_reserved: true }).is_ok());
    }

    #[test]
    fn rulesets() {
        let rs = parse_ruleset("Ans(x, y) <- SHORTEST (x)->(y); Ans(x, y) <- TRAIL (x)<-(y);").unwrap();
        assert_eq!(rs.rules.len(), 2);
        assert_eq!(rs.arity(), 2);
        let err = parse_ruleset("Ans(x) <- SHORTEST (x); Ans(x, y) <- SHORTEST (x)->(y)").unwrap_err();
        assert!(err.message.contains("arity"));
        let err = parse_ruleset("Ans(z) <- SHORTEST (x)").unwrap_err();
        assert!(err.message.contains("does not occur"));
    }

    #[test]
    fn error_positions() {
        let err = parse_pattern("(x)\n  -[e]>").unwrap_err();
        assert_eq!((err.line, err.col), (2, 6));
        assert!(err.expected.contains(&"]->".to_string()));
    }

    #[test]
    fn parse_expr_picks_kind() {
        let o = ParseOptions::default();
        assert!(matches!(parse_expr("(x)-[x]->()", o), Ok(Expr::Pattern(_))));
        assert!(matches!(parse_expr("TRAIL ()", o), Ok(Expr::Query(_))));
        assert!(matches!(parse_expr("Ans(x) <- TRAIL (x)", o), Ok(Expr::RuleSet(_))));
    }
}
