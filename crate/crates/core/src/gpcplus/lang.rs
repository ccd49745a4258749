//! Nested regular expressions, two-way regular expressions and C2RPQs,
//! with a small text syntax.
//!
//! Expressions: labels are identifiers, `a^-` is the inverse of `a`,
//! concatenation is `.` or juxtaposition, `|` is union, postfix `*` and `+`
//! are star and plus, `[e]` is a nest, parentheses group. A C2RPQ reads
//! `Ans(x, z) <- (x, a+, y), (y, b, z)`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::syntax::Var;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Nre {
    Label(String),
    Inverse(String),
    Concat(Box<Nre>, Box<Nre>),
    Union(Box<Nre>, Box<Nre>),
    Plus(Box<Nre>),
    Star(Box<Nre>),
    /// `[e]`: holds at u if some e-path leaves u.
    Nest(Box<Nre>),
}

impl Nre {
    pub fn label(a: &str) -> Nre {
        Nre::Label(a.to_string())
    }

    pub fn inverse(a: &str) -> Nre {
        Nre::Inverse(a.to_string())
    }

    pub fn concat(a: Nre, b: Nre) -> Nre {
        Nre::Concat(Box::new(a), Box::new(b))
    }

    pub fn union(a: Nre, b: Nre) -> Nre {
        Nre::Union(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Nre) -> Nre {
        Nre::Plus(Box::new(a))
    }

    pub fn star(a: Nre) -> Nre {
        Nre::Star(Box::new(a))
    }

    pub fn nest(a: Nre) -> Nre {
        Nre::Nest(Box::new(a))
    }

    pub fn is_nest_free(&self) -> bool {
        match self {
            Nre::Label(_) | Nre::Inverse(_) => true,
            Nre::Concat(a, b) | Nre::Union(a, b) => a.is_nest_free() && b.is_nest_free(),
            Nre::Plus(a) | Nre::Star(a) => a.is_nest_free(),
            Nre::Nest(_) => false,
        }
    }

    /// Number of operators (labels not counted).
    pub fn operators(&self) -> usize {
        match self {
            Nre::Label(_) => 0,
            Nre::Inverse(_) => 1,
            Nre::Concat(a, b) | Nre::Union(a, b) => 1 + a.operators() + b.operators(),
            Nre::Plus(a) | Nre::Star(a) | Nre::Nest(a) => 1 + a.operators(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Nre::Label(_) | Nre::Inverse(_) => 1,
            Nre::Concat(a, b) | Nre::Union(a, b) => 1 + a.depth().max(b.depth()),
            Nre::Plus(a) | Nre::Star(a) | Nre::Nest(a) => 1 + a.depth(),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Nre::Union(..) => 0,
            Nre::Concat(..) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Nre {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Nre, min: u8| {
            if e.prec() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Nre::Label(a) => f.write_str(a),
            Nre::Inverse(a) => write!(f, "{a}^-"),
            Nre::Concat(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(".")?;
                wrap(f, b, 2)
            }
            Nre::Union(a, b) => {
                wrap(f, a, 0)?;
                f.write_str("|")?;
                wrap(f, b, 1)
            }
            Nre::Plus(a) => {
                wrap(f, a, 2)?;
                f.write_str("+")
            }
            Nre::Star(a) => {
                wrap(f, a, 2)?;
                f.write_str("*")
            }
            Nre::Nest(a) => write!(f, "[{a}]"),
        }
    }
}

/// A two-way regular expression: an NRE without nests.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Regex(Nre);

impl Regex {
    /// `None` if the expression contains a nest.
    pub fn new(e: Nre) -> Option<Regex> {
        e.is_nest_free().then_some(Regex(e))
    }

    pub fn as_nre(&self) -> &Nre {
        &self.0
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One atom `(x, r, y)` of a C2RPQ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub src: Var,
    pub regex: Regex,
    pub tgt: Var,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct C2rpq {
    pub head: Vec<Var>,
    pub atoms: Vec<Atom>,
}

impl C2rpq {
    pub fn atom_vars(&self) -> BTreeSet<Var> {
        self.atoms.iter().flat_map(|a| [a.src.clone(), a.tgt.clone()]).collect()
    }
}

impl fmt::Display for C2rpq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<&str> = self.head.iter().map(|v| v.as_str()).collect();
        let atoms: Vec<String> = self.atoms.iter().map(|a| format!("({}, {}, {})", a.src, a.regex, a.tgt)).collect();
        write!(f, "Ans({}) <- {}", head.join(", "), atoms.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at offset {offset}: {message}")]
pub struct LangError {
    pub offset: usize,
    pub message: String,
}

pub fn parse_nre(text: &str) -> Result<Nre, LangError> {
    let mut p = Parser { text, pos: 0 };
    let e = p.union()?;
    p.end()?;
    Ok(e)
}

pub fn parse_regex(text: &str) -> Result<Regex, LangError> {
    let e = parse_nre(text)?;
    Regex::new(e).ok_or_else(|| LangError { offset: 0, message: "nests are not allowed in a regular expression".into() })
}

pub fn parse_c2rpq(text: &str) -> Result<C2rpq, LangError> {
    let mut p = Parser { text, pos: 0 };
    p.keyword("Ans")?;
    p.expect("(")?;
    let mut head = Vec::new();
    if !p.eat(")") {
        loop {
            head.push(Var::new(&p.ident()?));
            if p.eat(")") {
                break;
            }
            p.expect(",")?;
        }
    }
    p.expect("<-")?;
    let mut atoms = Vec::new();
    loop {
        p.expect("(")?;
        let src = Var::new(&p.ident()?);
        p.expect(",")?;
        let at = p.pos;
        let regex = Regex::new(p.union()?).ok_or_else(|| p.error_at(at, "nests are not allowed in C2RPQ atoms"))?;
        p.expect(",")?;
        let tgt = Var::new(&p.ident()?);
        p.expect(")")?;
        atoms.push(Atom { src, regex, tgt });
        if !p.eat(",") {
            break;
        }
    }
    p.end()?;
    let q = C2rpq { head, atoms };
    let vars = q.atom_vars();
    if let Some(x) = q.head.iter().find(|x| !vars.contains(*x)) {
        return Err(LangError { offset: 0, message: format!("head variable {x} does not occur in any atom") });
    }
    Ok(q)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), LangError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{tok}`")))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), LangError> {
        let at = self.pos;
        let word = self.ident()?;
        if word == kw {
            Ok(())
        } else {
            Err(self.error_at(at, &format!("expected `{kw}`")))
        }
    }

    fn end(&mut self) -> Result<(), LangError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(&format!("unexpected `{c}`"))),
        }
    }

    fn error(&self, message: &str) -> LangError {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, offset: usize, message: &str) -> LangError {
        LangError { offset, message: message.to_string() }
    }

    fn ident(&mut self) -> Result<String, LangError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return Err(self.error("expected an identifier")),
        }
        let end = chars.find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_')).map_or(rest.len(), |(i, _)| i);
        self.pos += end;
        Ok(rest[..end].to_string())
    }

    fn union(&mut self) -> Result<Nre, LangError> {
        let mut e = self.concat()?;
        while self.eat("|") {
            e = Nre::union(e, self.concat()?);
        }
        Ok(e)
    }

    fn concat(&mut self) -> Result<Nre, LangError> {
        let mut e = self.postfix()?;
        loop {
            // `.` is optional between factors
            let juxtaposed =
                matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '(' || c == '[');
            if self.eat(".") || juxtaposed {
                e = Nre::concat(e, self.postfix()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn postfix(&mut self) -> Result<Nre, LangError> {
        let mut e = self.primary()?;
        loop {
            if self.eat("*") {
                e = Nre::star(e);
            } else if self.eat("+") {
                e = Nre::plus(e);
            } else {
                return Ok(e);
            }
        }
    }

    fn primary(&mut self) -> Result<Nre, LangError> {
        if self.eat("(") {
            let e = self.union()?;
            self.expect(")")?;
            return Ok(e);
        }
        if self.eat("[") {
            let e = self.union()?;
            self.expect("]")?;
            return Ok(Nre::nest(e));
        }
        let a = self.ident()?;
        if self.eat("^-") {
            Ok(Nre::Inverse(a))
        } else {
            Ok(Nre::Label(a))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_example() {
        let e = parse_nre("(a[b+]c)+").unwrap();
        let want = Nre::plus(Nre::concat(
            Nre::concat(Nre::label("a"), Nre::nest(Nre::plus(Nre::label("b")))),
            Nre::label("c"),
        ));
        assert_eq!(e, want);
        assert_eq!(e.to_string(), "(a.[b+].c)+");
        assert_eq!(parse_nre(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn precedence_and_inverse() {
        let e = parse_nre("a^- b* | c").unwrap();
        assert_eq!(e, Nre::union(Nre::concat(Nre::inverse("a"), Nre::star(Nre::label("b"))), Nre::label("c")));
        assert_eq!(parse_nre("a.(b|c)").unwrap().to_string(), "a.(b|c)");
        assert!(parse_regex("a[b]").is_err());
        assert!(parse_nre("a |").is_err());
    }

    #[test]
    fn c2rpq_syntax() {
        let q = parse_c2rpq("Ans(x, z) <- (x, a+, y), (y, b, z)").unwrap();
        assert_eq!(q.head.len(), 2);
        assert_eq!(q.atoms.len(), 2);
        assert_eq!(q.to_string(), "Ans(x, z) <- (x, a+, y), (y, b, z)");
        assert!(parse_c2rpq("Ans(w) <- (x, a, y)").is_err());
        assert!(parse_c2rpq("Ans(x) <- (x, [a], y)").is_err());
    }
}
