//! Canonical text rendering. `parse(render(e)) == e` for every AST.

use std::fmt::Write;

use super::ast::*;
use crate::graph::Constant;

pub fn render_pattern(p: &Pattern) -> String {
    let mut out = String::new();
    pattern(p, &mut out);
    out
}

pub fn render_condition(c: &Condition) -> String {
    let mut out = String::new();
    cond_or(c, &mut out);
    out
}

pub fn render_query(q: &Query) -> String {
    match q {
        Query::Restricted(r, p) => format!("{} {}", r.keyword(), render_pattern(p)),
        Query::Bound(x, r, p) => format!("{x} = {} {}", r.keyword(), render_pattern(p)),
        Query::Join(a, b) => {
            let right = match **b {
                Query::Join(..) => format!("({})", render_query(b)),
                _ => render_query(b),
            };
            format!("{}, {right}", render_query(a))
        }
    }
}

pub fn render_rule(r: &Rule) -> String {
    let head: Vec<&str> = r.head.iter().map(Var::as_str).collect();
    format!("Ans({}) <- {}", head.join(", "), render_query(&r.body))
}

pub fn render_ruleset(rs: &RuleSet) -> String {
    rs.rules.iter().map(render_rule).collect::<Vec<_>>().join(";\n")
}

pub fn render_expr(e: &Expr) -> String {
    match e {
        Expr::Pattern(p) => render_pattern(p),
        Expr::Query(q) => render_query(q),
        Expr::RuleSet(r) => render_ruleset(r),
    }
}

pub fn render_constant(c: &Constant) -> String {
    match c {
        Constant::Int(i) => i.to_string(),
        Constant::Bool(b) => b.to_string(),
        Constant::Str(s) => {
            let mut out = String::from("\"");
            for ch in s.chars() {
                match ch {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    '\t' => out.push_str("\\t"),
                    '\r' => out.push_str("\\r"),
                    c if c.is_control() => {
                        let _ = write!(out, "\\u{{{:x}}}", c as u32);
                    }
                    c => out.push(c),
                }
            }
            out.push('"');
            out
        }
    }
}

fn descriptor(d: &Descriptor, out: &mut String) {
    if let Some(v) = &d.var {
        out.push_str(v.as_str());
    }
    if let Some(l) = &d.label {
        out.push(':');
        out.push_str(l);
    }
}

fn bracketed(p: &Pattern, out: &mut String) {
    out.push('[');
    pattern(p, out);
    out.push(']');
}

fn pattern(p: &Pattern, out: &mut String) {
    match p {
        Pattern::Node(d) => {
            out.push('(');
            descriptor(d, out);
            out.push(')');
        }
        Pattern::Edge(dir, d) if d.is_empty() => out.push_str(match dir {
            Direction::Forward => "->",
            Direction::Backward => "<-",
            Direction::Undirected => "--",
        }),
        Pattern::Edge(dir, d) => {
            out.push_str(if *dir == Direction::Backward { "<-[" } else { "-[" });
            descriptor(d, out);
            out.push_str(if *dir == Direction::Forward { "]->" } else { "]-" });
        }
        Pattern::Union(a, b) => {
            bracketed(a, out);
            out.push_str(" + ");
            bracketed(b, out);
        }
        Pattern::Concat(a, b) => {
            if matches!(**a, Pattern::Union(..)) {
                bracketed(a, out);
            } else {
                pattern(a, out);
            }
            let mut right = String::new();
            if matches!(**b, Pattern::Union(..) | Pattern::Concat(..)) {
                bracketed(b, &mut right);
            } else {
                pattern(b, &mut right);
            }
            // `<-[` would read as a bracketed backward edge
            if out.ends_with("<-") && right.starts_with('[') {
                out.push(' ');
            }
            out.push_str(&right);
        }
        Pattern::Cond(a, theta) => {
            postfix_operand(a, out);
            out.push('<');
            cond_or(theta, out);
            out.push('>');
        }
        Pattern::Repeat(a, n, m) => {
            postfix_operand(a, out);
            match m {
                Some(m) => {
                    let _ = write!(out, "{{{n}..{m}}}");
                }
                None => {
                    let _ = write!(out, "{{{n}..}}");
                }
            }
        }
    }
}

fn postfix_operand(p: &Pattern, out: &mut String) {
    match p {
        Pattern::Node(_) | Pattern::Edge(..) | Pattern::Cond(..) | Pattern::Repeat(..) => pattern(p, out),
        _ => bracketed(p, out),
    }
}

fn cond_or(c: &Condition, out: &mut String) {
    match c {
        Condition::Or(a, b) => {
            cond_or(a, out);
            out.push_str(" OR ");
            if matches!(**b, Condition::Or(..)) {
                out.push('(');
                cond_or(b, out);
                out.push(')');
            } else {
                cond_and(b, out);
            }
        }
        _ => cond_and(c, out),
    }
}

fn cond_and(c: &Condition, out: &mut String) {
    match c {
        Condition::And(a, b) => {
            cond_and(a, out);
            out.push_str(" AND ");
            if matches!(**b, Condition::And(..) | Condition::Or(..)) {
                out.push('(');
                cond_or(b, out);
                out.push(')');
            } else {
                cond_not(b, out);
            }
        }
        Condition::Or(..) => {
            out.push('(');
            cond_or(c, out);
            out.push(')');
        }
        _ => cond_not(c, out),
    }
}

fn cond_not(c: &Condition, out: &mut String) {
    match c {
        Condition::Not(a) => {
            out.push_str("NOT ");
            cond_not(a, out);
        }
        Condition::PropEqConst { var, key, value } => {
            let _ = write!(out, "{var}.{key} = {}", render_constant(value));
        }
        Condition::PropEqProp { left, left_key, right, right_key } => {
            let _ = write!(out, "{left}.{left_key} = {right}.{right_key}");
        }
        Condition::And(..) | Condition::Or(..) => {
            out.push('(');
            cond_or(c, out);
            out.push(')');
        }
    }
}
