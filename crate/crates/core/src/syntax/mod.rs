//! Concrete syntax: AST, parser and canonical renderer.

pub mod ast;
pub mod parser;
pub mod render;

pub use ast::*;
pub use parser::{
    parse_expr, parse_pattern, parse_pattern_with, parse_query, parse_query_with, parse_ruleset, parse_ruleset_with,
    ParseError, ParseOptions, FRESH_PREFIX,
};
pub use render::{render_condition, render_constant, render_expr, render_pattern, render_query, render_ruleset};
