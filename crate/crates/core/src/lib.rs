//! Reference engine for the Graph Pattern Calculus (GPC).
//!
//! * [`graph`]: property graphs and paths, loaded from JSON.
//! * [`syntax`]: parser and canonical renderer for patterns, queries and
//!   GPC+ rule sets.
//! * [`typing`]: schema inference and collect-mode validation.
//! * [`eval`]: exact, length-bounded evaluation of patterns and queries.
//! * [`gpcplus`]: rule-set evaluation and translators from 2RPQs, C2RPQs and
//!   nested regular expressions.
//! * [`oracle`]: brute-force evaluators used for differential testing.
//! * [`output`]: JSON and table rendering of answers.
//! * [`cli`]: the `gpc` command-line front end.

pub mod cli;
pub mod eval;
pub mod gpcplus;
pub mod graph;
pub mod oracle;
pub mod output;
pub mod syntax;
pub mod typing;
pub mod value;

pub use eval::{eval_pattern, eval_query, CollectMode, EvalConfig, EvalError, MaxLen};
pub use graph::{Path, PropertyGraph};
pub use syntax::{parse_pattern, parse_query, parse_ruleset, Pattern, Query, RuleSet};
pub use typing::{infer_pattern, infer_query, Schema, Type, TypeError};
pub use value::{Answer, Assignment, Value};
