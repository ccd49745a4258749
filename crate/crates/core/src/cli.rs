//! The `gpc` command line: `check`, `run`, `match` and `translate`.
//!
//! [`run_cli`] does all the work and returns what would be printed, so the
//! binary only forwards streams and the exit code.
//!
//! Exit codes: 0 success, 1 runtime error (I/O, invalid graph, resource
//! limit, oracle budget), 2 parse or type error, 3 oracle mismatch.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Read;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::eval::{eval_pattern, eval_query, pattern_length_bound, CollectMode, EvalConfig, EvalError, MaxLen};
use crate::gpcplus::{eval_ruleset, parse_c2rpq, parse_nre, translate_c2rpq, translate_nre, ValueTuple};
use crate::graph::{GraphError, PropertyGraph};
use crate::oracle::{brute_force_query, enumerate_paths, naive_match, OracleConfig, OracleError};
use crate::output::{answers_table, canonical_answers, canonical_tuples, ndjson, tuples_table};
use crate::syntax::{parse_expr, parse_pattern_with, render_ruleset, Expr, ParseError, ParseOptions, Pattern, RuleSet};
use crate::typing::{
    infer_pattern, infer_query, infer_ruleset, schema_json, validate_pattern_for_mode, validate_query_for_mode,
    TypeError,
};
use crate::value::Answer;

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gpc", version, about = "Graph Pattern Calculus reference engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and type-check an expression; print its schema as JSON.
    Check(CheckArgs),
    /// Evaluate a query, rule set or pattern; print answers as NDJSON.
    Run(RunArgs),
    /// Evaluate a bare pattern up to a length bound.
    Match(RunArgs),
    /// Translate a `#nre` or `#c2rpq` input into a GPC+ rule set.
    Translate(InputArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// File holding the expression, or `-` for stdin.
    #[arg(required_unless_present = "expr", conflicts_with = "expr")]
    input: Option<String>,
    /// The expression itself.
    #[arg(short = 'e', long)]
    expr: Option<String>,
    /// Accept variables with the reserved `_v` prefix.
    #[arg(long)]
    allow_reserved: bool,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Optional graph file; validated if given.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long, default_value = "grouping")]
    collect_mode: CollectMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Ndjson,
    Table,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Graph file (JSON).
    #[arg(long, short = 'g')]
    graph: String,
    #[arg(long, default_value = "grouping")]
    collect_mode: CollectMode,
    /// Maximum path length, overriding the automatic bound.
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long, default_value_t = crate::eval::DEFAULT_MAX_ANSWERS)]
    max_answers: usize,
    /// Let `Nothing` unify with any value inside edgeless groups.
    #[arg(long)]
    lenient_unify: bool,
    /// Cross-check the answers against the brute-force oracle.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value = "ndjson")]
    format: Format,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub answer_count: usize,
    pub elapsed_ms: u64,
    pub mode: CollectMode,
    pub bound_used: usize,
    pub truncated: bool,
}

/// What a CLI invocation printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn fail(code: i32, diagnostic: Json) -> Outcome {
        Outcome { stdout: String::new(), stderr: format!("{diagnostic}\n"), code }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run_cli<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code: EXIT_INVALID }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let result = match cli.command {
        Command::Check(a) => check(&a),
        Command::Run(a) => run(&a, false),
        Command::Match(a) => run(&a, true),
        Command::Translate(a) => translate(&a),
    };
    result.unwrap_or_else(|o| o)
}

fn read_input(a: &InputArgs) -> Result<String, Outcome> {
    if let Some(e) = &a.expr {
        return Ok(e.clone());
    }
    let path = a.input.as_deref().unwrap_or("-");
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Outcome::fail(EXIT_RUNTIME, json!({"error": "io", "path": path, "message": e.to_string()})))?;
    Ok(text)
}

fn load_graph(path: &str) -> Result<PropertyGraph, Outcome> {
    PropertyGraph::from_json_file(path).map_err(|e| {
        let violations: Vec<String> = match &e {
            GraphError::Invalid(vs) => vs.iter().map(|v| v.to_string()).collect(),
            _ => Vec::new(),
        };
        Outcome::fail(
            EXIT_RUNTIME,
            json!({"error": "graph", "path": path, "message": e.to_string(), "violations": violations}),
        )
    })
}

fn parse_error(e: &ParseError) -> Outcome {
    Outcome::fail(
        EXIT_INVALID,
        json!({"error": "parse_error", "line": e.line, "col": e.col, "expected": e.expected, "message": e.message}),
    )
}

fn type_error(e: &TypeError) -> Outcome {
    let mut j = serde_json::to_value(e).expect("type errors serialize");
    j["error"] = json!("type_error");
    Outcome::fail(EXIT_INVALID, j)
}

fn check(a: &CheckArgs) -> Result<Outcome, Outcome> {
    if let Some(g) = &a.graph {
        load_graph(g)?;
    }
    let text = read_input(&a.input)?;
    let opts = ParseOptions { allow_reserved: a.input.allow_reserved };
    let expr = parse_expr(&text, opts).map_err(|e| parse_error(&e))?;
    let mode = a.collect_mode;
    let out = match &expr {
        Expr::Pattern(p) => {
            let s = infer_pattern(p).map_err(|e| type_error(&e))?;
            validate_pattern_for_mode(p, mode).map_err(|e| type_error(&e))?;
            schema_json(&s)
        }
        Expr::Query(q) => {
            let s = infer_query(q).map_err(|e| type_error(&e))?;
            validate_query_for_mode(q, mode).map_err(|e| type_error(&e))?;
            schema_json(&s)
        }
        Expr::RuleSet(rs) => {
            let schemas = infer_ruleset(rs).map_err(|e| type_error(&e))?;
            for r in &rs.rules {
                validate_query_for_mode(&r.body, mode).map_err(|e| type_error(&e))?;
            }
            Json::Array(schemas.iter().map(schema_json).collect())
        }
    };
    Ok(Outcome::ok(format!("{out}\n")))
}

enum Results {
    Answers(Vec<Answer>),
    Tuples(Vec<ValueTuple>),
}

impl Results {
    fn len(&self) -> usize {
        match self {
            Results::Answers(a) => a.len(),
            Results::Tuples(t) => t.len(),
        }
    }
}

fn run(a: &RunArgs, pattern_only: bool) -> Result<Outcome, Outcome> {
    let g = load_graph(&a.graph)?;
    let text = read_input(&a.input)?;
    let opts = ParseOptions { allow_reserved: a.input.allow_reserved };
    let expr = if pattern_only {
        Expr::Pattern(parse_pattern_with(&text, opts).map_err(|e| parse_error(&e))?)
    } else {
        parse_expr(&text, opts).map_err(|e| parse_error(&e))?
    };
    let cfg = EvalConfig {
        collect_mode: a.collect_mode,
        max_len: a.max_len.map_or(MaxLen::Auto, MaxLen::Fixed),
        lenient_unify: a.lenient_unify,
        max_answers: a.max_answers,
        ..EvalConfig::default()
    };

    let started = Instant::now();
    let report = |count: usize, bound_used: usize, truncated: bool| RunReport {
        answer_count: count,
        elapsed_ms: started.elapsed().as_millis() as u64,
        mode: cfg.collect_mode,
        bound_used,
        truncated,
    };
    let evaluated = match &expr {
        Expr::Pattern(p) => eval_pattern(&g, p, &cfg).map(|v| {
            let answers = v.into_iter().map(|(path, mu)| Answer { paths: vec![path], bindings: mu }).collect();
            (Results::Answers(answers), pattern_length_bound(&g, &cfg))
        }),
        Expr::Query(q) => eval_query(&g, q, &cfg).map(|r| (Results::Answers(r.answers), r.bound_used)),
        Expr::RuleSet(rs) => {
            eval_ruleset(&g, rs, &cfg).map(|r| (Results::Tuples(r.tuples.into_iter().collect()), r.bound_used))
        }
    };
    let (results, bound_used) = match evaluated {
        Ok(r) => r,
        Err(EvalError::Type(e)) => return Err(type_error(&e)),
        Err(e @ EvalError::ResourceLimit { .. }) => {
            let r = report(0, 0, true);
            let stderr = format!(
                "{}\n{}\n",
                json!({"error": "resource_limit", "message": e.to_string()}),
                serde_json::to_string(&r).expect("reports serialize")
            );
            return Err(Outcome { stdout: String::new(), stderr, code: EXIT_RUNTIME });
        }
        Err(e) => return Err(Outcome::fail(EXIT_RUNTIME, json!({"error": "evaluation", "message": e.to_string()}))),
    };

    let stdout = match (&results, a.format) {
        (Results::Answers(ans), Format::Ndjson) => ndjson(&canonical_answers(&g, ans)),
        (Results::Answers(ans), Format::Table) => answers_table(&g, ans),
        (Results::Tuples(ts), Format::Ndjson) => ndjson(&canonical_tuples(&g, ts)),
        (Results::Tuples(ts), Format::Table) => tuples_table(&g, ts),
    };
    let r = report(results.len(), bound_used, false);
    let mut stderr = format!("{}\n", serde_json::to_string(&r).expect("reports serialize"));

    if a.oracle {
        let ocfg = OracleConfig {
            collect_mode: cfg.collect_mode,
            lenient_unify: cfg.lenient_unify,
            max_len: a.max_len,
            ..OracleConfig::default()
        };
        let mismatch = match cross_check(&g, &expr, &results, &cfg, &ocfg) {
            Ok(m) => m,
            Err(e) => {
                let mut j = json!({"error": "oracle", "message": e.to_string()});
                if matches!(e, OracleError::Budget(_)) && a.max_len.is_none() {
                    j["hint"] = json!("pass --max-len to bound the cross-check");
                }
                stderr.push_str(&format!("{j}\n"));
                return Err(Outcome { stdout, stderr, code: EXIT_RUNTIME });
            }
        };
        if let Some((engine_only, oracle_only)) = mismatch {
            stderr.push_str(&format!(
                "{}\n",
                json!({"error": "oracle_mismatch", "engine_only": engine_only, "oracle_only": oracle_only})
            ));
            return Err(Outcome { stdout, stderr, code: EXIT_MISMATCH });
        }
        stderr.push_str(&format!("{}\n", json!({"oracle": "agree"})));
    }
    Ok(Outcome { stdout, stderr, code: EXIT_OK })
}

/// `None` if engine and oracle agree, else the sizes of the two differences.
fn cross_check(
    g: &PropertyGraph,
    expr: &Expr,
    results: &Results,
    cfg: &EvalConfig,
    ocfg: &OracleConfig,
) -> Result<Option<(usize, usize)>, OracleError> {
    fn diff<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> Option<(usize, usize)> {
        (a != b).then(|| (a.difference(b).count(), b.difference(a).count()))
    }
    match (expr, results) {
        (Expr::Pattern(p), Results::Answers(ans)) => {
            let oracle = pattern_oracle(g, p, pattern_length_bound(g, cfg), ocfg)?;
            Ok(diff(&ans.iter().cloned().collect(), &oracle))
        }
        (Expr::Query(q), Results::Answers(ans)) => {
            Ok(diff(&ans.iter().cloned().collect(), &brute_force_query(g, q, ocfg)?))
        }
        (Expr::RuleSet(rs), Results::Tuples(ts)) => {
            Ok(diff(&ts.iter().cloned().collect(), &ruleset_oracle(g, rs, ocfg)?))
        }
        _ => unreachable!("results follow the expression kind"),
    }
}

fn pattern_oracle(g: &PropertyGraph, p: &Pattern, bound: usize, ocfg: &OracleConfig) -> Result<BTreeSet<Answer>, OracleError> {
    let mut out = BTreeSet::new();
    for path in enumerate_paths(g, bound, &ocfg.budget)? {
        for mu in naive_match(g, p, &path, ocfg)? {
            out.insert(Answer { paths: vec![path.clone()], bindings: mu });
        }
    }
    Ok(out)
}

fn ruleset_oracle(g: &PropertyGraph, rs: &RuleSet, ocfg: &OracleConfig) -> Result<BTreeSet<ValueTuple>, OracleError> {
    let mut out = BTreeSet::new();
    for rule in &rs.rules {
        for a in brute_force_query(g, &rule.body, ocfg)? {
            out.insert(rule.head.iter().filter_map(|x| a.bindings.get(x).cloned()).collect());
        }
    }
    Ok(out)
}

fn translate(a: &InputArgs) -> Result<Outcome, Outcome> {
    let text = read_input(a)?;
    let (header, body) = text.trim_start().split_once('\n').unwrap_or((text.trim(), ""));
    let lang_error = |e: crate::gpcplus::LangError| {
        Outcome::fail(EXIT_INVALID, json!({"error": "parse_error", "offset": e.offset, "message": e.message}))
    };
    let rules = match header.trim() {
        "#nre" => translate_nre(&parse_nre(body.trim()).map_err(lang_error)?),
        "#c2rpq" => translate_c2rpq(&parse_c2rpq(body.trim()).map_err(lang_error)?),
        other => {
            return Err(Outcome::fail(
                EXIT_INVALID,
                json!({"error": "parse_error", "message": format!("expected a `#nre` or `#c2rpq` header, found {other:?}")}),
            ))
        }
    };
    Ok(Outcome::ok(format!("{}\n", render_ruleset(&rules))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_2() {
        let o = run_cli(["gpc", "frobnicate"]);
        assert_eq!(o.code, EXIT_INVALID);
        assert_eq!(run_cli(["gpc", "--help"]).code, EXIT_OK);
    }

    #[test]
    fn check_reports_schema_and_type_errors() {
        let o = run_cli(["gpc", "check", "-e", "[-[y]->]{1..3}"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "{\"y\":\"Group(Edge)\"}\n"));
        let o = run_cli(["gpc", "check", "-e", "(x)-[x]->()"]);
        assert_eq!(o.code, EXIT_INVALID);
        let err: Json = serde_json::from_str(o.stderr.trim()).unwrap();
        assert_eq!(err["kind"], "conflicting_types");
        assert_eq!(err["variable"], "x");
    }

    #[test]
    fn translate_headers() {
        let o = run_cli(["gpc", "translate", "-e", "#c2rpq\nAns(x, z) <- (x, a+, y), (y, b, z)"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout, "Ans(x, z) <- SHORTEST (x)-[:a]->{1..}(y), SHORTEST (y)-[:b]->(z)\n");
        assert_eq!(run_cli(["gpc", "translate", "-e", "#rpq\na"]).code, EXIT_INVALID);
    }

    #[test]
    fn cross_check_reports_differences() {
        let g = crate::graph::GraphBuilder::new().node("u", &[]).node("v", &[]).directed("e", "u", "v", &[]).build().unwrap();
        let expr = parse_expr("TRAIL (x) -> ()", ParseOptions::default()).unwrap();
        let Expr::Query(q) = &expr else { panic!("expected a query") };
        let cfg = EvalConfig::default();
        let mut answers = eval_query(&g, q, &cfg).unwrap().answers;
        let ocfg = OracleConfig::default();
        assert_eq!(cross_check(&g, &expr, &Results::Answers(answers.clone()), &cfg, &ocfg).unwrap(), None);
        let dropped = answers.pop().unwrap();
        let mut extra = dropped.clone();
        extra.paths[0] = g.path(&["v"]).unwrap();
        answers.push(extra);
        assert_eq!(cross_check(&g, &expr, &Results::Answers(answers), &cfg, &ocfg).unwrap(), Some((1, 1)));
    }
}
