//! Parses patterns and queries, then prints their canonical rendering.

use gpc::syntax::{parse_pattern, parse_query, render_pattern, render_query};

fn main() {
    for text in ["(x:A) -[e:a]->{2} (y) <x.k = y.k>", "[(u) -> (v)]{1..} + (w)", "(a)<-(b)--(c)"] {
        let p = parse_pattern(text).expect("parses");
        println!("{text:40} => {}", render_pattern(&p));
    }
    let q = parse_query("p = SHORTEST (x) ->{1..} (y), TRAIL (y) -[:a]-> (z)").expect("parses");
    println!("query => {}", render_query(&q));

    let err = parse_pattern("(x) -[e]> (y)").unwrap_err();
    println!("error at {}:{}: expected one of {:?}", err.line, err.col, err.expected);
}
