//! Infers schemas and prints type errors.

use gpc::syntax::parse_query;
use gpc::typing::infer_query;

fn main() {
    let queries = [
        "p = SHORTEST (x) -[e]->{1..} (y)",
        "TRAIL (x) + [(x) -> (y)]",
        "TRAIL [(x) -[e]->]{0..} <e.k = 1>",
        "SIMPLE (x) -[x]-> ()",
    ];
    for text in queries {
        let q = parse_query(text).expect("parses");
        match infer_query(&q) {
            Ok(schema) => {
                let fields: Vec<String> = schema.iter().map(|(x, t)| format!("{x}: {t}")).collect();
                println!("{text}\n    {{{}}}", fields.join(", "));
            }
            Err(e) => println!("{text}\n    {e}"),
        }
    }
}
