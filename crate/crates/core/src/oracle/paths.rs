use std::collections::BTreeSet;

use super::{OracleBudget, OracleError};
use crate::graph::{EdgeEnds, Path, PropertyGraph};

/// Every graph-valid path of length at most `max_len`.
pub fn enumerate_paths(g: &PropertyGraph, max_len: usize, budget: &OracleBudget) -> Result<Vec<Path>, OracleError> {
    if max_len > budget.max_path_len {
        return Err(OracleError::Budget(format!(
            "paths up to length {max_len} requested, budget allows {}",
            budget.max_path_len
        )));
    }
    let mut all: BTreeSet<Path> = BTreeSet::new();
    let mut frontier: Vec<Path> = g.nodes().map(Path::single).collect();
    all.extend(frontier.iter().cloned());
    for _ in 0..max_len {
        let mut next = BTreeSet::new();
        for p in &frontier {
            let u = p.tgt();
            for e in g.edges() {
                let targets = match g.ends(e) {
                    EdgeEnds::Directed { src, tgt } => [(src == u).then_some(tgt), (tgt == u).then_some(src)],
                    EdgeEnds::Undirected { a, b } => [(a == u).then_some(b), (b == u).then_some(a)],
                };
                for v in targets.into_iter().flatten() {
                    let mut nodes = p.nodes().to_vec();
                    let mut edges = p.edges().to_vec();
                    nodes.push(v);
                    edges.push(e);
                    next.insert(Path::from_parts(nodes, edges));
                }
            }
        }
        if all.len() + next.len() > budget.max_answers {
            return Err(OracleError::Budget(format!("more than {} paths", budget.max_answers)));
        }
        all.extend(next.iter().cloned());
        frontier = next.into_iter().collect();
    }
    Ok(all.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    #[test]
    fn small_counts() {
        let b = OracleBudget::default();
        let g = GraphBuilder::new().node("n1", &[]).node("n2", &[]).directed("e1", "n1", "n2", &[]).build().unwrap();
        assert_eq!(enumerate_paths(&g, 0, &b).unwrap().len(), 2);
        let names: Vec<String> = enumerate_paths(&g, 1, &b).unwrap().iter().map(|p| g.display_path(p)).collect();
        assert_eq!(names.len(), 4);
        assert!(names.contains(&"path(n1,e1,n2)".to_string()));
        assert!(names.contains(&"path(n2,e1,n1)".to_string()));
    }

    #[test]
    fn self_loops_counted_once() {
        let b = OracleBudget::default();
        let g = GraphBuilder::new().node("n", &[]).directed("l", "n", "n", &[]).undirected("u", &["n"], &[]).build().unwrap();
        assert_eq!(enumerate_paths(&g, 1, &b).unwrap().len(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let g = GraphBuilder::new().node("n", &[]).directed("l", "n", "n", &[]).build().unwrap();
        let tight = OracleBudget { max_path_len: 2, max_answers: 100 };
        assert!(enumerate_paths(&g, 3, &tight).is_err());
        assert!(enumerate_paths(&g, 2, &OracleBudget { max_path_len: 2, max_answers: 2 }).is_err());
    }
}
