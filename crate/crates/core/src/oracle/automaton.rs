//! 2RPQ and C2RPQ evaluation by product-automaton reachability.
//!
//! Labels are read off directed edges only; `a` crosses an edge forward and
//! `a^-` crosses it backward.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::gpcplus::lang::{C2rpq, Nre, Regex};
use crate::graph::{EdgeEnds, NodeId, PropertyGraph};
use crate::syntax::Var;

#[derive(Clone)]
enum Move {
    Epsilon,
    Forward(String),
    Backward(String),
}

/// Thompson automaton: `moves[s]` lists `(move, target state)`.
struct Nfa {
    moves: Vec<Vec<(Move, usize)>>,
    start: usize,
    accept: usize,
}

impl Nfa {
    fn new(r: &Regex) -> Nfa {
        let mut nfa = Nfa { moves: Vec::new(), start: 0, accept: 0 };
        let (s, t) = nfa.build(r.as_nre());
        nfa.start = s;
        nfa.accept = t;
        nfa
    }

    fn state(&mut self) -> usize {
        self.moves.push(Vec::new());
        self.moves.len() - 1
    }

    fn build(&mut self, e: &Nre) -> (usize, usize) {
        let (s, t) = (self.state(), self.state());
        match e {
            Nre::Label(a) => self.moves[s].push((Move::Forward(a.clone()), t)),
            Nre::Inverse(a) => self.moves[s].push((Move::Backward(a.clone()), t)),
            Nre::Concat(a, b) => {
                let (s1, t1) = self.build(a);
                let (s2, t2) = self.build(b);
                self.moves[s].push((Move::Epsilon, s1));
                self.moves[t1].push((Move::Epsilon, s2));
                self.moves[t2].push((Move::Epsilon, t));
            }
            Nre::Union(a, b) => {
                for side in [a, b] {
                    let (s1, t1) = self.build(side);
                    self.moves[s].push((Move::Epsilon, s1));
                    self.moves[t1].push((Move::Epsilon, t));
                }
            }
            Nre::Plus(a) | Nre::Star(a) => {
                let (s1, t1) = self.build(a);
                self.moves[s].push((Move::Epsilon, s1));
                self.moves[t1].push((Move::Epsilon, t));
                self.moves[t1].push((Move::Epsilon, s1));
                if matches!(e, Nre::Star(_)) {
                    self.moves[s].push((Move::Epsilon, t));
                }
            }
            Nre::Nest(_) => unreachable!("regular expressions have no nests"),
        }
        (s, t)
    }
}

/// All `(u, v)` joined by a path whose label word is in the language of `r`.
pub fn product_2rpq(g: &PropertyGraph, r: &Regex) -> BTreeSet<(NodeId, NodeId)> {
    let nfa = Nfa::new(r);
    let mut out = BTreeSet::new();
    for u in g.nodes() {
        let mut seen = BTreeSet::from([(u, nfa.start)]);
        let mut queue = VecDeque::from([(u, nfa.start)]);
        while let Some((v, s)) = queue.pop_front() {
            if s == nfa.accept {
                out.insert((u, v));
            }
            for (mv, s2) in &nfa.moves[s] {
                let mut targets = Vec::new();
                match mv {
                    Move::Epsilon => targets.push(v),
                    Move::Forward(a) | Move::Backward(a) => {
                        for e in g.edges().filter(|&e| g.edge_has_label(e, a)) {
                            if let EdgeEnds::Directed { src, tgt } = g.ends(e) {
                                match mv {
                                    Move::Forward(_) if src == v => targets.push(tgt),
                                    Move::Backward(_) if tgt == v => targets.push(src),
                                    _ => {}
                                }
                            }
                        }
                    }
                }
                for w in targets {
                    if seen.insert((w, *s2)) {
                        queue.push_back((w, *s2));
                    }
                }
            }
        }
    }
    out
}

/// Head tuples of a C2RPQ, each atom answered by [`product_2rpq`].
pub fn c2rpq_answers(g: &PropertyGraph, q: &C2rpq) -> BTreeSet<Vec<NodeId>> {
    let relations: Vec<BTreeSet<(NodeId, NodeId)>> = q.atoms.iter().map(|a| product_2rpq(g, &a.regex)).collect();
    let mut out = BTreeSet::new();
    let mut env = BTreeMap::new();
    search(q, &relations, 0, &mut env, &mut out);
    out
}

fn search(
    q: &C2rpq,
    relations: &[BTreeSet<(NodeId, NodeId)>],
    k: usize,
    env: &mut BTreeMap<Var, NodeId>,
    out: &mut BTreeSet<Vec<NodeId>>,
) {
    if k == q.atoms.len() {
        out.insert(q.head.iter().map(|x| env[x]).collect());
        return;
    }
    let atom = &q.atoms[k];
    for &(u, v) in &relations[k] {
        let bound_src = env.get(&atom.src).copied();
        let bound_tgt = env.get(&atom.tgt).copied();
        if bound_src.is_some_and(|b| b != u) || bound_tgt.is_some_and(|b| b != v) {
            continue;
        }
        if atom.src == atom.tgt && u != v {
            continue;
        }
        env.insert(atom.src.clone(), u);
        env.insert(atom.tgt.clone(), v);
        search(q, relations, k + 1, env, out);
        match bound_src {
            Some(b) => env.insert(atom.src.clone(), b),
            None => env.remove(&atom.src),
        };
        match bound_tgt {
            Some(b) => env.insert(atom.tgt.clone(), b),
            None => env.remove(&atom.tgt),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpcplus::lang::{parse_c2rpq, parse_regex};
    use crate::graph::GraphBuilder;

    #[test]
    fn single_label_and_inverse() {
        let g = GraphBuilder::new()
            .node("n1", &["A"])
            .node("n2", &["B"])
            .directed("e1", "n1", "n2", &["a"])
            .undirected("u1", &["n2"], &["s"])
            .build()
            .unwrap();
        let (n1, n2) = (g.node("n1").unwrap(), g.node("n2").unwrap());
        assert_eq!(product_2rpq(&g, &parse_regex("a").unwrap()), BTreeSet::from([(n1, n2)]));
        assert_eq!(product_2rpq(&g, &parse_regex("a^-").unwrap()), BTreeSet::from([(n2, n1)]));
        assert_eq!(product_2rpq(&g, &parse_regex("s").unwrap()), BTreeSet::new());
        assert_eq!(product_2rpq(&g, &parse_regex("a*").unwrap()).len(), 3);
    }

    #[test]
    fn conjunction() {
        let g = GraphBuilder::new()
            .node("p", &[])
            .node("q", &[])
            .node("r", &[])
            .directed("e1", "p", "q", &["a"])
            .directed("e2", "q", "r", &["b"])
            .build()
            .unwrap();
        let q = parse_c2rpq("Ans(x, z) <- (x, a+, y), (y, b, z)").unwrap();
        let got = c2rpq_answers(&g, &q);
        assert_eq!(got, BTreeSet::from([vec![g.node("p").unwrap(), g.node("r").unwrap()]]));
    }
}
