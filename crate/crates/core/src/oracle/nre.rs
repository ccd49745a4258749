use std::collections::BTreeSet;

use crate::gpcplus::lang::Nre;
use crate::graph::{EdgeEnds, NodeId, PropertyGraph};

type Relation = BTreeSet<(NodeId, NodeId)>;

/// Node pairs of a nested regular expression, computed bottom-up as
/// relations: composition, union, closures, and `[f] = {(u, u) : ∃v (u, v) ∈ f}`.
pub fn recursive_nre(g: &PropertyGraph, e: &Nre) -> Relation {
    match e {
        Nre::Label(a) => labelled(g, a).collect(),
        Nre::Inverse(a) => labelled(g, a).map(|(u, v)| (v, u)).collect(),
        Nre::Concat(a, b) => compose(&recursive_nre(g, a), &recursive_nre(g, b)),
        Nre::Union(a, b) => recursive_nre(g, a).union(&recursive_nre(g, b)).copied().collect(),
        Nre::Plus(a) => closure(recursive_nre(g, a)),
        Nre::Star(a) => {
            let mut r = closure(recursive_nre(g, a));
            r.extend(g.nodes().map(|u| (u, u)));
            r
        }
        Nre::Nest(a) => recursive_nre(g, a).into_iter().map(|(u, _)| (u, u)).collect(),
    }
}

fn labelled<'g>(g: &'g PropertyGraph, a: &'g str) -> impl Iterator<Item = (NodeId, NodeId)> + 'g {
    g.edges().filter(move |&e| g.edge_has_label(e, a)).filter_map(move |e| match g.ends(e) {
        EdgeEnds::Directed { src, tgt } => Some((src, tgt)),
        EdgeEnds::Undirected { .. } => None,
    })
}

fn compose(r: &Relation, s: &Relation) -> Relation {
    let mut out = Relation::new();
    for &(u, v) in r {
        for &(_, w) in s.range((v, NodeId(0))..=(v, NodeId(u32::MAX))) {
            out.insert((u, w));
        }
    }
    out
}

fn closure(r: Relation) -> Relation {
    let mut acc = r.clone();
    loop {
        let next: Relation = acc.union(&compose(&acc, &r)).copied().collect();
        if next.len() == acc.len() {
            return acc;
        }
        acc = next;
    }
}
