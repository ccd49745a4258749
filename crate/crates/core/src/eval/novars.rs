//! Membership of subpaths in a variable-free pattern, by dynamic
//! programming over position pairs.
//!
//! For a fixed path `p = u₀ e₁ u₁ … eₗ uₗ`, every variable-free subpattern
//! denotes a relation over positions `{0..ℓ}`: `(i, j)` holds when the
//! subpath from `uᵢ` to `uⱼ` matches. Concatenation is relational
//! composition, union is set union, and repetition bounds are handled with
//! iterative squaring, so large bounds cost only logarithmically many steps.

use std::collections::BTreeSet;

use super::{edge_step_matches, EvalError};
use crate::graph::{Path, PropertyGraph};
use crate::syntax::Pattern;
use crate::typing::CollectMode;

/// Square boolean matrix over path positions.
#[derive(Clone, PartialEq, Eq)]
struct Rel {
    n: usize,
    bits: Vec<bool>,
}

impl Rel {
    fn empty(n: usize) -> Rel {
        Rel { n, bits: vec![false; n * n] }
    }

    fn identity(n: usize) -> Rel {
        let mut r = Rel::empty(n);
        for i in 0..n {
            r.set(i, i);
        }
        r
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.n + j] = true;
    }

    fn union(&self, other: &Rel) -> Rel {
        Rel { n: self.n, bits: self.bits.iter().zip(&other.bits).map(|(a, b)| *a || *b).collect() }
    }

    fn compose(&self, other: &Rel) -> Rel {
        let mut out = Rel::empty(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if !self.get(i, k) {
                    continue;
                }
                for j in 0..self.n {
                    if other.get(k, j) {
                        out.set(i, j);
                    }
                }
            }
        }
        out
    }

    /// `self^k` by iterative squaring.
    fn pow(&self, mut k: u64) -> Rel {
        let mut result = Rel::identity(self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.compose(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base);
            }
        }
        result
    }

    fn without_diagonal(&self) -> Rel {
        let mut out = self.clone();
        for i in 0..self.n {
            out.bits[i * self.n + i] = false;
        }
        out
    }
}

/// All `(i, j)` such that the subpath of `p` between node positions `i` and
/// `j` matches `pattern` with the empty assignment. The pattern must be
/// variable-free.
pub fn pairs_no_vars(
    g: &PropertyGraph,
    pattern: &Pattern,
    p: &Path,
    mode: CollectMode,
) -> Result<BTreeSet<(usize, usize)>, EvalError> {
    if !pattern.vars().is_empty() {
        return Err(EvalError::Precondition("pairs_no_vars needs a variable-free pattern".into()));
    }
    let rel = relation(g, pattern, p, mode)?;
    let mut out = BTreeSet::new();
    for i in 0..rel.n {
        for j in 0..rel.n {
            if rel.get(i, j) {
                out.insert((i, j));
            }
        }
    }
    Ok(out)
}

fn relation(g: &PropertyGraph, pattern: &Pattern, p: &Path, mode: CollectMode) -> Result<Rel, EvalError> {
    let n = p.len() + 1;
    Ok(match pattern {
        Pattern::Node(d) => {
            let mut r = Rel::empty(n);
            for (i, &u) in p.nodes().iter().enumerate() {
                if d.label.as_ref().is_none_or(|l| g.node_has_label(u, l)) {
                    r.set(i, i);
                }
            }
            r
        }
        Pattern::Edge(dir, d) => {
            let mut r = Rel::empty(n);
            for (i, &e) in p.edges().iter().enumerate() {
                if edge_step_matches(g, *dir, d.label.as_deref(), p.nodes()[i], e, p.nodes()[i + 1]) {
                    r.set(i, i + 1);
                }
            }
            r
        }
        Pattern::Union(a, b) => relation(g, a, p, mode)?.union(&relation(g, b, p, mode)?),
        Pattern::Concat(a, b) => relation(g, a, p, mode)?.compose(&relation(g, b, p, mode)?),
        Pattern::Cond(..) => {
            return Err(EvalError::Precondition("a condition needs variables to refer to".into()));
        }
        Pattern::Repeat(a, min, max) => {
            let mut step = relation(g, a, p, mode)?;
            if mode == CollectMode::Dynamic {
                step = step.without_diagonal();
            }
            // positions only move forward, so n - 1 further steps saturate
            let extra = match max {
                None => n as u64,
                Some(m) => (m - min).min(n as u64),
            };
            let head = step.pow(*min);
            head.compose(&Rel::identity(n).union(&step).pow(extra))
        }
    })
}
