//! Unification and the `collect` operator for repetitions.

use std::collections::BTreeSet;
use std::ops::Range;

use crate::graph::Path;
use crate::syntax::Var;
use crate::typing::CollectMode;
use crate::value::{Assignment, Value};

/// Merges two assignments that agree on their shared variables. The result
/// takes `a`'s values on `dom(a)` and `b`'s elsewhere.
///
/// With `lenient`, a shared variable bound to `Nothing` on one side also
/// unifies, resolving to the other side's value.
pub fn unify(a: &Assignment, b: &Assignment, lenient: bool) -> Option<Assignment> {
    let mut out = a.clone();
    for (x, vb) in b.iter() {
        match a.get(x) {
            None => out.insert(x.clone(), vb.clone()),
            Some(va) if va == vb => {}
            Some(Value::Nothing) if lenient => out.insert(x.clone(), vb.clone()),
            Some(_) if lenient && *vb == Value::Nothing => {}
            Some(_) => return None,
        }
    }
    Some(out)
}

/// Group boundaries `i₁ < … < i_{ℓ+1}` (0-based, `i₁ = 0`, last = n): every
/// positive length is its own group and maximal zero runs are fused.
pub fn refactor(lengths: &[usize]) -> Vec<usize> {
    let mut bounds = vec![0];
    for i in 1..lengths.len() {
        if lengths[i] != 0 || lengths[i - 1] != 0 {
            bounds.push(i);
        }
    }
    bounds.push(lengths.len());
    bounds
}

/// The groups of [`refactor`] as index ranges.
pub fn refactor_groups(lengths: &[usize]) -> Vec<Range<usize>> {
    refactor(lengths).windows(2).map(|w| w[0]..w[1]).collect()
}

/// Batch `collect` over a sequence of repetition segments whose paths
/// concatenate. `vars` is the shared domain of the segment assignments.
/// Returns `None` when collect is undefined for the sequence.
pub fn collect_fn(
    mode: CollectMode,
    segments: &[(Path, Assignment)],
    vars: &BTreeSet<Var>,
    lenient: bool,
) -> Option<Assignment> {
    assert!(!segments.is_empty(), "collect needs at least one segment");
    match mode {
        CollectMode::Dynamic if segments.iter().any(|(p, _)| p.is_edgeless()) => None,
        CollectMode::Dynamic | CollectMode::Syntactic => {
            Some(lists(vars, segments.iter().map(|(p, m)| (p.clone(), m.clone())).collect()))
        }
        CollectMode::Grouping => {
            let lengths: Vec<usize> = segments.iter().map(|(p, _)| p.len()).collect();
            let mut groups = Vec::new();
            for range in refactor_groups(&lengths) {
                let members = &segments[range];
                for (i, (_, a)) in members.iter().enumerate() {
                    for (_, b) in &members[i + 1..] {
                        unify(a, b, lenient)?;
                    }
                }
                let mut merged = members[0].1.clone();
                let mut path = members[0].0.clone();
                for (p, m) in &members[1..] {
                    merged = unify(&merged, m, lenient)?;
                    path = path.concat(p).expect("segments concatenate");
                }
                groups.push((path, merged));
            }
            Some(lists(vars, groups))
        }
    }
}

fn lists(vars: &BTreeSet<Var>, groups: Vec<(Path, Assignment)>) -> Assignment {
    vars.iter()
        .map(|x| {
            let items =
                groups.iter().map(|(p, m)| (p.clone(), m.get(x).cloned().unwrap_or(Value::Nothing))).collect();
            (x.clone(), Value::group(items))
        })
        .collect()
}

/// Incremental grouping-mode collect: segments are pushed one at a time and
/// the result equals batch [`collect_fn`] over the pushed sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CollectState {
    closed: Vec<(Path, Assignment)>,
    /// The current run of edgeless segments: its node and unified assignment.
    open: Option<(Path, Assignment)>,
}

impl CollectState {
    pub fn new() -> CollectState {
        CollectState { closed: Vec::new(), open: None }
    }

    /// Appends a segment; `None` when the edgeless run no longer unifies.
    pub fn push(&self, path: &Path, mu: &Assignment, lenient: bool) -> Option<CollectState> {
        let mut next = self.clone();
        if path.is_edgeless() {
            next.open = Some(match &self.open {
                None => (path.clone(), mu.clone()),
                Some((p, m)) => (p.clone(), unify(m, mu, lenient)?),
            });
        } else {
            if let Some(open) = next.open.take() {
                next.closed.push(open);
            }
            next.closed.push((path.clone(), mu.clone()));
        }
        Some(next)
    }

    /// The open edgeless run's unified assignment, if any.
    pub fn open_assignment(&self) -> Option<&Assignment> {
        self.open.as_ref().map(|(_, m)| m)
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty() && self.open.is_none()
    }

    pub fn finish(&self, vars: &BTreeSet<Var>) -> Assignment {
        let mut groups = self.closed.clone();
        if let Some(open) = &self.open {
            groups.push(open.clone());
        }
        lists(vars, groups)
    }
}

impl Default for CollectState {
    fn default() -> Self {
        CollectState::new()
    }
}
