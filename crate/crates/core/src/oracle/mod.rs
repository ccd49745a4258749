//! Brute-force evaluators for differential testing.
//!
//! Nothing here calls into [`crate::eval`]: unification, `collect`,
//! conditions, restrictors and length bounds are written out again directly
//! from their definitions, on top of the graph, syntax and value types.
//! Budgets fail loudly, so a passing comparison never looked at a truncated
//! set.

mod automaton;
mod naive;
mod nre;
mod paths;

use thiserror::Error;

use crate::typing::{CollectMode, TypeError};

pub use automaton::{c2rpq_answers, product_2rpq};
pub use naive::{brute_force_query, naive_match};
pub use nre::recursive_nre;
pub use paths::enumerate_paths;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Longest path the oracle will enumerate.
    pub max_path_len: usize,
    /// Largest set (of paths, assignments or answers) it will build.
    pub max_answers: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_path_len: 8, max_answers: 200_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub collect_mode: CollectMode,
    pub lenient_unify: bool,
    /// Overrides the restrictor-derived length bound of path queries.
    pub max_len: Option<usize>,
    pub budget: OracleBudget,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            collect_mode: CollectMode::Grouping,
            lenient_unify: false,
            max_len: None,
            budget: OracleBudget::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle budget exceeded: {0}")]
    Budget(String),
    #[error(transparent)]
    Type(#[from] TypeError),
}
