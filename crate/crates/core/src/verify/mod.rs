//! Three independent ways to decide whether every `s`-subset of `[1, n]`
//! meets some block of a family in at least two points:
//!
//! - [`exhaustive_verify`]: enumerate all `C(n, s)` subsets.
//! - [`graph_verify`]: compute the independence number of the
//!   covered-pair graph.
//! - [`structural_verify`]: check that the family's tagged structure is a
//!   valid pairwise-recombination construction, which proves the guarantee
//!   for `s >= t/2 + 1` without enumeration.

use core::fmt;

use crate::certificate::CliqueCover;
use crate::family::QuerySubset;

mod exhaustive;
mod graph;
mod structural;

pub use exhaustive::{exhaustive_verify, RangeOutcome, Sweep};
pub use graph::{graph_verify, irredundancy_check, BlockNecessity, IrredundancyReport};
pub use structural::{
    structural_verify, witness_block, ProofIndex, StructuralDefect, WitnessCase, WitnessError, WitnessResult,
};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Method {
    Exhaustive,
    Graph,
    Structural,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::Graph => "graph",
            Method::Structural => "structural",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Outcome {
    Holds,
    Fails,
    /// Search budget ran out before a decision.
    Undecided,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Holds => "HOLDS",
            Outcome::Fails => "FAILS",
            Outcome::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub method: Method,
    pub outcome: Outcome,
    pub subset_size: u32,
    /// Exhaustive: subsets examined (`C(n, s)` on success, rank + 1 of the
    /// counterexample on failure). Graph: search-tree nodes. Structural:
    /// blocks inspected.
    pub scanned: u64,
    /// An `s`-subset meeting every block in at most one point.
    pub counterexample: Option<QuerySubset>,
    /// Graph method only: a clique cover with at most `s - 1` cliques.
    pub certificate: Option<CliqueCover>,
    /// Graph method only: the independence number, when decided.
    pub alpha: Option<u32>,
    /// Structural method only: why the construction proof does not apply.
    pub defect: Option<StructuralDefect>,
}

impl VerificationReport {
    pub(crate) fn new(method: Method, outcome: Outcome, subset_size: u32, scanned: u64) -> Self {
        Self {
            method,
            outcome,
            subset_size,
            scanned,
            counterexample: None,
            certificate: None,
            alpha: None,
            defect: None,
        }
    }

    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("subset size {s} must be between 2 and {n}")]
    SubsetSize { s: u32, n: u32 },
    #[error("C({n}, {s}) subsets exceed the enumerable range")]
    TooManySubsets { n: u32, s: u32 },
    #[error("structural verification inapplicable: family carries no structure tags")]
    NoStructure,
}

pub(crate) fn check_subset_size(n: u32, s: u32) -> Result<(), VerifyError> {
    if s < 2 || s > n {
        return Err(VerifyError::SubsetSize { s, n });
    }
    Ok(())
}
