//! Pair-intersection covering families.
//!
//! A family of `k`-blocks over `[1, n]` *meets every `s`-set twice* when
//! each `s`-subset of `[1, n]` shares at least two elements with some
//! block. This crate builds the pairwise-recombination family (`3t`
//! blocks of size `g` on `g * t` points, guaranteed for `s = t/2 + 1`;
//! `g = 6, t = 10` gives 30 blocks on `[60]` for 6-sets) and decides the
//! property for arbitrary families three ways: exhaustive enumeration,
//! the independence number of the covered-pair graph, and a structural
//! check that replays the pigeonhole argument.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bitset;
pub mod certificate;
pub mod construct;
pub mod family;
pub mod mis;
pub mod pair_graph;
pub mod subsets;
pub mod verify;

pub use certificate::{check_clique_cover, is_counterexample, is_witness, CertificateError, CliqueCover};
pub use construct::{
    base_block, base_blocks, build_family, recombine, recombined_blocks, split_halves, ConstructError,
    ConstructionParams, PairGroup, ParamError,
};
pub use family::{Block, BlockError, BlockTag, DesignFamily, ElementId, FamilyError, QueryError, QuerySubset};
pub use mis::{independence_number, IndependentSet, MisOutcome};
pub use pair_graph::{coverage_stats, covered_pair_graph, BlockCoverage, CoverageStats, PairGraph};
pub use verify::{
    exhaustive_verify, graph_verify, irredundancy_check, structural_verify, witness_block, Method, Outcome, ProofIndex,
    StructuralDefect, VerificationReport, VerifyError, WitnessCase, WitnessError, WitnessResult,
};
