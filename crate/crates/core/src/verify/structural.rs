//! Certifies the guarantee from construction structure alone, and answers
//! witness queries by replaying the two-case argument:
//!
//! 1. two elements of `S` share a base block: that base is the witness;
//! 2. otherwise `S` touches `|S|` distinct bases, and once `|S| > t/2`
//!    two of them form a pair `(2m - 1, 2m)`; the recombined block built
//!    from the halves holding those two elements is the witness.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{check_subset_size, Method, Outcome, VerificationReport, VerifyError};
use crate::certificate::is_counterexample;
use crate::family::{Block, BlockTag, DesignFamily, ElementId, QuerySubset};

/// Why a tagged family is not a valid pairwise-recombination construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StructuralDefect {
    /// 0-based block index.
    UntaggedBlock(usize),
    DuplicateTag(BlockTag),
    TagOutOfRange(BlockTag),
    /// Number of base tags is odd or below 2.
    BaseCount(u32),
    /// Block size cannot be halved.
    OddBlockSize(u32),
    BasesOverlap(ElementId),
    ElementUncovered(ElementId),
    RecombinedMissing {
        pair: u32,
        left_half: u8,
        right_half: u8,
    },
    /// The recombined blocks of a pair disagree on how base `base` is split,
    /// or the split is not into two equal halves.
    InconsistentHalves {
        pair: u32,
        base: u32,
    },
    RecombinedMismatch {
        pair: u32,
        left_half: u8,
        right_half: u8,
    },
    /// Structure is valid but `s` is below the guarantee threshold.
    BelowThreshold {
        s: u32,
        threshold: u32,
    },
}

impl fmt::Display for StructuralDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::UntaggedBlock(i) => write!(f, "block {} has no structure tag", i + 1),
            Self::DuplicateTag(t) => write!(f, "tag '{t}' appears more than once"),
            Self::TagOutOfRange(t) => write!(f, "tag '{t}' is out of range"),
            Self::BaseCount(t) => write!(f, "{t} base blocks; need an even count >= 2"),
            Self::OddBlockSize(k) => write!(f, "block size {k} is odd"),
            Self::BasesOverlap(e) => write!(f, "element {e} lies in two base blocks"),
            Self::ElementUncovered(e) => write!(f, "element {e} lies in no base block"),
            Self::RecombinedMissing { pair, left_half, right_half } => {
                write!(f, "recombined block m={pair} u={left_half} v={right_half} missing")
            }
            Self::InconsistentHalves { pair, base } => {
                write!(f, "pair {pair}: halves of base {base} are inconsistent")
            }
            Self::RecombinedMismatch { pair, left_half, right_half } => {
                write!(f, "recombined block m={pair} u={left_half} v={right_half} is not the union of its halves")
            }
            Self::BelowThreshold { s, threshold } => {
                write!(f, "subset size {s} is below the guarantee threshold {threshold}")
            }
        }
    }
}

/// Lookup tables extracted from a validated structure.
#[derive(Clone, Debug)]
pub struct ProofIndex {
    n: u32,
    base_count: u32,
    /// Per element (0-based): its base index (1-based).
    base_of: Vec<u32>,
    /// Per element (0-based): its half within the base, 1 or 2.
    half_of: Vec<u8>,
    /// Base `i` -> block position, at `i - 1`.
    base_block: Vec<usize>,
    /// Pair `m` -> block positions for `(u, v)` at `[(u - 1) * 2 + (v - 1)]`.
    recombined_block: Vec<[usize; 4]>,
}

impl ProofIndex {
    /// Validates the structure tags of `family`. `Ok(Err(defect))` means
    /// tags are present but do not form a valid construction.
    pub fn build(family: &DesignFamily) -> Result<Result<Self, StructuralDefect>, VerifyError> {
        if !family.has_structure() {
            return Err(VerifyError::NoStructure);
        }
        Ok(Self::validate(family))
    }

    fn validate(family: &DesignFamily) -> Result<Self, StructuralDefect> {
        let (n, k) = (family.n(), family.k());
        let mut bases: Vec<(u32, usize)> = Vec::new();
        let mut recombined: Vec<(BlockTag, usize)> = Vec::new();
        let mut seen = BTreeSet::new();
        for (i, tag) in family.tags().iter().enumerate() {
            if let Some(t) = tag {
                if !seen.insert(*t) {
                    return Err(StructuralDefect::DuplicateTag(*t));
                }
            }
            match *tag {
                None => return Err(StructuralDefect::UntaggedBlock(i)),
                Some(BlockTag::Base { index }) => bases.push((index, i)),
                Some(t @ BlockTag::Recombined { .. }) => recombined.push((t, i)),
            }
        }

        let t = bases.len() as u32;
        if t < 2 || !t.is_multiple_of(2) {
            return Err(StructuralDefect::BaseCount(t));
        }
        if k % 2 != 0 {
            return Err(StructuralDefect::OddBlockSize(k));
        }
        let mut base_block = vec![usize::MAX; t as usize];
        for &(index, pos) in &bases {
            if index == 0 || index > t {
                return Err(StructuralDefect::TagOutOfRange(BlockTag::Base { index }));
            }
            base_block[index as usize - 1] = pos;
        }

        let mut base_of = vec![0u32; n as usize];
        for (i, &pos) in base_block.iter().enumerate() {
            for &e in family.blocks()[pos].members() {
                if base_of[e as usize - 1] != 0 {
                    return Err(StructuralDefect::BasesOverlap(e));
                }
                base_of[e as usize - 1] = i as u32 + 1;
            }
        }
        if let Some(e) = base_of.iter().position(|&b| b == 0) {
            return Err(StructuralDefect::ElementUncovered(e as u32 + 1));
        }

        let pairs = t / 2;
        let mut recombined_block = vec![[usize::MAX; 4]; pairs as usize];
        for &(tag, pos) in &recombined {
            let BlockTag::Recombined { pair, left_half, right_half } = tag else { unreachable!() };
            if pair == 0 || pair > pairs || !(1..=2).contains(&left_half) || !(1..=2).contains(&right_half) {
                return Err(StructuralDefect::TagOutOfRange(tag));
            }
            recombined_block[pair as usize - 1][slot_of(left_half, right_half)] = pos;
        }

        let mut half_of = vec![0u8; n as usize];
        for m in 1..=pairs {
            let slots = recombined_block[m as usize - 1];
            for u in 1..=2u8 {
                for v in 1..=2u8 {
                    if slots[slot_of(u, v)] == usize::MAX {
                        return Err(StructuralDefect::RecombinedMissing { pair: m, left_half: u, right_half: v });
                    }
                }
            }
            let block = |u: u8, v: u8| &family.blocks()[slots[slot_of(u, v)]];
            let (left, right) = (2 * m - 1, 2 * m);
            let left_base = &family.blocks()[base_block[left as usize - 1]];
            let right_base = &family.blocks()[base_block[right as usize - 1]];

            // Half u of the left base, read off (m, u, 1) and (m, u, 2).
            let mut left_halves = Vec::with_capacity(2);
            for u in 1..=2u8 {
                let a = restrict(block(u, 1), left_base);
                if a != restrict(block(u, 2), left_base) {
                    return Err(StructuralDefect::InconsistentHalves { pair: m, base: left });
                }
                left_halves.push(a);
            }
            let mut right_halves = Vec::with_capacity(2);
            for v in 1..=2u8 {
                let a = restrict(block(1, v), right_base);
                if a != restrict(block(2, v), right_base) {
                    return Err(StructuralDefect::InconsistentHalves { pair: m, base: right });
                }
                right_halves.push(a);
            }
            for (base, base_block, halves) in [(left, left_base, &left_halves), (right, right_base, &right_halves)] {
                if !splits_evenly(base_block, &halves[0], &halves[1]) {
                    return Err(StructuralDefect::InconsistentHalves { pair: m, base });
                }
                for (h, half) in halves.iter().enumerate() {
                    for &e in half {
                        half_of[e as usize - 1] = h as u8 + 1;
                    }
                }
            }
            for u in 1..=2u8 {
                for v in 1..=2u8 {
                    let mut expect: Vec<ElementId> =
                        left_halves[u as usize - 1].iter().chain(&right_halves[v as usize - 1]).copied().collect();
                    expect.sort_unstable();
                    if block(u, v).members() != expect.as_slice() {
                        return Err(StructuralDefect::RecombinedMismatch { pair: m, left_half: u, right_half: v });
                    }
                }
            }
        }

        Ok(Self { n, base_count: t, base_of, half_of, base_block, recombined_block })
    }

    pub fn base_count(&self) -> u32 {
        self.base_count
    }

    /// `t/2 + 1`.
    pub fn threshold(&self) -> u32 {
        self.base_count / 2 + 1
    }

    /// One element from the left base of each of the first `s` pairs:
    /// pairwise uncovered whenever every block is tagged.
    fn spread_subset(&self, family: &DesignFamily, s: u32) -> QuerySubset {
        let members = (1..=s).map(|m| family.blocks()[self.base_block[2 * m as usize - 2]].members()[0]).collect();
        QuerySubset::from_unsorted(members, self.n).expect("bases are disjoint")
    }

    /// Replays the two-case argument for `subset`. Cost is
    /// `O(|S| log |S|)`; no block is scanned.
    pub fn witness(&self, subset: &QuerySubset) -> Result<WitnessResult, WitnessError> {
        if let Some(&e) = subset.members().last().filter(|&&e| e > self.n) {
            return Err(WitnessError::OutOfRange { element: e, n: self.n });
        }
        let mut hits: Vec<(u32, ElementId)> =
            subset.members().iter().map(|&e| (self.base_of[e as usize - 1], e)).collect();
        hits.sort_unstable();

        if let Some(w) = hits.windows(2).find(|w| w[0].0 == w[1].0) {
            let base = w[0].0;
            return Ok(WitnessResult {
                block_index: self.base_block[base as usize - 1],
                case: WitnessCase::BaseCollision { base },
            });
        }
        // Bases are distinct and sorted; a pair shows up as (2m - 1, 2m) adjacent.
        if let Some(w) = hits.windows(2).find(|w| w[0].0 % 2 == 1 && w[1].0 == w[0].0 + 1) {
            let pair = w[1].0 / 2;
            let left_half = self.half_of[w[0].1 as usize - 1];
            let right_half = self.half_of[w[1].1 as usize - 1];
            return Ok(WitnessResult {
                block_index: self.recombined_block[pair as usize - 1][slot_of(left_half, right_half)],
                case: WitnessCase::PairCollision { pair, left_half, right_half },
            });
        }
        assert!(
            (subset.len() as u32) < self.threshold(),
            "pigeonhole: {} distinct bases among {} pairs",
            subset.len(),
            self.base_count / 2
        );
        Err(WitnessError::ThresholdNotMet { size: subset.len() as u32, threshold: self.threshold() })
    }
}

fn slot_of(left_half: u8, right_half: u8) -> usize {
    (left_half as usize - 1) * 2 + (right_half as usize - 1)
}

fn restrict(block: &Block, base: &Block) -> Vec<ElementId> {
    block.members().iter().copied().filter(|&e| base.contains(e)).collect()
}

fn splits_evenly(base: &Block, a: &[ElementId], b: &[ElementId]) -> bool {
    let half = base.len() / 2;
    a.len() == half && b.len() == half && a.iter().all(|e| b.binary_search(e).is_err())
}

/// Structural certification at subset size `s`.
///
/// HOLDS iff the tags describe a valid construction (bases partition
/// `[1, n]` into an even number of blocks, every pair has all four
/// recombined blocks, each equal to the union of consistent equal halves)
/// and `s >= t/2 + 1`. A defective structure yields FAILS with the defect
/// and no counterexample. Below the threshold a valid structure yields
/// FAILS with an explicit counterexample. Untagged families are an error.
pub fn structural_verify(family: &DesignFamily, s: u32) -> Result<VerificationReport, VerifyError> {
    check_subset_size(family.n(), s)?;
    let scanned = family.len() as u64;
    let index = match ProofIndex::build(family)? {
        Ok(index) => index,
        Err(defect) => {
            let mut r = VerificationReport::new(Method::Structural, Outcome::Fails, s, scanned);
            r.defect = Some(defect);
            return Ok(r);
        }
    };
    if s >= index.threshold() {
        return Ok(VerificationReport::new(Method::Structural, Outcome::Holds, s, scanned));
    }
    let mut r = VerificationReport::new(Method::Structural, Outcome::Fails, s, scanned);
    let ce = index.spread_subset(family, s);
    debug_assert!(is_counterexample(family, &ce));
    r.counterexample = Some(ce);
    r.defect = Some(StructuralDefect::BelowThreshold { s, threshold: index.threshold() });
    Ok(r)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WitnessCase {
    /// Two elements in base `base`.
    BaseCollision { base: u32 },
    /// One element in each base of pair `pair`, in the given halves.
    PairCollision { pair: u32, left_half: u8, right_half: u8 },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WitnessResult {
    /// 0-based position of the witness block in the family.
    pub block_index: usize,
    pub case: WitnessCase,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("structure is not a valid construction: {0}")]
    Defect(StructuralDefect),
    #[error("element {element} outside [1, {n}]")]
    OutOfRange { element: ElementId, n: u32 },
    #[error("guarantee threshold not met: {size} elements with no collision, threshold is {threshold}")]
    ThresholdNotMet { size: u32, threshold: u32 },
}

/// One-shot witness query. Builds a [`ProofIndex`] each call; use the
/// index directly for repeated queries.
pub fn witness_block(family: &DesignFamily, subset: &QuerySubset) -> Result<WitnessResult, WitnessError> {
    let index = ProofIndex::build(family)?.map_err(WitnessError::Defect)?;
    index.witness(subset)
}
