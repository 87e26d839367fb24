//! Full sweep over all `s`-subsets in lexicographic order.
//!
//! Every element carries an incidence mask over blocks. Walking a subset
//! prefix keeps two bit-planes per depth: blocks hit at least once and
//! blocks hit at least twice. Adding element `e` with incidence `inc`:
//!
//! ```text
//! twice' = twice | (once & inc)
//! once'  = once  | inc
//! ```
//!
//! A subset is covered iff its final `twice` plane is nonzero. The
//! successor step only rebuilds planes from the leftmost changed position,
//! so the typical cost per subset is one plane update of `ceil(b / 64)`
//! words, independent of `n`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;
use core::sync::atomic::{AtomicU64, Ordering};

use super::{check_subset_size, Method, Outcome, VerificationReport, VerifyError};
use crate::bitset::words_for;
use crate::family::{DesignFamily, QuerySubset};
use crate::subsets::{advance_lex, binomial, unrank_lex};

/// How often (in subsets) a worker polls the shared cutoff.
const CUTOFF_POLL: u64 = 1 << 12;

/// Result of sweeping one rank range.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RangeOutcome {
    pub range: Range<u64>,
    /// Subsets examined in this range.
    pub scanned: u64,
    /// First uncovered subset in the range, with its lexicographic rank.
    pub counterexample: Option<(u64, QuerySubset)>,
}

/// Precomputed incidence data for sweeping the `s`-subsets of one family.
/// Ranges can be swept independently and in any order; [`Sweep::reduce`]
/// combines them deterministically.
#[derive(Clone, Debug)]
pub struct Sweep {
    n: usize,
    s: usize,
    words: usize,
    /// `n * words`, element-major.
    incidence: Vec<u64>,
    total: u64,
}

impl Sweep {
    pub fn new(family: &DesignFamily, s: u32) -> Result<Self, VerifyError> {
        let n = family.n();
        check_subset_size(n, s)?;
        let total = binomial(u64::from(n), u64::from(s)).ok_or(VerifyError::TooManySubsets { n, s })?;
        let words = words_for(family.len()).max(1);
        let mut incidence = vec![0u64; n as usize * words];
        for (bi, block) in family.blocks().iter().enumerate() {
            for &e in block.members() {
                incidence[(e as usize - 1) * words + bi / 64] |= 1 << (bi % 64);
            }
        }
        Ok(Self { n: n as usize, s: s as usize, words, incidence, total })
    }

    /// `C(n, s)`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn subset_size(&self) -> u32 {
        self.s as u32
    }

    /// Sweeps ranks `range` (clamped to `0..total`), stopping at the first
    /// uncovered subset. When `cutoff` is given, the sweep also stops once
    /// its position reaches the cutoff rank; callers lower the cutoff when
    /// another range finds a counterexample.
    pub fn run_range(&self, range: Range<u64>, cutoff: Option<&AtomicU64>) -> RangeOutcome {
        let range = range.start.min(self.total)..range.end.min(self.total);
        // Const block-word counts so the plane loop unrolls.
        match self.words {
            1 => self.run::<1>(range, cutoff),
            2 => self.run::<2>(range, cutoff),
            3 => self.run::<3>(range, cutoff),
            4 => self.run::<4>(range, cutoff),
            _ => self.run::<0>(range, cutoff),
        }
    }

    /// `W = 0` means "use the runtime word count".
    #[inline(always)]
    fn run<const W: usize>(&self, range: Range<u64>, cutoff: Option<&AtomicU64>) -> RangeOutcome {
        let w = if W == 0 { self.words } else { W };
        let (n, s) = (self.n, self.s);
        let mut outcome = RangeOutcome { range: range.clone(), scanned: 0, counterexample: None };
        if range.is_empty() {
            return outcome;
        }
        let mut subset = unrank_lex(n, s, range.start).expect("start rank is below total");
        let mut once = vec![0u64; (s + 1) * w];
        let mut twice = vec![0u64; (s + 1) * w];
        let mut from = 0;
        let mut rank = range.start;
        loop {
            for d in from..s {
                let inc = &self.incidence[subset[d] * w..subset[d] * w + w];
                let (lo_once, hi_once) = once.split_at_mut((d + 1) * w);
                let (lo_twice, hi_twice) = twice.split_at_mut((d + 1) * w);
                let (o, t) = (&lo_once[d * w..], &lo_twice[d * w..]);
                for j in 0..w {
                    hi_twice[j] = t[j] | (o[j] & inc[j]);
                    hi_once[j] = o[j] | inc[j];
                }
            }
            outcome.scanned += 1;
            if twice[s * w..].iter().all(|&x| x == 0) {
                outcome.counterexample = Some((rank, QuerySubset::from_positions(&subset)));
                return outcome;
            }
            rank += 1;
            if rank == range.end {
                return outcome;
            }
            if outcome.scanned.is_multiple_of(CUTOFF_POLL) {
                if let Some(c) = cutoff {
                    if c.load(Ordering::Relaxed) <= rank {
                        return outcome;
                    }
                }
            }
            from = advance_lex(n, &mut subset).expect("rank below total has a successor");
        }
    }

    /// Combines range outcomes that together cover `0..total`: the
    /// counterexample of least rank wins, otherwise scan counts are summed.
    pub fn reduce(&self, outcomes: impl IntoIterator<Item = RangeOutcome>) -> VerificationReport {
        let mut scanned = 0u64;
        let mut best: Option<(u64, QuerySubset)> = None;
        for o in outcomes {
            scanned += o.scanned;
            if let Some((rank, sub)) = o.counterexample {
                if best.as_ref().is_none_or(|(r, _)| rank < *r) {
                    best = Some((rank, sub));
                }
            }
        }
        let s = self.s as u32;
        match best {
            Some((rank, sub)) => {
                let mut r = VerificationReport::new(Method::Exhaustive, Outcome::Fails, s, rank + 1);
                r.counterexample = Some(sub);
                r
            }
            None => {
                debug_assert_eq!(scanned, self.total);
                VerificationReport::new(Method::Exhaustive, Outcome::Holds, s, scanned)
            }
        }
    }
}

/// Single-threaded sweep of all `C(n, s)` subsets. On failure the
/// counterexample is the lexicographically smallest uncovered subset.
pub fn exhaustive_verify(family: &DesignFamily, s: u32) -> Result<VerificationReport, VerifyError> {
    let sweep = Sweep::new(family, s)?;
    let all = sweep.run_range(0..sweep.total(), None);
    Ok(sweep.reduce([all]))
}
