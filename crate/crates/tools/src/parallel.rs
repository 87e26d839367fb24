//! Multi-threaded exhaustive sweep.
//!
//! The rank space `0..C(n, s)` is cut into chunks handed out in ascending
//! order through a shared counter. A shared cutoff holds the least rank of
//! any counterexample found so far; workers skip or abandon chunks past
//! it. The reduction takes the least-rank counterexample, so the report is
//! identical for every worker count.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use duocover_core::subsets::split_range;
use duocover_core::verify::{RangeOutcome, Sweep};
use duocover_core::{DesignFamily, VerificationReport, VerifyError};

/// Chunks per worker; small enough to balance, large enough to amortize.
const CHUNKS_PER_JOB: usize = 32;

pub fn default_jobs() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn exhaustive_verify_parallel(
    family: &DesignFamily,
    s: u32,
    jobs: usize,
) -> Result<VerificationReport, VerifyError> {
    let sweep = Sweep::new(family, s)?;
    let jobs = jobs.max(1);
    if jobs == 1 {
        let all = sweep.run_range(0..sweep.total(), None);
        return Ok(sweep.reduce([all]));
    }
    let chunks = split_range(sweep.total(), jobs * CHUNKS_PER_JOB);
    let next = AtomicUsize::new(0);
    let cutoff = AtomicU64::new(u64::MAX);
    let results: Mutex<Vec<RangeOutcome>> = Mutex::new(Vec::with_capacity(chunks.len()));

    thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| {
                let mut local = Vec::new();
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(range) = chunks.get(i) else { break };
                    if range.start >= cutoff.load(Ordering::Relaxed) {
                        // Every later chunk starts past the cutoff too.
                        break;
                    }
                    let outcome = sweep.run_range(range.clone(), Some(&cutoff));
                    if let Some((rank, _)) = &outcome.counterexample {
                        cutoff.fetch_min(*rank, Ordering::Relaxed);
                    }
                    local.push(outcome);
                }
                results.lock().unwrap().extend(local);
            });
        }
    });

    Ok(sweep.reduce(results.into_inner().unwrap()))
}
