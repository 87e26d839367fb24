//! Lexicographic k-subset enumeration: binomials, ranking, unranking and
//! the successor step used by the exhaustive sweep.
//!
//! Subsets here are 0-based, strictly increasing index arrays.

use alloc::vec::Vec;

/// `C(n, k)`, or `None` if it does not fit in a `u64`.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Position of `subset` among all `subset.len()`-subsets of `0..n` in
/// lexicographic order. Callers guarantee the total count fits in `u64`.
pub fn rank_lex(n: usize, subset: &[usize]) -> u64 {
    let k = subset.len();
    let mut rank = 0u64;
    let mut next = 0usize;
    for (i, &c) in subset.iter().enumerate() {
        for v in next..c {
            rank += binomial((n - 1 - v) as u64, (k - 1 - i) as u64).unwrap_or(0);
        }
        next = c + 1;
    }
    rank
}

/// Inverse of [`rank_lex`]: the `rank`-th `k`-subset of `0..n`.
pub fn unrank_lex(n: usize, k: usize, mut rank: u64) -> Option<Vec<usize>> {
    let total = binomial(n as u64, k as u64)?;
    if rank >= total {
        return None;
    }
    let mut out = Vec::with_capacity(k);
    let mut v = 0usize;
    for i in 0..k {
        loop {
            let below = binomial((n - 1 - v) as u64, (k - 1 - i) as u64)?;
            if rank < below {
                break;
            }
            rank -= below;
            v += 1;
        }
        out.push(v);
        v += 1;
    }
    Some(out)
}

/// Advance `subset` to its lexicographic successor among `k`-subsets of
/// `0..n`. Returns the leftmost changed position, or `None` when `subset`
/// was the last one (it is then left unchanged).
#[inline]
pub fn advance_lex(n: usize, subset: &mut [usize]) -> Option<usize> {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return Some(i);
        }
    }
    None
}

/// Iterator over all `k`-subsets of `0..n` in lexicographic order.
pub struct LexSubsets {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl LexSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        Self { n, current: (0..k).collect(), done: k > n }
    }
}

impl Iterator for LexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        if advance_lex(self.n, &mut self.current).is_none() {
            self.done = true;
        }
        Some(out)
    }
}

/// Split `0..total` into at most `parts` contiguous, near-equal ranges.
pub fn split_range(total: u64, parts: usize) -> Vec<core::ops::Range<u64>> {
    let parts = (parts.max(1) as u64).min(total.max(1));
    let base = total / parts;
    let extra = total % parts;
    let mut out = Vec::with_capacity(parts as usize);
    let mut start = 0;
    for p in 0..parts {
        let len = base + u64::from(p < extra);
        out.push(start..start + len);
        start += len;
    }
    out
}
