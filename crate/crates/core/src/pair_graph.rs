//! Covered-pair graph: vertices are ground elements, edges are pairs that
//! lie together in at least one block.
//!
//! A family meets every `s`-subset in two points exactly when this graph
//! has no independent set of size `s`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::family::{DesignFamily, ElementId};

/// Simple undirected graph on `n` vertices, adjacency as bitsets.
/// Vertices are 0-based internally; the accessors taking [`ElementId`]
/// are 1-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairGraph {
    adjacency: Vec<BitSet>,
}

impl PairGraph {
    pub fn empty(n: usize) -> Self {
        Self { adjacency: vec![BitSet::new(n); n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for v in 0..n {
            for u in v + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Order of the graph.
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    /// Adds the edge between 0-based vertices `u != v`.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v);
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adjacency[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    /// 1-based edge query.
    pub fn has_edge(&self, x: ElementId, y: ElementId) -> bool {
        x != y
            && (1..=self.n() as u32).contains(&x)
            && (1..=self.n() as u32).contains(&y)
            && self.adjacent(x as usize - 1, y as usize - 1)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BitSet::len).sum::<usize>() / 2
    }

    /// Edges as 1-based `(x, y)`, `x < y`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nb)| {
            nb.iter().filter(move |&v| v > u).map(move |v| (u as ElementId + 1, v as ElementId + 1))
        })
    }
}

/// Edge `{x, y}` iff some block contains both.
pub fn covered_pair_graph(family: &DesignFamily) -> PairGraph {
    let mut g = PairGraph::empty(family.n() as usize);
    for block in family.blocks() {
        let m = block.members();
        for (i, &x) in m.iter().enumerate() {
            for &y in &m[i + 1..] {
                g.add_edge(x as usize - 1, y as usize - 1);
            }
        }
    }
    g
}

/// Per-block slice of [`CoverageStats`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BlockCoverage {
    /// `C(k, 2)`.
    pub pairs: u64,
    /// Pairs of this block that no other block covers.
    pub unique_pairs: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverageStats {
    n: u32,
    /// Upper-triangular pair multiplicities, row-major.
    multiplicity: Vec<u32>,
    pub covered_pairs: u64,
    /// multiplicity c -> number of pairs covered by exactly c blocks (c >= 1).
    pub histogram: BTreeMap<u32, u64>,
    pub per_block: Vec<BlockCoverage>,
}

impl CoverageStats {
    fn slot(n: u32, x: ElementId, y: ElementId) -> usize {
        let (a, b) = if x < y { (x - 1, y - 1) } else { (y - 1, x - 1) };
        let (n, a, b) = (n as usize, a as usize, b as usize);
        a * (2 * n - a - 1) / 2 + (b - a - 1)
    }

    /// Number of blocks containing both `x` and `y`.
    pub fn multiplicity(&self, x: ElementId, y: ElementId) -> u32 {
        if x == y || x == 0 || y == 0 || x > self.n || y > self.n {
            return 0;
        }
        self.multiplicity[Self::slot(self.n, x, y)]
    }
}

fn block_pairs(m: &[ElementId]) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
    m.iter().enumerate().flat_map(move |(i, &x)| m[i + 1..].iter().map(move |&y| (x, y)))
}

pub fn coverage_stats(family: &DesignFamily) -> CoverageStats {
    let n = family.n();
    let nu = n as usize;
    let mut multiplicity = vec![0u32; nu * nu.saturating_sub(1) / 2];
    for block in family.blocks() {
        for (x, y) in block_pairs(block.members()) {
            multiplicity[CoverageStats::slot(n, x, y)] += 1;
        }
    }
    let mut histogram = BTreeMap::new();
    for &c in multiplicity.iter().filter(|&&c| c > 0) {
        *histogram.entry(c).or_insert(0u64) += 1;
    }
    let covered_pairs = histogram.values().sum();
    let per_block = family
        .blocks()
        .iter()
        .map(|block| {
            let k = block.len() as u64;
            let unique_pairs = block_pairs(block.members())
                .filter(|&(x, y)| multiplicity[CoverageStats::slot(n, x, y)] == 1)
                .count() as u64;
            BlockCoverage { pairs: k * k.saturating_sub(1) / 2, unique_pairs }
        })
        .collect();
    CoverageStats { n, multiplicity, covered_pairs, histogram, per_block }
}
