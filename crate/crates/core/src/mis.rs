//! Exact maximum independent set by branch and bound.
//!
//! Upper bound: a greedy clique cover of the candidate set (an independent
//! set takes at most one vertex per clique). Branching: the candidate of
//! maximum degree inside the candidate set, ties to the smallest id;
//! the "include" branch is explored first. Both choices are fixed so the
//! reported witness is reproducible.

use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::family::ElementId;
use crate::pair_graph::PairGraph;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IndependentSet {
    /// 1-based, ascending.
    pub members: Vec<ElementId>,
    /// Search-tree nodes expanded.
    pub nodes: u64,
}

impl IndependentSet {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MisOutcome {
    /// Proven maximum.
    Exact(IndependentSet),
    /// Node budget ran out; `best` is a valid but possibly non-maximum
    /// independent set found so far.
    Undecided { best: IndependentSet },
}

impl MisOutcome {
    pub fn nodes(&self) -> u64 {
        match self {
            MisOutcome::Exact(s) | MisOutcome::Undecided { best: s } => s.nodes,
        }
    }

    pub fn exact(&self) -> Option<&IndependentSet> {
        match self {
            MisOutcome::Exact(s) => Some(s),
            MisOutcome::Undecided { .. } => None,
        }
    }
}

/// Greedy clique partition of `vertices`: repeatedly seed with the
/// smallest uncovered vertex and add the smallest common neighbour.
pub fn greedy_clique_cover(graph: &PairGraph, vertices: &BitSet) -> Vec<BitSet> {
    let mut left = vertices.clone();
    let mut cliques = Vec::new();
    while let Some(seed) = left.first() {
        let mut clique = BitSet::new(graph.n());
        let mut candidates = left.intersection(graph.neighbors(seed));
        clique.insert(seed);
        left.remove(seed);
        while let Some(v) = candidates.first() {
            clique.insert(v);
            left.remove(v);
            candidates.remove(v);
            candidates.intersect_with(graph.neighbors(v));
        }
        cliques.push(clique);
    }
    cliques
}

/// Number of cliques [`greedy_clique_cover`] would use.
fn greedy_cover_size(graph: &PairGraph, vertices: &BitSet) -> usize {
    let mut left = vertices.clone();
    let mut count = 0;
    while let Some(seed) = left.first() {
        let mut candidates = left.intersection(graph.neighbors(seed));
        left.remove(seed);
        while let Some(v) = candidates.first() {
            left.remove(v);
            candidates.remove(v);
            candidates.intersect_with(graph.neighbors(v));
        }
        count += 1;
    }
    count
}

struct Search<'a> {
    graph: &'a PairGraph,
    budget: Option<u64>,
    nodes: u64,
    best: Vec<usize>,
    current: Vec<usize>,
    exhausted: bool,
}

impl Search<'_> {
    fn expand(&mut self, candidates: BitSet) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.exhausted = true;
            return;
        }
        if self.current.len() + candidates.len() <= self.best.len() {
            return;
        }
        if self.current.len() + greedy_cover_size(self.graph, &candidates) <= self.best.len() {
            return;
        }

        let mut pick = None;
        let mut pick_degree = 0;
        for v in candidates.iter() {
            let d = self.graph.neighbors(v).intersection_len(&candidates);
            if pick.is_none() || d > pick_degree {
                pick = Some(v);
                pick_degree = d;
            }
        }
        let Some(v) = pick else {
            // No candidates left and the bound check passed: strictly better.
            self.best = self.current.clone();
            return;
        };
        if pick_degree == 0 {
            // Candidates are pairwise non-adjacent.
            let mut found = self.current.clone();
            found.extend(candidates.iter());
            self.best = found;
            return;
        }

        let mut with_v = candidates.clone();
        with_v.remove(v);
        with_v.difference_with(self.graph.neighbors(v));
        self.current.push(v);
        self.expand(with_v);
        self.current.pop();

        let mut without_v = candidates;
        without_v.remove(v);
        self.expand(without_v);
    }
}

/// Exact independence number with a witness, or `Undecided` once more than
/// `budget` search nodes have been expanded.
pub fn independence_number(graph: &PairGraph, budget: Option<u64>) -> MisOutcome {
    let mut search = Search { graph, budget, nodes: 0, best: Vec::new(), current: Vec::new(), exhausted: false };
    search.expand(BitSet::full(graph.n()));
    let mut members: Vec<ElementId> = search.best.iter().map(|&v| v as ElementId + 1).collect();
    members.sort_unstable();
    let set = IndependentSet { members, nodes: search.nodes };
    if search.exhausted {
        MisOutcome::Undecided { best: set }
    } else {
        MisOutcome::Exact(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_family, ConstructionParams};
    use crate::pair_graph::covered_pair_graph;
    use alloc::vec;
    use proptest::prelude::*;

    /// Brute force over all vertex subsets, largest first.
    fn brute_alpha(g: &PairGraph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&mask| {
                (0..n).all(|u| mask & (1 << u) == 0 || (u + 1..n).all(|v| mask & (1 << v) == 0 || !g.adjacent(u, v)))
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn is_independent(g: &PairGraph, set: &[ElementId]) -> bool {
        set.iter().enumerate().all(|(i, &x)| set[i + 1..].iter().all(|&y| !g.has_edge(x, y)))
    }

    #[test]
    fn trivial_graphs() {
        let k4 = PairGraph::complete(4);
        assert_eq!(independence_number(&k4, None).exact().unwrap().size(), 1);
        let e6 = PairGraph::empty(6);
        let r = independence_number(&e6, None);
        assert_eq!(r.exact().unwrap().members, vec![1, 2, 3, 4, 5, 6]);
        let none = PairGraph::empty(0);
        assert_eq!(independence_number(&none, None).exact().unwrap().size(), 0);
    }

    #[test]
    fn sixty_graph_alpha_and_witness() {
        let g = covered_pair_graph(&build_family(&ConstructionParams::new(6, 10).unwrap()));
        let r = independence_number(&g, None);
        let set = r.exact().unwrap();
        assert_eq!(set.members, vec![1, 13, 25, 37, 49]);
    }

    #[test]
    fn cycle_five_cover_exceeds_alpha() {
        let mut g = PairGraph::empty(5);
        for v in 0..5 {
            g.add_edge(v, (v + 1) % 5);
        }
        assert_eq!(independence_number(&g, None).exact().unwrap().size(), 2);
        assert_eq!(greedy_clique_cover(&g, &BitSet::full(5)).len(), 3);
    }

    #[test]
    fn budget_yields_undecided() {
        let mut g = PairGraph::empty(30);
        for v in 0..30 {
            g.add_edge(v, (v + 1) % 30);
            g.add_edge(v, (v + 7) % 30);
        }
        match independence_number(&g, Some(3)) {
            MisOutcome::Undecided { best } => assert!(is_independent(&g, &best.members)),
            MisOutcome::Exact(_) => panic!("budget of 3 nodes should not suffice"),
        }
    }

    #[test]
    fn greedy_cover_partitions_into_cliques() {
        let g = covered_pair_graph(&build_family(&ConstructionParams::new(6, 10).unwrap()));
        let cover = greedy_clique_cover(&g, &BitSet::full(60));
        assert_eq!(cover.len(), 5);
        for (m, c) in cover.iter().enumerate() {
            assert_eq!(c.iter().collect::<Vec<_>>(), (12 * m..12 * m + 12).collect::<Vec<_>>());
        }
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 0usize..13, edges in proptest::collection::vec((0usize..13, 0usize..13), 0..40)) {
            let mut g = PairGraph::empty(n);
            for (u, v) in edges {
                if u < n && v < n && u != v {
                    g.add_edge(u, v);
                }
            }
            let r = independence_number(&g, None);
            let set = r.exact().unwrap();
            prop_assert_eq!(set.size(), brute_alpha(&g));
            prop_assert!(is_independent(&g, &set.members));
            prop_assert!(greedy_clique_cover(&g, &BitSet::full(n)).len() >= set.size());
        }
    }
}
