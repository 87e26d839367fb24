use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{check_subset_size, Method, Outcome, VerificationReport, VerifyError};
use crate::bitset::BitSet;
use crate::certificate::{check_clique_cover, CliqueCover};
use crate::family::{BlockTag, DesignFamily, QuerySubset};
use crate::mis::{greedy_clique_cover, independence_number, MisOutcome};
use crate::pair_graph::{covered_pair_graph, PairGraph};

/// Decides the guarantee through `α(covered-pair graph) <= s - 1`.
///
/// On success a clique cover of size `<= s - 1` is attached when one can
/// be found: the pair groups declared by structure tags first, then a
/// greedy cover. Covers are only attached after passing
/// [`check_clique_cover`]. On failure the counterexample is the solver's
/// maximum independent set truncated to `s` elements.
pub fn graph_verify(family: &DesignFamily, s: u32, budget: Option<u64>) -> Result<VerificationReport, VerifyError> {
    check_subset_size(family.n(), s)?;
    let graph = covered_pair_graph(family);
    let mis = independence_number(&graph, budget);
    let nodes = mis.nodes();
    let set = match mis {
        MisOutcome::Undecided { .. } => {
            return Ok(VerificationReport::new(Method::Graph, Outcome::Undecided, s, nodes));
        }
        MisOutcome::Exact(set) => set,
    };
    let alpha = set.size() as u32;
    let mut report = if alpha >= s {
        let mut r = VerificationReport::new(Method::Graph, Outcome::Fails, s, nodes);
        let members = set.members[..s as usize].to_vec();
        r.counterexample = Some(QuerySubset::new(members, family.n()).expect("solver output is canonical"));
        r
    } else {
        let mut r = VerificationReport::new(Method::Graph, Outcome::Holds, s, nodes);
        r.certificate = find_certificate(family, &graph, s as usize - 1);
        r
    };
    report.alpha = Some(alpha);
    Ok(report)
}

fn find_certificate(family: &DesignFamily, graph: &PairGraph, max_size: usize) -> Option<CliqueCover> {
    let candidates = [structure_cover(family), Some(greedy_cover(graph))];
    candidates.into_iter().flatten().find(|c| c.size() <= max_size && check_clique_cover(family, c).is_ok())
}

fn greedy_cover(graph: &PairGraph) -> CliqueCover {
    let cliques = greedy_clique_cover(graph, &BitSet::full(graph.n()))
        .iter()
        .map(|c| c.iter().map(|v| v as u32 + 1).collect())
        .collect();
    CliqueCover { cliques }
}

/// Union of bases `2m - 1` and `2m` for every pair `m`, from the tags.
fn structure_cover(family: &DesignFamily) -> Option<CliqueCover> {
    let mut groups: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (block, tag) in family.blocks().iter().zip(family.tags()) {
        if let Some(BlockTag::Base { index }) = tag {
            groups.entry(index.div_ceil(2)).or_default().extend(block.members());
        }
    }
    if groups.is_empty() {
        return None;
    }
    let cliques = groups
        .into_values()
        .map(|mut g| {
            g.sort_unstable();
            g
        })
        .collect();
    Some(CliqueCover { cliques })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockNecessity {
    /// 0-based block index.
    pub block: usize,
    /// Outcome of [`graph_verify`] on the family without this block.
    pub outcome: Outcome,
    pub counterexample: Option<QuerySubset>,
}

impl BlockNecessity {
    pub fn necessary(&self) -> bool {
        self.outcome == Outcome::Fails
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IrredundancyReport {
    /// Outcome on the full family. Necessity is only meaningful when this
    /// is [`Outcome::Holds`].
    pub baseline: Outcome,
    pub blocks: Vec<BlockNecessity>,
}

impl IrredundancyReport {
    /// 0-based indices of blocks whose removal breaks the guarantee.
    pub fn necessary(&self) -> Vec<usize> {
        self.blocks.iter().filter(|b| b.necessary()).map(|b| b.block).collect()
    }

    pub fn is_irredundant(&self) -> bool {
        self.baseline == Outcome::Holds && self.blocks.iter().all(BlockNecessity::necessary)
    }
}

/// Re-runs [`graph_verify`] once per block with that block deleted.
pub fn irredundancy_check(
    family: &DesignFamily,
    s: u32,
    budget: Option<u64>,
) -> Result<IrredundancyReport, VerifyError> {
    let baseline = graph_verify(family, s, budget)?.outcome;
    let blocks = (0..family.len())
        .map(|i| {
            let r = graph_verify(&family.without_block(i), s, budget)?;
            Ok(BlockNecessity { block: i, outcome: r.outcome, counterexample: r.counterexample })
        })
        .collect::<Result<_, VerifyError>>()?;
    Ok(IrredundancyReport { baseline, blocks })
}
