//! Checkers for the artifacts verification produces. Each one works from
//! the family's blocks directly and shares no code with the solvers whose
//! output it checks.

use alloc::vec;
use alloc::vec::Vec;

use crate::family::{DesignFamily, ElementId, QuerySubset};

/// A partition of `[1, n]` into cliques of the covered-pair graph.
/// `c` cliques prove that no `c + 1` elements are pairwise uncovered.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliqueCover {
    /// Each clique 1-based and ascending.
    pub cliques: Vec<Vec<ElementId>>,
}

impl CliqueCover {
    pub fn size(&self) -> usize {
        self.cliques.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("element {0} lies in no clique")]
    Uncovered(ElementId),
    #[error("element {0} lies in more than one clique")]
    Repeated(ElementId),
    #[error("element {0} outside the ground set")]
    OutOfRange(ElementId),
    #[error("pair {{{0}, {1}}} in a clique is not covered by any block")]
    NotAClique(ElementId, ElementId),
}

/// True iff `subset` meets every block in at most one point.
pub fn is_counterexample(family: &DesignFamily, subset: &QuerySubset) -> bool {
    family.blocks().iter().all(|b| b.intersection_len(subset.members()) <= 1)
}

/// True iff the named block meets `subset` in at least two points.
pub fn is_witness(family: &DesignFamily, subset: &QuerySubset, block_index: usize) -> bool {
    family.blocks().get(block_index).is_some_and(|b| b.intersection_len(subset.members()) >= 2)
}

/// Validates `cover` against `family`: the cliques partition `[1, n]` and
/// every pair inside a clique lies in some block.
pub fn check_clique_cover(family: &DesignFamily, cover: &CliqueCover) -> Result<(), CertificateError> {
    let n = family.n();
    let mut owner = vec![false; n as usize + 1];
    for clique in &cover.cliques {
        for &e in clique {
            if e == 0 || e > n {
                return Err(CertificateError::OutOfRange(e));
            }
            if owner[e as usize] {
                return Err(CertificateError::Repeated(e));
            }
            owner[e as usize] = true;
        }
    }
    if let Some(e) = (1..=n).find(|&e| !owner[e as usize]) {
        return Err(CertificateError::Uncovered(e));
    }

    // Blocks containing each element.
    let mut blocks_of: Vec<Vec<usize>> = vec![Vec::new(); n as usize + 1];
    for (i, b) in family.blocks().iter().enumerate() {
        for &e in b.members() {
            blocks_of[e as usize].push(i);
        }
    }
    for clique in &cover.cliques {
        for (i, &x) in clique.iter().enumerate() {
            for &y in &clique[i + 1..] {
                let shared = blocks_of[x as usize].iter().any(|&bi| family.blocks()[bi].contains(y));
                if !shared {
                    return Err(CertificateError::NotAClique(x.min(y), x.max(y)));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_family, ConstructionParams};

    fn sixty() -> DesignFamily {
        build_family(&ConstructionParams::new(6, 10).unwrap())
    }

    fn groups() -> CliqueCover {
        CliqueCover { cliques: (0..5).map(|m| (12 * m + 1..=12 * m + 12).collect()).collect() }
    }

    #[test]
    fn pair_groups_certify_sixty_family() {
        assert_eq!(check_clique_cover(&sixty(), &groups()), Ok(()));
    }

    #[test]
    fn bad_covers_are_rejected() {
        let f = sixty();
        let mut c = groups();
        c.cliques[0].pop();
        assert_eq!(check_clique_cover(&f, &c), Err(CertificateError::Uncovered(12)));

        let mut c = groups();
        c.cliques[1].push(1);
        assert_eq!(check_clique_cover(&f, &c), Err(CertificateError::Repeated(1)));

        let mut c = groups();
        let moved = c.cliques[1].remove(0);
        c.cliques[0].push(moved);
        assert_eq!(check_clique_cover(&f, &c), Err(CertificateError::NotAClique(1, 13)));

        let mut c = groups();
        c.cliques.push(vec![61]);
        assert_eq!(check_clique_cover(&f, &c), Err(CertificateError::OutOfRange(61)));
    }

    #[test]
    fn counterexample_and_witness_checks() {
        let f = sixty();
        let spread = QuerySubset::new(vec![1, 13, 25, 37, 49], 60).unwrap();
        assert!(is_counterexample(&f, &spread));
        let close = QuerySubset::new(vec![1, 7, 13, 25, 37, 49], 60).unwrap();
        assert!(!is_counterexample(&f, &close));
        assert!(is_witness(&f, &close, 10));
        assert!(!is_witness(&f, &close, 0));
        assert!(!is_witness(&f, &close, 99));
    }
}
