//! The pairwise-recombination family.
//!
//! The ground set `[1, g*t]` is cut into `t` interval base blocks of size
//! `g`. Bases are paired as `(1, 2), (3, 4), ...`; every base is split into
//! its lower and upper halves, and each pair contributes the four unions
//! "one half of the left base + one half of the right base". Together with
//! the bases this gives `3t` blocks, and every subset of `t/2 + 1` elements
//! meets some block in at least two points.

use alloc::vec::Vec;

use crate::family::{Block, BlockTag, DesignFamily, ElementId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    #[error("group size {0} must be an even integer >= 2")]
    GroupSize(u32),
    #[error("group count {0} must be an even integer >= 2")]
    GroupCount(u32),
    #[error("ground set {group_size} x {group_count} is too large")]
    TooLarge { group_size: u32, group_count: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("block of size {0} cannot be split into equal halves")]
    OddBlock(usize),
    #[error("base blocks share element {0}")]
    OverlappingBases(ElementId),
    #[error("base blocks have different sizes ({left} and {right})")]
    UnequalBases { left: usize, right: usize },
}

/// Validated `(g, t)`: group size and group count, both even and `>= 2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ConstructionParams {
    group_size: u32,
    group_count: u32,
}

impl ConstructionParams {
    pub fn new(group_size: u32, group_count: u32) -> Result<Self, ParamError> {
        if group_size < 2 || !group_size.is_multiple_of(2) {
            return Err(ParamError::GroupSize(group_size));
        }
        if group_count < 2 || !group_count.is_multiple_of(2) {
            return Err(ParamError::GroupCount(group_count));
        }
        // 3t blocks must be countable too.
        if group_size.checked_mul(group_count).is_none() || group_count.checked_mul(3).is_none() {
            return Err(ParamError::TooLarge { group_size, group_count });
        }
        Ok(Self { group_size, group_count })
    }

    pub fn group_size(&self) -> u32 {
        self.group_size
    }

    pub fn group_count(&self) -> u32 {
        self.group_count
    }

    /// Ground-set size `g * t`.
    pub fn n(&self) -> u32 {
        self.group_size * self.group_count
    }

    pub fn half_size(&self) -> u32 {
        self.group_size / 2
    }

    pub fn pair_count(&self) -> u32 {
        self.group_count / 2
    }

    /// `t` bases plus four recombined blocks per pair.
    pub fn block_count(&self) -> u32 {
        3 * self.group_count
    }

    /// Smallest subset size the construction covers: `t/2 + 1`.
    pub fn guarantee_threshold(&self) -> u32 {
        self.pair_count() + 1
    }

    pub fn pair_groups(&self) -> impl Iterator<Item = PairGroup> {
        (1..=self.pair_count()).map(PairGroup::new)
    }
}

/// The `m`-th couple of base blocks, `(2m - 1, 2m)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PairGroup {
    pub index: u32,
}

impl PairGroup {
    pub fn new(index: u32) -> Self {
        debug_assert!(index >= 1);
        Self { index }
    }

    pub fn left_base(&self) -> u32 {
        2 * self.index - 1
    }

    pub fn right_base(&self) -> u32 {
        2 * self.index
    }
}

/// Base block `i` (1-based): `{g(i-1)+1, ..., g*i}`.
pub fn base_block(params: &ConstructionParams, i: u32) -> Block {
    debug_assert!((1..=params.group_count()).contains(&i));
    let g = params.group_size();
    Block::new((g * (i - 1) + 1..=g * i).collect()).expect("interval is ascending")
}

pub fn base_blocks(params: &ConstructionParams) -> Vec<Block> {
    (1..=params.group_count()).map(|i| base_block(params, i)).collect()
}

/// Lower and upper halves of an even-size canonical block.
pub fn split_halves(block: &Block) -> Result<(Block, Block), ConstructError> {
    let len = block.len();
    if !len.is_multiple_of(2) {
        return Err(ConstructError::OddBlock(len));
    }
    let (lo, hi) = block.members().split_at(len / 2);
    Ok((
        Block::new(lo.to_vec()).expect("sub-slice of a canonical block"),
        Block::new(hi.to_vec()).expect("sub-slice of a canonical block"),
    ))
}

/// The four cross unions of two disjoint, equal-size bases, in
/// `(u, v)` order `(1,1), (1,2), (2,1), (2,2)`.
pub fn recombine(left: &Block, right: &Block) -> Result<[Block; 4], ConstructError> {
    if left.len() != right.len() {
        return Err(ConstructError::UnequalBases { left: left.len(), right: right.len() });
    }
    if let Some(&e) = left.members().iter().find(|&&e| right.contains(e)) {
        return Err(ConstructError::OverlappingBases(e));
    }
    let (l1, l2) = split_halves(left)?;
    let (r1, r2) = split_halves(right)?;
    let join = |a: &Block, b: &Block| {
        let mut m: Vec<ElementId> = a.members().iter().chain(b.members()).copied().collect();
        m.sort_unstable();
        Block::new(m).expect("disjoint halves")
    };
    Ok([join(&l1, &r1), join(&l1, &r2), join(&l2, &r1), join(&l2, &r2)])
}

pub fn recombined_blocks(pair: PairGroup, params: &ConstructionParams) -> Result<[Block; 4], ConstructError> {
    recombine(&base_block(params, pair.left_base()), &base_block(params, pair.right_base()))
}

/// Bases `1..=t`, then each pair's four recombined blocks, pairs ascending.
/// Every block is tagged with its role.
pub fn build_family(params: &ConstructionParams) -> DesignFamily {
    let bases = base_blocks(params);
    let mut blocks = Vec::with_capacity(params.block_count() as usize);
    let mut tags = Vec::with_capacity(params.block_count() as usize);
    for (i, b) in bases.iter().enumerate() {
        blocks.push(b.clone());
        tags.push(Some(BlockTag::Base { index: i as u32 + 1 }));
    }
    for pair in params.pair_groups() {
        let four = recombine(&bases[pair.left_base() as usize - 1], &bases[pair.right_base() as usize - 1])
            .expect("interval bases are disjoint and even");
        for (j, b) in four.into_iter().enumerate() {
            blocks.push(b);
            tags.push(Some(BlockTag::Recombined {
                pair: pair.index,
                left_half: (j / 2) as u8 + 1,
                right_half: (j % 2) as u8 + 1,
            }));
        }
    }
    DesignFamily::with_tags(params.n(), params.group_size(), blocks, tags)
        .expect("construction respects family invariants")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn b(m: &[u32]) -> Block {
        Block::new(m.to_vec()).unwrap()
    }

    fn sixty() -> ConstructionParams {
        ConstructionParams::new(6, 10).unwrap()
    }

    #[test]
    fn derived_quantities() {
        let p = sixty();
        assert_eq!((p.n(), p.half_size(), p.pair_count()), (60, 3, 5));
        assert_eq!((p.block_count(), p.guarantee_threshold()), (30, 6));
    }

    #[test]
    fn params_reject_odd_or_small() {
        assert_eq!(ConstructionParams::new(5, 10), Err(ParamError::GroupSize(5)));
        assert_eq!(ConstructionParams::new(0, 10), Err(ParamError::GroupSize(0)));
        assert_eq!(ConstructionParams::new(6, 3), Err(ParamError::GroupCount(3)));
        assert_eq!(ConstructionParams::new(6, 0), Err(ParamError::GroupCount(0)));
        assert!(matches!(ConstructionParams::new(1 << 16, 1 << 16), Err(ParamError::TooLarge { .. })));
    }

    #[test]
    fn base_block_examples() {
        let p = sixty();
        assert_eq!(base_block(&p, 1), b(&[1, 2, 3, 4, 5, 6]));
        assert_eq!(base_block(&p, 10), b(&[55, 56, 57, 58, 59, 60]));
        let small = ConstructionParams::new(2, 4).unwrap();
        assert_eq!(base_block(&small, 3), b(&[5, 6]));
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_halves(&b(&[1, 2, 3, 4, 5, 6])).unwrap(), (b(&[1, 2, 3]), b(&[4, 5, 6])));
        assert_eq!(split_halves(&b(&[7, 8, 9, 10, 11, 12])).unwrap(), (b(&[7, 8, 9]), b(&[10, 11, 12])));
        assert_eq!(split_halves(&b(&[5, 6])).unwrap(), (b(&[5]), b(&[6])));
        assert_eq!(split_halves(&b(&[1, 2, 3])), Err(ConstructError::OddBlock(3)));
    }

    #[test]
    fn recombined_examples() {
        let p = sixty();
        let first = recombined_blocks(PairGroup::new(1), &p).unwrap();
        assert_eq!(
            first,
            [b(&[1, 2, 3, 7, 8, 9]), b(&[1, 2, 3, 10, 11, 12]), b(&[4, 5, 6, 7, 8, 9]), b(&[4, 5, 6, 10, 11, 12]),]
        );
        let last = recombined_blocks(PairGroup::new(5), &p).unwrap();
        assert_eq!(last[3], b(&[52, 53, 54, 58, 59, 60]));
        let small = ConstructionParams::new(2, 4).unwrap();
        assert_eq!(
            recombined_blocks(PairGroup::new(1), &small).unwrap(),
            [b(&[1, 3]), b(&[1, 4]), b(&[2, 3]), b(&[2, 4])]
        );
    }

    #[test]
    fn recombine_rejects_overlap() {
        assert_eq!(recombine(&b(&[1, 2]), &b(&[2, 3])), Err(ConstructError::OverlappingBases(2)));
        assert!(matches!(recombine(&b(&[1, 2]), &b(&[3, 4, 5, 6])), Err(ConstructError::UnequalBases { .. })));
    }

    #[test]
    fn sixty_family_blocks_22_and_23() {
        let f = build_family(&sixty());
        assert_eq!(f.len(), 30);
        assert_eq!(f.blocks()[21], b(&[28, 29, 30, 34, 35, 36]));
        assert_eq!(f.tags()[21], Some(BlockTag::Recombined { pair: 3, left_half: 2, right_half: 2 }));
        assert_eq!(f.blocks()[22], b(&[37, 38, 39, 43, 44, 45]));
    }

    /// Independent construction oracle: enumerate blocks straight from the
    /// index arithmetic, no splitting helpers.
    fn oracle_family(g: u32, t: u32) -> Vec<Vec<u32>> {
        let h = g / 2;
        let mut out = vec![];
        for i in 0..t {
            out.push((i * g + 1..=(i + 1) * g).collect());
        }
        for m in 0..t / 2 {
            let l = 2 * m * g;
            let r = (2 * m + 1) * g;
            for u in 0..2 {
                for v in 0..2 {
                    let mut blk: Vec<u32> = (l + u * h + 1..=l + (u + 1) * h).collect();
                    blk.extend(r + v * h + 1..=r + (v + 1) * h);
                    out.push(blk);
                }
            }
        }
        out
    }

    #[test]
    fn small_family_matches_oracle() {
        let f = build_family(&ConstructionParams::new(2, 4).unwrap());
        assert_eq!(f.n(), 8);
        assert_eq!(f.len(), 12);
        let got: Vec<Vec<u32>> = f.blocks().iter().map(|b| b.members().to_vec()).collect();
        assert_eq!(got, oracle_family(2, 4));
    }

    proptest! {
        #[test]
        fn construction_invariants(gh in 1u32..6, th in 1u32..8) {
            let (g, t) = (2 * gh, 2 * th);
            let p = ConstructionParams::new(g, t).unwrap();
            let f = build_family(&p);
            let got: Vec<Vec<u32>> = f.blocks().iter().map(|b| b.members().to_vec()).collect();
            prop_assert_eq!(&got, &oracle_family(g, t));
            prop_assert_eq!(f.len() as u32, 3 * t);
            prop_assert!(f.blocks().iter().all(|b| b.len() as u32 == g));

            // Bases partition [1, n].
            let mut seen = vec![0u32; p.n() as usize + 1];
            for b in &f.blocks()[..t as usize] {
                for &e in b.members() { seen[e as usize] += 1; }
            }
            prop_assert!(seen[1..].iter().all(|&c| c == 1));

            // Each cross pair of a pair group lies in exactly one recombined block.
            for pair in p.pair_groups() {
                let left = base_block(&p, pair.left_base());
                let right = base_block(&p, pair.right_base());
                let four = recombined_blocks(pair, &p).unwrap();
                for &x in left.members() {
                    for &y in right.members() {
                        let hits = four.iter().filter(|b| b.contains(x) && b.contains(y)).count();
                        prop_assert_eq!(hits, 1);
                    }
                }
            }

            prop_assert_eq!(build_family(&p), f);
        }
    }
}
