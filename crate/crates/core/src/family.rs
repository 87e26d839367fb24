//! Blocks, design families, and query subsets.
//!
//! All element ids crossing this API are 1-based (`1..=n`). Bitset views
//! use position `e - 1`.

use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;

/// 1-based ground-set element.
pub type ElementId = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlockError {
    #[error("element 0 is not a valid 1-based id")]
    ZeroElement,
    #[error("duplicate member {0}")]
    Duplicate(ElementId),
    #[error("members not in ascending order at {0}")]
    Unsorted(ElementId),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("block size {k} must be between 1 and the ground-set size {n}")]
    Dimensions { n: u32, k: u32 },
    #[error("block {index}: {source}")]
    Block { index: usize, source: BlockError },
    #[error("block {index} has {found} members, expected {expected}")]
    BlockSize { index: usize, expected: u32, found: usize },
    #[error("block {index}: member {element} outside [1, {n}]")]
    OutOfRange { index: usize, element: ElementId, n: u32 },
    #[error("{tags} structure tags for {blocks} blocks")]
    TagCount { tags: usize, blocks: usize },
}

/// A canonically sorted set of 1-based elements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Block(Vec<ElementId>);

impl Block {
    /// Accepts only strictly ascending, nonzero members.
    pub fn new(members: Vec<ElementId>) -> Result<Self, BlockError> {
        check_ascending(&members)?;
        Ok(Self(members))
    }

    /// Sorts `members`; duplicates are still an error.
    pub fn from_unsorted(mut members: Vec<ElementId>) -> Result<Self, BlockError> {
        members.sort_unstable();
        Self::new(members)
    }

    pub fn members(&self) -> &[ElementId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    /// `|self ∩ other|` by merge.
    pub fn intersection_len(&self, other: &[ElementId]) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < self.0.len() && j < other.len() {
            match self.0[i].cmp(&other[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    /// Members as 0-based positions in a bitset of `capacity` bits.
    pub fn to_bitset(&self, capacity: usize) -> BitSet {
        BitSet::from_iter_with_capacity(capacity, self.0.iter().map(|&e| e as usize - 1))
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_members(f, &self.0)
    }
}

fn write_members(f: &mut fmt::Formatter<'_>, members: &[ElementId]) -> fmt::Result {
    for (i, e) in members.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{e}")?;
    }
    Ok(())
}

fn check_ascending(members: &[ElementId]) -> Result<(), BlockError> {
    if members.first() == Some(&0) {
        return Err(BlockError::ZeroElement);
    }
    for w in members.windows(2) {
        match w[0].cmp(&w[1]) {
            core::cmp::Ordering::Less => {}
            core::cmp::Ordering::Equal => return Err(BlockError::Duplicate(w[1])),
            core::cmp::Ordering::Greater => return Err(BlockError::Unsorted(w[1])),
        }
    }
    Ok(())
}

/// Construction role of a block.
///
/// `Base { index }` is the base block `index` (1-based). `Recombined` is
/// half `left_half` of base `2*pair - 1` joined with half `right_half` of
/// base `2*pair`; halves are 1 or 2.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BlockTag {
    Base { index: u32 },
    Recombined { pair: u32, left_half: u8, right_half: u8 },
}

impl fmt::Display for BlockTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BlockTag::Base { index } => write!(f, "base {index}"),
            BlockTag::Recombined { pair, left_half, right_half } => {
                write!(f, "recomb {pair} {left_half} {right_half}")
            }
        }
    }
}

/// An ordered list of `k`-blocks over `[1, n]`, optionally tagged with
/// construction structure (one optional tag per block).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DesignFamily {
    n: u32,
    k: u32,
    blocks: Vec<Block>,
    tags: Vec<Option<BlockTag>>,
}

impl DesignFamily {
    pub fn new(n: u32, k: u32, blocks: Vec<Block>) -> Result<Self, FamilyError> {
        let tags = alloc::vec![None; blocks.len()];
        Self::with_tags(n, k, blocks, tags)
    }

    pub fn with_tags(n: u32, k: u32, blocks: Vec<Block>, tags: Vec<Option<BlockTag>>) -> Result<Self, FamilyError> {
        if k == 0 || k > n {
            return Err(FamilyError::Dimensions { n, k });
        }
        if tags.len() != blocks.len() {
            return Err(FamilyError::TagCount { tags: tags.len(), blocks: blocks.len() });
        }
        for (index, block) in blocks.iter().enumerate() {
            // Blocks built through `Block::new` are canonical already.
            if block.len() != k as usize {
                return Err(FamilyError::BlockSize { index, expected: k, found: block.len() });
            }
            if let Some(&element) = block.members().last().filter(|&&e| e > n) {
                return Err(FamilyError::OutOfRange { index, element, n });
            }
        }
        Ok(Self { n, k, blocks, tags })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn tags(&self) -> &[Option<BlockTag>] {
        &self.tags
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// True when at least one block carries a construction tag.
    pub fn has_structure(&self) -> bool {
        self.tags.iter().any(Option::is_some)
    }

    /// The family with block `index` (0-based) removed, tags kept aligned.
    pub fn without_block(&self, index: usize) -> Self {
        let mut out = self.clone();
        out.blocks.remove(index);
        out.tags.remove(index);
        out
    }

    /// Appends a block, validated against this family's dimensions.
    pub fn with_block(&self, block: Block, tag: Option<BlockTag>) -> Result<Self, FamilyError> {
        let mut blocks = self.blocks.clone();
        let mut tags = self.tags.clone();
        blocks.push(block);
        tags.push(tag);
        Self::with_tags(self.n, self.k, blocks, tags)
    }

    /// Drops all construction tags.
    pub fn without_structure(&self) -> Self {
        let mut out = self.clone();
        out.tags.iter_mut().for_each(|t| *t = None);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QueryError {
    #[error("{0}")]
    Member(BlockError),
    #[error("element {element} outside [1, {n}]")]
    OutOfRange { element: ElementId, n: u32 },
}

/// The set `S` probed by the guarantee: distinct elements of `[1, n]`,
/// sorted ascending.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct QuerySubset(Vec<ElementId>);

impl QuerySubset {
    pub fn new(members: Vec<ElementId>, n: u32) -> Result<Self, QueryError> {
        check_ascending(&members).map_err(QueryError::Member)?;
        if let Some(&element) = members.last().filter(|&&e| e > n) {
            return Err(QueryError::OutOfRange { element, n });
        }
        Ok(Self(members))
    }

    pub fn from_unsorted(mut members: Vec<ElementId>, n: u32) -> Result<Self, QueryError> {
        members.sort_unstable();
        Self::new(members, n)
    }

    /// From 0-based positions, already strictly increasing.
    pub(crate) fn from_positions(positions: &[usize]) -> Self {
        Self(positions.iter().map(|&p| p as ElementId + 1).collect())
    }

    pub fn members(&self) -> &[ElementId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for QuerySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_members(f, &self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn block_rejects_noncanonical_members() {
        assert_eq!(Block::new(vec![1, 2, 2, 4]), Err(BlockError::Duplicate(2)));
        assert_eq!(Block::new(vec![1, 3, 2]), Err(BlockError::Unsorted(2)));
        assert_eq!(Block::new(vec![0, 3]), Err(BlockError::ZeroElement));
        assert_eq!(Block::from_unsorted(vec![3, 1, 2]).unwrap().members(), &[1, 2, 3]);
    }

    #[test]
    fn family_validates_dimensions() {
        let b = Block::new(vec![1, 2, 3]).unwrap();
        assert!(matches!(DesignFamily::new(2, 3, vec![b.clone()]), Err(FamilyError::Dimensions { .. })));
        assert!(matches!(DesignFamily::new(5, 2, vec![b.clone()]), Err(FamilyError::BlockSize { index: 0, .. })));
        let far = Block::new(vec![1, 2, 9]).unwrap();
        assert!(matches!(
            DesignFamily::new(5, 3, vec![b, far]),
            Err(FamilyError::OutOfRange { index: 1, element: 9, .. })
        ));
    }

    #[test]
    fn intersection_len_by_merge() {
        let b = Block::new(vec![1, 4, 6, 9]).unwrap();
        assert_eq!(b.intersection_len(&[2, 4, 9, 11]), 2);
        assert_eq!(b.intersection_len(&[]), 0);
    }

    #[test]
    fn query_subset_checks_range() {
        assert!(QuerySubset::new(vec![1, 61], 60).is_err());
        assert!(QuerySubset::from_unsorted(vec![7, 1, 7], 60).is_err());
        assert_eq!(QuerySubset::from_unsorted(vec![9, 1], 60).unwrap().members(), &[1, 9]);
    }

    #[test]
    fn tag_display() {
        assert_eq!(alloc::format!("{}", BlockTag::Base { index: 3 }), "base 3");
        let t = BlockTag::Recombined { pair: 2, left_half: 1, right_half: 2 };
        assert_eq!(alloc::format!("{t}"), "recomb 2 1 2");
    }
}
