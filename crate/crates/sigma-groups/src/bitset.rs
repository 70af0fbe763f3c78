//! Dense bit-vectors over element or node indices.
//!
//! Every subgroup, product set, and lattice relation in this crate is one of
//! these. Sets are totally ordered by (popcount, block pattern), which is the
//! canonical order used for deterministic tie-breaking everywhere.

use std::fmt;

const BLOCK_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    blocks: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            blocks: vec![0; len.div_ceil(BLOCK_BITS)],
        }
    }

    pub fn singleton(len: usize, idx: usize) -> Self {
        let mut s = Self::new(len);
        s.insert(idx);
        s
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for b in &mut s.blocks {
            *b = !0;
        }
        s.trim();
        s
    }

    /// Domain size (number of indexable bits), not the popcount.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn insert(&mut self, idx: usize) {
        debug_assert!(idx < self.len);
        self.blocks[idx / BLOCK_BITS] |= 1 << (idx % BLOCK_BITS);
    }

    pub fn remove(&mut self, idx: usize) {
        debug_assert!(idx < self.len);
        self.blocks[idx / BLOCK_BITS] &= !(1 << (idx % BLOCK_BITS));
    }

    pub fn contains(&self, idx: usize) -> bool {
        debug_assert!(idx < self.len);
        self.blocks[idx / BLOCK_BITS] >> (idx % BLOCK_BITS) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut r = self.clone();
        r.intersect_with(other);
        r
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &block)| {
            let base = bi * BLOCK_BITS;
            BlockOnes { block }.map(move |off| base + off)
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Canonical sort key: popcount first, then the raw block pattern.
    pub fn canon_key(&self) -> (usize, &[u64]) {
        (self.count(), &self.blocks)
    }

    fn trim(&mut self) {
        let tail = self.len % BLOCK_BITS;
        if tail != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
}

struct BlockOnes {
    block: u64,
}

impl Iterator for BlockOnes {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.block == 0 {
            return None;
        }
        let off = self.block.trailing_zeros() as usize;
        self.block &= self.block - 1;
        Some(off)
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canon_key().cmp(&other.canon_key())
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_count() {
        let mut s = BitSet::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert!(s.contains(0) && s.contains(64) && s.contains(129));
        assert!(!s.contains(1));
        assert_eq!(s.count(), 3);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        s.remove(64);
        assert_eq!(s.count(), 2);
    }

    #[test]
    fn subset_and_ops() {
        let mut a = BitSet::new(10);
        let mut b = BitSet::new(10);
        for i in [1, 3, 5] {
            a.insert(i);
        }
        for i in [1, 3, 5, 7] {
            b.insert(i);
        }
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert_eq!(a.intersection(&b), a);
        assert_eq!(a.union(&b), b);
        assert_eq!(a.intersection_count(&b), 3);
    }

    #[test]
    fn full_trims_tail_bits() {
        let s = BitSet::full(70);
        assert_eq!(s.count(), 70);
        assert_eq!(s.iter().max(), Some(69));
    }

    #[test]
    fn canonical_order_is_popcount_then_pattern() {
        let small = BitSet::singleton(8, 7);
        let mut big = BitSet::new(8);
        big.insert(0);
        big.insert(1);
        assert!(small < big);
    }
}
