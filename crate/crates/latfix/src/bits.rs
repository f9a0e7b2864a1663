//! Small dense index sets over a fixed universe, used for element subsets.

/// Bit set over indices `0..universe`. Iteration is always in ascending
/// index order, which keeps every consumer deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct BitSet {
    universe: usize,
    blocks: Vec<u64>,
}

impl BitSet {
    pub fn new(universe: usize) -> Self {
        BitSet { universe, blocks: vec![0; universe.div_ceil(64)] }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, iter: I) -> Self {
        let mut s = BitSet::new(universe);
        for i in iter {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "index {i} out of range {}", self.universe);
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.blocks[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &block)| {
            let mut b = block;
            std::iter::from_fn(move || {
                if b == 0 {
                    None
                } else {
                    let tz = b.trailing_zeros() as usize;
                    b &= b - 1;
                    Some(bi * 64 + tz)
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_iter() {
        let mut s = BitSet::new(130);
        for i in [0, 63, 64, 65, 129] {
            s.insert(i);
        }
        assert!(s.contains(64));
        assert!(!s.contains(1));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 65, 129]);
        assert_eq!(s.len(), 5);
    }

    #[test]
    fn empty_set() {
        let s = BitSet::new(0);
        assert!(s.is_empty());
        assert_eq!(s.iter().count(), 0);
    }
}
