//! Equivalence relations on element ids, stored as normalized block lists.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::table::ElementId;

/// An equivalence relation on `0..order`.
///
/// Blocks are sorted internally and ordered by their least element, so two
/// partitions describing the same relation compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: Vec<Vec<ElementId>>,
}

impl Partition {
    /// Builds a partition from arbitrary per-element labels; elements with
    /// equal labels share a block.
    pub fn from_labels<L: Eq + std::hash::Hash>(labels: &[L]) -> Self {
        let mut index: HashMap<&L, usize> = HashMap::new();
        let mut blocks: Vec<Vec<ElementId>> = Vec::new();
        let mut block_of = Vec::with_capacity(labels.len());
        // Elements are scanned in increasing order, so blocks come out
        // ordered by least element and internally sorted.
        for (x, label) in labels.iter().enumerate() {
            let next = blocks.len();
            let b = *index.entry(label).or_insert(next);
            if b == next {
                blocks.push(Vec::new());
            }
            blocks[b].push(x);
            block_of.push(b);
        }
        Partition { block_of, blocks }
    }

    pub fn from_blocks(order: usize, blocks: &[Vec<ElementId>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; order];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in block {
                if x >= order {
                    return Err(Error::OutOfRange { element: x, order });
                }
                if labels[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} appears in two blocks"
                    )));
                }
                labels[x] = b;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "element {x} is not covered"
            )));
        }
        Ok(Self::from_labels(&labels))
    }

    /// The equality relation.
    pub fn diagonal(order: usize) -> Self {
        Partition {
            block_of: (0..order).collect(),
            blocks: (0..order).map(|x| vec![x]).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[Vec<ElementId>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, x: ElementId) -> usize {
        self.block_of[x]
    }

    pub fn block_containing(&self, x: ElementId) -> &[ElementId] {
        &self.blocks[self.block_of[x]]
    }

    pub fn related(&self, a: ElementId, b: ElementId) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    /// Block sizes in block order.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.order() == coarser.order()
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&x| coarser.related(x, b[0])))
    }

    /// Image of the partition under a relabeling `x -> sigma[x]`.
    pub fn relabel(&self, sigma: &[ElementId]) -> Self {
        let mut labels = vec![0; self.order()];
        for x in 0..self.order() {
            labels[sigma[x]] = self.block_of[x];
        }
        Self::from_labels(&labels)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str("{")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_normalize_by_least_element() {
        let p = Partition::from_labels(&['b', 'a', 'b', 'c', 'a']);
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1, 4], vec![3]]);
        assert_eq!(p.block_of(4), 1);
        assert_eq!(p.to_string(), "{0,2} {1,4} {3}");
    }

    #[test]
    fn from_blocks_rejects_bad_input() {
        assert!(Partition::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_blocks(2, &[vec![0], vec![]]).is_err());
        assert!(Partition::from_blocks(2, &[vec![0, 5]]).is_err());
        let p = Partition::from_blocks(3, &[vec![2, 1], vec![0]]).unwrap();
        assert_eq!(p.blocks(), &[vec![0], vec![1, 2]]);
    }

    #[test]
    fn diagonal_refines_everything() {
        let d = Partition::diagonal(4);
        let coarse = Partition::from_blocks(4, &[vec![0, 1, 2, 3]]).unwrap();
        assert!(d.refines(&coarse));
        assert!(!coarse.refines(&d));
    }
}
