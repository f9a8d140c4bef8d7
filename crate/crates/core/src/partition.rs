//! Set partitions of `{1, …, n}` and orbit partitions of permutation sets.
//!
//! The canonical form — blocks internally sorted and ordered by minimal
//! element — makes equality and hashing structural.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition {
    blocks: Vec<Vec<u8>>,
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<u8>>::deserialize(deserializer)?;
        Partition::from_blocks(blocks).map_err(D::Error::custom)
    }
}

impl Partition {
    /// Canonicalizes and validates arbitrary blocks: they must be disjoint,
    /// non-empty, and cover `{1,…,n}` for `n` = total element count.
    pub fn from_blocks(mut blocks: Vec<Vec<u8>>) -> Result<Self> {
        let n: usize = blocks.iter().map(|b| b.len()).sum();
        let mut seen = vec![false; n];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidInput("empty block".into()));
            }
            block.sort_unstable();
            for &i in block.iter() {
                if i == 0 || i as usize > n || seen[i as usize - 1] {
                    return Err(Error::InvalidInput(format!(
                        "blocks do not partition {{1,…,{n}}}"
                    )));
                }
                seen[i as usize - 1] = true;
            }
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { blocks })
    }

    /// The finest partition `{{1}, …, {n}}`.
    pub fn finest(n: usize) -> Self {
        Self {
            blocks: (1..=n as u8).map(|i| vec![i]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `i` (1-based element).
    pub fn block_of(&self, i: u8) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&i))
            .expect("element within 1..=n")
    }

    /// True iff every block of `self` is contained in some block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> Result<bool> {
        if self.n() != coarser.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: coarser.n(),
            });
        }
        Ok(self.blocks.iter().all(|b| {
            let target = coarser.block_of(b[0]);
            b.iter().all(|&i| coarser.block_of(i) == target)
        }))
    }

    /// Least upper bound in the partition lattice: the finest partition
    /// coarser than both operands.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        let n = self.n();
        if n != other.n() {
            return Err(Error::DimensionMismatch {
                left: n,
                right: other.n(),
            });
        }
        let mut uf = UnionFind::new(n);
        for part in [self, other] {
            for block in &part.blocks {
                for &i in &block[1..] {
                    uf.union(block[0] as usize - 1, i as usize - 1);
                }
            }
        }
        Ok(uf.into_partition())
    }
}

/// Orbit partition of `{1,…,n}` under the group generated by `generators`.
/// No generators yields the finest partition.
pub fn orbit_partition(n: usize, generators: &[Permutation]) -> Result<Partition> {
    let mut uf = UnionFind::new(n);
    for g in generators {
        if g.n() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: g.n(),
            });
        }
        for i in 1..=n as u8 {
            uf.union(i as usize - 1, g.apply(i) as usize - 1);
        }
    }
    Ok(uf.into_partition())
}

/// Union-find with path compression over 0-based indices.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges keeping the smaller root, so roots are block minima.
    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let mut blocks: Vec<Vec<u8>> = Vec::new();
        let mut block_of_root = vec![usize::MAX; n];
        for i in 0..n {
            let r = self.find(i);
            if block_of_root[r] == usize::MAX {
                block_of_root[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[block_of_root[r]].push(i as u8 + 1);
        }
        // roots are minima, so iteration order already gives canonical form
        Partition { blocks }
    }
}
