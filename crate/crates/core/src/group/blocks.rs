//! Block systems of permutation groups.

use std::collections::BTreeSet;
use std::fmt;

use super::union_find::UnionFind;
use crate::error::{Error, Result};
use crate::model::Permutation;

/// A partition of `{0, .., n-1}` into blocks of equal size, stored with each
/// block sorted and blocks ordered by minimum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSystem {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockSystem {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let system = Self::from_partition(blocks)?;
        let size = system.blocks[0].len();
        if system.blocks.iter().any(|b| b.len() != size) {
            return Err(Error::Malformed("blocks must have equal size".into()));
        }
        Ok(system)
    }

    pub(crate) fn from_partition(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        if n == 0 {
            return Err(Error::Malformed("empty partition".into()));
        }
        let mut block_of = vec![usize::MAX; n];
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(Error::Malformed("empty block".into()));
            }
            b.sort_unstable();
        }
        blocks.sort();
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= n || block_of[x] != usize::MAX {
                    return Err(Error::Malformed(format!("blocks do not partition 1..={n}")));
                }
                block_of[x] = i;
            }
        }
        Ok(Self { blocks, block_of })
    }

    pub fn degree(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    /// Index of the block containing `x`.
    pub fn block_index(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn block_of(&self, x: usize) -> &[usize] {
        &self.blocks[self.block_of[x]]
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1 || self.blocks.len() == self.degree()
    }

    /// Every block of `finer` lies inside a block of `self`.
    pub fn is_coarsening_of(&self, finer: &BlockSystem) -> bool {
        self.degree() == finer.degree()
            && finer
                .blocks
                .iter()
                .all(|b| b.iter().all(|&x| self.block_of[x] == self.block_of[b[0]]))
    }

    /// Smallest partition coarser than both.
    pub fn join(&self, other: &BlockSystem) -> BlockSystem {
        let mut uf = UnionFind::new(self.degree());
        for b in self.blocks.iter().chain(&other.blocks) {
            for &x in &b[1..] {
                uf.union(b[0], x);
            }
        }
        BlockSystem::from_partition(uf.partition()).expect("union-find yields a partition")
    }

    pub(crate) fn check_degree(&self, n: usize) -> Result<()> {
        if self.degree() == n {
            Ok(())
        } else {
            Err(Error::DegreeMismatch {
                left: n,
                right: self.degree(),
            })
        }
    }

    /// 1-based blocks, e.g. `{{1,4},{2,3}}`.
    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.iter().map(|x| x + 1).collect()).collect()
    }
}

impl fmt::Debug for BlockSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BlockSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self
            .to_one_based()
            .iter()
            .map(|b| {
                let pts: Vec<String> = b.iter().map(usize::to_string).collect();
                format!("{{{}}}", pts.join(","))
            })
            .collect();
        write!(f, "{{{}}}", inner.join(","))
    }
}

/// `g` maps every block onto some block.
pub fn preserves_blocks(g: &Permutation, system: &BlockSystem) -> bool {
    g.degree() == system.degree()
        && system.blocks.iter().all(|b| {
            let target = system.block_of[g.apply(b[0])];
            b.iter().all(|&x| system.block_of[g.apply(x)] == target)
        })
}

/// `g` maps every block onto itself, i.e. lies in the fixer of the system.
pub fn fixes_blocks(g: &Permutation, system: &BlockSystem) -> bool {
    g.degree() == system.degree() && (0..system.degree()).all(|x| system.block_of[g.apply(x)] == system.block_of[x])
}

pub(crate) fn minimal_block_system(n: usize, generators: &[Permutation], p: usize, q: usize) -> BlockSystem {
    let mut uf = UnionFind::new(n);
    let mut queue = Vec::new();
    if let Some(pair) = uf.union(p, q) {
        queue.push(pair);
    }
    while let Some((a, b)) = queue.pop() {
        for g in generators {
            if let Some(pair) = uf.union(g.apply(a), g.apply(b)) {
                queue.push(pair);
            }
        }
    }
    BlockSystem::from_partition(uf.partition()).expect("union-find yields a partition")
}

pub(crate) fn all_block_systems(n: usize, generators: &[Permutation]) -> Vec<BlockSystem> {
    let mut found: BTreeSet<BlockSystem> = (1..n)
        .map(|b| minimal_block_system(n, generators, 0, b))
        .filter(|s| !s.is_trivial())
        .collect();
    loop {
        let current: Vec<BlockSystem> = found.iter().cloned().collect();
        let mut added = false;
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let join = current[i].join(&current[j]);
                if !join.is_trivial() && found.insert(join) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut out: Vec<BlockSystem> = found.into_iter().collect();
    out.sort_by(|a, b| a.block_size().cmp(&b.block_size()).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_storage() {
        let b = BlockSystem::new(vec![vec![3, 2], vec![4, 1], vec![0, 5]]).unwrap();
        assert_eq!(b.blocks(), &[vec![0, 5], vec![1, 4], vec![2, 3]]);
        assert_eq!(b.to_string(), "{{1,6},{2,5},{3,4}}");
        assert!(BlockSystem::new(vec![vec![0, 1], vec![2]]).is_err());
        assert!(BlockSystem::new(vec![vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn shift_fixes_cosets() {
        let shift2 = Permutation::from_images((0..6).map(|x| (x + 2) % 6).collect()).unwrap();
        let cosets = BlockSystem::new(vec![vec![0, 2, 4], vec![1, 3, 5]]).unwrap();
        assert!(fixes_blocks(&shift2, &cosets));
        assert!(preserves_blocks(&shift2, &cosets));
        let id = Permutation::identity(6);
        assert!(fixes_blocks(&id, &cosets) && preserves_blocks(&id, &cosets));
        let swap = Permutation::parse_cycles("(1 2)", 6).unwrap();
        assert!(!preserves_blocks(&swap, &cosets));
    }
}
