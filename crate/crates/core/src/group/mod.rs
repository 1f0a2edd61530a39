//! Permutation groups given by generators: orbits, order, membership, block
//! systems and set-wise stabilizers.

mod blocks;
mod chain;
pub(crate) mod union_find;

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::model::Permutation;
use chain::StabilizerChain;

pub use blocks::{fixes_blocks, preserves_blocks, BlockSystem};

/// Largest group order for which [`GroupHandle::elements`] lists elements
/// unless a different bound is passed.
pub const DEFAULT_ELEMENT_BOUND: u64 = 1_000_000;

/// A permutation group on `{0, .., n-1}` given by generators. The
/// stabilizer chain is built on first use and shared afterwards.
#[derive(Clone)]
pub struct GroupHandle {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl GroupHandle {
    /// Identity generators are dropped and duplicates removed, keeping the
    /// first occurrence.
    pub fn new(degree: usize, generators: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut gens = Vec::new();
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
            if !g.is_identity() && seen.insert(g.clone()) {
                gens.push(g);
            }
        }
        Ok(Self {
            degree,
            generators: gens,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            generators: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::build(self.degree, &self.generators))
    }

    /// Smallest generator-closed set containing `p`, sorted.
    pub fn orbit(&self, p: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[p] = true;
        let mut stack = vec![p];
        let mut out = vec![p];
        while let Some(x) = stack.pop() {
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All orbits, ordered by minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let orbit = self.orbit(p);
                for &x in &orbit {
                    seen[x] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// Order as a machine integer when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order()).ok()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    /// Every generator of `other` is a member of `self`.
    pub fn contains_group(&self, other: &GroupHandle) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn same_group(&self, other: &GroupHandle) -> bool {
        self.degree == other.degree && self.contains_group(other) && other.contains_group(self)
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    /// Fundamental orbit lengths along the base.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain().orbit_lengths().into_iter().filter(|&l| l > 1).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain().strong_generators()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        (0..gens.len()).all(|i| (i + 1..gens.len()).all(|j| gens[i].commutes_with(&gens[j])))
    }

    /// Transitive with order equal to the degree.
    pub fn is_regular_action(&self) -> bool {
        self.is_transitive() && self.order() == BigUint::from(self.degree)
    }

    /// All elements, sorted, provided the order does not exceed `bound`.
    pub fn elements(&self, bound: Option<u64>) -> Result<Vec<Permutation>> {
        let bound = bound.unwrap_or(DEFAULT_ELEMENT_BOUND);
        let order = self.order();
        if order > BigUint::from(bound) {
            return Err(Error::BoundExceeded(format!(
                "group of order {order} exceeds element bound {bound}"
            )));
        }
        let mut elements = vec![Permutation::identity(self.degree)];
        for level in self.chain().transversals().iter().rev() {
            let mut next = Vec::with_capacity(elements.len() * level.len());
            for u in level {
                for h in &elements {
                    next.push(u.compose_unchecked(h));
                }
            }
            elements = next;
        }
        elements.sort();
        Ok(elements)
    }

    fn require_transitive(&self) -> Result<()> {
        if self.is_transitive() {
            Ok(())
        } else {
            Err(Error::Precondition("group does not act transitively".into()))
        }
    }

    /// Finest invariant partition in which `p` and `q` share a block.
    pub fn minimal_block_system(&self, p: usize, q: usize) -> Result<BlockSystem> {
        self.require_transitive()?;
        Ok(blocks::minimal_block_system(self.degree, &self.generators, p, q))
    }

    /// Every invariant partition other than the discrete and the total one.
    pub fn all_block_systems(&self) -> Result<Vec<BlockSystem>> {
        self.require_transitive()?;
        Ok(blocks::all_block_systems(self.degree, &self.generators))
    }

    pub fn is_primitive(&self) -> Result<bool> {
        self.require_transitive()?;
        Ok((1..self.degree)
            .all(|b| blocks::minimal_block_system(self.degree, &self.generators, 0, b).num_blocks() == 1))
    }

    /// Block systems whose induced action on the blocks is primitive.
    pub fn maximal_block_systems(&self) -> Result<Vec<BlockSystem>> {
        let all = self.all_block_systems()?;
        let mut out = Vec::new();
        for b in &all {
            if self.quotient_action(b)?.is_primitive()? {
                out.push(b.clone());
            }
        }
        debug_assert!(out.iter().all(|b| !all.iter().any(|c| c != b && c.is_coarsening_of(b))));
        Ok(out)
    }

    /// The action on the blocks of `system`, blocks numbered in canonical order.
    pub fn quotient_action(&self, system: &BlockSystem) -> Result<GroupHandle> {
        system.check_degree(self.degree)?;
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let images = system
                    .blocks()
                    .iter()
                    .map(|block| system.block_index(g.apply(block[0])))
                    .collect();
                Permutation::from_images(images)
                    .map_err(|_| Error::Precondition("partition is not invariant under the group".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        GroupHandle::new(system.num_blocks(), gens)
    }

    /// Generators of the set-wise stabilizer `{g : g(Δ) = Δ}` of a block,
    /// obtained from Schreier generators of the action on the orbit of `Δ`
    /// and pruned by membership.
    pub fn block_stabilizer_generators(&self, block: &[usize]) -> Result<Vec<Permutation>> {
        let mut start: Vec<usize> = block.to_vec();
        start.sort_unstable();
        start.dedup();
        if start.is_empty() || start.iter().any(|&x| x >= self.degree) {
            return Err(Error::Precondition(
                "block must be a nonempty subset of the carrier".into(),
            ));
        }
        let (orbit, transversal) = self.set_orbit(&start)?;
        let index: HashMap<&Vec<usize>, usize> = orbit.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let inverses: Vec<Permutation> = transversal.iter().map(Permutation::inverse).collect();
        let mut kept: Vec<Permutation> = Vec::new();
        let mut current = GroupHandle::trivial(self.degree);
        for (i, set) in orbit.iter().enumerate() {
            for g in &self.generators {
                let image = g.image_of_set(set);
                let j = index[&image];
                let s = inverses[j].compose_unchecked(&g.compose_unchecked(&transversal[i]));
                if s.is_identity() || current.contains(&s) {
                    continue;
                }
                kept.push(s);
                current = GroupHandle::new(self.degree, kept.clone())?;
            }
        }
        Ok(kept)
    }

    /// Orbit of a point set (each image sorted) with representatives mapping
    /// the starting set onto each member. Blocks have orbits of size at most
    /// the degree; larger orbits mean the set is not a block.
    fn set_orbit(&self, start: &[usize]) -> Result<(Vec<Vec<usize>>, Vec<Permutation>)> {
        let mut orbit = vec![start.to_vec()];
        let mut transversal = vec![Permutation::identity(self.degree)];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(start.to_vec(), 0);
        let mut i = 0;
        while i < orbit.len() {
            for g in &self.generators {
                let image = g.image_of_set(&orbit[i]);
                if !index.contains_key(&image) {
                    if orbit.len() >= self.degree.max(1) {
                        return Err(Error::Precondition("set is not a block of the group".into()));
                    }
                    index.insert(image.clone(), orbit.len());
                    transversal.push(g.compose_unchecked(&transversal[i]));
                    orbit.push(image);
                }
            }
            i += 1;
        }
        Ok((orbit, transversal))
    }

    /// Number of sets in the orbit of `set`.
    pub fn set_orbit_len(&self, set: &[usize]) -> Result<usize> {
        let mut start = set.to_vec();
        start.sort_unstable();
        start.dedup();
        Ok(self.set_orbit(&start)?.0.len())
    }
}

impl std::fmt::Debug for GroupHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupHandle")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    fn shift(n: usize, k: usize) -> Permutation {
        Permutation::from_images((0..n).map(|x| (x + k) % n).collect()).unwrap()
    }

    #[test]
    fn orbit_of_fixed_point() {
        let g = GroupHandle::new(3, [p("(1 2)", 3)]).unwrap();
        assert_eq!(g.orbit(2), vec![2]);
        assert_eq!(GroupHandle::trivial(4).orbit(0), vec![0]);
        assert!(!GroupHandle::trivial(4).is_transitive());
        assert!(!GroupHandle::new(4, [p("(1 2)(3 4)", 4)]).unwrap().is_transitive());
    }

    #[test]
    fn cyclic_group_queries() {
        let g = GroupHandle::new(4, [p("(1 2 3 4)", 4)]).unwrap();
        assert_eq!(g.order(), BigUint::from(4u32));
        assert!(g.contains(&p("(1 3)(2 4)", 4)));
        assert!(g.is_abelian());
        assert!(g.is_regular_action());
        assert_eq!(g.elements(None).unwrap().len(), 4);
        assert!(matches!(g.elements(Some(3)), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn symmetric_group_of_degree_four() {
        let g = GroupHandle::new(4, [p("(1 2)", 4), p("(1 2 3 4)", 4)]).unwrap();
        assert_eq!(g.order(), BigUint::from(24u32));
        assert!(g.is_primitive().unwrap());
        assert!(!g.is_abelian());
        let whole: Vec<usize> = (0..4).collect();
        let stab = g.block_stabilizer_generators(&whole).unwrap();
        assert!(GroupHandle::new(4, stab).unwrap().same_group(&g));
    }

    #[test]
    fn cyclic_six_blocks_and_stabilizer() {
        let g = GroupHandle::new(6, [shift(6, 1)]).unwrap();
        let b = g.minimal_block_system(0, 3).unwrap();
        assert_eq!(b.blocks(), &[vec![0, 3], vec![1, 4], vec![2, 5]]);
        let all = g.all_block_systems().unwrap();
        assert_eq!(all.len(), 2);
        let stab = GroupHandle::new(6, g.block_stabilizer_generators(&[0, 3]).unwrap()).unwrap();
        assert!(stab.same_group(&GroupHandle::new(6, [shift(6, 3)]).unwrap()));
        assert_eq!(stab.order() * BigUint::from(3u32), g.order());
        let maximal = g.maximal_block_systems().unwrap();
        assert_eq!(maximal.len(), 2);
    }

    #[test]
    fn non_transitive_block_queries_fail() {
        let g = GroupHandle::trivial(4);
        assert!(matches!(g.all_block_systems(), Err(Error::Precondition(_))));
        assert!(matches!(g.is_primitive(), Err(Error::Precondition(_))));
    }
}
