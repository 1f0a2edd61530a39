//! Primitive level: chain search over epimorphic images and the
//! group-theoretic criteria for its finiteness.

use std::collections::HashMap;
use std::sync::Mutex;

use super::{all_block_dis_in_fixer, dis_in_fixer, require_indecomposable, require_regular};
use crate::congruence::{all_congruences, epimorphic_images, quotient, Congruence};
use crate::enumerate::canonical_form;
use crate::error::{Error, Result};
use crate::model::QCycleSet;

/// Largest order keyed by canonical form in [`LevelCache`]; larger
/// structures are keyed by their tables.
const CANONICAL_KEY_BOUND: usize = 8;

/// Memo of primitive levels shared across calls and threads.
#[derive(Debug, Default)]
pub struct LevelCache {
    map: Mutex<HashMap<QCycleSet, Option<usize>>>,
}

impl LevelCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn key(x: &QCycleSet) -> QCycleSet {
        if x.n() <= CANONICAL_KEY_BOUND {
            canonical_form(x)
        } else {
            x.clone()
        }
    }

    fn get(&self, key: &QCycleSet) -> Option<Option<usize>> {
        self.map.lock().expect("level cache lock").get(key).copied()
    }

    fn insert(&self, key: QCycleSet, value: Option<usize>) -> Option<usize> {
        *self.map.lock().expect("level cache lock").entry(key).or_insert(value)
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("level cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn require_level_input(x: &QCycleSet) -> Result<()> {
    require_regular(x)?;
    if x.n() < 2 {
        return Err(Error::Precondition(
            "primitive level needs at least two elements".into(),
        ));
    }
    require_indecomposable(x)?;
    Ok(())
}

/// Greatest `k` admitting a chain `X = X_1 ↠ .. ↠ X_k` of strictly
/// decreasing orders `> 1` ending at a primitive q-cycle set; `None` when no
/// chain ends primitive.
pub fn primitive_level(x: &QCycleSet) -> Result<Option<usize>> {
    primitive_level_with_cache(x, &LevelCache::new())
}

pub fn primitive_level_with_cache(x: &QCycleSet, cache: &LevelCache) -> Result<Option<usize>> {
    require_level_input(x)?;
    level_of(x, cache)
}

fn level_of(x: &QCycleSet, cache: &LevelCache) -> Result<Option<usize>> {
    let key = LevelCache::key(x);
    if let Some(v) = cache.get(&key) {
        return Ok(v);
    }
    let group = super::permutation_group(x)?;
    let value = if group.is_primitive()? {
        Some(1)
    } else {
        let mut best: Option<usize> = None;
        for (image, _) in epimorphic_images(x)? {
            if let Some(k) = level_of(&image, cache)? {
                best = Some(best.map_or(k, |b| b.max(k)));
            }
        }
        best.map(|k| k + 1)
    };
    Ok(cache.insert(key, value))
}

/// A chain realising the primitive level, as the kernels of
/// `X → X_1, .., X → X_k` (the first is equality).
pub fn primitive_level_chain(x: &QCycleSet) -> Result<Option<Vec<Congruence>>> {
    let cache = LevelCache::new();
    require_level_input(x)?;
    let Some(mut level) = level_of(x, &cache)? else {
        return Ok(None);
    };
    let mut current = x.clone();
    let mut projection: Vec<usize> = (0..x.n()).collect();
    let mut chain = vec![Congruence::equality(x.n())];
    while level > 1 {
        let mut next = None;
        for theta in all_congruences(&current) {
            if theta.is_trivial() {
                continue;
            }
            let (image, proj) = quotient(&current, &theta)?;
            if level_of(&image, &cache)? == Some(level - 1) {
                next = Some((image, proj));
                break;
            }
        }
        let (image, proj) = next.ok_or_else(|| Error::Internal("primitive level chain could not be rebuilt".into()))?;
        projection = projection.iter().map(|&p| proj[p]).collect();
        chain.push(Congruence::from_labels(&projection));
        current = image;
        level -= 1;
    }
    Ok(Some(chain))
}

/// Finite primitive level iff `G(X)` is primitive or some maximal block
/// system `B` has `Dis(X, Δ) ≤ Fix(B)` for every block `Δ`.
pub fn has_finite_primitive_level(x: &QCycleSet) -> Result<bool> {
    let group = require_indecomposable(x)?;
    if group.is_primitive()? {
        return Ok(true);
    }
    for system in group.maximal_block_systems()? {
        if all_block_dis_in_fixer(x, &system)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Number of prime factors of `n` counted with multiplicity.
pub(crate) fn big_omega(mut n: usize) -> usize {
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            n /= d;
            count += 1;
        }
        d += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && big_omega(n) == 1
}

/// `Ω(|X|)` for indecomposable `X` with abelian `G(X)`.
pub fn primitive_level_abelian(x: &QCycleSet) -> Result<usize> {
    let group = require_indecomposable(x)?;
    if !group.is_abelian() {
        return Err(Error::Precondition("permutation group is not abelian".into()));
    }
    if x.n() < 2 {
        return Err(Error::Precondition(
            "primitive level needs at least two elements".into(),
        ));
    }
    Ok(big_omega(x.n()))
}

fn require_cycle_set(x: &QCycleSet) -> Result<()> {
    if x.is_cycle_set() {
        Ok(())
    } else {
        Err(Error::Precondition("operations do not coincide".into()))
    }
}

/// Block systems with a prime number of blocks and `Dis(X) ≤ Fix`.
fn prime_fixer_systems(x: &QCycleSet) -> Result<Vec<crate::group::BlockSystem>> {
    let group = require_indecomposable(x)?;
    let mut out = Vec::new();
    for system in group.all_block_systems()? {
        if is_prime(system.num_blocks()) && dis_in_fixer(x, &system)? {
            out.push(system);
        }
    }
    Ok(out)
}

/// Cycle-set criterion: primitive, or some block system with a prime
/// number of blocks has `Dis(X) ≤ Fix`.
pub fn cycle_set_finite_level(x: &QCycleSet) -> Result<bool> {
    require_cycle_set(x)?;
    let group = require_indecomposable(x)?;
    if group.is_primitive()? {
        return Ok(true);
    }
    Ok(!prime_fixer_systems(x)?.is_empty())
}

/// Level-two criterion for cycle sets of non-prime order: a prime-count
/// system with `Dis(X) ≤ Fix` exists, and every strictly finer nontrivial
/// system `B′` of such a system has a block `Δ′` with `Dis(X, Δ′) ⊄ Fix(B′)`.
pub fn primitive_level_two_check(x: &QCycleSet) -> Result<bool> {
    require_cycle_set(x)?;
    if is_prime(x.n()) || x.n() < 2 {
        return Err(Error::Precondition("order must not be prime".into()));
    }
    let group = require_indecomposable(x)?;
    let candidates = prime_fixer_systems(x)?;
    if candidates.is_empty() {
        return Ok(false);
    }
    let all = group.all_block_systems()?;
    for coarse in &candidates {
        for fine in all.iter().filter(|f| *f != coarse && coarse.is_coarsening_of(f)) {
            if all_block_dis_in_fixer(x, fine)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
