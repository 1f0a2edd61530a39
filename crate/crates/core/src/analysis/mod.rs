//! Invariants of regular q-cycle sets and solutions: permutation and
//! displacement groups, decomposability, retraction, simplicity and the
//! primitive level.

mod checks;
mod level;
mod report;

use std::collections::HashMap;

use crate::congruence::{principal_congruence, quotient, Congruence};
use crate::error::{Error, Result};
use crate::group::{fixes_blocks, BlockSystem, GroupHandle};
use crate::model::{Permutation, QCycleSet, Solution};

pub use checks::{fixed_point_tests, structure_checks, FixedPointReport, Implication, StructureReport};
pub use level::{
    cycle_set_finite_level, has_finite_primitive_level, primitive_level, primitive_level_abelian,
    primitive_level_chain, primitive_level_two_check, primitive_level_with_cache, LevelCache,
};
pub use report::{analyze, AnalysisReport, Mpl, PrimitiveLevel, REPORT_SCHEMA};

pub(crate) fn require_regular(x: &QCycleSet) -> Result<()> {
    if x.is_regular() {
        Ok(())
    } else {
        Err(Error::Precondition("q-cycle set is not regular".into()))
    }
}

/// `G(X) = ⟨σ_x, δ_x : x ∈ X⟩`.
pub fn permutation_group(x: &QCycleSet) -> Result<GroupHandle> {
    require_regular(x)?;
    let deltas = x.deltas()?;
    GroupHandle::new(x.n(), x.sigmas().into_iter().chain(deltas))
}

/// `G(X,r) = ⟨λ_x, η_x⟩` and `F(X,r) = ⟨λ_x, ρ_x⟩`.
pub fn solution_groups(s: &Solution) -> Result<(GroupHandle, GroupHandle)> {
    let n = s.n();
    let lambda = (0..n)
        .map(|x| {
            s.lambda(x)
                .ok_or_else(|| Error::Precondition("solution is degenerate".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let rho = (0..n)
        .map(|x| {
            s.rho(x)
                .ok_or_else(|| Error::Precondition("solution is degenerate".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let eta = s.eta_maps()?;
    let g = GroupHandle::new(n, lambda.iter().cloned().chain(eta))?;
    let f = GroupHandle::new(n, lambda.into_iter().chain(rho))?;
    Ok((g, f))
}

pub fn is_indecomposable(x: &QCycleSet) -> Result<bool> {
    Ok(permutation_group(x)?.is_transitive())
}

pub(crate) fn require_indecomposable(x: &QCycleSet) -> Result<GroupHandle> {
    let g = permutation_group(x)?;
    if g.is_transitive() {
        Ok(g)
    } else {
        Err(Error::Precondition("q-cycle set is decomposable".into()))
    }
}

/// The retract relation `x ∼ y ⇔ σ_x = σ_y and δ_x = δ_y`.
pub fn retract_relation(x: &QCycleSet) -> Result<Congruence> {
    require_regular(x)?;
    let mut ids: HashMap<(&[usize], &[usize]), usize> = HashMap::new();
    let labels: Vec<usize> = (0..x.n())
        .map(|p| {
            let next = ids.len();
            *ids.entry((x.dot_row(p), x.colon_row(p))).or_insert(next)
        })
        .collect();
    Ok(Congruence::from_labels(&labels))
}

/// `Ret(X)` and the projection onto it.
pub fn retract(x: &QCycleSet) -> Result<(QCycleSet, Vec<usize>)> {
    let theta = retract_relation(x)?;
    quotient(x, &theta).map_err(|e| match e {
        Error::Precondition(_) => Error::Internal("retract relation is not a congruence".into()),
        other => other,
    })
}

pub fn is_retractable(x: &QCycleSet) -> Result<bool> {
    Ok(x.n() == 1 || !retract_relation(x)?.is_equality())
}

/// Sizes of `X, Ret(X), Ret²(X), ..` until the size stops decreasing.
pub fn retraction_sizes(x: &QCycleSet) -> Result<Vec<usize>> {
    Ok(retraction_series(x)?.iter().map(QCycleSet::n).collect())
}

/// `X, Ret(X), Ret²(X), ..` until the size stops decreasing.
pub fn retraction_series(x: &QCycleSet) -> Result<Vec<QCycleSet>> {
    let mut out = vec![x.clone()];
    loop {
        let current = out.last().expect("series is nonempty");
        if current.n() == 1 {
            return Ok(out);
        }
        let (next, _) = retract(current)?;
        if next.n() == current.n() {
            return Ok(out);
        }
        out.push(next);
    }
}

/// Least `k` with `|Ret^k(X)| = 1`, or `None` if the retraction stalls.
pub fn multipermutation_level(x: &QCycleSet) -> Result<Option<usize>> {
    let series = retraction_series(x)?;
    let last = series.last().expect("series is nonempty");
    Ok((last.n() == 1).then(|| series.len() - 1))
}

/// Generators of the displacement group, optionally restricted to pairs in
/// a block `Δ`. Identity elements are omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplacementGenerators {
    /// `σ_x σ_y⁻¹`, `δ_x δ_y⁻¹`.
    pub positive: Vec<Permutation>,
    /// `σ_x⁻¹ σ_y`, `δ_x⁻¹ δ_y`.
    pub negative: Vec<Permutation>,
    pub block: Option<Vec<usize>>,
}

pub fn displacement_generators(x: &QCycleSet, block: Option<&[usize]>) -> Result<DisplacementGenerators> {
    require_regular(x)?;
    let points: Vec<usize> = match block {
        Some(b) => {
            if b.iter().any(|&p| p >= x.n()) {
                return Err(Error::Precondition("block is not a subset of the carrier".into()));
            }
            let mut b = b.to_vec();
            b.sort_unstable();
            b.dedup();
            b
        }
        None => (0..x.n()).collect(),
    };
    let sigma = x.sigmas();
    let delta = x.deltas()?;
    let sigma_inv: Vec<Permutation> = sigma.iter().map(Permutation::inverse).collect();
    let delta_inv: Vec<Permutation> = delta.iter().map(Permutation::inverse).collect();
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for &a in &points {
        for &b in &points {
            if a == b {
                continue;
            }
            positive.push(sigma[a].compose_unchecked(&sigma_inv[b]));
            positive.push(delta[a].compose_unchecked(&delta_inv[b]));
            negative.push(sigma_inv[a].compose_unchecked(&sigma[b]));
            negative.push(delta_inv[a].compose_unchecked(&delta[b]));
        }
    }
    let tidy = |v: &mut Vec<Permutation>| {
        v.retain(|g| !g.is_identity());
        v.sort();
        v.dedup();
    };
    tidy(&mut positive);
    tidy(&mut negative);
    Ok(DisplacementGenerators {
        positive,
        negative,
        block: block.map(|_| points),
    })
}

/// `Dis(X)` generated by the negative generators.
pub fn displacement_group(x: &QCycleSet) -> Result<GroupHandle> {
    GroupHandle::new(x.n(), displacement_generators(x, None)?.negative)
}

/// Every positive generator lies in `⟨negative⟩` and vice versa.
pub fn check_dis_equality(x: &QCycleSet) -> Result<bool> {
    let d = displacement_generators(x, None)?;
    let pos = GroupHandle::new(x.n(), d.positive)?;
    let neg = GroupHandle::new(x.n(), d.negative)?;
    Ok(pos.same_group(&neg))
}

/// `Dis(X, Δ) ≤ Fix(B)`, decided on generators.
pub fn block_dis_in_fixer(x: &QCycleSet, block: &[usize], system: &BlockSystem) -> Result<bool> {
    let d = displacement_generators(x, Some(block))?;
    Ok(d.negative.iter().all(|g| fixes_blocks(g, system)))
}

/// `Dis(X, Δ) ≤ Fix(B)` for every block `Δ` of `B`.
pub(crate) fn all_block_dis_in_fixer(x: &QCycleSet, system: &BlockSystem) -> Result<bool> {
    for b in system.blocks() {
        if !block_dis_in_fixer(x, b, system)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Dis(X) ≤ Fix(B)`.
pub(crate) fn dis_in_fixer(x: &QCycleSet, system: &BlockSystem) -> Result<bool> {
    let d = displacement_generators(x, None)?;
    Ok(d.negative.iter().all(|g| fixes_blocks(g, system)))
}

fn require_nontrivial_carrier(x: &QCycleSet) -> Result<()> {
    if x.n() > 1 {
        Ok(())
    } else {
        Err(Error::Precondition("simplicity needs at least two elements".into()))
    }
}

/// Simplicity via block systems: `G(X)` transitive and, for every
/// nontrivial block system, some block `Δ` with `Dis(X, Δ) ⊄ Fix`.
pub fn is_simple_blocks(x: &QCycleSet) -> Result<bool> {
    require_regular(x)?;
    require_nontrivial_carrier(x)?;
    let g = permutation_group(x)?;
    if !g.is_transitive() {
        return Ok(false);
    }
    for system in g.all_block_systems()? {
        if all_block_dis_in_fixer(x, &system)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A congruence other than equality and the total relation, if any.
pub fn nontrivial_congruence(x: &QCycleSet) -> Option<Congruence> {
    let n = x.n();
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .map(|(a, b)| principal_congruence(x, a, b))
        .find(|c| !c.is_total())
}

/// Simplicity via the congruence lattice: only the two trivial congruences.
/// The trivial structure of order 2 also has no other congruence but is
/// decomposable, and is not counted as simple.
pub fn is_simple_oracle(x: &QCycleSet) -> Result<bool> {
    require_nontrivial_carrier(x)?;
    Ok(nontrivial_congruence(x).is_none() && !(x.n() == 2 && x == &QCycleSet::trivial(2)))
}
