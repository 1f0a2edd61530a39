//! Flat summary of every invariant of a regular q-cycle set.

use serde::{Serialize, Serializer};

use super::level::primitive_level_chain;
use super::{
    check_dis_equality, displacement_group, is_retractable, is_simple_blocks, is_simple_oracle, multipermutation_level,
    nontrivial_congruence, permutation_group, retraction_sizes,
};
use crate::error::{Error, Result};
use crate::model::QCycleSet;

/// Identifier of the report layout, also the `$id` of the shipped schema.
pub const REPORT_SCHEMA: &str = "qcycle/analysis_report/v1";

/// Multipermutation level; serialized as a number or `"not multipermutational"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mpl {
    Level(usize),
    NotMultipermutational,
}

impl Serialize for Mpl {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Mpl::Level(k) => s.serialize_u64(*k as u64),
            Mpl::NotMultipermutational => s.serialize_str("not multipermutational"),
        }
    }
}

/// Primitive level; serialized as a number, `"infinite"` or `"undefined"`
/// (decomposable input or a single element).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimitiveLevel {
    Finite(usize),
    Infinite,
    Undefined,
}

impl Serialize for PrimitiveLevel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PrimitiveLevel::Finite(k) => s.serialize_u64(*k as u64),
            PrimitiveLevel::Infinite => s.serialize_str("infinite"),
            PrimitiveLevel::Undefined => s.serialize_str("undefined"),
        }
    }
}

/// All points, blocks and classes are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub n: usize,
    pub regular: bool,
    pub nondegenerate: bool,
    pub cycle_set: bool,
    pub square_free: bool,
    pub left_self_distributive: bool,
    pub right_self_distributive: bool,
    pub squaring_map: Vec<usize>,
    pub squaring_map_prime: Vec<usize>,
    pub delta_pair_map_bijective: bool,
    pub indecomposable: bool,
    pub orbits: Vec<Vec<usize>>,
    pub retractable: bool,
    pub mpl: Mpl,
    pub retraction_sizes: Vec<usize>,
    /// `None` for a single element.
    pub simple: Option<bool>,
    pub simple_by_blocks: Option<bool>,
    pub nontrivial_congruence: Option<Vec<Vec<usize>>>,
    pub primitive: bool,
    /// Nontrivial block systems of `G(X)`; empty when decomposable.
    pub block_systems: Vec<Vec<Vec<usize>>>,
    pub maximal_block_systems: Vec<Vec<Vec<usize>>>,
    pub primitive_level: PrimitiveLevel,
    /// Kernels of `X → X_1, .., X → X_k` realising the primitive level.
    pub primitive_level_chain: Option<Vec<Vec<Vec<usize>>>>,
    pub group_order: String,
    pub group_generators: Vec<String>,
    pub group_abelian: bool,
    pub group_regular: bool,
    pub displacement_group_order: String,
    pub displacement_groups_equal: bool,
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

/// Full report. Fails with `Invalid` when the axioms fail and with
/// `Precondition` for non-regular input.
pub fn analyze(x: &QCycleSet) -> Result<AnalysisReport> {
    if let Some(v) = x.check_q_axioms().first() {
        return Err(Error::Invalid(format!(
            "axiom {:?} fails at ({}, {}, {})",
            v.axiom,
            v.x + 1,
            v.y + 1,
            v.z + 1
        )));
    }
    super::require_regular(x)?;
    let n = x.n();
    let group = permutation_group(x)?;
    let indecomposable = group.is_transitive();
    let (q, q_prime) = x.squaring_maps();
    let mpl = multipermutation_level(x)?;
    let simple = if n > 1 { Some(is_simple_oracle(x)?) } else { None };
    let simple_by_blocks = if n > 1 { Some(is_simple_blocks(x)?) } else { None };
    let witness = if n > 1 { nontrivial_congruence(x) } else { None };
    let (primitive, block_systems, maximal) = if indecomposable {
        (
            group.is_primitive()?,
            group.all_block_systems()?,
            group.maximal_block_systems()?,
        )
    } else {
        (false, Vec::new(), Vec::new())
    };
    let (primitive_level, chain) = if indecomposable && n > 1 {
        match primitive_level_chain(x)? {
            Some(chain) => (
                PrimitiveLevel::Finite(chain.len()),
                Some(chain.iter().map(|c| c.to_one_based()).collect()),
            ),
            None => (PrimitiveLevel::Infinite, None),
        }
    } else {
        (PrimitiveLevel::Undefined, None)
    };
    let report = AnalysisReport {
        schema: REPORT_SCHEMA,
        n,
        regular: true,
        nondegenerate: x.is_nondegenerate(),
        cycle_set: x.is_cycle_set(),
        square_free: x.is_square_free(),
        left_self_distributive: x.is_left_self_distributive(),
        right_self_distributive: x.is_right_self_distributive(),
        squaring_map: one_based(&q),
        squaring_map_prime: one_based(&q_prime),
        delta_pair_map_bijective: x.delta_pair_map_is_bijective(),
        indecomposable,
        orbits: group.orbits().iter().map(|o| one_based(o)).collect(),
        retractable: is_retractable(x)?,
        mpl: mpl.map_or(Mpl::NotMultipermutational, Mpl::Level),
        retraction_sizes: retraction_sizes(x)?,
        simple,
        simple_by_blocks,
        nontrivial_congruence: witness.map(|c| c.to_one_based()),
        primitive,
        block_systems: block_systems.iter().map(|b| b.to_one_based()).collect(),
        maximal_block_systems: maximal.iter().map(|b| b.to_one_based()).collect(),
        primitive_level,
        primitive_level_chain: chain,
        group_order: group.order().to_string(),
        group_generators: group.generators().iter().map(|g| g.to_cycle_string()).collect(),
        group_abelian: group.is_abelian(),
        group_regular: group.is_regular_action(),
        displacement_group_order: displacement_group(x)?.order().to_string(),
        displacement_groups_equal: check_dis_equality(x)?,
    };
    if report.simple == Some(true) && !report.indecomposable {
        return Err(Error::Internal("simple but decomposable".into()));
    }
    if report.primitive != (report.primitive_level == PrimitiveLevel::Finite(1)) && report.indecomposable && n > 1 {
        return Err(Error::Internal("primitivity disagrees with primitive level".into()));
    }
    if !report.nondegenerate {
        return Err(Error::Internal("finite regular q-cycle set is degenerate".into()));
    }
    Ok(report)
}
