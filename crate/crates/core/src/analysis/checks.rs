//! Fixed-point corollaries for cycle sets and the structural implications
//! relating regularity, retraction, blocks and the primitive level.

use serde::Serialize;

use super::level::{has_finite_primitive_level, is_prime};
use super::{
    is_retractable, is_simple_oracle, multipermutation_level, permutation_group, require_regular, retraction_series,
};
use crate::congruence::epimorphic_images;
use crate::error::{Error, Result};
use crate::model::QCycleSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointReport {
    /// Some `σ_x` fixes some `y`.
    pub has_fixed_point: bool,
    /// First `(x, y)` with `x·y = y`, 1-based.
    pub witness: Option<(usize, usize)>,
    pub indecomposable: bool,
    /// `None` for decomposable input or a single element.
    pub finite_primitive_level: Option<bool>,
    /// Indecomposable with finite primitive level forces fixed-point-free `σ_x`.
    pub fixed_point_free_if_finite_level: bool,
    /// Indecomposable with a fixed point and an image of prime order cannot occur.
    pub no_prime_image_with_fixed_point: bool,
    /// For `|X| = p²`, indecomposable with a fixed point: the simplicity
    /// this case forces, checked against the congruence lattice.
    pub declared_simple: Option<bool>,
    pub violations: Vec<String>,
}

impl FixedPointReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

fn is_prime_square(n: usize) -> bool {
    let r = (n as f64).sqrt().round() as usize;
    r * r == n && is_prime(r)
}

pub fn fixed_point_tests(x: &QCycleSet) -> Result<FixedPointReport> {
    require_regular(x)?;
    if !x.is_cycle_set() {
        return Err(Error::Precondition("operations do not coincide".into()));
    }
    let n = x.n();
    let witness = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| x.dot(a, b) == b);
    let has_fixed_point = witness.is_some();
    let indecomposable = permutation_group(x)?.is_transitive();
    let finite_primitive_level = if indecomposable && n > 1 {
        Some(has_finite_primitive_level(x)?)
    } else {
        None
    };
    let mut violations = Vec::new();
    let fixed_point_free_if_finite_level = !(finite_primitive_level == Some(true) && has_fixed_point);
    if !fixed_point_free_if_finite_level {
        violations.push("finite primitive level with a fixed point".to_string());
    }
    let mut no_prime_image_with_fixed_point = true;
    if indecomposable && has_fixed_point {
        let prime_image = epimorphic_images(x)?.iter().any(|(image, _)| is_prime(image.n()));
        if prime_image {
            no_prime_image_with_fixed_point = false;
            violations.push("indecomposable with a fixed point and an image of prime order".to_string());
        }
    }
    let declared_simple = if indecomposable && has_fixed_point && is_prime_square(n) {
        let simple = is_simple_oracle(x)?;
        if !simple {
            violations.push("order p^2 with a fixed point but not simple".to_string());
        }
        Some(simple)
    } else {
        None
    };
    Ok(FixedPointReport {
        has_fixed_point,
        witness: witness.map(|(a, b)| (a + 1, b + 1)),
        indecomposable,
        finite_primitive_level,
        fixed_point_free_if_finite_level,
        no_prime_image_with_fixed_point,
        declared_simple,
        violations,
    })
}

/// One implication: when `hypothesis` holds, `conclusion` must be `Some(true)`.
/// Conclusions are evaluated only when the hypothesis holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub item: &'static str,
    pub statement: &'static str,
    pub hypothesis: bool,
    pub conclusion: Option<bool>,
}

impl Implication {
    pub fn holds(&self) -> bool {
        !self.hypothesis || self.conclusion == Some(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub items: Vec<Implication>,
}

impl StructureReport {
    pub fn counterexamples(&self) -> Vec<&Implication> {
        self.items.iter().filter(|i| !i.holds()).collect()
    }

    pub fn all_hold(&self) -> bool {
        self.items.iter().all(Implication::holds)
    }
}

fn implication(
    item: &'static str,
    statement: &'static str,
    hypothesis: bool,
    conclusion: impl FnOnce() -> Result<bool>,
) -> Result<Implication> {
    let conclusion = if hypothesis { Some(conclusion()?) } else { None };
    Ok(Implication {
        item,
        statement,
        hypothesis,
        conclusion,
    })
}

pub fn structure_checks(x: &QCycleSet) -> Result<StructureReport> {
    require_regular(x)?;
    let n = x.n();
    let group = permutation_group(x)?;
    let indecomposable = group.is_transitive();
    let regular_group = group.is_regular_action();
    let abelian = group.is_abelian();
    let retractable = is_retractable(x)?;
    let mpl = multipermutation_level(x)?;
    let composite = n > 1 && !is_prime(n);
    let (q, q_prime) = x.squaring_maps();
    let items = vec![
        implication(
            "i",
            "regular indecomposable G(X): squaring maps coincide iff operations coincide",
            regular_group && indecomposable,
            || Ok((q == q_prime) == x.is_cycle_set()),
        )?,
        implication(
            "ii",
            "regular indecomposable G(X), |X| > 1: retractable",
            regular_group && indecomposable && n > 1,
            || Ok(retractable),
        )?,
        implication(
            "iii",
            "regular abelian indecomposable G(X), |X| > 1: multipermutational",
            regular_group && abelian && indecomposable && n > 1,
            || Ok(mpl.is_some()),
        )?,
        implication(
            "iv",
            "retractable indecomposable, |X| composite: G(X) imprimitive",
            retractable && indecomposable && composite,
            || Ok(!group.is_primitive()?),
        )?,
        implication(
            "v",
            "square-free indecomposable, |X| > 1: no Ret^k is a cycle set, not multipermutational",
            x.is_square_free() && indecomposable && n > 1,
            || {
                let series = retraction_series(x)?;
                Ok(series.iter().all(|r| !r.is_cycle_set()) && mpl.is_none())
            },
        )?,
        implication(
            "vi",
            "multipermutational indecomposable, |X| > 1: finite primitive level",
            mpl.is_some() && indecomposable && n > 1,
            || has_finite_primitive_level(x),
        )?,
    ];
    Ok(StructureReport { items })
}
