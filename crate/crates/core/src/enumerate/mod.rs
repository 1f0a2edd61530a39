//! Exhaustive generation of regular q-cycle sets and cycle sets of small
//! order, one representative (the canonical form) per isomorphism class.

mod abelian;
mod canon;
mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{is_retractable, is_simple_blocks, multipermutation_level, permutation_group};
use crate::error::{Error, Result};
use crate::model::QCycleSet;

pub use abelian::{abelian_group_types, addition_table, translation_structures};
pub use canon::{canonical_form, canonical_labeling, is_canonical};

use canon::least_with_first_cycle;
use search::{Search, MAX_SEARCH_ORDER};

/// Largest order searched without an explicit override.
pub const DEFAULT_QCS_BOUND: usize = 5;
pub const DEFAULT_CS_BOUND: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    QCycleSet,
    CycleSet,
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qcs" | "q-cycle-set" => Ok(Kind::QCycleSet),
            "cs" | "cycle-set" => Ok(Kind::CycleSet),
            _ => Err(Error::Parse(format!(
                "unknown structure kind `{s}` (expected qcs or cs)"
            ))),
        }
    }
}

impl Kind {
    pub fn default_bound(self) -> usize {
        match self {
            Kind::QCycleSet => DEFAULT_QCS_BOUND,
            Kind::CycleSet => DEFAULT_CS_BOUND,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Regular,
    Indecomposable,
    SquareFree,
    Irretractable,
    Simple,
    Primitive,
    /// Every `δ_x` is the identity.
    LeftSelfDistributive,
    /// Every `σ_x` is the identity.
    RightSelfDistributive,
    /// Left or right self-distributive.
    SelfDistributive,
}

pub const PROPERTY_NAMES: &[&str] = &[
    "regular",
    "indecomposable",
    "square-free",
    "irretractable",
    "simple",
    "primitive",
    "left-self-distributive",
    "right-self-distributive",
    "self-distributive",
];

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "regular" => Property::Regular,
            "indecomposable" => Property::Indecomposable,
            "square-free" => Property::SquareFree,
            "irretractable" => Property::Irretractable,
            "simple" => Property::Simple,
            "primitive" => Property::Primitive,
            "left-self-distributive" => Property::LeftSelfDistributive,
            "right-self-distributive" => Property::RightSelfDistributive,
            "self-distributive" => Property::SelfDistributive,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown property `{s}` (expected one of {})",
                    PROPERTY_NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as usize;
        f.write_str(PROPERTY_NAMES[i])
    }
}

impl Property {
    /// Evaluates the property on a regular structure.
    pub fn holds(self, x: &QCycleSet) -> Result<bool> {
        Ok(match self {
            Property::Regular => x.is_regular(),
            Property::Indecomposable => permutation_group(x)?.is_transitive(),
            Property::SquareFree => x.is_square_free(),
            Property::Irretractable => !is_retractable(x)?,
            Property::Simple => x.n() > 1 && is_simple_blocks(x)?,
            Property::Primitive => {
                let g = permutation_group(x)?;
                g.is_transitive() && g.is_primitive()?
            }
            Property::LeftSelfDistributive => x.is_left_self_distributive(),
            Property::RightSelfDistributive => x.is_right_self_distributive(),
            Property::SelfDistributive => x.is_self_distributive(),
        })
    }
}

/// `true` to require the property, `false` to forbid it.
pub type Filter = (Property, bool);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationQuery {
    pub order: usize,
    pub kind: Kind,
    pub filters: Vec<Filter>,
    /// Off: every labeled structure is produced.
    pub canonical: bool,
    /// Permits orders above the default bound of the kind.
    pub allow_beyond_bounds: bool,
}

impl EnumerationQuery {
    pub fn new(order: usize, kind: Kind) -> Self {
        Self {
            order,
            kind,
            filters: Vec::new(),
            canonical: true,
            allow_beyond_bounds: false,
        }
    }

    pub fn require(mut self, p: Property) -> Self {
        self.filters.push((p, true));
        self
    }

    pub fn forbid(mut self, p: Property) -> Self {
        self.filters.push((p, false));
        self
    }

    pub fn labeled(mut self) -> Self {
        self.canonical = false;
        self
    }

    pub fn allow_large(mut self) -> Self {
        self.allow_beyond_bounds = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.order == 0 {
            return Err(Error::Precondition("order must be at least 1".into()));
        }
        if self.order > MAX_SEARCH_ORDER {
            return Err(Error::BoundExceeded(format!(
                "order {} exceeds the search limit {MAX_SEARCH_ORDER}",
                self.order
            )));
        }
        let bound = self.kind.default_bound();
        if self.order > bound && !self.allow_beyond_bounds {
            return Err(Error::BoundExceeded(format!(
                "order {} exceeds the default bound {bound} for {:?}; pass the override to continue",
                self.order, self.kind
            )));
        }
        let mut seen = BTreeMap::new();
        for &(p, want) in &self.filters {
            if let Some(prev) = seen.insert(p, want) {
                if prev != want {
                    return Err(Error::Precondition(format!(
                        "property `{p}` both required and forbidden"
                    )));
                }
            }
        }
        Ok(())
    }

    fn accepts(&self, x: &QCycleSet) -> Result<bool> {
        for &(p, want) in &self.filters {
            if p.holds(x)? != want {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn partitions(n: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(acc.clone());
        return;
    }
    for part in (1..=n.min(max)).rev() {
        acc.push(part);
        partitions(n - part, part, acc, out);
        acc.pop();
    }
}

/// Every row that can open the dot table of a canonical form.
fn first_row_candidates(n: usize) -> Vec<Vec<usize>> {
    let mut types = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut types);
    let mut rows = BTreeSet::new();
    for t in types {
        let lengths: BTreeSet<usize> = t.iter().copied().collect();
        for len in lengths {
            rows.insert(least_with_first_cycle(&t, len));
        }
    }
    rows.into_iter().collect()
}

fn to_structures(tables: Vec<(Vec<usize>, Vec<usize>)>, n: usize) -> Vec<QCycleSet> {
    tables
        .into_iter()
        .map(|(dot, colon)| QCycleSet::from_flat(n, dot, colon).expect("search emits well-formed tables"))
        .collect()
}

/// Structures matching the query, sorted by their tables. In canonical mode
/// each isomorphism class appears once, as its canonical form.
pub fn enumerate(q: &EnumerationQuery) -> Result<Vec<QCycleSet>> {
    q.validate()?;
    let n = q.order;
    let cycle_sets = q.kind == Kind::CycleSet;
    let raw: Vec<QCycleSet> = if q.canonical {
        first_row_candidates(n)
            .into_par_iter()
            .map(|row| to_structures(Search::new(n, cycle_sets, Some(row)).run(), n))
            .flatten()
            .collect()
    } else {
        to_structures(Search::new(n, cycle_sets, None).run(), n)
    };
    let kept: Vec<Result<Option<QCycleSet>>> = raw.into_par_iter().map(|x| Ok(q.accepts(&x)?.then_some(x))).collect();
    let mut out = Vec::new();
    for r in kept {
        if let Some(x) = r? {
            out.push(x);
        }
    }
    out.sort();
    Ok(out)
}

/// Invariant profile of one structure, the key of [`count_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Profile {
    pub indecomposable: bool,
    pub square_free: bool,
    pub simple: bool,
    pub primitive: bool,
    /// `None` when not multipermutational.
    pub mpl: Option<usize>,
}

impl Profile {
    pub fn of(x: &QCycleSet) -> Result<Self> {
        let g = permutation_group(x)?;
        let indecomposable = g.is_transitive();
        Ok(Self {
            indecomposable,
            square_free: x.is_square_free(),
            simple: x.n() > 1 && is_simple_blocks(x)?,
            primitive: indecomposable && g.is_primitive()?,
            mpl: multipermutation_level(x)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountCell {
    #[serde(flatten)]
    pub profile: Profile,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub order: usize,
    pub kind: Kind,
    pub total: usize,
    pub cells: Vec<CountCell>,
}

impl CountReport {
    /// Total over cells whose profile satisfies `pred`.
    pub fn count_where(&self, pred: impl Fn(&Profile) -> bool) -> usize {
        self.cells.iter().filter(|c| pred(&c.profile)).map(|c| c.count).sum()
    }
}

/// Class counts per invariant profile for each order in `orders`.
pub fn count_report(
    orders: impl IntoIterator<Item = usize>,
    kind: Kind,
    allow_beyond_bounds: bool,
) -> Result<Vec<CountReport>> {
    let mut reports = Vec::new();
    for order in orders {
        let mut q = EnumerationQuery::new(order, kind);
        q.allow_beyond_bounds = allow_beyond_bounds;
        let all = enumerate(&q)?;
        reports.push(count_structures(order, kind, &all)?);
    }
    Ok(reports)
}

/// Count table for an already enumerated list.
pub fn count_structures(order: usize, kind: Kind, all: &[QCycleSet]) -> Result<CountReport> {
    let profiles: Vec<Result<Profile>> = all.par_iter().map(Profile::of).collect();
    let mut cells: BTreeMap<Profile, usize> = BTreeMap::new();
    for p in profiles {
        *cells.entry(p?).or_default() += 1;
    }
    Ok(CountReport {
        order,
        kind,
        total: all.len(),
        cells: cells
            .into_iter()
            .map(|(profile, count)| CountCell { profile, count })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidates_cover_small_orders() {
        assert_eq!(first_row_candidates(1), vec![vec![0]]);
        assert_eq!(first_row_candidates(2), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(first_row_candidates(3).len(), 4);
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=3)
            .map(|n| enumerate(&EnumerationQuery::new(n, Kind::QCycleSet)).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 4, 26]);
        let counts: Vec<usize> = (1..=5)
            .map(|n| enumerate(&EnumerationQuery::new(n, Kind::CycleSet)).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 23, 88]);
    }

    #[test]
    fn output_is_canonical_and_valid() {
        for x in enumerate(&EnumerationQuery::new(3, Kind::QCycleSet)).unwrap() {
            assert!(x.satisfies_axioms());
            assert!(x.is_regular());
            assert!(is_canonical(&x));
        }
    }

    #[test]
    fn bounds_need_override() {
        let q = EnumerationQuery::new(6, Kind::QCycleSet);
        assert!(matches!(enumerate(&q), Err(Error::BoundExceeded(_))));
        let q = EnumerationQuery::new(3, Kind::CycleSet)
            .require(Property::Simple)
            .forbid(Property::Simple);
        assert!(matches!(enumerate(&q), Err(Error::Precondition(_))));
    }

    #[test]
    fn property_names_round_trip() {
        for name in PROPERTY_NAMES {
            assert_eq!(&name.parse::<Property>().unwrap().to_string(), name);
        }
    }
}
