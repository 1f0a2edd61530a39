//! Finite q-cycle sets given by their two operation tables.

use serde::Serialize;

use super::permutation::{is_bijection, Permutation};
use crate::error::{Error, Result};

/// A finite q-cycle set on `{0, .., n-1}`.
///
/// `dot[x][y] = x·y` and `colon[x][y] = x:y`. Every row of `dot` is a
/// permutation (`σ_x`); rows of `colon` (`δ_x`) are bijective exactly when the
/// structure is regular. The identities (q1)-(q3) are not enforced at
/// construction, see [`QCycleSet::check_q_axioms`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QCycleSet {
    n: usize,
    dot: Vec<usize>,
    colon: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    Q1,
    Q2,
    Q3,
}

/// One failing instance of an axiom, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// Violations in lexicographic `(axiom, x, y, z)` order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&AxiomViolation> {
        self.violations.first()
    }
}

impl QCycleSet {
    /// Builds a structure from row tables. Rejects ragged or out-of-range
    /// tables and any `dot` row that is not a permutation.
    pub fn from_tables(dot: Vec<Vec<usize>>, colon: Vec<Vec<usize>>) -> Result<Self> {
        let n = dot.len();
        if colon.len() != n {
            return Err(Error::Malformed(format!(
                "dot has {n} rows but colon has {}",
                colon.len()
            )));
        }
        for (name, table) in [("dot", &dot), ("colon", &colon)] {
            for (x, row) in table.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::Malformed(format!(
                        "{name} row {} has {} entries, expected {n}",
                        x + 1,
                        row.len()
                    )));
                }
            }
        }
        Self::from_flat(n, dot.concat(), colon.concat())
    }

    pub fn from_flat(n: usize, dot: Vec<usize>, colon: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("empty carrier".into()));
        }
        if dot.len() != n * n || colon.len() != n * n {
            return Err(Error::Malformed(format!("tables must have {n}x{n} entries")));
        }
        if let Some(&bad) = dot.iter().chain(&colon).find(|&&v| v >= n) {
            return Err(Error::Malformed(format!("entry {} out of range 1..={n}", bad + 1)));
        }
        for x in 0..n {
            if !is_bijection(&dot[x * n..(x + 1) * n]) {
                return Err(Error::Malformed(format!("dot row {} is not a permutation", x + 1)));
            }
        }
        Ok(Self { n, dot, colon })
    }

    /// `x·y = σ_x(y)`, `x:y = δ_x(y)`.
    pub fn from_maps(sigma: &[Permutation], delta: &[Permutation]) -> Result<Self> {
        let n = sigma.len();
        if delta.len() != n || sigma.iter().chain(delta).any(|p| p.degree() != n) {
            return Err(Error::Malformed(format!("expected {n} permutations of degree {n}")));
        }
        let dot = sigma.iter().flat_map(|p| p.images().to_vec()).collect();
        let colon = delta.iter().flat_map(|p| p.images().to_vec()).collect();
        Self::from_flat(n, dot, colon)
    }

    /// A cycle set (`·` and `:` coincide) from its left multiplications.
    pub fn cycle_set_from_maps(sigma: &[Permutation]) -> Result<Self> {
        Self::from_maps(sigma, sigma)
    }

    /// `x·y = x:y = y`.
    pub fn trivial(n: usize) -> Self {
        let row: Vec<usize> = (0..n).collect();
        let dot = row.repeat(n);
        Self {
            n,
            colon: dot.clone(),
            dot,
        }
    }

    /// The cycle set on `Z/n` with `x·y = x:y = y+1`.
    pub fn cyclic(n: usize) -> Self {
        let row: Vec<usize> = (0..n).map(|y| (y + 1) % n).collect();
        let dot = row.repeat(n);
        Self {
            n,
            colon: dot.clone(),
            dot,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dot(&self, x: usize, y: usize) -> usize {
        self.dot[x * self.n + y]
    }

    #[inline]
    pub fn colon(&self, x: usize, y: usize) -> usize {
        self.colon[x * self.n + y]
    }

    pub fn dot_table(&self) -> &[usize] {
        &self.dot
    }

    pub fn colon_table(&self) -> &[usize] {
        &self.colon
    }

    pub fn dot_row(&self, x: usize) -> &[usize] {
        &self.dot[x * self.n..(x + 1) * self.n]
    }

    pub fn colon_row(&self, x: usize) -> &[usize] {
        &self.colon[x * self.n..(x + 1) * self.n]
    }

    pub fn dot_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| self.dot_row(x).to_vec()).collect()
    }

    pub fn colon_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| self.colon_row(x).to_vec()).collect()
    }

    /// Left multiplication `σ_x`.
    pub fn sigma(&self, x: usize) -> Permutation {
        Permutation::from_images_unchecked(self.dot_row(x).to_vec())
    }

    /// `δ_x`, if bijective.
    pub fn delta(&self, x: usize) -> Option<Permutation> {
        let row = self.colon_row(x);
        is_bijection(row).then(|| Permutation::from_images_unchecked(row.to_vec()))
    }

    pub fn sigmas(&self) -> Vec<Permutation> {
        (0..self.n).map(|x| self.sigma(x)).collect()
    }

    /// All `δ_x`; fails on non-regular input.
    pub fn deltas(&self) -> Result<Vec<Permutation>> {
        (0..self.n)
            .map(|x| {
                self.delta(x)
                    .ok_or_else(|| Error::Precondition(format!("not regular: colon row {} is not bijective", x + 1)))
            })
            .collect()
    }

    /// Exhaustive check of (q1)-(q3) over all `n³` triples:
    ///
    /// ```text
    /// (q1) (x·y)·(x·z) = (y:x)·(y·z)
    /// (q2) (x:y):(x:z) = (y·x):(y:z)
    /// (q3) (x·y):(x·z) = (y:x)·(y:z)
    /// ```
    pub fn check_q_axioms(&self) -> AxiomReport {
        let n = self.n;
        let mut violations = Vec::new();
        for axiom in [Axiom::Q1, Axiom::Q2, Axiom::Q3] {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !self.holds(axiom, x, y, z) {
                            violations.push(AxiomViolation { axiom, x, y, z });
                        }
                    }
                }
            }
        }
        AxiomReport { violations }
    }

    fn holds(&self, axiom: Axiom, x: usize, y: usize, z: usize) -> bool {
        match axiom {
            Axiom::Q1 => self.dot(self.dot(x, y), self.dot(x, z)) == self.dot(self.colon(y, x), self.dot(y, z)),
            Axiom::Q2 => self.colon(self.colon(x, y), self.colon(x, z)) == self.colon(self.dot(y, x), self.colon(y, z)),
            Axiom::Q3 => self.colon(self.dot(x, y), self.dot(x, z)) == self.dot(self.colon(y, x), self.colon(y, z)),
        }
    }

    pub fn satisfies_axioms(&self) -> bool {
        [Axiom::Q1, Axiom::Q2, Axiom::Q3]
            .iter()
            .all(|&a| (0..self.n).all(|x| (0..self.n).all(|y| (0..self.n).all(|z| self.holds(a, x, y, z)))))
    }

    /// Every `δ_x` is bijective.
    pub fn is_regular(&self) -> bool {
        (0..self.n).all(|x| is_bijection(self.colon_row(x)))
    }

    /// `·` and `:` coincide.
    pub fn is_cycle_set(&self) -> bool {
        self.dot == self.colon
    }

    /// The squaring maps `x -> x·x` and `x -> x:x`.
    pub fn squaring_maps(&self) -> (Vec<usize>, Vec<usize>) {
        let q = (0..self.n).map(|x| self.dot(x, x)).collect();
        let q_prime = (0..self.n).map(|x| self.colon(x, x)).collect();
        (q, q_prime)
    }

    /// Regular with both squaring maps bijective.
    pub fn is_nondegenerate(&self) -> bool {
        let (q, q_prime) = self.squaring_maps();
        self.is_regular() && is_bijection(&q) && is_bijection(&q_prime)
    }

    /// Non-degenerate with both squaring maps equal to the identity.
    pub fn is_square_free(&self) -> bool {
        self.is_nondegenerate() && (0..self.n).all(|x| self.dot(x, x) == x && self.colon(x, x) == x)
    }

    /// Every `δ_x` is the identity.
    pub fn is_left_self_distributive(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.colon(x, y) == y))
    }

    /// Every `σ_x` is the identity.
    pub fn is_right_self_distributive(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.dot(x, y) == y))
    }

    pub fn is_self_distributive(&self) -> bool {
        self.is_left_self_distributive() || self.is_right_self_distributive()
    }

    /// The pair map `(x, y) -> (x·y, y:x)`, indexed by `x * n + y`.
    pub fn delta_pair_map(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                (self.dot(x, y), self.colon(y, x))
            })
            .collect()
    }

    pub fn delta_pair_map_is_bijective(&self) -> bool {
        let n = self.n;
        let mut seen = vec![false; n * n];
        for (a, b) in self.delta_pair_map() {
            let i = a * n + b;
            if seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }

    /// The isomorphic copy obtained by renaming every `x` to `pi(x)`.
    pub fn relabel(&self, pi: &Permutation) -> Result<Self> {
        if pi.degree() != self.n {
            return Err(Error::DegreeMismatch {
                left: pi.degree(),
                right: self.n,
            });
        }
        let n = self.n;
        let mut dot = vec![0; n * n];
        let mut colon = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let i = pi.apply(x) * n + pi.apply(y);
                dot[i] = pi.apply(self.dot(x, y));
                colon[i] = pi.apply(self.colon(x, y));
            }
        }
        Ok(Self { n, dot, colon })
    }

    /// True when `f` is a homomorphism into `other` for both operations.
    pub fn is_homomorphism_to(&self, other: &QCycleSet, f: &[usize]) -> bool {
        f.len() == self.n
            && f.iter().all(|&v| v < other.n)
            && (0..self.n).all(|x| {
                (0..self.n).all(|y| {
                    f[self.dot(x, y)] == other.dot(f[x], f[y]) && f[self.colon(x, y)] == other.colon(f[x], f[y])
                })
            })
    }
}

impl std::fmt::Debug for QCycleSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sig: Vec<String> = self.sigmas().iter().map(|p| p.to_cycle_string()).collect();
        let del: Vec<String> = (0..self.n)
            .map(|x| match self.delta(x) {
                Some(p) => p.to_cycle_string(),
                None => format!("{:?}", self.colon_row(x)),
            })
            .collect();
        f.debug_struct("QCycleSet")
            .field("n", &self.n)
            .field("sigma", &sig)
            .field("delta", &del)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_structure_satisfies_all_axioms() {
        let x = QCycleSet::trivial(3);
        assert!(x.check_q_axioms().is_valid());
        assert!(x.is_regular());
        assert!(x.is_square_free());
        assert!(x.is_left_self_distributive() && x.is_right_self_distributive());
    }

    #[test]
    fn perturbed_colon_breaks_an_axiom() {
        // Cyclic Z/3 cycle set with one colon entry altered; colon row 0
        // stays a permutation so only the identities can catch it.
        let base = QCycleSet::cyclic(3);
        let mut colon = base.colon_rows();
        colon[0] = vec![2, 1, 0];
        let broken = QCycleSet::from_tables(base.dot_rows(), colon).unwrap();
        let report = broken.check_q_axioms();
        assert!(!report.is_valid());
        // The report is sorted, so the first entry is the lexicographic minimum.
        let mut sorted = report.violations.clone();
        sorted.sort();
        assert_eq!(sorted, report.violations);
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let err = QCycleSet::from_tables(vec![vec![0, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 1]]);
        assert!(matches!(err, Err(Error::Malformed(_))));
        let err = QCycleSet::from_tables(vec![vec![0, 1], vec![0, 1]], vec![vec![0, 1]]);
        assert!(matches!(err, Err(Error::Malformed(_))));
        let err = QCycleSet::from_tables(vec![vec![0, 2], vec![0, 1]], vec![vec![0, 1], vec![0, 1]]);
        assert!(matches!(err, Err(Error::Malformed(_))));
    }

    #[test]
    fn constant_colon_row_is_not_regular() {
        let x = QCycleSet::from_tables(vec![vec![0, 1], vec![0, 1]], vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert!(!x.is_regular());
        assert!(x.delta(0).is_none());
        assert!(x.deltas().is_err());
    }

    #[test]
    fn relabel_preserves_axioms() {
        let x = QCycleSet::cyclic(4);
        let pi = Permutation::parse_cycles("(1 3 2)", 4).unwrap();
        let y = x.relabel(&pi).unwrap();
        assert!(y.check_q_axioms().is_valid());
        assert!(x.is_homomorphism_to(&y, pi.images()));
    }
}
