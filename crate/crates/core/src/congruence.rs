//! Congruences (equivalences compatible with both operations), quotients,
//! epimorphic images, covering maps and isomorphism testing.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::union_find::UnionFind;
use crate::model::permutation::cycle_type_of;
use crate::model::QCycleSet;

/// A partition of the carrier, classes sorted and ordered by minimum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl Congruence {
    pub fn equality(n: usize) -> Self {
        Self {
            classes: (0..n).map(|x| vec![x]).collect(),
            class_of: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Self {
            classes: vec![(0..n).collect()],
            class_of: vec![0; n],
        }
    }

    /// Any partition of `{0, .., n-1}`; compatibility is not checked.
    pub fn from_partition(mut classes: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = classes.iter().map(Vec::len).sum();
        for c in classes.iter_mut() {
            if c.is_empty() {
                return Err(Error::Malformed("empty class".into()));
            }
            c.sort_unstable();
        }
        classes.sort();
        let mut class_of = vec![usize::MAX; n];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                if x >= n || class_of[x] != usize::MAX {
                    return Err(Error::Malformed(format!("classes do not partition 1..={n}")));
                }
                class_of[x] = i;
            }
        }
        Ok(Self { classes, class_of })
    }

    /// Partition induced by a labelling: `x ~ y` iff `labels[x] == labels[y]`.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut uf = UnionFind::new(labels.len());
        let mut first: std::collections::HashMap<usize, usize> = Default::default();
        for (x, &l) in labels.iter().enumerate() {
            let r = *first.entry(l).or_insert(x);
            uf.union(r, x);
        }
        Self::from_union_find(&mut uf)
    }

    fn from_union_find(uf: &mut UnionFind) -> Self {
        Self::from_partition(uf.partition()).expect("union-find yields a partition")
    }

    pub fn n(&self) -> usize {
        self.class_of.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_labels(&self) -> &[usize] {
        &self.class_of
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn is_equality(&self) -> bool {
        self.classes.len() == self.n()
    }

    pub fn is_total(&self) -> bool {
        self.classes.len() == 1
    }

    pub fn is_trivial(&self) -> bool {
        self.is_equality() || self.is_total()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Every class of `other` lies inside a class of `self`.
    pub fn contains(&self, other: &Congruence) -> bool {
        other
            .classes
            .iter()
            .all(|c| c.iter().all(|&x| self.class_of[x] == self.class_of[c[0]]))
    }

    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.n());
        for c in self.classes.iter().chain(&other.classes) {
            for &x in &c[1..] {
                uf.union(c[0], x);
            }
        }
        Self::from_union_find(&mut uf)
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let labels: Vec<usize> = (0..self.n())
            .map(|x| self.class_of[x] * other.num_classes() + other.class_of[x])
            .collect();
        Self::from_labels(&labels)
    }

    /// `a ≡ b` and `c ≡ d` imply `a·c ≡ b·d` and `a:c ≡ b:d`.
    pub fn is_compatible_with(&self, x: &QCycleSet) -> bool {
        let n = x.n();
        if n != self.n() {
            return false;
        }
        for c in &self.classes {
            for &b in &c[1..] {
                let a = c[0];
                for z in 0..n {
                    if !self.related(x.dot(a, z), x.dot(b, z))
                        || !self.related(x.dot(z, a), x.dot(z, b))
                        || !self.related(x.colon(a, z), x.colon(b, z))
                        || !self.related(x.colon(z, a), x.colon(z, b))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// 1-based classes.
    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.classes.iter().map(|c| c.iter().map(|x| x + 1).collect()).collect()
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self
            .to_one_based()
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("{{{}}}", pts.join(","))
            })
            .collect();
        write!(f, "{{{}}}", inner.join(","))
    }
}

/// Smallest congruence containing all given pairs.
pub fn congruence_generated_by(x: &QCycleSet, pairs: &[(usize, usize)]) -> Congruence {
    let n = x.n();
    let mut uf = UnionFind::new(n);
    let mut queue = VecDeque::new();
    for &(a, b) in pairs {
        if uf.union(a, b).is_some() {
            queue.push_back((a, b));
        }
    }
    while let Some((u, v)) = queue.pop_front() {
        for z in 0..n {
            for (c, d) in [
                (x.dot(u, z), x.dot(v, z)),
                (x.dot(z, u), x.dot(z, v)),
                (x.colon(u, z), x.colon(v, z)),
                (x.colon(z, u), x.colon(z, v)),
            ] {
                if uf.union(c, d).is_some() {
                    queue.push_back((c, d));
                }
            }
        }
    }
    Congruence::from_union_find(&mut uf)
}

/// Smallest congruence identifying `a` and `b`.
pub fn principal_congruence(x: &QCycleSet, a: usize, b: usize) -> Congruence {
    congruence_generated_by(x, &[(a, b)])
}

/// The whole congruence lattice, from equality to the total relation,
/// ordered by decreasing number of classes and then by classes.
pub fn all_congruences(x: &QCycleSet) -> Vec<Congruence> {
    let n = x.n();
    let mut found: BTreeSet<Congruence> = BTreeSet::new();
    found.insert(Congruence::equality(n));
    for a in 0..n {
        for b in a + 1..n {
            found.insert(principal_congruence(x, a, b));
        }
    }
    loop {
        let current: Vec<Congruence> = found.iter().cloned().collect();
        let mut added = false;
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                if found.insert(current[i].join(&current[j])) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut out: Vec<Congruence> = found.into_iter().collect();
    out.sort_by(|a, b| b.num_classes().cmp(&a.num_classes()).then_with(|| a.cmp(b)));
    out
}

/// The quotient `X/θ` with classes numbered by increasing minimum, and the
/// projection `x ↦ [x]`.
pub fn quotient(x: &QCycleSet, theta: &Congruence) -> Result<(QCycleSet, Vec<usize>)> {
    if theta.n() != x.n() {
        return Err(Error::DegreeMismatch {
            left: x.n(),
            right: theta.n(),
        });
    }
    if !theta.is_compatible_with(x) {
        return Err(Error::Precondition("partition is not a congruence".into()));
    }
    let k = theta.num_classes();
    let reps: Vec<usize> = theta.classes.iter().map(|c| c[0]).collect();
    let mut dot = Vec::with_capacity(k * k);
    let mut colon = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            dot.push(theta.class_of(x.dot(a, b)));
            colon.push(theta.class_of(x.colon(a, b)));
        }
    }
    let q = QCycleSet::from_flat(k, dot, colon)?;
    Ok((q, theta.class_of.clone()))
}

/// Whether a surjective homomorphism `p: X → Y` has fibers of equal size.
pub fn is_covering_map(x: &QCycleSet, y: &QCycleSet, p: &[usize]) -> Result<bool> {
    if p.len() != x.n() || p.iter().any(|&v| v >= y.n()) {
        return Err(Error::Precondition("map does not go from X to Y".into()));
    }
    if !x.is_homomorphism_to(y, p) {
        return Err(Error::Precondition("map is not a homomorphism".into()));
    }
    let mut sizes = vec![0usize; y.n()];
    for &v in p {
        sizes[v] += 1;
    }
    if sizes.contains(&0) {
        return Err(Error::Precondition("map is not surjective".into()));
    }
    Ok(sizes.iter().all(|&s| s == sizes[0]))
}

/// Fiber size `m` of a congruence with equal-size classes, so that
/// `|X| = |X/θ| · m`; `None` when the classes differ in size.
pub fn covering_fiber_size(theta: &Congruence) -> Option<usize> {
    let m = theta.classes[0].len();
    theta.classes.iter().all(|c| c.len() == m).then_some(m)
}

fn point_signature(x: &QCycleSet, p: usize) -> (Vec<usize>, Vec<usize>, bool, bool) {
    (
        cycle_type_of(x.dot_row(p)),
        cycle_type_of_map(x.colon_row(p)),
        x.dot(p, p) == p,
        x.colon(p, p) == p,
    )
}

/// Cycle type for bijections; for other maps the sorted image sizes
/// prefixed by a marker that cannot occur in a cycle type.
fn cycle_type_of_map(row: &[usize]) -> Vec<usize> {
    if crate::model::permutation::is_bijection(row) {
        cycle_type_of(row)
    } else {
        let mut counts = vec![0usize; row.len()];
        for &v in row {
            counts[v] += 1;
        }
        counts.sort_unstable();
        let mut out = vec![0];
        out.extend(counts);
        out
    }
}

/// A bijection `f` with `f(x·y) = f(x)·f(y)` and `f(x:y) = f(x):f(y)`,
/// if one exists.
pub fn is_isomorphic(x: &QCycleSet, y: &QCycleSet) -> Option<Vec<usize>> {
    let n = x.n();
    if y.n() != n {
        return None;
    }
    let sx: Vec<_> = (0..n).map(|p| point_signature(x, p)).collect();
    let sy: Vec<_> = (0..n).map(|p| point_signature(y, p)).collect();
    let mut a = sx.clone();
    let mut b = sy.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let candidates: Vec<Vec<usize>> = (0..n).map(|p| (0..n).filter(|&q| sx[p] == sy[q]).collect()).collect();
    let mut search = IsoSearch {
        x,
        y,
        candidates: &candidates,
        signatures: (&sx, &sy),
        forward: vec![usize::MAX; n],
        backward: vec![usize::MAX; n],
    };
    if search.extend() {
        debug_assert!(x.is_homomorphism_to(y, &search.forward));
        Some(search.forward)
    } else {
        None
    }
}

type Signature = (Vec<usize>, Vec<usize>, bool, bool);

struct IsoSearch<'a> {
    x: &'a QCycleSet,
    y: &'a QCycleSet,
    candidates: &'a [Vec<usize>],
    signatures: (&'a [Signature], &'a [Signature]),
    forward: Vec<usize>,
    backward: Vec<usize>,
}

impl IsoSearch<'_> {
    fn assign(&mut self, p: usize, q: usize, trail: &mut Vec<usize>) -> bool {
        if self.forward[p] != usize::MAX {
            return self.forward[p] == q;
        }
        if self.backward[q] != usize::MAX || self.signatures.0[p] != self.signatures.1[q] {
            return false;
        }
        self.forward[p] = q;
        self.backward[q] = p;
        trail.push(p);
        true
    }

    /// Closes the partial map under both operations; false on conflict.
    fn propagate(&mut self, trail: &mut Vec<usize>) -> bool {
        let n = self.x.n();
        let mut changed = true;
        while changed {
            changed = false;
            let assigned: Vec<usize> = (0..n).filter(|&p| self.forward[p] != usize::MAX).collect();
            for &a in &assigned {
                for &b in &assigned {
                    let (fa, fb) = (self.forward[a], self.forward[b]);
                    let pairs = [
                        (self.x.dot(a, b), self.y.dot(fa, fb)),
                        (self.x.colon(a, b), self.y.colon(fa, fb)),
                    ];
                    for (p, q) in pairs {
                        let before = trail.len();
                        if !self.assign(p, q, trail) {
                            return false;
                        }
                        changed |= trail.len() > before;
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, trail: &mut Vec<usize>, len: usize) {
        while trail.len() > len {
            let p = trail.pop().expect("trail is nonempty");
            self.backward[self.forward[p]] = usize::MAX;
            self.forward[p] = usize::MAX;
        }
    }

    fn extend(&mut self) -> bool {
        let Some(p) = self.forward.iter().position(|&v| v == usize::MAX) else {
            return true;
        };
        let mut trail = Vec::new();
        let candidates = self.candidates;
        for &q in &candidates[p] {
            if self.backward[q] != usize::MAX {
                continue;
            }
            let ok = self.assign(p, q, &mut trail) && self.propagate(&mut trail);
            if ok && self.extend() {
                return true;
            }
            self.undo(&mut trail, 0);
        }
        false
    }
}

/// Quotients by all congruences other than equality and the total one,
/// keeping one image per isomorphism class (the first in lattice order).
pub fn epimorphic_images(x: &QCycleSet) -> Result<Vec<(QCycleSet, Congruence)>> {
    let mut out: Vec<(QCycleSet, Congruence)> = Vec::new();
    for theta in all_congruences(x) {
        if theta.is_trivial() {
            continue;
        }
        let (image, _) = quotient(x, &theta)?;
        if out
            .iter()
            .any(|(other, _)| other.n() == image.n() && is_isomorphic(other, &image).is_some())
        {
            continue;
        }
        out.push((image, theta));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_with_equal_points_is_equality() {
        let x = QCycleSet::cyclic(4);
        assert!(principal_congruence(&x, 2, 2).is_equality());
    }

    #[test]
    fn trivial_structure_has_every_partition() {
        // Bell number B_3 = 5.
        assert_eq!(all_congruences(&QCycleSet::trivial(3)).len(), 5);
    }

    #[test]
    fn meet_and_join() {
        let a = Congruence::from_partition(vec![vec![0, 1], vec![2, 3]]).unwrap();
        let b = Congruence::from_partition(vec![vec![0, 2], vec![1], vec![3]]).unwrap();
        assert_eq!(a.join(&b), Congruence::from_partition(vec![vec![0, 1, 2, 3]]).unwrap());
        assert!(a.meet(&b).is_equality());
    }

    #[test]
    fn trivial_versus_cyclic_not_isomorphic() {
        assert!(is_isomorphic(&QCycleSet::trivial(4), &QCycleSet::cyclic(4)).is_none());
        assert!(is_isomorphic(&QCycleSet::cyclic(4), &QCycleSet::cyclic(4)).is_some());
    }

    #[test]
    fn uneven_covering() {
        let x = QCycleSet::trivial(3);
        let y = QCycleSet::trivial(2);
        assert!(!is_covering_map(&x, &y, &[0, 0, 1]).unwrap());
        assert!(is_covering_map(&x, &x, &[0, 1, 2]).unwrap());
        assert!(is_covering_map(&x, &y, &[0, 0, 0]).is_err());
    }
}
