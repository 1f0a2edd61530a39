//! Permutations of `{0, .., n-1}`.
//!
//! Products act right-to-left: `g.compose(&h)` (also `&g * &h`) is the map
//! `x -> g(h(x))`. Cycle notation in text is 1-based, matching the labels
//! used in files and fixtures.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from its image list, rejecting anything that is
    /// not a bijection of `{0, .., len-1}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        if !is_bijection(&images) {
            return Err(Error::NotAPermutation(format!("{images:?}")));
        }
        Ok(Self { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(is_bijection(&images));
        Self { images }
    }

    /// Parses 1-based disjoint cycle notation such as `(1 4)(2 3)` on `n`
    /// points. Unlisted points are fixed; `()` or an empty string is the
    /// identity. Commas between entries are accepted.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected `(` in cycle notation `{text}`")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{text}`")))?;
            let body = &open[..close];
            let mut cycle = Vec::new();
            for token in body.split(|c: char| c.is_whitespace() || c == ',') {
                if token.is_empty() {
                    continue;
                }
                let label: usize = token
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point `{token}` in `{text}`")))?;
                if label == 0 || label > n {
                    return Err(Error::Parse(format!("point {label} out of range 1..={n} in `{text}`")));
                }
                let p = label - 1;
                if seen[p] {
                    return Err(Error::Parse(format!(
                        "point {label} repeated in `{text}` (cycles must be disjoint)"
                    )));
                }
                seen[p] = true;
                cycle.push(p);
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()];
            }
            rest = open[close + 1..].trim_start();
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    /// `x -> self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|&y| self.images[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Self { images: inv }
    }

    pub fn pow(&self, exponent: usize) -> Self {
        let mut result = Self::identity(self.degree());
        for _ in 0..exponent {
            result = self.compose_unchecked(&result);
        }
        result
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.images[point] == point
    }

    pub fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(i, &x)| i == x)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        (0..self.degree()).all(|x| self.images[other.images[x]] == other.images[self.images[x]])
    }

    /// Image of a point set, sorted.
    pub fn image_of_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&p| self.images[p]).collect();
        out.sort_unstable();
        out
    }

    /// Disjoint cycles of length at least two, each starting at its minimum,
    /// ordered by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        cycle_type_of(&self.images)
    }

    /// Length of the cycle through every point.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut len = vec![0; n];
        for start in 0..n {
            if len[start] != 0 {
                continue;
            }
            let mut members = vec![start];
            let mut p = self.images[start];
            while p != start {
                members.push(p);
                p = self.images[p];
            }
            for &m in &members {
                len[m] = members.len();
            }
        }
        len
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }

    /// 1-based cycle notation, `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.compose_unchecked(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

pub(crate) fn is_bijection(images: &[usize]) -> bool {
    let n = images.len();
    let mut seen = vec![false; n];
    for &y in images {
        if y >= n || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

pub(crate) fn cycle_type_of(images: &[usize]) -> Vec<usize> {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut lengths = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            len += 1;
            p = images[p];
        }
        lengths.push(len);
    }
    lengths.sort_unstable();
    lengths
}

/// The lexicographically least permutation with the given cycle type.
///
/// Fixed points come first, then cycles by increasing length, each cycle on
/// consecutive points `a -> a+1 -> .. -> b -> a`.
pub fn lex_min_of_cycle_type(cycle_type: &[usize]) -> Vec<usize> {
    let mut lengths = cycle_type.to_vec();
    lengths.sort_unstable();
    let n: usize = lengths.iter().sum();
    let mut images = vec![0; n];
    let mut start = 0;
    for len in lengths {
        for i in 0..len {
            images[start + i] = start + (i + 1) % len;
        }
        start += len;
    }
    images
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn compose_with_identity() {
        let g = p("(1 4)", 4);
        assert_eq!(g.compose(&Permutation::identity(4)).unwrap(), g);
    }

    #[test]
    fn involution_squared_is_identity() {
        let g = p("(1 2)", 4);
        assert!(g.compose(&g).unwrap().is_identity());
    }

    #[test]
    fn composition_is_right_to_left() {
        // sigma_1 = (1 4), sigma_4^{-1} = (1 3 4 2): 1 -> 3 -> 3, 4 -> 2 -> 2.
        let s1 = p("(1 4)", 4);
        let s4 = p("(1 2 4 3)", 4);
        let s4_inv = s4.inverse();
        assert_eq!(s4_inv, p("(1 3 4 2)", 4));
        let g = s1.compose(&s4_inv).unwrap();
        assert_eq!(g.apply(0), 2);
        assert_eq!(g.apply(3), 1);
        assert_eq!(g.image_of_set(&[0, 3]), vec![1, 2]);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let err = Permutation::identity(3).compose(&Permutation::identity(4));
        assert_eq!(err, Err(Error::DegreeMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn cycle_notation_round_trip() {
        let g = p("(2 4 5 3)", 6);
        assert_eq!(g.to_cycle_string(), "(2 4 5 3)");
        assert_eq!(Permutation::identity(3).to_cycle_string(), "()");
        assert_eq!(p("()", 3), Permutation::identity(3));
        assert!(Permutation::parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 5)", 3).is_err());
    }

    #[test]
    fn lex_min_matches_brute_force() {
        // Oracle: minimum over all permutations of each degree, grouped by type.
        for n in 1..=6 {
            let mut best: std::collections::BTreeMap<Vec<usize>, Vec<usize>> = Default::default();
            let mut perm: Vec<usize> = (0..n).collect();
            loop {
                let ty = cycle_type_of(&perm);
                let entry = best.entry(ty).or_insert_with(|| perm.clone());
                if perm < *entry {
                    *entry = perm.clone();
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            for (ty, min) in best {
                assert_eq!(lex_min_of_cycle_type(&ty), min, "type {ty:?}");
            }
        }
    }

    fn next_permutation(v: &mut [usize]) -> bool {
        let n = v.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    #[test]
    fn orders_and_types() {
        let g = p("(1 2 3)(4 5)", 6);
        assert_eq!(g.cycle_type(), vec![1, 2, 3]);
        assert_eq!(g.order(), 6);
        assert!(g.pow(6).is_identity());
        assert!(!g.pow(3).is_identity());
    }
}
