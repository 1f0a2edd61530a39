//! Dynamical pairs and dynamical extensions `X ×_α S`.
//!
//! The extension carrier `X × S` is ordered lexicographically: `(x, s)` has
//! index `x * m + s`. Operations are
//! `(x,s)·(y,t) = (x·y, α_{(x,y)}(s,t))` and `(x,s):(y,t) = (x:y, α′_{(x,y)}(s,t))`.

use crate::analysis::{is_indecomposable, permutation_group};
use crate::error::{Error, Result};
use crate::group::BlockSystem;
use crate::model::{fixtures, QCycleSet};

/// Cocycle data over a base of size `n` with fiber `{0, .., m-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DynamicalPair {
    n: usize,
    m: usize,
    alpha: Vec<usize>,
    alpha_prime: Vec<usize>,
}

/// One failure of a cocycle identity; `identity` is 1, 2 or 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CocycleViolation {
    pub identity: u8,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub s: usize,
    pub t: usize,
    pub u: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairReport {
    pub violations: Vec<CocycleViolation>,
}

impl PairReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&CocycleViolation> {
        self.violations.first()
    }
}

impl DynamicalPair {
    /// Tables are flat, indexed by `((x * n + y) * m + s) * m + t`.
    pub fn new(n: usize, m: usize, alpha: Vec<usize>, alpha_prime: Vec<usize>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Malformed("base and fiber must be nonempty".into()));
        }
        let len = n * n * m * m;
        for (name, table) in [("alpha", &alpha), ("alpha'", &alpha_prime)] {
            if table.len() != len {
                return Err(Error::Malformed(format!(
                    "{name} has {} entries, expected {len}",
                    table.len()
                )));
            }
            if table.iter().any(|&v| v >= m) {
                return Err(Error::Malformed(format!("{name} has a value outside the fiber")));
            }
        }
        Ok(Self {
            n,
            m,
            alpha,
            alpha_prime,
        })
    }

    /// Builds both tables from functions of `(x, y, s, t)`.
    pub fn from_fn(
        n: usize,
        m: usize,
        alpha: impl Fn(usize, usize, usize, usize) -> usize,
        alpha_prime: impl Fn(usize, usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let mut a = Vec::with_capacity(n * n * m * m);
        let mut b = Vec::with_capacity(n * n * m * m);
        for x in 0..n {
            for y in 0..n {
                for s in 0..m {
                    for t in 0..m {
                        a.push(alpha(x, y, s, t));
                        b.push(alpha_prime(x, y, s, t));
                    }
                }
            }
        }
        Self::new(n, m, a, b)
    }

    /// `α_{(x,y)}(s,t) = α′_{(x,y)}(s,t) = t`.
    pub fn trivial(n: usize, m: usize) -> Self {
        Self::from_fn(n, m, |_, _, _, t| t, |_, _, _, t| t).expect("trivial pair is well formed")
    }

    pub fn base_size(&self) -> usize {
        self.n
    }

    pub fn fiber_size(&self) -> usize {
        self.m
    }

    #[inline]
    fn index(&self, x: usize, y: usize, s: usize, t: usize) -> usize {
        ((x * self.n + y) * self.m + s) * self.m + t
    }

    #[inline]
    pub fn alpha(&self, x: usize, y: usize, s: usize, t: usize) -> usize {
        self.alpha[self.index(x, y, s, t)]
    }

    #[inline]
    pub fn alpha_prime(&self, x: usize, y: usize, s: usize, t: usize) -> usize {
        self.alpha_prime[self.index(x, y, s, t)]
    }

    /// The map `t ↦ α_{(x,y)}(s,t)`.
    pub fn alpha_slice(&self, x: usize, y: usize, s: usize) -> &[usize] {
        let i = self.index(x, y, s, 0);
        &self.alpha[i..i + self.m]
    }

    pub fn alpha_prime_slice(&self, x: usize, y: usize, s: usize) -> &[usize] {
        let i = self.index(x, y, s, 0);
        &self.alpha_prime[i..i + self.m]
    }

    pub fn alpha_table(&self) -> &[usize] {
        &self.alpha
    }

    pub fn alpha_prime_table(&self) -> &[usize] {
        &self.alpha_prime
    }

    fn slices_bijective(&self, table: &[usize]) -> bool {
        table.chunks(self.m).all(crate::model::permutation::is_bijection)
    }

    pub fn alpha_slices_bijective(&self) -> bool {
        self.slices_bijective(&self.alpha)
    }

    pub fn alpha_prime_slices_bijective(&self) -> bool {
        self.slices_bijective(&self.alpha_prime)
    }

    fn check_base(&self, base: &QCycleSet) -> Result<()> {
        if base.n() != self.n {
            return Err(Error::DegreeMismatch {
                left: base.n(),
                right: self.n,
            });
        }
        Ok(())
    }

    /// Evaluates the three cocycle identities over all `(x,y,z,s,t,u)`.
    /// Violations are listed in order of (identity, x, y, z, s, t, u).
    pub fn check(&self, base: &QCycleSet) -> Result<PairReport> {
        self.check_base(base)?;
        let (n, m) = (self.n, self.m);
        let a = |x, y, s, t| self.alpha(x, y, s, t);
        let b = |x, y, s, t| self.alpha_prime(x, y, s, t);
        let mut violations = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (xy, xz, yx_c, yz) = (base.dot(x, y), base.dot(x, z), base.colon(y, x), base.dot(y, z));
                    let (xy_c, xz_c, yx, yz_c) = (base.colon(x, y), base.colon(x, z), base.dot(y, x), base.colon(y, z));
                    for s in 0..m {
                        for t in 0..m {
                            for u in 0..m {
                                let first = a(xy, xz, a(x, y, s, t), a(x, z, s, u))
                                    == a(yx_c, yz, b(y, x, t, s), a(y, z, t, u));
                                let second = b(xy_c, xz_c, b(x, y, s, t), b(x, z, s, u))
                                    == b(yx, yz_c, a(y, x, t, s), b(y, z, t, u));
                                let third = b(xy, xz, a(x, y, s, t), a(x, z, s, u))
                                    == a(yx_c, yz_c, b(y, x, t, s), b(y, z, t, u));
                                for (identity, ok) in [(1u8, first), (2, second), (3, third)] {
                                    if !ok {
                                        violations.push(CocycleViolation {
                                            identity,
                                            x,
                                            y,
                                            z,
                                            s,
                                            t,
                                            u,
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        violations.sort();
        Ok(PairReport { violations })
    }

    /// The extension `X ×_α S`. The pair must satisfy the cocycle identities
    /// and every `α_{(x,y)}(s,·)` must be bijective.
    pub fn build(&self, base: &QCycleSet) -> Result<QCycleSet> {
        if !self.alpha_slices_bijective() {
            return Err(Error::Malformed("some alpha_(x,y)(s,-) is not bijective".into()));
        }
        let report = self.check(base)?;
        if let Some(v) = report.first() {
            return Err(Error::Invalid(format!(
                "cocycle identity {} fails at x={} y={} z={} s={} t={} u={}",
                v.identity,
                v.x + 1,
                v.y + 1,
                v.z + 1,
                v.s + 1,
                v.t + 1,
                v.u + 1
            )));
        }
        Ok(self.build_unchecked(base))
    }

    pub(crate) fn build_unchecked(&self, base: &QCycleSet) -> QCycleSet {
        let (n, m) = (self.n, self.m);
        let size = n * m;
        let mut dot = vec![0; size * size];
        let mut colon = vec![0; size * size];
        for x in 0..n {
            for s in 0..m {
                let row = (x * m + s) * size;
                for y in 0..n {
                    for t in 0..m {
                        let col = y * m + t;
                        dot[row + col] = base.dot(x, y) * m + self.alpha(x, y, s, t);
                        colon[row + col] = base.colon(x, y) * m + self.alpha_prime(x, y, s, t);
                    }
                }
            }
        }
        QCycleSet::from_flat(size, dot, colon).expect("extension tables are well formed")
    }
}

pub fn check_dynamical_pair(base: &QCycleSet, pair: &DynamicalPair) -> Result<PairReport> {
    pair.check(base)
}

pub fn build_extension(base: &QCycleSet, pair: &DynamicalPair) -> Result<QCycleSet> {
    pair.build(base)
}

/// The partition `{{x} × S : x ∈ X}` of an indecomposable extension.
pub fn extension_blocks(base: &QCycleSet, pair: &DynamicalPair) -> Result<BlockSystem> {
    let ext = pair.build(base)?;
    if !is_indecomposable(&ext)? {
        return Err(Error::Precondition("extension is decomposable".into()));
    }
    let m = pair.m;
    let system = BlockSystem::new((0..pair.n).map(|x| (x * m..(x + 1) * m).collect()).collect())?;
    let group = permutation_group(&ext)?;
    if !group
        .generators()
        .iter()
        .all(|g| crate::group::preserves_blocks(g, &system))
    {
        return Err(Error::Internal("fiber partition is not invariant".into()));
    }
    Ok(system)
}

/// Whether the set-wise stabilizer of `{x} × S` in `G(X ×_α S)` acts
/// transitively on `{x} × S`.
pub fn stabilizer_transitive_on_fiber(base: &QCycleSet, pair: &DynamicalPair, x: usize) -> Result<bool> {
    if x >= pair.n {
        return Err(Error::Precondition(format!("base point {} out of range", x + 1)));
    }
    let ext = pair.build(base)?;
    fiber_transitive(&ext, pair.m, x)
}

fn fiber_transitive(ext: &QCycleSet, m: usize, x: usize) -> Result<bool> {
    let group = permutation_group(ext)?;
    let block: Vec<usize> = (x * m..(x + 1) * m).collect();
    let stab = crate::group::GroupHandle::new(ext.n(), group.block_stabilizer_generators(&block)?)?;
    Ok(stab.orbit(x * m).len() == m)
}

/// `X` indecomposable and some `H_x` transitive on `{x} × S`.
pub fn extension_indecomposability_criterion(base: &QCycleSet, pair: &DynamicalPair) -> Result<bool> {
    if !is_indecomposable(base)? {
        return Ok(false);
    }
    let ext = pair.build(base)?;
    for x in 0..pair.n {
        if fiber_transitive(&ext, pair.m, x)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Parametrised example families of dynamical extensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionFamily {
    /// Base `Z/4` with `x·y = y+1`, `x:y = y-1`; fiber `Z/2`; `α = α′` adds
    /// 1 to `t` exactly when `x` is odd.
    D1,
    /// Base `Z/2k` with `x·y = x:y = y+1`; fiber `Z/2`; `α` adds 1 for odd
    /// `x`, `α′` adds 1 for even `x`.
    D2(usize),
    /// Base and fiber `Z/p`, `x·y = x:y = y+1`, `α(s,t) = t+x`,
    /// `α′(s,t) = t+x+1`.
    D3(usize),
    /// Base of order 3 with `σ` the transpositions fixing each point,
    /// `δ = id`; fiber `(Z/2)^m`; `α(s,t) = t`, `α′(s,t) = t` if `x = y`
    /// and `s+t` otherwise.
    SquareFree(usize),
}

/// Largest exponent accepted by [`ExtensionFamily::SquareFree`].
pub const MAX_SQUARE_FREE_EXPONENT: usize = 8;

impl ExtensionFamily {
    /// Parses `D1`, `D2(k)`, `D3(p)` or `SF(m)`; `:` may replace the parentheses.
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        let (base, param) = match name.find(['(', ':']) {
            Some(i) => {
                let p = name[i + 1..].trim_end_matches(')').trim();
                let value = p
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad parameter in `{name}`")))?;
                (&name[..i], Some(value))
            }
            None => (name, None),
        };
        match (base.to_ascii_uppercase().as_str(), param) {
            ("D1", None) => Ok(Self::D1),
            ("D2", Some(k)) => Ok(Self::D2(k)),
            ("D3", Some(p)) => Ok(Self::D3(p)),
            ("SF", Some(m)) => Ok(Self::SquareFree(m)),
            _ => Err(Error::Parse(format!("unknown extension family `{name}`"))),
        }
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn shift_base(n: usize, dot_shift: usize, colon_shift: usize) -> QCycleSet {
    let dot = (0..n).flat_map(|_| (0..n).map(move |y| (y + dot_shift) % n)).collect();
    let colon = (0..n)
        .flat_map(|_| (0..n).map(move |y| (y + colon_shift) % n))
        .collect();
    QCycleSet::from_flat(n, dot, colon).expect("shift tables are well formed")
}

/// Base and pair of a named example family.
pub fn family_extension(family: ExtensionFamily) -> Result<(QCycleSet, DynamicalPair)> {
    match family {
        ExtensionFamily::D1 => {
            let base = shift_base(4, 1, 3);
            let f = |x: usize, _y, _s, t: usize| (t + x % 2) % 2;
            Ok((base, DynamicalPair::from_fn(4, 2, f, f)?))
        }
        ExtensionFamily::D2(k) => {
            if k == 0 {
                return Err(Error::Precondition("D2 needs k >= 1".into()));
            }
            let n = 2 * k;
            let pair = DynamicalPair::from_fn(n, 2, |x, _, _, t| (t + x % 2) % 2, |x, _, _, t| (t + 1 + x % 2) % 2)?;
            Ok((shift_base(n, 1, 1), pair))
        }
        ExtensionFamily::D3(p) => {
            if !is_prime(p) {
                return Err(Error::Precondition(format!("D3 needs a prime, got {p}")));
            }
            let pair = DynamicalPair::from_fn(p, p, |x, _, _, t| (t + x) % p, |x, _, _, t| (t + x + 1) % p)?;
            Ok((shift_base(p, 1, 1), pair))
        }
        ExtensionFamily::SquareFree(m) => {
            if m == 0 {
                return Err(Error::Precondition("SF needs m >= 1".into()));
            }
            if m > MAX_SQUARE_FREE_EXPONENT {
                return Err(Error::BoundExceeded(format!(
                    "SF({m}) exceeds the fiber exponent bound {MAX_SQUARE_FREE_EXPONENT}"
                )));
            }
            let size = 1 << m;
            let pair = DynamicalPair::from_fn(3, size, |_, _, _, t| t, |x, y, s, t| if x == y { t } else { s ^ t })?;
            Ok((fixtures::base3()?, pair))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_pair_over_trivial_base() {
        let base = QCycleSet::trivial(2);
        let pair = DynamicalPair::trivial(2, 2);
        assert!(pair.check(&base).unwrap().is_valid());
        assert_eq!(pair.build(&base).unwrap(), QCycleSet::trivial(4));
    }

    #[test]
    fn square_free_values() {
        let (base, pair) = family_extension(ExtensionFamily::SquareFree(1)).unwrap();
        let ext = pair.build(&base).unwrap();
        // 1-based (1,s)·(2,0) = (3,0) and (1,s):(2,0) = (2,s).
        for s in 0..2 {
            assert_eq!(ext.dot(s, 2), 4);
            assert_eq!(ext.colon(s, 2), 2 + s);
        }
    }

    #[test]
    fn altered_square_free_pair_fails() {
        let (base, good) = family_extension(ExtensionFamily::SquareFree(1)).unwrap();
        assert!(good.check(&base).unwrap().is_valid());
        let bad = DynamicalPair::from_fn(3, 2, |_, _, _, t| t, |_, _, s, t| s ^ t).unwrap();
        let report = bad.check(&base).unwrap();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.identity == 2));
    }

    #[test]
    fn family_names() {
        assert_eq!(ExtensionFamily::parse("D1").unwrap(), ExtensionFamily::D1);
        assert_eq!(ExtensionFamily::parse("D2(3)").unwrap(), ExtensionFamily::D2(3));
        assert_eq!(ExtensionFamily::parse("sf:2").unwrap(), ExtensionFamily::SquareFree(2));
        assert!(ExtensionFamily::parse("D4").is_err());
        assert!(family_extension(ExtensionFamily::D3(4)).is_err());
    }
}
