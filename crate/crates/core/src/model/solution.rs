//! Set-theoretic solutions `r(x, y) = (λ_x(y), ρ_y(x))` and their
//! correspondence with regular q-cycle sets.

use super::permutation::{is_bijection, Permutation};
use super::qcycle::QCycleSet;
use crate::error::{Error, Result};

/// A finite map `r` on `X × X` stored as the families `λ_x` and `ρ_y`.
///
/// The families are plain maps; bijectivity (non-degeneracy) and the braid
/// relation are checked separately.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    n: usize,
    lambda: Vec<Vec<usize>>,
    rho: Vec<Vec<usize>>,
}

impl Solution {
    pub fn new(lambda: Vec<Vec<usize>>, rho: Vec<Vec<usize>>) -> Result<Self> {
        let n = lambda.len();
        if n == 0 {
            return Err(Error::Malformed("empty carrier".into()));
        }
        if rho.len() != n {
            return Err(Error::Malformed(format!(
                "lambda has {n} maps but rho has {}",
                rho.len()
            )));
        }
        for (name, family) in [("lambda", &lambda), ("rho", &rho)] {
            for (x, row) in family.iter().enumerate() {
                if row.len() != n || row.iter().any(|&v| v >= n) {
                    return Err(Error::Malformed(format!(
                        "{name} map {} must have {n} images in 1..={n}",
                        x + 1
                    )));
                }
            }
        }
        Ok(Self { n, lambda, rho })
    }

    pub fn from_permutations(lambda: &[Permutation], rho: &[Permutation]) -> Result<Self> {
        Self::new(
            lambda.iter().map(|p| p.images().to_vec()).collect(),
            rho.iter().map(|p| p.images().to_vec()).collect(),
        )
    }

    /// `r(x, y) = (y, x)`.
    pub fn flip(n: usize) -> Self {
        let id: Vec<usize> = (0..n).collect();
        Self {
            n,
            lambda: vec![id.clone(); n],
            rho: vec![id; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda_row(&self, x: usize) -> &[usize] {
        &self.lambda[x]
    }

    pub fn rho_row(&self, x: usize) -> &[usize] {
        &self.rho[x]
    }

    pub fn lambda_rows(&self) -> &[Vec<usize>] {
        &self.lambda
    }

    pub fn rho_rows(&self) -> &[Vec<usize>] {
        &self.rho
    }

    pub fn lambda(&self, x: usize) -> Option<Permutation> {
        is_bijection(&self.lambda[x]).then(|| Permutation::from_images_unchecked(self.lambda[x].clone()))
    }

    pub fn rho(&self, x: usize) -> Option<Permutation> {
        is_bijection(&self.rho[x]).then(|| Permutation::from_images_unchecked(self.rho[x].clone()))
    }

    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        (self.lambda[x][y], self.rho[y][x])
    }

    /// Braid relation `(r×id)(id×r)(r×id) = (id×r)(r×id)(id×r)` over all triples.
    pub fn check_yang_baxter(&self) -> bool {
        self.first_braid_failure().is_none()
    }

    /// First triple (lexicographic) on which the braid relation fails.
    pub fn first_braid_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let left = {
                        let (a, b) = self.apply(x, y);
                        let (b, c) = self.apply(b, z);
                        let (a, b) = self.apply(a, b);
                        (a, b, c)
                    };
                    let right = {
                        let (b, c) = self.apply(y, z);
                        let (a, b) = self.apply(x, b);
                        let (b, c) = self.apply(b, c);
                        (a, b, c)
                    };
                    if left != right {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// `r² = id` on all pairs.
    pub fn is_involutive(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                let (a, b) = self.apply(x, y);
                self.apply(a, b) == (x, y)
            })
        })
    }

    /// All `λ_x` and all `ρ_x` bijective.
    pub fn is_nondegenerate(&self) -> bool {
        self.lambda.iter().chain(&self.rho).all(|row| is_bijection(row))
    }

    /// `r` is a bijection of `X × X`.
    pub fn is_bijective(&self) -> bool {
        let n = self.n;
        let mut seen = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                let (a, b) = self.apply(x, y);
                if std::mem::replace(&mut seen[a * n + b], true) {
                    return false;
                }
            }
        }
        true
    }

    fn require_nondegenerate(&self) -> Result<(Vec<Permutation>, Vec<Permutation>)> {
        let lambda = (0..self.n)
            .map(|x| {
                self.lambda(x)
                    .ok_or_else(|| Error::Invalid(format!("degenerate: lambda_{} is not bijective", x + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        let rho = (0..self.n)
            .map(|x| {
                self.rho(x)
                    .ok_or_else(|| Error::Invalid(format!("degenerate: rho_{} is not bijective", x + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((lambda, rho))
    }

    /// `η_x(y) = ρ_{λ_y⁻¹(x)}(y)`.
    pub fn eta_map(&self, x: usize) -> Result<Permutation> {
        let (lambda, _) = self.require_nondegenerate()?;
        let inv: Vec<Permutation> = lambda.iter().map(Permutation::inverse).collect();
        let images: Vec<usize> = (0..self.n).map(|y| self.rho[inv[y].apply(x)][y]).collect();
        Permutation::from_images(images).map_err(|_| Error::Invalid(format!("eta_{} is not bijective", x + 1)))
    }

    pub fn eta_maps(&self) -> Result<Vec<Permutation>> {
        (0..self.n).map(|x| self.eta_map(x)).collect()
    }

    /// `r'(x, y) = (y, λ_y ρ_{λ_x⁻¹(y)}(x))`.
    pub fn derived_solution(&self) -> Result<Solution> {
        let (lambda, _) = self.require_nondegenerate()?;
        let n = self.n;
        let inv: Vec<Permutation> = lambda.iter().map(Permutation::inverse).collect();
        let id: Vec<usize> = (0..n).collect();
        // rho'[y][x] = λ_y(ρ_{λ_x⁻¹(y)}(x))
        let rho = (0..n)
            .map(|y| (0..n).map(|x| lambda[y].apply(self.rho[inv[x].apply(y)][x])).collect())
            .collect();
        Solution::new(vec![id; n], rho)
    }
}

impl std::fmt::Debug for Solution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Solution")
            .field("n", &self.n)
            .field("lambda", &self.lambda)
            .field("rho", &self.rho)
            .finish()
    }
}

/// The solution `r(x, y) = (σ_x⁻¹(y), δ_{σ_x⁻¹(y)}(x))` of a regular q-cycle set.
pub fn to_solution(x: &QCycleSet) -> Result<Solution> {
    if !x.is_regular() {
        return Err(Error::Precondition("q-cycle set is not regular".into()));
    }
    let n = x.n();
    let inv: Vec<Permutation> = x.sigmas().iter().map(Permutation::inverse).collect();
    let lambda = inv.iter().map(|p| p.images().to_vec()).collect();
    // rho[y][a] = δ_{σ_a⁻¹(y)}(a)
    let rho = (0..n)
        .map(|y| (0..n).map(|a| x.colon(inv[a].apply(y), a)).collect())
        .collect();
    Solution::new(lambda, rho)
}

/// The regular q-cycle set `x·y = λ_x⁻¹(y)`, `x:y = ρ_{λ_y⁻¹(x)}(y)` of a
/// non-degenerate solution. Degenerate or non-braided input is rejected.
pub fn from_solution(s: &Solution) -> Result<QCycleSet> {
    let (lambda, _) = s.require_nondegenerate()?;
    if let Some((a, b, c)) = s.first_braid_failure() {
        return Err(Error::Invalid(format!(
            "braid relation fails at ({}, {}, {})",
            a + 1,
            b + 1,
            c + 1
        )));
    }
    let n = s.n();
    let inv: Vec<Permutation> = lambda.iter().map(Permutation::inverse).collect();
    let dot = inv.iter().map(|p| p.images().to_vec()).collect();
    let colon = (0..n)
        .map(|x| (0..n).map(|y| s.rho_row(inv[y].apply(x))[y]).collect())
        .collect();
    QCycleSet::from_tables(dot, colon)
}
