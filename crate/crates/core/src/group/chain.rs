//! Deterministic Schreier–Sims table over the fixed base `0, 1, .., n-1`.
//!
//! Level `k` describes the pointwise stabilizer `G_k` of `0, .., k-1`: for
//! every point `j` in the orbit of `k` under `G_k` it stores a coset
//! representative mapping `k` to `j`. Levels with trivial orbit are skipped
//! when reporting the base.

use num_bigint::BigUint;

use crate::model::Permutation;

#[derive(Debug, Clone)]
pub(crate) struct StabilizerChain {
    n: usize,
    reps: Vec<Vec<Option<Permutation>>>,
    rep_inverses: Vec<Vec<Option<Permutation>>>,
    level_gens: Vec<Vec<Permutation>>,
}

impl StabilizerChain {
    pub fn build(n: usize, generators: &[Permutation]) -> Self {
        let mut reps = vec![vec![None; n]; n];
        let mut rep_inverses = vec![vec![None; n]; n];
        for k in 0..n {
            reps[k][k] = Some(Permutation::identity(n));
            rep_inverses[k][k] = Some(Permutation::identity(n));
        }
        let mut chain = Self {
            n,
            reps,
            rep_inverses,
            level_gens: vec![Vec::new(); n],
        };
        for g in generators {
            chain.add(0, g.clone());
        }
        chain
    }

    /// Sifts `g` from level `k`; returns the level where it got stuck and the
    /// residue, or `None` when `g` reduces to the identity.
    fn sift_from(&self, k: usize, mut g: Permutation) -> Option<(usize, Permutation)> {
        for level in k..self.n {
            let j = g.apply(level);
            match &self.rep_inverses[level][j] {
                None => return Some((level, g)),
                Some(inv) => {
                    if j != level {
                        g = inv.compose_unchecked(&g);
                    }
                }
            }
        }
        debug_assert!(g.is_identity());
        None
    }

    fn add(&mut self, k: usize, g: Permutation) {
        if k >= self.n || self.sift_from(k, g.clone()).is_none() {
            return;
        }
        self.level_gens[k].push(g.clone());
        let targets: Vec<usize> = (0..self.n).filter(|&j| self.reps[k][j].is_some()).collect();
        for j in targets {
            let rep = self.reps[k][j].clone().expect("target has a representative");
            self.extend(k, g.compose_unchecked(&rep));
        }
    }

    /// `h` lies in `G_k`; records it as a new coset representative or pushes
    /// the resulting Schreier element one level down.
    fn extend(&mut self, k: usize, h: Permutation) {
        let j = h.apply(k);
        match &self.rep_inverses[k][j] {
            None => {
                self.rep_inverses[k][j] = Some(h.inverse());
                self.reps[k][j] = Some(h.clone());
                let gens = self.level_gens[k].clone();
                for t in gens {
                    self.extend(k, t.compose_unchecked(&h));
                }
            }
            Some(inv) => {
                let reduced = inv.compose_unchecked(&h);
                if !reduced.is_identity() {
                    self.add(k + 1, reduced);
                }
            }
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.n && self.sift_from(0, g.clone()).is_none()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.reps
            .iter()
            .map(|row| row.iter().filter(|r| r.is_some()).count())
            .collect()
    }

    /// Base points with nontrivial fundamental orbit.
    pub fn base(&self) -> Vec<usize> {
        self.orbit_lengths()
            .iter()
            .enumerate()
            .filter(|(_, &len)| len > 1)
            .map(|(k, _)| k)
            .collect()
    }

    pub fn order(&self) -> BigUint {
        self.orbit_lengths()
            .into_iter()
            .fold(BigUint::from(1u32), |acc, len| acc * BigUint::from(len))
    }

    /// Strong generators: every generator recorded at some level.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.level_gens.iter().flatten().cloned().collect()
    }

    /// Coset representatives per nontrivial level, in base order.
    pub fn transversals(&self) -> Vec<Vec<Permutation>> {
        self.reps
            .iter()
            .filter(|row| row.iter().filter(|r| r.is_some()).count() > 1)
            .map(|row| row.iter().flatten().cloned().collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 1..=7usize {
            let mut gens = Vec::new();
            if n > 1 {
                gens.push(p("(1 2)", n));
                let cycle: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
                gens.push(p(&format!("({})", cycle.join(" ")), n));
            }
            let chain = StabilizerChain::build(n, &gens);
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(chain.order(), BigUint::from(fact));
        }
    }

    #[test]
    fn cyclic_membership() {
        let g = p("(1 2 3 4)", 4);
        let chain = StabilizerChain::build(4, &[g]);
        assert_eq!(chain.order(), BigUint::from(4u32));
        assert!(chain.contains(&p("(1 3)(2 4)", 4)));
        assert!(!chain.contains(&p("(1 2)", 4)));
        assert_eq!(chain.base(), vec![0]);
    }
}
