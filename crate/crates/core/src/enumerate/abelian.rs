//! Structures on a finite abelian group `A` whose maps are translations,
//! `x·y = y + h(x)` and `x:y = y + h′(x)`.
//!
//! An indecomposable q-cycle set with abelian permutation group is
//! isomorphic to such a structure with `⟨h(A), h′(A)⟩ = A`, so listing these
//! reaches every order without a general table search.

use crate::model::QCycleSet;

/// Invariant factor lists `d_1 | d_2 | .. | d_k` with product `n`, one per
/// isomorphism class of abelian groups of order `n`.
pub fn abelian_group_types(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, last: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 1 {
            out.push(acc.clone());
            return;
        }
        for d in 2..=remaining {
            if remaining.is_multiple_of(d) && d % last == 0 {
                acc.push(d);
                rec(remaining / d, d, acc, out);
                acc.pop();
            }
        }
    }
    if n == 1 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}

/// Addition table of `Z/d_1 × .. × Z/d_k`, elements in mixed radix with
/// the first factor least significant.
pub fn addition_table(factors: &[usize]) -> Vec<usize> {
    let n: usize = factors.iter().product();
    let digits = |mut a: usize| {
        factors
            .iter()
            .map(|&d| {
                let r = a % d;
                a /= d;
                r
            })
            .collect::<Vec<_>>()
    };
    let mut table = vec![0; n * n];
    for a in 0..n {
        let da = digits(a);
        for b in 0..n {
            let db = digits(b);
            let mut value = 0;
            let mut scale = 1;
            for (i, &d) in factors.iter().enumerate() {
                value += ((da[i] + db[i]) % d) * scale;
                scale *= d;
            }
            table[a * n + b] = value;
        }
    }
    table
}

struct Translations<'a> {
    n: usize,
    add: &'a [usize],
    h: Vec<Option<usize>>,
    hp: Vec<Option<usize>>,
    cycle_sets: bool,
    out: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Translations<'_> {
    #[inline]
    fn plus(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    /// Checks every `(x, y)` whose three identities are fully determined.
    fn consistent(&self) -> bool {
        let n = self.n;
        let (h, hp) = (&self.h, &self.hp);
        for x in 0..n {
            let (Some(hx), Some(hpx)) = (h[x], hp[x]) else { continue };
            for y in 0..n {
                let (Some(hy), Some(hpy)) = (h[y], hp[y]) else { continue };
                if let (Some(a), Some(b)) = (h[self.plus(y, hx)], h[self.plus(x, hpy)]) {
                    if self.plus(hx, a) != self.plus(hy, b) {
                        return false;
                    }
                }
                if let (Some(a), Some(b)) = (hp[self.plus(y, hpx)], hp[self.plus(x, hy)]) {
                    if self.plus(hpx, a) != self.plus(hpy, b) {
                        return false;
                    }
                }
                if let (Some(a), Some(b)) = (hp[self.plus(y, hx)], h[self.plus(x, hpy)]) {
                    if self.plus(hx, a) != self.plus(hpy, b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn generates(&self) -> bool {
        let n = self.n;
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let gens: Vec<usize> = self.h.iter().chain(&self.hp).map(|v| v.expect("assigned")).collect();
        while let Some(a) = stack.pop() {
            for &g in &gens {
                let b = self.plus(a, g);
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    fn search(&mut self, var: usize) {
        let n = self.n;
        let per_point = if self.cycle_sets { 1 } else { 2 };
        if var == per_point * n {
            if self.generates() {
                let h: Vec<usize> = self.h.iter().map(|v| v.expect("assigned")).collect();
                let hp: Vec<usize> = self.hp.iter().map(|v| v.expect("assigned")).collect();
                self.out.push((h, hp));
            }
            return;
        }
        let x = var / per_point;
        let second = var % per_point == 1;
        for value in 0..n {
            if second {
                self.hp[x] = Some(value);
            } else {
                self.h[x] = Some(value);
                if self.cycle_sets {
                    self.hp[x] = Some(value);
                }
            }
            if self.consistent() {
                self.search(var + 1);
            }
        }
        if second || self.cycle_sets {
            self.hp[x] = None;
        }
        if !second {
            self.h[x] = None;
        }
    }
}

/// All indecomposable translation structures on `Z/d_1 × .. × Z/d_k`
/// (labeled, not reduced up to isomorphism).
pub fn translation_structures(factors: &[usize], cycle_sets: bool) -> Vec<QCycleSet> {
    let n: usize = factors.iter().product();
    let add = addition_table(factors);
    let mut t = Translations {
        n,
        add: &add,
        h: vec![None; n],
        hp: vec![None; n],
        cycle_sets,
        out: Vec::new(),
    };
    t.search(0);
    t.out
        .into_iter()
        .map(|(h, hp)| {
            let dot = (0..n)
                .flat_map(|x| (0..n).map(|y| add[y * n + h[x]]).collect::<Vec<_>>())
                .collect();
            let colon = (0..n)
                .flat_map(|x| (0..n).map(|y| add[y * n + hp[x]]).collect::<Vec<_>>())
                .collect();
            QCycleSet::from_flat(n, dot, colon).expect("translation tables are well formed")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_types() {
        assert_eq!(abelian_group_types(8), vec![vec![2, 2, 2], vec![2, 4], vec![8]]);
        assert_eq!(abelian_group_types(6), vec![vec![6]]);
        assert_eq!(abelian_group_types(4).len(), 2);
    }

    #[test]
    fn translation_structures_are_valid() {
        for factors in [vec![4], vec![2, 2], vec![5]] {
            for cycle_sets in [false, true] {
                let all = translation_structures(&factors, cycle_sets);
                assert!(!all.is_empty());
                for x in &all {
                    assert!(x.satisfies_axioms());
                    assert!(x.is_regular());
                    assert!(x.is_cycle_set() || !cycle_sets);
                }
            }
        }
    }
}
