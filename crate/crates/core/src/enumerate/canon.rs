//! Canonical forms: the lexicographically least `(dot, colon)` table pair
//! over all relabelings.
//!
//! Relabeling by `π` sends `σ_x` to `π σ_x π⁻¹` in row `π(x)`, so the first
//! row of the canonical form is the least permutation with the cycle type of
//! some `σ_x` whose point `0` sits in a cycle of the length of the cycle of
//! `x` in `σ_x`. Only conjugators realising that least first row are tried.

use std::cmp::Ordering;

use crate::model::permutation::cycle_type_of;
use crate::model::{Permutation, QCycleSet};

/// Least permutation of the given cycle type in which `0` lies on a cycle
/// of length `first`: that cycle on `0..first`, then the remaining cycles by
/// increasing length on consecutive points.
pub(crate) fn least_with_first_cycle(cycle_type: &[usize], first: usize) -> Vec<usize> {
    let mut rest = cycle_type.to_vec();
    let i = rest
        .iter()
        .position(|&l| l == first)
        .expect("cycle length occurs in type");
    rest.remove(i);
    rest.sort_unstable();
    let n: usize = cycle_type.iter().sum();
    let mut images = vec![0; n];
    let mut start = 0;
    for len in std::iter::once(first).chain(rest) {
        for k in 0..len {
            images[start + k] = start + (k + 1) % len;
        }
        start += len;
    }
    images
}

fn cycle_len_at(row: &[usize], x: usize) -> usize {
    let mut len = 1;
    let mut p = row[x];
    while p != x {
        p = row[p];
        len += 1;
    }
    len
}

/// The least first row obtainable by moving `x` to `0`.
pub(crate) fn first_row_key(row: &[usize], x: usize) -> Vec<usize> {
    least_with_first_cycle(&cycle_type_of(row), cycle_len_at(row, x))
}

fn cycles_all(row: &[usize]) -> Vec<Vec<usize>> {
    let n = row.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut c = vec![s];
        seen[s] = true;
        let mut p = row[s];
        while p != s {
            seen[p] = true;
            c.push(p);
            p = row[p];
        }
        out.push(c);
    }
    out
}

/// Every `π` with `π(x) = 0` and `π σ π⁻¹ = target`, where `σ` is `row`
/// and `target` is a first-row key of `σ` at `x`. Calls `visit` with the
/// image list of each.
pub(crate) fn for_each_conjugator(row: &[usize], x: usize, target: &[usize], mut visit: impl FnMut(&[usize])) {
    let n = row.len();
    let src = cycles_all(row);
    let dst = cycles_all(target);
    let mut pi = vec![usize::MAX; n];
    let first_src = src.iter().position(|c| c.contains(&x)).expect("x lies on a cycle");
    let first_dst = dst.iter().position(|c| c.contains(&0)).expect("0 lies on a cycle");
    let c = &src[first_src];
    let offset = c.iter().position(|&p| p == x).expect("x in its cycle");
    let d = &dst[first_dst];
    debug_assert_eq!(c.len(), d.len());
    for k in 0..c.len() {
        pi[c[(offset + k) % c.len()]] = d[k];
    }
    let mut used = vec![false; dst.len()];
    used[first_dst] = true;
    let order: Vec<usize> = (0..src.len()).filter(|&i| i != first_src).collect();
    fn rec(
        depth: usize,
        order: &[usize],
        src: &[Vec<usize>],
        dst: &[Vec<usize>],
        used: &mut [bool],
        pi: &mut [usize],
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if depth == order.len() {
            visit(pi);
            return;
        }
        let c = &src[order[depth]];
        for j in 0..dst.len() {
            if used[j] || dst[j].len() != c.len() {
                continue;
            }
            used[j] = true;
            let d = &dst[j];
            for rot in 0..d.len() {
                for k in 0..c.len() {
                    pi[c[k]] = d[(rot + k) % d.len()];
                }
                rec(depth + 1, order, src, dst, used, pi, visit);
            }
            used[j] = false;
        }
    }
    rec(0, &order, &src, &dst, &mut used, &mut pi, &mut visit);
}

/// Compares the relabeled tables (dot then colon, row-major) with `best`.
fn compare_relabeled(
    n: usize,
    dot: &[usize],
    colon: &[usize],
    pi: &[usize],
    pinv: &[usize],
    best: &[usize],
) -> Ordering {
    let mut k = 0;
    for table in [dot, colon] {
        for i in 0..n {
            let a = pinv[i];
            for j in 0..n {
                let v = pi[table[a * n + pinv[j]]];
                match v.cmp(&best[k]) {
                    Ordering::Equal => {}
                    other => return other,
                }
                k += 1;
            }
        }
    }
    Ordering::Equal
}

fn relabeled(n: usize, dot: &[usize], colon: &[usize], pi: &[usize]) -> Vec<usize> {
    let mut out = vec![0; 2 * n * n];
    for a in 0..n {
        for b in 0..n {
            out[pi[a] * n + pi[b]] = pi[dot[a * n + b]];
            out[n * n + pi[a] * n + pi[b]] = pi[colon[a * n + b]];
        }
    }
    out
}

fn least_first_row(n: usize, dot: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut best: Option<Vec<usize>> = None;
    let mut points = Vec::new();
    for x in 0..n {
        let key = first_row_key(&dot[x * n..(x + 1) * n], x);
        match best.as_ref().map(|b| key.cmp(b)) {
            None | Some(Ordering::Less) => {
                best = Some(key);
                points = vec![x];
            }
            Some(Ordering::Equal) => points.push(x),
            Some(Ordering::Greater) => {}
        }
    }
    (best.expect("nonempty carrier"), points)
}

/// Canonical tables (dot then colon, flat) and a relabeling `π` (old to new)
/// realising them.
pub(crate) fn canonical_tables(n: usize, dot: &[usize], colon: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let (target, points) = least_first_row(n, dot);
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut pinv = vec![0; n];
    for x in points {
        for_each_conjugator(&dot[x * n..(x + 1) * n], x, &target, |pi| {
            for (a, &b) in pi.iter().enumerate() {
                pinv[b] = a;
            }
            let better = match &best {
                None => true,
                Some((tables, _)) => compare_relabeled(n, dot, colon, pi, &pinv, tables) == Ordering::Less,
            };
            if better {
                best = Some((relabeled(n, dot, colon, pi), pi.to_vec()));
            }
        });
    }
    best.expect("some conjugator exists")
}

/// Whether the tables already equal their canonical form.
pub(crate) fn is_canonical_tables(n: usize, dot: &[usize], colon: &[usize]) -> bool {
    let (target, points) = least_first_row(n, dot);
    if dot[..n] != target[..] {
        return false;
    }
    let current: Vec<usize> = dot.iter().chain(colon).copied().collect();
    let mut pinv = vec![0; n];
    let mut canonical = true;
    for x in points {
        if !canonical {
            break;
        }
        for_each_conjugator(&dot[x * n..(x + 1) * n], x, &target, |pi| {
            if !canonical {
                return;
            }
            for (a, &b) in pi.iter().enumerate() {
                pinv[b] = a;
            }
            if compare_relabeled(n, dot, colon, pi, &pinv, &current) == Ordering::Less {
                canonical = false;
            }
        });
    }
    canonical
}

/// The lexicographically least `(dot, colon)` pair over all relabelings.
pub fn canonical_form(x: &QCycleSet) -> QCycleSet {
    canonical_labeling(x).0
}

/// Canonical form together with the relabeling (old label to new) that
/// produces it.
pub fn canonical_labeling(x: &QCycleSet) -> (QCycleSet, Permutation) {
    let n = x.n();
    let (tables, pi) = canonical_tables(n, x.dot_table(), x.colon_table());
    let colon = tables[n * n..].to_vec();
    let mut dot = tables;
    dot.truncate(n * n);
    (
        QCycleSet::from_flat(n, dot, colon).expect("relabeling preserves well-formedness"),
        Permutation::from_images(pi).expect("conjugator is a permutation"),
    )
}

pub fn is_canonical(x: &QCycleSet) -> bool {
    is_canonical_tables(x.n(), x.dot_table(), x.colon_table())
}
