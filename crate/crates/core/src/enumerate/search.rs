//! Constraint search over the operation tables of regular q-cycle sets.
//!
//! Every table cell is a variable whose domain is a bitmask of carrier
//! points. Rows of both tables are all-different. Once the four inner cells
//! of an axiom instance are fixed, its two outer cells are tied by an
//! equality that keeps their domains intersected, and the row indices of
//! those outer cells are filtered against every fixed column pair. In
//! cycle-set mode the colon table shares the dot cells. Relabelings that
//! would give a smaller determined prefix prune the branch.

use super::canon::{first_row_key, for_each_conjugator, is_canonical_tables};

/// Largest order the bitmask domains support.
pub(crate) const MAX_SEARCH_ORDER: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Table {
    Dot,
    Colon,
}

use Table::{Colon, Dot};

/// Inner cell tables for positions `(x,y)`, `(x,z)`, `(y,x)`, `(y,z)` and the
/// outer tables `(left, right)` of each axiom.
const AXIOMS: [([Table; 4], Table, Table); 3] = [
    ([Dot, Dot, Colon, Dot], Dot, Dot),
    ([Colon, Colon, Dot, Colon], Colon, Colon),
    ([Dot, Dot, Colon, Colon], Colon, Dot),
];

pub(crate) struct Search {
    n: usize,
    cycle_sets: bool,
    dom: Vec<u16>,
    trail: Vec<(u32, u16)>,
    partners: Vec<Vec<u32>>,
    partner_trail: Vec<u32>,
    queue: Vec<u32>,
    first_row: Option<Vec<usize>>,
    canonical: bool,
    /// Nontrivial relabelings fixing dot row 0 in place, as `(π, π⁻¹)`.
    stabilizer: Vec<(Vec<usize>, Vec<usize>)>,
    out: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Search {
    /// With `first_row`, dot row 0 is fixed to it and every other complete
    /// dot row must admit no smaller first row; leaves are kept only if
    /// canonical. Without it every labeled structure is produced.
    pub fn new(n: usize, cycle_sets: bool, first_row: Option<Vec<usize>>) -> Self {
        assert!((1..=MAX_SEARCH_ORDER).contains(&n));
        let cells = if cycle_sets { n * n } else { 2 * n * n };
        let full: u16 = if n == 16 { u16::MAX } else { (1u16 << n) - 1 };
        let mut dom = vec![full; cells];
        if let Some(row) = &first_row {
            for (y, &v) in row.iter().enumerate() {
                dom[y] = 1 << v;
            }
        }
        let mut stabilizer = Vec::new();
        if let Some(row) = &first_row {
            for_each_conjugator(row, 0, row, |pi| {
                if pi.iter().enumerate().any(|(a, &b)| a != b) {
                    let mut pinv = vec![0; n];
                    for (a, &b) in pi.iter().enumerate() {
                        pinv[b] = a;
                    }
                    stabilizer.push((pi.to_vec(), pinv));
                }
            });
        }
        Self {
            n,
            cycle_sets,
            dom,
            stabilizer,
            trail: Vec::new(),
            partners: vec![Vec::new(); cells],
            partner_trail: Vec::new(),
            queue: Vec::new(),
            canonical: first_row.is_some(),
            first_row,
            out: Vec::new(),
        }
    }

    #[inline]
    fn cell(&self, t: Table, x: usize, y: usize) -> usize {
        match t {
            Dot => x * self.n + y,
            Colon if self.cycle_sets => x * self.n + y,
            Colon => self.n * self.n + x * self.n + y,
        }
    }

    #[inline]
    fn value(&self, c: usize) -> Option<usize> {
        let d = self.dom[c];
        (d.count_ones() == 1).then(|| d.trailing_zeros() as usize)
    }

    fn set_dom(&mut self, c: usize, new: u16) -> bool {
        let old = self.dom[c];
        if new == old {
            return true;
        }
        if new == 0 {
            return false;
        }
        self.trail.push((c as u32, old));
        self.dom[c] = new;
        self.queue.push(c as u32);
        true
    }

    fn tie(&mut self, u: usize, v: usize) -> bool {
        if u == v {
            return true;
        }
        self.partners[u].push(v as u32);
        self.partners[v].push(u as u32);
        self.partner_trail.push(u as u32);
        self.partner_trail.push(v as u32);
        let d = self.dom[u] & self.dom[v];
        self.set_dom(u, d) && self.set_dom(v, d)
    }

    fn checkpoint(&self) -> (usize, usize) {
        (self.trail.len(), self.partner_trail.len())
    }

    fn undo(&mut self, (t, p): (usize, usize)) {
        while self.trail.len() > t {
            let (c, old) = self.trail.pop().expect("trail entry");
            self.dom[c as usize] = old;
        }
        while self.partner_trail.len() > p {
            let c = self.partner_trail.pop().expect("partner entry");
            self.partners[c as usize].pop();
        }
        self.queue.clear();
    }

    /// All-different on the row holding cell `c`, with hidden singles.
    fn row_consistency(&mut self, c: usize) -> bool {
        let n = self.n;
        let start = c - c % n;
        if let Some(v) = self.value(c) {
            let bit = 1u16 << v;
            for other in start..start + n {
                if other != c && self.dom[other] & bit != 0 {
                    let d = self.dom[other] & !bit;
                    if !self.set_dom(other, d) {
                        return false;
                    }
                }
            }
        }
        let (mut once, mut twice) = (0u16, 0u16);
        for cell in start..start + n {
            let d = self.dom[cell];
            twice |= once & d;
            once |= d;
        }
        let full: u16 = if n == 16 { u16::MAX } else { (1u16 << n) - 1 };
        if once != full {
            return false;
        }
        let mut singles = once & !twice;
        while singles != 0 {
            let bit = singles & singles.wrapping_neg();
            singles &= singles - 1;
            for cell in start..start + n {
                if self.dom[cell] & bit != 0 {
                    if !self.set_dom(cell, bit) {
                        return false;
                    }
                    break;
                }
            }
        }
        true
    }

    /// Posts the outer equalities of every axiom instance in which cell `c`
    /// is the last inner cell to be fixed.
    fn fire_axioms(&mut self, c: usize) -> bool {
        let n = self.n;
        let nn = n * n;
        let (table, p, q) = if c < nn {
            (Dot, c / n, c % n)
        } else {
            (Colon, (c - nn) / n, (c - nn) % n)
        };
        for (inner, left, right) in AXIOMS {
            for (k, &t) in inner.iter().enumerate() {
                if !(t == table || self.cycle_sets) {
                    continue;
                }
                for free in 0..n {
                    let (x, y, z) = match k {
                        0 => (p, q, free),
                        1 => (p, free, q),
                        2 => (q, p, free),
                        _ => (free, p, q),
                    };
                    let cells = [
                        self.cell(inner[0], x, y),
                        self.cell(inner[1], x, z),
                        self.cell(inner[2], y, x),
                        self.cell(inner[3], y, z),
                    ];
                    let mut vals = [0usize; 4];
                    let mut known = true;
                    for (i, &cell) in cells.iter().enumerate() {
                        match self.value(cell) {
                            Some(v) => vals[i] = v,
                            None => {
                                known = false;
                                break;
                            }
                        }
                    }
                    if !known {
                        continue;
                    }
                    let u = self.cell(left, vals[0], vals[1]);
                    let v = self.cell(right, vals[2], vals[3]);
                    if !self.tie(u, v) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The dot row of `x` when every cell is fixed to distinct values.
    fn dot_row_complete(&self, x: usize) -> Option<Vec<usize>> {
        let mut seen = 0u32;
        let mut row = Vec::with_capacity(self.n);
        for y in 0..self.n {
            let v = self.value(x * self.n + y)?;
            if seen & (1 << v) != 0 {
                return None;
            }
            seen |= 1 << v;
            row.push(v);
        }
        Some(row)
    }

    fn propagate(&mut self) -> bool {
        while let Some(c) = self.queue.pop() {
            let c = c as usize;
            let d = self.dom[c];
            for i in 0..self.partners[c].len() {
                let p = self.partners[c][i] as usize;
                let nd = self.dom[p] & d;
                if !self.set_dom(p, nd) {
                    return false;
                }
            }
            if !self.row_consistency(c) {
                return false;
            }
            if d.count_ones() == 1 {
                if !self.fire_axioms(c) {
                    return false;
                }
                if let (Some(first), true) = (&self.first_row, c < self.n * self.n) {
                    let x = c / self.n;
                    if x != 0 {
                        if let Some(row) = self.dot_row_complete(x) {
                            if first_row_key(&row, x) < *first {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// False when relabeling by `π` gives a table pair that is already
    /// smaller on the determined prefix, so no completion is canonical.
    fn relabel_not_smaller(&self, pi: &[usize], pinv: &[usize]) -> bool {
        let n = self.n;
        let tables: &[Table] = if self.cycle_sets { &[Dot] } else { &[Dot, Colon] };
        for &t in tables {
            for i in 0..n {
                for j in 0..n {
                    let (Some(cur), Some(src)) = (
                        self.value(self.cell(t, i, j)),
                        self.value(self.cell(t, pinv[i], pinv[j])),
                    ) else {
                        return true;
                    };
                    let relabeled = pi[src];
                    if relabeled != cur {
                        return relabeled > cur;
                    }
                }
            }
        }
        true
    }

    fn symmetry_ok(&self) -> bool {
        let n = self.n;
        let Some(first) = &self.first_row else { return true };
        if !self
            .stabilizer
            .iter()
            .all(|(pi, pinv)| self.relabel_not_smaller(pi, pinv))
        {
            return false;
        }
        let mut ok = true;
        let mut pinv = vec![0; n];
        for x in 1..n {
            let Some(row) = self.dot_row_complete(x) else { continue };
            if first_row_key(&row, x) != *first {
                continue;
            }
            for_each_conjugator(&row, x, first, |pi| {
                if !ok {
                    return;
                }
                for (a, &b) in pi.iter().enumerate() {
                    pinv[b] = a;
                }
                ok = self.relabel_not_smaller(pi, &pinv);
            });
            if !ok {
                return false;
            }
        }
        true
    }

    fn choose(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for (c, &d) in self.dom.iter().enumerate() {
            let k = d.count_ones();
            if k > 1 && best.is_none_or(|(b, _)| k < b) {
                best = Some((k, c));
                if k == 2 {
                    break;
                }
            }
        }
        best.map(|(_, c)| c)
    }

    fn leaf(&mut self) {
        let n = self.n;
        let nn = n * n;
        let dot: Vec<usize> = (0..nn).map(|c| self.dom[c].trailing_zeros() as usize).collect();
        let colon: Vec<usize> = if self.cycle_sets {
            dot.clone()
        } else {
            (nn..2 * nn).map(|c| self.dom[c].trailing_zeros() as usize).collect()
        };
        if self.canonical && !is_canonical_tables(n, &dot, &colon) {
            return;
        }
        self.out.push((dot, colon));
    }

    /// For each axiom and pair `(x, y)`, keeps only the row indices of the
    /// two outer cells that agree on every fixed column pair.
    fn support_filter(&mut self) -> bool {
        let n = self.n;
        let mut cols = Vec::with_capacity(n);
        for (inner, left, right) in AXIOMS {
            for x in 0..n {
                for y in 0..n {
                    let ca = self.cell(inner[0], x, y);
                    let cc = self.cell(inner[2], y, x);
                    let (da, dc) = (self.dom[ca], self.dom[cc]);
                    if da.count_ones() == 1 && dc.count_ones() == 1 {
                        continue;
                    }
                    cols.clear();
                    for z in 0..n {
                        if let (Some(b), Some(d)) = (
                            self.value(self.cell(inner[1], x, z)),
                            self.value(self.cell(inner[3], y, z)),
                        ) {
                            cols.push((b, d));
                        }
                    }
                    if cols.is_empty() {
                        continue;
                    }
                    let (mut keep_a, mut keep_c) = (0u16, 0u16);
                    let mut rest_a = da;
                    while rest_a != 0 {
                        let a = rest_a.trailing_zeros() as usize;
                        rest_a &= rest_a - 1;
                        let mut rest_c = if ca == cc { dc & (1 << a) } else { dc };
                        while rest_c != 0 {
                            let c = rest_c.trailing_zeros() as usize;
                            rest_c &= rest_c - 1;
                            let fits = cols
                                .iter()
                                .all(|&(b, d)| self.dom[self.cell(left, a, b)] & self.dom[self.cell(right, c, d)] != 0);
                            if fits {
                                keep_a |= 1 << a;
                                keep_c |= 1 << c;
                            }
                        }
                    }
                    if !self.set_dom(ca, da & keep_a) || !self.set_dom(cc, self.dom[cc] & keep_c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn settle(&mut self) -> bool {
        loop {
            if !self.propagate() {
                return false;
            }
            let before = self.trail.len();
            if !self.support_filter() {
                return false;
            }
            if self.trail.len() == before {
                return true;
            }
        }
    }

    fn search(&mut self) {
        if self.canonical && !self.symmetry_ok() {
            return;
        }
        match self.choose() {
            None => self.leaf(),
            Some(c) => {
                let mut values = self.dom[c];
                while values != 0 {
                    let bit = values & values.wrapping_neg();
                    values &= values - 1;
                    let mark = self.checkpoint();
                    if self.set_dom(c, bit) && self.settle() {
                        self.search();
                    }
                    self.undo(mark);
                }
            }
        }
    }

    /// Runs the search; returns flat `(dot, colon)` tables.
    pub fn run(mut self) -> Vec<(Vec<usize>, Vec<usize>)> {
        self.queue = (0..self.dom.len() as u32).collect();
        if self.settle() {
            self.search();
        }
        self.out
    }
}
