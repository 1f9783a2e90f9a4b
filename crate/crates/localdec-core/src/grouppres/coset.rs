//! Coset enumeration for the trivial subgroup (Todd–Coxeter, HLT).
//!
//! Strategy, fixed so that partial tables are reproducible:
//! live cosets are processed in increasing index order; each one is
//! scanned under every relator in list order, filling gaps by new
//! definitions; then every still undefined entry of its row is defined,
//! column by column. Coincidences are processed with a queue, always
//! keeping the smaller coset. When the enumeration stops the live cosets
//! are renumbered in breadth-first order from the trivial coset, with
//! columns tried in letter order, so coset `0` is the trivial coset.

use super::words::{FreeWord, Letter, Presentation};
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

pub const UNDEFINED: u32 = u32::MAX;
pub const DEFAULT_COSET_LIMIT: usize = 100_000;

/// Rows are cosets, columns are letters (`2g` for generator `g`,
/// `2g + 1` for its inverse).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    columns: usize,
    entries: Vec<u32>,
    complete: bool,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        if self.columns == 0 {
            1
        } else {
            self.entries.len() / self.columns
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn generator_count(&self) -> usize {
        self.columns / 2
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn get(&self, coset: usize, l: Letter) -> Option<usize> {
        let v = self.entries[coset * self.columns + l.column()];
        (v != UNDEFINED).then_some(v as usize)
    }

    /// Follows `w` from `coset`; `None` if an entry is missing.
    pub fn trace(&self, coset: usize, w: &FreeWord) -> Option<usize> {
        w.letters().iter().try_fold(coset, |c, &l| self.get(c, l))
    }

    /// Breadth-first representative words, one per coset, shortlex in
    /// letter order. Unreached cosets get `None`.
    pub fn representatives(&self) -> Vec<Option<FreeWord>> {
        let n = self.len();
        let mut reps: Vec<Option<FreeWord>> = vec![None; n];
        reps[0] = Some(FreeWord::empty());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for col in 0..self.columns {
                let l = Letter::from_column(col);
                if let Some(d) = self.get(c, l) {
                    if reps[d].is_none() {
                        let mut w = reps[c].clone().unwrap();
                        w.push(l);
                        reps[d] = Some(w);
                        queue.push_back(d);
                    }
                }
            }
        }
        reps
    }

    /// For complete tables, checks that every relator acts trivially
    /// from every coset and that inverse columns agree.
    pub fn verify(&self, p: &Presentation) -> bool {
        let n = self.len();
        for c in 0..n {
            for col in 0..self.columns {
                let l = Letter::from_column(col);
                match self.get(c, l) {
                    Some(d) => {
                        if self.get(d, l.inverse()) != Some(c) {
                            return false;
                        }
                    }
                    None if self.complete => return false,
                    None => {}
                }
            }
            if self.complete {
                for r in &p.relators {
                    if self.trace(c, r) != Some(c) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The image of `w` under `F(S) → group`, as a coset index.
pub fn word_image(t: &CosetTable, w: &FreeWord) -> Option<usize> {
    t.trace(0, w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Complete(CosetTable),
    Undecided(CosetTable),
}

impl Enumeration {
    pub fn table(&self) -> &CosetTable {
        match self {
            Enumeration::Complete(t) | Enumeration::Undecided(t) => t,
        }
    }

    pub fn into_table(self) -> CosetTable {
        match self {
            Enumeration::Complete(t) | Enumeration::Undecided(t) => t,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Enumeration::Complete(_))
    }
}

struct Enumerator<'a> {
    cols: usize,
    table: Vec<u32>,
    forward: Vec<u32>,
    limit: usize,
    relators: Vec<&'a [Letter]>,
    queue: Vec<usize>,
}

struct OutOfCosets;

impl Enumerator<'_> {
    fn count(&self) -> usize {
        self.forward.len()
    }

    #[inline]
    fn get(&self, c: usize, col: usize) -> u32 {
        self.table[c * self.cols + col]
    }

    #[inline]
    fn set(&mut self, c: usize, col: usize, v: u32) {
        self.table[c * self.cols + col] = v;
    }

    fn define(&mut self, c: usize, col: usize) -> Result<(), OutOfCosets> {
        if self.count() >= self.limit {
            return Err(OutOfCosets);
        }
        let d = self.count();
        self.table.extend(core::iter::repeat_n(UNDEFINED, self.cols));
        self.forward.push(d as u32);
        self.set(c, col, d as u32);
        self.set(d, col ^ 1, c as u32);
        Ok(())
    }

    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.forward[root] as usize != root {
            root = self.forward[root] as usize;
        }
        while self.forward[c] as usize != root {
            let next = self.forward[c] as usize;
            self.forward[c] = root as u32;
            c = next;
        }
        root
    }

    fn is_live(&self, c: usize) -> bool {
        self.forward[c] as usize == c
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.forward[hi] = lo as u32;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.cols {
                let d = self.get(dead, col);
                if d == UNDEFINED {
                    continue;
                }
                let d = d as usize;
                if self.get(d, col ^ 1) == dead as u32 {
                    self.set(d, col ^ 1, UNDEFINED);
                }
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let m = self.get(mu, col);
                if m != UNDEFINED {
                    self.merge(nu, m as usize);
                } else {
                    let n = self.get(nu, col ^ 1);
                    if n != UNDEFINED {
                        self.merge(mu, n as usize);
                    } else {
                        self.set(mu, col, nu as u32);
                        self.set(nu, col ^ 1, mu as u32);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[Letter]) -> Result<(), OutOfCosets> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j {
                let next = self.get(f, w[i].column());
                if next == UNDEFINED {
                    break;
                }
                f = next as usize;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                let next = self.get(b, w[j as usize].inverse().column());
                if next == UNDEFINED {
                    break;
                }
                b = next as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let col = w[i].column();
                self.set(f, col, b as u32);
                self.set(b, col ^ 1, f as u32);
                return Ok(());
            }
            self.define(f, w[i].column())?;
        }
    }

    fn run(&mut self) -> bool {
        let mut c = 0;
        while c < self.count() {
            if self.is_live(c) {
                for k in 0..self.relators.len() {
                    let w = self.relators[k];
                    if self.scan_and_fill(c, w).is_err() {
                        return false;
                    }
                    if !self.is_live(c) {
                        break;
                    }
                }
                if self.is_live(c) {
                    for col in 0..self.cols {
                        if self.get(c, col) == UNDEFINED && self.define(c, col).is_err() {
                            return false;
                        }
                    }
                }
            }
            c += 1;
        }
        true
    }

    /// Live cosets renumbered in breadth-first order from coset 0.
    fn compact(&mut self, complete: bool) -> CosetTable {
        let n = self.count();
        let mut new_index = vec![UNDEFINED; n];
        let mut order = vec![0usize];
        new_index[0] = 0;
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            i += 1;
            for col in 0..self.cols {
                let d = self.get(c, col);
                if d != UNDEFINED {
                    let d = self.rep(d as usize);
                    if new_index[d] == UNDEFINED {
                        new_index[d] = order.len() as u32;
                        order.push(d);
                    }
                }
            }
        }
        let mut entries = Vec::with_capacity(order.len() * self.cols);
        for &c in &order {
            for col in 0..self.cols {
                let d = self.get(c, col);
                entries.push(if d == UNDEFINED { UNDEFINED } else { new_index[self.rep(d as usize)] });
            }
        }
        CosetTable { columns: self.cols, entries, complete }
    }
}

/// Enumerates the cosets of the trivial subgroup, defining at most
/// `coset_limit` cosets in total.
pub fn todd_coxeter(p: &Presentation, coset_limit: usize) -> Enumeration {
    let cols = 2 * p.generators.len();
    let mut e = Enumerator {
        cols,
        table: vec![UNDEFINED; cols],
        forward: vec![0],
        limit: coset_limit.max(1),
        relators: p.relators.iter().map(|r| r.letters()).collect(),
        queue: Vec::new(),
    };
    let done = e.run();
    let table = e.compact(done);
    if done {
        Enumeration::Complete(table)
    } else {
        Enumeration::Undecided(table)
    }
}
