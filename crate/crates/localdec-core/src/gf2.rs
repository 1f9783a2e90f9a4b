//! Row reduction over the two-element field, rows packed into `u64` words.

use alloc::vec;
use alloc::vec::Vec;

fn lowest_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Incremental echelon form; each stored row has a distinct lowest bit.
#[derive(Clone, Debug)]
pub struct Echelon {
    columns: usize,
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(columns: usize) -> Self {
        Echelon { columns, rows: Vec::new(), pivot_row: vec![None; columns] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        debug_assert_eq!(row.len(), self.columns.div_ceil(64));
        while let Some(p) = lowest_bit(&row) {
            match self.pivot_row[p] {
                Some(i) => {
                    for (a, b) in row.iter_mut().zip(&self.rows[i]) {
                        *a ^= b;
                    }
                }
                None => {
                    self.pivot_row[p] = Some(self.rows.len());
                    self.rows.push(row);
                    return true;
                }
            }
        }
        false
    }

    /// The reduced echelon basis, sorted by pivot column.
    pub fn reduced_basis(&self) -> Vec<Vec<u64>> {
        let mut order: Vec<(usize, usize)> =
            self.pivot_row.iter().enumerate().filter_map(|(c, r)| r.map(|r| (c, r))).collect();
        order.sort_unstable();
        let mut rows: Vec<Vec<u64>> = order.iter().map(|&(_, r)| self.rows[r].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&(c, _)| c).collect();
        for i in (0..rows.len()).rev() {
            let p = pivots[i];
            for j in 0..rows.len() {
                if j != i && rows[j][p / 64] >> (p % 64) & 1 == 1 {
                    let (src, dst) = if i < j {
                        let (a, b) = rows.split_at_mut(j);
                        (&a[i], &mut b[0])
                    } else {
                        let (a, b) = rows.split_at_mut(i);
                        (&b[0], &mut a[j])
                    };
                    dst.iter_mut().zip(src).for_each(|(d, s)| *d ^= s);
                }
            }
        }
        rows
    }
}

pub fn rank(rows: &[Vec<u64>], columns: usize) -> usize {
    let mut e = Echelon::new(columns);
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}
