//! Sparse row reduction over exact rationals.
//!
//! Rows are kept in echelon form with the pivot at the *largest* column
//! index, so with columns ordered lexicographically the pivot of a relation
//! is its leading (largest) word.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Q;

pub type SparseRow = BTreeMap<usize, Q>;

/// `dst -= k·src`, dropping cancelled entries.
pub fn axpy(dst: &mut SparseRow, k: &Q, src: &SparseRow) {
    for (&col, v) in src {
        let entry = dst.entry(col).or_insert_with(Q::zero);
        *entry -= k * v;
        if entry.is_zero() {
            dst.remove(&col);
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Echelon {
    ncols: usize,
    /// pivot column -> row with coefficient 1 at the pivot
    rows: BTreeMap<usize, SparseRow>,
    reduced: bool,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: BTreeMap::new(), reduced: true }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseRow)> {
        self.rows.iter().map(|(&c, r)| (c, r))
    }

    /// Adds a row to the span; returns `true` when the rank grew.
    pub fn insert(&mut self, mut v: SparseRow) -> bool {
        v.retain(|_, x| !x.is_zero());
        loop {
            let Some((&col, lead)) = v.last_key_value() else {
                return false;
            };
            debug_assert!(col < self.ncols);
            match self.rows.get(&col) {
                Some(row) => {
                    let k = lead.clone();
                    axpy(&mut v, &k, row);
                }
                None => {
                    let inv = Q::one() / lead;
                    for x in v.values_mut() {
                        *x *= &inv;
                    }
                    self.rows.insert(col, v);
                    self.reduced = false;
                    return true;
                }
            }
        }
    }

    /// Back-substitutes so that every pivot column is zero outside its own row.
    pub fn finalize(&mut self) {
        if self.reduced {
            return;
        }
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        for &p in &pivots {
            let mut row = self.rows.remove(&p).expect("pivot row");
            let hits: Vec<usize> = row.range(..p).map(|(&c, _)| c).filter(|c| self.rows.contains_key(c)).collect();
            for c in hits {
                if let Some(k) = row.get(&c).cloned() {
                    axpy(&mut row, &k, &self.rows[&c]);
                }
            }
            self.rows.insert(p, row);
        }
        self.reduced = true;
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Normal form of `v` modulo the row space (zero on every pivot column).
    pub fn reduce(&self, v: &SparseRow) -> SparseRow {
        assert!(self.reduced, "finalize() before reduce()");
        let mut out = v.clone();
        for (col, k) in v.iter().filter(|(c, _)| self.rows.contains_key(c)) {
            axpy(&mut out, k, &self.rows[col]);
        }
        out
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.rows.contains_key(c)).collect()
    }

    /// Basis of `{v : row·v = 0 for every row}`, one vector per free column.
    pub fn kernel(&self) -> Vec<SparseRow> {
        assert!(self.reduced, "finalize() before kernel()");
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = SparseRow::new();
                v.insert(f, Q::one());
                for (&p, row) in &self.rows {
                    if let Some(x) = row.get(&f) {
                        v.insert(p, -x);
                    }
                }
                v
            })
            .collect()
    }
}

/// Dot product of two sparse vectors.
pub fn dot(a: &SparseRow, b: &SparseRow) -> Q {
    a.iter().filter_map(|(c, x)| b.get(c).map(|y| x * y)).fold(Q::zero(), |acc, v| acc + v)
}
