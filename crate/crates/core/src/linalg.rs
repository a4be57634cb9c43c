//! Incremental elimination for large, lazily generated linear systems and
//! cached span-membership tests.
//!
//! Both structures keep their stored rows in reduced row echelon form at all
//! times. A stored row is zero in every pivot column except its own, so
//! reducing an incoming row only needs the incoming row's original entries at
//! pivot columns. For the very sparse equation rows produced by structure
//! constants this makes each insertion cost a handful of dense row operations.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{kernel_from_rref, Matrix, Rref};
use crate::scalar::Field;

/// Accumulates equation rows and maintains their RREF.
#[derive(Clone, Debug)]
pub struct RowReducer<T> {
    cols: usize,
    rows: Vec<Vec<T>>,
    pivot_cols: Vec<usize>,
    pivot_of_col: Vec<Option<usize>>,
    seen: usize,
}

impl<T: Field> RowReducer<T> {
    pub fn new(cols: usize) -> Self {
        RowReducer {
            cols,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            pivot_of_col: vec![None; cols],
            seen: 0,
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of rows offered so far, including dependent ones.
    pub fn rows_seen(&self) -> usize {
        self.seen
    }

    pub fn is_full_rank(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Offer a sparse row given as `(column, value)` pairs. Repeated columns
    /// are summed. Returns true when the row increased the rank.
    pub fn add_sparse(&mut self, entries: &[(usize, T)]) -> bool {
        self.seen += 1;
        if entries.iter().all(|(_, v)| v.is_zero()) {
            return false;
        }
        let mut dense = vec![T::zero(); self.cols];
        for (c, v) in entries {
            let cur = std::mem::replace(&mut dense[*c], T::zero());
            dense[*c] = cur + v.clone();
        }
        let hits: Vec<(usize, T)> = entries
            .iter()
            .filter_map(|(c, _)| self.pivot_of_col[*c].map(|r| (*c, r)))
            .filter_map(|(c, r)| {
                let v = dense[c].clone();
                (!v.is_zero()).then_some((r, v))
            })
            .collect();
        let mut hits = hits;
        hits.sort_by_key(|(r, _)| *r);
        hits.dedup_by_key(|(r, _)| *r);
        for (r, f) in hits {
            subtract_scaled(&mut dense, &self.rows[r], &f);
        }
        self.insert_reduced(dense)
    }

    /// Offer a dense row. Returns true when the row increased the rank.
    pub fn add_dense(&mut self, mut row: Vec<T>) -> bool {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.seen += 1;
        let hits: Vec<(usize, T)> = self
            .pivot_cols
            .iter()
            .enumerate()
            .filter(|(_, &c)| !row[c].is_zero())
            .map(|(r, &c)| (r, row[c].clone()))
            .collect();
        for (r, f) in hits {
            subtract_scaled(&mut row, &self.rows[r], &f);
        }
        self.insert_reduced(row)
    }

    fn insert_reduced(&mut self, mut row: Vec<T>) -> bool {
        let Some(lead) = row.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let inv = row[lead].inv().expect("nonzero lead");
        for v in row.iter_mut().skip(lead) {
            if !v.is_zero() {
                let x = std::mem::replace(v, T::zero());
                *v = x * inv.clone();
            }
        }
        for existing in &mut self.rows {
            if !existing[lead].is_zero() {
                let f = existing[lead].clone();
                subtract_scaled(existing, &row, &f);
            }
        }
        self.pivot_of_col[lead] = Some(self.rows.len());
        self.pivot_cols.push(lead);
        self.rows.push(row);
        true
    }

    /// Reduce `v` against the stored rows; the result is zero iff `v` lies in
    /// their span.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (r, &c) in self.pivot_cols.iter().enumerate() {
            if !v[c].is_zero() {
                subtract_scaled(&mut out, &self.rows[r], &v[c]);
            }
        }
        out
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Stored rows sorted by pivot column.
    pub fn into_rref(self) -> Rref<T> {
        let cols = self.cols;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivot_cols[r]);
        let pivots: Vec<usize> = order.iter().map(|&r| self.pivot_cols[r]).collect();
        let mut rows: Vec<Option<Vec<T>>> = self.rows.into_iter().map(Some).collect();
        let data: Vec<T> = order
            .iter()
            .flat_map(|&r| rows[r].take().expect("row used once"))
            .collect();
        Rref {
            rank: pivots.len(),
            reduced: Matrix::from_vec(pivots.len(), cols, data).expect("consistent shape"),
            pivots,
        }
    }

    /// Canonical kernel basis of the accumulated system.
    pub fn kernel_basis(self) -> Vec<Vec<T>> {
        let cols = self.cols;
        let r = self.into_rref();
        kernel_from_rref(&r.reduced, &r.pivots, cols)
    }
}

#[inline]
fn subtract_scaled<T: Field>(target: &mut [T], source: &[T], factor: &T) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            let cur = std::mem::replace(t, T::zero());
            *t = cur - factor.clone() * s.clone();
        }
    }
}

/// Span of a fixed list of independent vectors, factored once so that
/// membership and coordinate queries are cheap.
#[derive(Clone, Debug)]
pub struct SpanIndex<T> {
    len: usize,
    count: usize,
    pivot_cols: Vec<usize>,
    rows: Vec<Vec<T>>,
    // combos[r] expresses rows[r] in terms of the original generators
    combos: Vec<Vec<T>>,
}

impl<T: Field> SpanIndex<T> {
    /// Fails with [`Error::Dependent`] if the generators are not independent.
    pub fn new(len: usize, generators: &[Vec<T>]) -> Result<Self> {
        let count = generators.len();
        let mut idx = SpanIndex {
            len,
            count,
            pivot_cols: Vec::new(),
            rows: Vec::new(),
            combos: Vec::new(),
        };
        for (g, v) in generators.iter().enumerate() {
            if v.len() != len {
                return Err(Error::DimensionMismatch {
                    expected: len,
                    found: v.len(),
                });
            }
            let mut combo = vec![T::zero(); count];
            combo[g] = T::one();
            let mut row = v.clone();
            for r in 0..idx.rows.len() {
                let c = idx.pivot_cols[r];
                if !v[c].is_zero() {
                    let f = v[c].clone();
                    subtract_scaled(&mut row, &idx.rows[r], &f);
                    subtract_scaled(&mut combo, &idx.combos[r], &f);
                }
            }
            let Some(lead) = row.iter().position(|x| !x.is_zero()) else {
                return Err(Error::Dependent);
            };
            let inv = row[lead].inv().expect("nonzero lead");
            row = row.into_iter().map(|x| x * inv.clone()).collect();
            combo = combo.into_iter().map(|x| x * inv.clone()).collect();
            for r in 0..idx.rows.len() {
                if !idx.rows[r][lead].is_zero() {
                    let f = idx.rows[r][lead].clone();
                    subtract_scaled(&mut idx.rows[r], &row, &f);
                    subtract_scaled(&mut idx.combos[r], &combo, &f);
                }
            }
            idx.pivot_cols.push(lead);
            idx.rows.push(row);
            idx.combos.push(combo);
        }
        Ok(idx)
    }

    pub fn dim(&self) -> usize {
        self.count
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    /// Coordinates of `v` with respect to the generators, or `None` when `v`
    /// is outside the span.
    pub fn coords(&self, v: &[T]) -> Option<Vec<T>> {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut residual = v.to_vec();
        let mut out = vec![T::zero(); self.count];
        for (r, &c) in self.pivot_cols.iter().enumerate() {
            if !v[c].is_zero() {
                subtract_scaled(&mut residual, &self.rows[r], &v[c]);
                let neg = -v[c].clone();
                subtract_scaled(&mut out, &self.combos[r], &neg);
            }
        }
        residual.iter().all(Zero::is_zero).then_some(out)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.coords(v).is_some()
    }
}
