//! Dense exact linear algebra over GF(p).
//!
//! The Groebner engine never needs large dense solves; what the rest of the
//! crate needs from this module is small-scale and exact: reduced row
//! echelon form, rank, right kernels, solving, and an incremental row-space
//! accumulator used to pick minimal generators and measure spans of graded
//! pieces.

use crate::gf::PrimeField;

/// A dense row-major matrix over GF(p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    nrows: usize,
    ncols: usize,
    data: Vec<u32>,
}

impl Mat {
    /// The zero matrix of the given shape.
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Mat {
            nrows,
            ncols,
            data: vec![0; nrows * ncols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from explicit rows, which must have equal lengths.
    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend_from_slice(r);
        }
        Mat { nrows, ncols, data }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.ncols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.ncols + j] = v;
    }

    /// Immutable view of row `i`.
    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    /// Matrix transpose.
    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.at(i, j));
            }
        }
        t
    }

    /// Matrix product over GF(p).
    pub fn mul(&self, other: &Mat, field: PrimeField) -> Mat {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in mul");
        let bt = other.transpose();
        let mut out = Mat::zero(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for j in 0..other.ncols {
                out.set(i, j, field.dot(self.row(i), bt.row(j)));
            }
        }
        out
    }

    /// In-place reduction to reduced row echelon form.
    ///
    /// Returns the pivot columns, one per nonzero row, in order; rows below
    /// the returned count are zero afterwards.
    pub fn rref(&mut self, field: PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            // Find a pivot in column c at or below row r.
            let Some(pr) = (r..self.nrows).find(|&i| self.at(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            // Normalize pivot row.
            let inv = field.inv(self.at(r, c));
            for j in c..self.ncols {
                let v = field.mul(self.at(r, j), inv);
                self.set(r, j, v);
            }
            // Eliminate the column everywhere else.
            for i in 0..self.nrows {
                if i != r && self.at(i, c) != 0 {
                    let f = self.at(i, c);
                    for j in c..self.ncols {
                        let v = field.sub(self.at(i, j), field.mul(f, self.at(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.nrows {
                break;
            }
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.ncols;
        let (a, b) = (a.min(b), a.max(b));
        let (top, bot) = self.data.split_at_mut(b * n);
        top[a * n..(a + 1) * n].swap_with_slice(&mut bot[..n]);
    }

    /// Rank over GF(p) (non-destructive).
    pub fn rank(&self, field: PrimeField) -> usize {
        self.clone().rref(field).len()
    }

    /// Basis of the right kernel `{v : A v = 0}`.
    pub fn kernel_basis(&self, field: PrimeField) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let mut is_pivot = vec![false; self.ncols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u32; self.ncols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(m.at(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `A x = b` with free variables set to zero, or `None`
    /// if the system is inconsistent.
    pub fn solve(&self, b: &[u32], field: PrimeField) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.nrows, "rhs length mismatch");
        let mut aug = Mat::zero(self.nrows, self.ncols + 1);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, self.ncols, b[i]);
        }
        let pivots = aug.rref(field);
        if pivots.last() == Some(&self.ncols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![0u32; self.ncols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(row, self.ncols);
        }
        Some(x)
    }
}

/// An incrementally built row space in echelon form.
///
/// `insert` reduces a vector against the rows accumulated so far and keeps
/// it when independent, reporting whether the rank grew.  This is the core
/// of minimal-generator selection: candidates are offered in degree order
/// and only those enlarging the span survive.
#[derive(Debug, Clone)]
pub struct RowSpace {
    field: PrimeField,
    ncols: usize,
    /// Rows in echelon form, sorted by pivot column.
    rows: Vec<Vec<u32>>,
    /// Pivot column of each stored row.
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        RowSpace {
            field,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces `v` in place against the stored rows.
    pub fn reduce(&self, v: &mut [u32]) {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                for j in pc..self.ncols {
                    v[j] = self.field.sub(v[j], self.field.mul(c, row[j]));
                }
            }
        }
    }

    /// Offers a vector; returns `true` (and absorbs it) if it is independent
    /// of the current span.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        // Normalize so the pivot is 1, keeping reduce() multiplier-free.
        let inv = self.field.inv(v[pc]);
        for c in v[pc..].iter_mut() {
            *c = self.field.mul(*c, inv);
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.rows.insert(at, v);
        self.pivots.insert(at, pc);
        true
    }

    /// Whether `v` lies in the current span.
    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&c| c == 0)
    }
}
