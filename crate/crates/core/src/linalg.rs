//! Dense matrices over a finite field.
//!
//! Column subsets are `u64` bitmasks (bit `j` = column `j`), which caps the
//! number of columns that can be addressed that way at 64.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::FiniteField;

/// Set of column indices, bit `j` standing for column `j`.
pub type ColumnMask = u64;

pub const MAX_MASK_COLUMNS: usize = 64;

/// Builds a mask from indices, rejecting anything `>= cols`.
pub fn mask_from_indices(indices: &[usize], cols: usize) -> Result<ColumnMask> {
    let mut mask = 0u64;
    for &index in indices {
        if index >= cols || index >= MAX_MASK_COLUMNS {
            return Err(Error::ColumnOutOfRange { index, cols });
        }
        mask |= 1 << index;
    }
    Ok(mask)
}

pub fn full_mask(cols: usize) -> ColumnMask {
    if cols >= 64 {
        u64::MAX
    } else {
        (1u64 << cols) - 1
    }
}

#[derive(Clone)]
pub struct MatrixGF {
    field: Arc<FiniteField>,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl PartialEq for MatrixGF {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
    }
}

impl Eq for MatrixGF {}

impl fmt::Debug for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "MatrixGF over GF({}) {}x{}",
            self.field.order(),
            self.rows,
            self.cols
        )?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of [`MatrixGF::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatrixGF,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl MatrixGF {
    pub fn new(
        field: Arc<FiniteField>,
        rows: usize,
        cols: usize,
        entries: Vec<u32>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&c| !field.contains(c)) {
            return Err(Error::Invalid(format!(
                "{bad} is not an element of GF({})",
                field.order()
            )));
        }
        Ok(Self {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(field: Arc<FiniteField>, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(
        field: Arc<FiniteField>,
        rows: usize,
        columns: &[Vec<u32>],
    ) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension("column length mismatch".into()));
        }
        let cols = columns.len();
        let mut entries = vec![0u32; rows * cols];
        for (j, col) in columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                entries[i * cols + j] = v;
            }
        }
        Self::new(field, rows, cols, entries)
    }

    pub fn zeros(field: Arc<FiniteField>, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Arc<FiniteField>, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.entries[i * size + i] = 1;
        }
        m
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        assert!(self.field.contains(v));
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(Arc::clone(&self.field), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if *self.field != *other.field {
            return Err(Error::MixedFields);
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(Arc::clone(f), self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = f.add(out.entries[idx], f.mul(a, other.get(l, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&c| c == 0)
    }

    /// Canonical reduced row echelon form: pivots equal 1 and are the only
    /// nonzero entry of their column.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pivot_row) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(rank, pivot_row);
            let inv = f.inv(m.get(rank, col)).expect("pivot is nonzero");
            m.scale_row(rank, inv);
            for r in 0..m.rows {
                if r != rank {
                    let factor = m.get(r, col);
                    if factor != 0 {
                        m.add_scaled_row(r, rank, f.neg(factor));
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        Rref {
            matrix: m,
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        let mut span = SpanState::new(Arc::clone(&self.field), self.cols);
        for r in 0..self.rows {
            span.insert(self.row(r));
        }
        span.rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: u32) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            self.entries[idx] = self.field.mul(self.entries[idx], factor);
        }
    }

    /// row[target] += factor * row[source]
    fn add_scaled_row(&mut self, target: usize, source: usize, factor: u32) {
        for c in 0..self.cols {
            let s = self.entries[source * self.cols + c];
            if s != 0 {
                let idx = target * self.cols + c;
                self.entries[idx] = self.field.add(self.entries[idx], self.field.mul(factor, s));
            }
        }
    }

    fn check_mask(&self, mask: ColumnMask) -> Result<()> {
        if self.cols < 64 && mask >> self.cols != 0 {
            let index = 63 - mask.leading_zeros() as usize;
            return Err(Error::ColumnOutOfRange {
                index,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// Rank of the submatrix made of the columns in `mask`.
    pub fn rank_of_columns(&self, mask: ColumnMask) -> Result<usize> {
        self.check_mask(mask)?;
        let mut span = SpanState::new(Arc::clone(&self.field), self.rows);
        let mut col = vec![0u32; self.rows];
        for j in (0..self.cols.min(64)).filter(|j| mask >> j & 1 == 1) {
            for (i, c) in col.iter_mut().enumerate() {
                *c = self.get(i, j);
            }
            span.insert(&col);
            if span.rank() == self.rows {
                break;
            }
        }
        Ok(span.rank())
    }

    /// `dim C(S)`: the dimension of the row-space vectors supported inside
    /// `mask`, computed as `rank(G) - rank(columns outside mask)`.
    pub fn kernel_dimension_on_support(&self, mask: ColumnMask) -> Result<usize> {
        self.check_mask(mask)?;
        let complement = !mask & full_mask(self.cols);
        Ok(self.rank() - self.rank_of_columns(complement)?)
    }

    pub fn select_columns(&self, mask: ColumnMask) -> Result<Self> {
        self.check_mask(mask)?;
        let picked: Vec<Vec<u32>> = (0..self.cols)
            .filter(|&j| mask >> j & 1 == 1)
            .map(|j| self.column(j))
            .collect();
        Self::from_columns(Arc::clone(&self.field), self.rows, &picked)
    }

    /// Nonzero rows of the canonical RREF.
    pub fn row_space_basis(&self) -> Self {
        let r = self.rref();
        let entries = r.matrix.entries[..r.rank * self.cols].to_vec();
        Self {
            field: Arc::clone(&self.field),
            rows: r.rank,
            cols: self.cols,
            entries,
        }
    }

    /// Basis (as rows) of `{x : self * x^T = 0}`.
    pub fn null_space(&self) -> Self {
        let f = &self.field;
        let r = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let mut out = Self::zeros(Arc::clone(f), free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.entries[i * self.cols + fc] = 1;
            for (pr, &pc) in r.pivots.iter().enumerate() {
                out.entries[i * self.cols + pc] = f.neg(r.matrix.get(pr, fc));
            }
        }
        out
    }
}

/// True iff both matrices generate the same row space.
pub fn same_row_space(a: &MatrixGF, b: &MatrixGF) -> Result<bool> {
    if *a.field != *b.field {
        return Err(Error::MixedFields);
    }
    if a.cols != b.cols {
        return Err(Error::Dimension(format!(
            "{} vs {} columns",
            a.cols, b.cols
        )));
    }
    Ok(a.row_space_basis() == b.row_space_basis())
}

/// Incrementally grown span of vectors in F_q^dim, kept as a mutually
/// reduced basis with unit pivots.
#[derive(Clone, Debug)]
pub struct SpanState {
    field: Arc<FiniteField>,
    dim: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    scratch: Vec<u32>,
}

impl SpanState {
    pub fn new(field: Arc<FiniteField>, dim: usize) -> Self {
        Self {
            field,
            dim,
            basis: Vec::new(),
            pivots: Vec::new(),
            scratch: vec![0; dim],
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.dim
    }

    pub fn clear(&mut self) {
        self.basis.clear();
        self.pivots.clear();
    }

    /// Copies another state's basis into this one without reallocating.
    pub fn copy_from(&mut self, other: &SpanState) {
        debug_assert_eq!(self.dim, other.dim);
        self.pivots.clear();
        self.pivots.extend_from_slice(&other.pivots);
        self.basis.truncate(other.basis.len());
        for (i, b) in other.basis.iter().enumerate() {
            if i < self.basis.len() {
                self.basis[i].copy_from_slice(b);
            } else {
                self.basis.push(b.clone());
            }
        }
    }

    fn reduce_into_scratch(&mut self, v: &[u32]) {
        assert_eq!(v.len(), self.dim, "vector length must match span dimension");
        let f = &self.field;
        self.scratch.copy_from_slice(v);
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = self.scratch[p];
            if c != 0 {
                let factor = f.neg(c);
                for (s, &x) in self.scratch.iter_mut().zip(b) {
                    if x != 0 {
                        *s = f.add(*s, f.mul(factor, x));
                    }
                }
            }
        }
    }

    pub fn contains(&mut self, v: &[u32]) -> bool {
        self.reduce_into_scratch(v);
        self.scratch.iter().all(|&c| c == 0)
    }

    /// Adds `v`; returns true iff the rank went up.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        if self.is_full() {
            assert_eq!(v.len(), self.dim, "vector length must match span dimension");
            return false;
        }
        self.reduce_into_scratch(v);
        let Some(pivot) = self.scratch.iter().position(|&c| c != 0) else {
            return false;
        };
        let f = Arc::clone(&self.field);
        let inv = f.inv(self.scratch[pivot]).expect("nonzero pivot");
        let new: Vec<u32> = self.scratch.iter().map(|&x| f.mul(x, inv)).collect();
        for b in self.basis.iter_mut() {
            let c = b[pivot];
            if c != 0 {
                let factor = f.neg(c);
                for (x, &y) in b.iter_mut().zip(&new) {
                    if y != 0 {
                        *x = f.add(*x, f.mul(factor, y));
                    }
                }
            }
        }
        self.basis.push(new);
        self.pivots.push(pivot);
        true
    }

    /// Basis rows sorted by pivot: the canonical RREF of the span.
    pub fn canonical_basis(&self) -> Vec<Vec<u32>> {
        let mut order: Vec<usize> = (0..self.basis.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        order.into_iter().map(|i| self.basis[i].clone()).collect()
    }
}
