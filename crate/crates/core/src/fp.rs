//! Exact arithmetic and linear algebra over the prime field F_p.
//!
//! Two matrix flavours live here: [`DenseMatrix`] for the small systems that
//! come up when choosing cohomology bases or solving compatibility equations,
//! and [`SparseMatrix`] (compressed columns) for nerve boundary maps, whose
//! ranks are found by column reduction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime below 2^16, so that products of two residues fit in a `u32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..1 << 16).contains(&p) || !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.0
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a non-zero residue.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.0), "inverse of zero in F_{}", self.0);
        self.pow(a, self.0 as u64 - 2)
    }

    /// `(-1)^k` as a residue.
    #[inline]
    pub fn sign(self, k: usize) -> u32 {
        if k.is_multiple_of(2) {
            1 % self.0
        } else {
            self.0 - 1
        }
    }

    /// Whether `n` is a power of this prime (including `p^0 = 1`).
    pub fn is_power(self, mut n: usize) -> bool {
        if n == 0 {
            return false;
        }
        while n.is_multiple_of(self.0 as usize) {
            n /= self.0 as usize;
        }
        n == 1
    }

    /// The largest power of `p` dividing `n`.
    pub fn part_of(self, mut n: usize) -> usize {
        let mut part = 1;
        while n > 0 && n.is_multiple_of(self.0 as usize) {
            n /= self.0 as usize;
            part *= self.0 as usize;
        }
        part
    }

    pub fn divides(self, n: usize) -> bool {
        n.is_multiple_of(self.0 as usize)
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Row-major dense matrix with entries in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        DenseMatrix { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as u32))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &DenseMatrix, p: Prime) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        out.data[idx] = p.add(out.data[idx], p.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32], p: Prime) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| p.add(acc, p.mul(a, b)))
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, p: Prime) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = p.inv(self.get(r, c));
            for j in 0..self.cols {
                let v = self.get(r, j);
                self.set(r, j, p.mul(v, inv));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = self.get(r, j);
                    if v != 0 {
                        let cur = self.get(i, j);
                        self.set(i, j, p.sub(cur, p.mul(f, v)));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, p: Prime) -> usize {
        self.clone().rref(p).len()
    }

    /// A basis of `{x : A x = 0}`, one vector per free column, in echelon order.
    pub fn nullspace(&self, p: Prime) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(p);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = p.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `A x = b`, returning one solution if any exists.
    pub fn solve(&self, b: &[u32], p: Prime) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref(p);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// Sparse matrix over F_p in compressed-column form. Row indices within each
/// column are strictly increasing and stored values are non-zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<u32>,
    vals: Vec<u32>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            col_ptr: vec![0; cols + 1],
            row_idx: Vec::new(),
            vals: Vec::new(),
        }
    }

    /// Assembles a matrix from `(row, col, value)` triplets. Duplicates are
    /// summed and zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        mut triplets: Vec<(u32, u32, u32)>,
        p: Prime,
    ) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (c, r));
        let mut columns: Vec<Vec<(u32, u32)>> = vec![Vec::new(); cols];
        let mut i = 0;
        while i < triplets.len() {
            let (r, c, _) = triplets[i];
            debug_assert!((r as usize) < rows && (c as usize) < cols);
            let mut v = 0;
            while i < triplets.len() && (triplets[i].0, triplets[i].1) == (r, c) {
                v = p.add(v, triplets[i].2 % p.get());
                i += 1;
            }
            if v != 0 {
                columns[c as usize].push((r, v));
            }
        }
        Self::from_sorted_columns(rows, columns)
    }

    /// Builds a matrix from columns already sorted by row with non-zero values.
    pub fn from_sorted_columns(rows: usize, columns: Vec<Vec<(u32, u32)>>) -> Self {
        let cols = columns.len();
        let nnz = columns.iter().map(Vec::len).sum();
        let mut col_ptr = Vec::with_capacity(cols + 1);
        let mut row_idx = Vec::with_capacity(nnz);
        let mut vals = Vec::with_capacity(nnz);
        col_ptr.push(0);
        for col in columns {
            for (r, v) in col {
                debug_assert!(v != 0 && (r as usize) < rows);
                row_idx.push(r);
                vals.push(v);
            }
            col_ptr.push(row_idx.len());
        }
        SparseMatrix {
            rows,
            cols,
            col_ptr,
            row_idx,
            vals,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    pub fn column(&self, c: usize) -> impl Iterator<Item = (u32, u32)> + '_ {
        let range = self.col_ptr[c]..self.col_ptr[c + 1];
        self.row_idx[range.clone()]
            .iter()
            .copied()
            .zip(self.vals[range].iter().copied())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        (0..self.cols).flat_map(move |c| self.column(c).map(move |(r, v)| (r, c as u32, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        let range = self.col_ptr[c]..self.col_ptr[c + 1];
        match self.row_idx[range.clone()].binary_search(&(r as u32)) {
            Ok(pos) => self.vals[range.start + pos],
            Err(_) => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.row_idx.is_empty()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut counts = vec![0usize; self.rows + 1];
        for &r in &self.row_idx {
            counts[r as usize + 1] += 1;
        }
        for r in 0..self.rows {
            counts[r + 1] += counts[r];
        }
        let mut next = counts.clone();
        let mut row_idx = vec![0u32; self.nnz()];
        let mut vals = vec![0u32; self.nnz()];
        for c in 0..self.cols {
            for (r, v) in self.column(c) {
                let slot = next[r as usize];
                row_idx[slot] = c as u32;
                vals[slot] = v;
                next[r as usize] += 1;
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            col_ptr: counts,
            row_idx,
            vals,
        }
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix, p: Prime) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut acc = vec![0u32; self.rows];
        let mut touched: Vec<u32> = Vec::new();
        let mut columns = Vec::with_capacity(other.cols);
        for c in 0..other.cols {
            for (k, b) in other.column(c) {
                for (r, a) in self.column(k as usize) {
                    let slot = &mut acc[r as usize];
                    if *slot == 0 {
                        touched.push(r);
                    }
                    *slot = p.add(*slot, p.mul(a, b));
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut col = Vec::new();
            for &r in &touched {
                let v = std::mem::take(&mut acc[r as usize]);
                if v != 0 {
                    col.push((r, v));
                }
            }
            touched.clear();
            columns.push(col);
        }
        SparseMatrix::from_sorted_columns(self.rows, columns)
    }

    /// `self * v` for a dense vector.
    pub fn mul_vec(&self, v: &[u32], p: Prime) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![0u32; self.rows];
        for (c, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (r, a) in self.column(c) {
                out[r as usize] = p.add(out[r as usize], p.mul(a, x));
            }
        }
        out
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            d.set(r as usize, c as usize, v);
        }
        d
    }

    /// Rank over F_p by column reduction. The orientation with fewer columns
    /// is reduced, since rank is transpose invariant.
    pub fn rank(&self, p: Prime) -> usize {
        if self.cols == 0 || self.rows == 0 || self.is_zero() {
            return 0;
        }
        if self.rows < self.cols {
            self.transpose().rank_by_columns(p)
        } else {
            self.rank_by_columns(p)
        }
    }

    fn rank_by_columns(&self, p: Prime) -> usize {
        let mut reducer = ColumnReducer::new(self.rows, p);
        for c in 0..self.cols {
            reducer.push(self.column(c));
        }
        reducer.rank()
    }
}

/// Incremental column reduction: each pushed column is reduced against the
/// stored pivots (pivot = largest row index) and kept if non-zero.
pub struct ColumnReducer {
    p: Prime,
    pivot_of_row: Vec<u32>,
    pivots: Vec<Vec<(u32, u32)>>,
    scratch: Vec<(u32, u32)>,
    work: Vec<(u32, u32)>,
}

const NO_PIVOT: u32 = u32::MAX;

impl ColumnReducer {
    pub fn new(rows: usize, p: Prime) -> Self {
        ColumnReducer {
            p,
            pivot_of_row: vec![NO_PIVOT; rows],
            pivots: Vec::new(),
            scratch: Vec::new(),
            work: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `column` and returns whether it was independent of the
    /// previously pushed columns.
    pub fn push(&mut self, column: impl IntoIterator<Item = (u32, u32)>) -> bool {
        self.push_pivot(column).is_some()
    }

    /// Like [`push`](Self::push), returning the pivot row of the reduced
    /// column when it is non-zero.
    pub fn push_pivot(&mut self, column: impl IntoIterator<Item = (u32, u32)>) -> Option<u32> {
        let p = self.p;
        self.work.clear();
        self.work.extend(column);
        loop {
            let Some(&(low, coef)) = self.work.last() else {
                return None;
            };
            let piv_idx = self.pivot_of_row[low as usize];
            if piv_idx == NO_PIVOT {
                let inv = p.inv(coef);
                let col: Vec<(u32, u32)> = self
                    .work
                    .iter()
                    .map(|&(r, v)| (r, p.mul(v, inv)))
                    .collect();
                self.pivot_of_row[low as usize] = self.pivots.len() as u32;
                self.pivots.push(col);
                return Some(low);
            }
            // work -= coef * pivot; the pivot has leading coefficient 1
            let factor = p.neg(coef);
            let pivot = &self.pivots[piv_idx as usize];
            self.scratch.clear();
            let (mut i, mut j) = (0, 0);
            let (a, b) = (&self.work, pivot);
            while i < a.len() && j < b.len() {
                let (ra, va) = a[i];
                let (rb, vb) = b[j];
                if ra < rb {
                    self.scratch.push((ra, va));
                    i += 1;
                } else if rb < ra {
                    self.scratch.push((rb, p.mul(vb, factor)));
                    j += 1;
                } else {
                    let v = p.add(va, p.mul(vb, factor));
                    if v != 0 {
                        self.scratch.push((ra, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            self.scratch.extend_from_slice(&a[i..]);
            self.scratch
                .extend(b[j..].iter().map(|&(r, v)| (r, p.mul(v, factor))));
            std::mem::swap(&mut self.work, &mut self.scratch);
        }
    }
}
