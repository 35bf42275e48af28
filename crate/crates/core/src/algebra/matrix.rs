//! Dense and sparse matrices over a [`EuclideanRing`].

use std::collections::BTreeMap;

use super::integer::Integer;
use super::ring::{EuclideanRing, Integers};
use super::AlgebraError;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

/// Dense integer matrix.
pub type IntMatrix = DenseMatrix<Integer>;

impl<E: Clone> DenseMatrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        DenseMatrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(AlgebraError::Shape(format!("row of length {} in a matrix with {cols} columns", row.len())));
            }
            data.extend(row);
        }
        Ok(DenseMatrix { rows: r, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        DenseMatrix { rows: self.cols, cols: self.rows, data }
    }
}

impl<E: Clone + PartialEq> DenseMatrix<E> {
    pub fn zeros<R: EuclideanRing<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, ring.zero())
    }

    pub fn identity<R: EuclideanRing<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn mul<R: EuclideanRing<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let v = ring.add(out.get(i, j), &ring.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Adds `factor` times row `src` to row `dst`.
    pub fn add_row_multiple<R: EuclideanRing<Elem = E>>(&mut self, ring: &R, dst: usize, src: usize, factor: &E) {
        if ring.is_zero(factor) {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(src, j);
            if ring.is_zero(s) {
                continue;
            }
            let v = ring.add(self.get(dst, j), &ring.mul(factor, s));
            self.set(dst, j, v);
        }
    }

    /// Adds `factor` times column `src` to column `dst`.
    pub fn add_col_multiple<R: EuclideanRing<Elem = E>>(&mut self, ring: &R, dst: usize, src: usize, factor: &E) {
        if ring.is_zero(factor) {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, src);
            if ring.is_zero(s) {
                continue;
            }
            let v = ring.add(self.get(i, dst), &ring.mul(factor, s));
            self.set(i, dst, v);
        }
    }

    /// Replaces rows `(a, b)` by `(s*a + t*b, u*a + v*b)`.
    pub fn combine_rows<R: EuclideanRing<Elem = E>>(&mut self, ring: &R, a: usize, b: usize, m: [&E; 4]) {
        let [s, t, u, v] = m;
        for j in 0..self.cols {
            let x = self.get(a, j).clone();
            let y = self.get(b, j).clone();
            self.set(a, j, ring.add(&ring.mul(s, &x), &ring.mul(t, &y)));
            self.set(b, j, ring.add(&ring.mul(u, &x), &ring.mul(v, &y)));
        }
    }

    /// Replaces columns `(a, b)` by `(s*a + t*b, u*a + v*b)`.
    pub fn combine_cols<R: EuclideanRing<Elem = E>>(&mut self, ring: &R, a: usize, b: usize, m: [&E; 4]) {
        let [s, t, u, v] = m;
        for i in 0..self.rows {
            let x = self.get(i, a).clone();
            let y = self.get(i, b).clone();
            self.set(i, a, ring.add(&ring.mul(s, &x), &ring.mul(t, &y)));
            self.set(i, b, ring.add(&ring.mul(u, &x), &ring.mul(v, &y)));
        }
    }

    pub fn to_sparse<R: EuclideanRing<Elem = E>>(&self, ring: &R) -> SparseMatrix<E> {
        let mut cols = vec![Vec::new(); self.cols];
        for (j, col) in cols.iter_mut().enumerate() {
            for i in 0..self.rows {
                let v = self.get(i, j);
                if !ring.is_zero(v) {
                    col.push((i, v.clone()));
                }
            }
        }
        SparseMatrix { nrows: self.rows, cols }
    }
}

impl IntMatrix {
    /// Builds an integer matrix from small entries.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<IntMatrix, AlgebraError> {
        let cols = rows.first().map_or(0, |r| r.len());
        DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Integer::from(v)).collect()).collect(), cols)
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<Integer, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Integer::ONE);
        }
        let mut a = self.clone();
        let mut sign = Integer::ONE;
        let mut prev = Integer::ONE;
        for k in 0..n {
            let piv = (k..n).find(|&i| !a.get(i, k).is_zero());
            let Some(piv) = piv else { return Ok(Integer::ZERO) };
            if piv != k {
                a.swap_rows(piv, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(a.get(i, j) * a.get(k, k)) - &(a.get(i, k) * a.get(k, j));
                    a.set(i, j, v.div_exact(&prev).expect("Bareiss step is exact"));
                }
                a.set(i, k, Integer::ZERO);
            }
            prev = a.get(k, k).clone();
        }
        Ok(&sign * a.get(n - 1, n - 1))
    }
}

/// Column-major sparse matrix; each column is sorted by row with no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    nrows: usize,
    cols: Vec<Vec<(usize, E)>>,
}

/// Sparse integer matrix.
pub type SparseIntMatrix = SparseMatrix<Integer>;

impl<E: Clone + PartialEq> SparseMatrix<E> {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![Vec::new(); ncols] }
    }

    /// Builds a matrix from `(row, col, value)` triplets, summing repeats.
    pub fn from_triplets<R: EuclideanRing<Elem = E>>(
        ring: &R,
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, E)>,
    ) -> Result<Self, AlgebraError> {
        let mut acc: Vec<BTreeMap<usize, E>> = vec![BTreeMap::new(); ncols];
        for (i, j, v) in triplets {
            if i >= nrows || j >= ncols {
                return Err(AlgebraError::Shape(format!("entry ({i},{j}) outside {nrows}x{ncols}")));
            }
            let slot = acc[j].entry(i).or_insert_with(|| ring.zero());
            *slot = ring.add(slot, &v);
        }
        let cols = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !ring.is_zero(v)).collect())
            .collect();
        Ok(SparseMatrix { nrows, cols })
    }

    /// Builds a matrix from already sorted, zero-free columns.
    pub fn from_columns(nrows: usize, cols: Vec<Vec<(usize, E)>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(cols.iter().all(|c| c.iter().all(|(i, _)| *i < nrows)));
        SparseMatrix { nrows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(usize, E)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, E)>] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<Vec<(usize, E)>> {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get<R: EuclideanRing<Elem = E>>(&self, ring: &R, i: usize, j: usize) -> E {
        match self.cols[j].binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.cols[j][k].1.clone(),
            Err(_) => ring.zero(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut cols = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                cols[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { nrows: self.cols.len(), cols }
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, keep: &[usize]) -> Self {
        SparseMatrix { nrows: self.nrows, cols: keep.iter().map(|&j| self.cols[j].clone()).collect() }
    }

    /// Keeps the rows where `map` is `Some`, renumbered by it.
    pub fn remap_rows(&self, new_nrows: usize, map: &[Option<usize>]) -> Self {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                let mut out: Vec<(usize, E)> =
                    c.iter().filter_map(|(i, v)| map[*i].map(|ni| (ni, v.clone()))).collect();
                out.sort_by_key(|e| e.0);
                out
            })
            .collect();
        SparseMatrix { nrows: new_nrows, cols }
    }

    pub fn mul_vec<R: EuclideanRing<Elem = E>>(&self, ring: &R, x: &[E]) -> Vec<E> {
        let mut out = vec![ring.zero(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            if ring.is_zero(&x[j]) {
                continue;
            }
            for (i, v) in col {
                out[*i] = ring.add(&out[*i], &ring.mul(v, &x[j]));
            }
        }
        out
    }

    /// Applies the matrix to a sparse vector.
    pub fn mul_sparse_vec<R: EuclideanRing<Elem = E>>(&self, ring: &R, x: &[(usize, E)]) -> Vec<(usize, E)> {
        let mut acc: BTreeMap<usize, E> = BTreeMap::new();
        for (j, xj) in x {
            for (i, v) in &self.cols[*j] {
                let slot = acc.entry(*i).or_insert_with(|| ring.zero());
                *slot = ring.add(slot, &ring.mul(v, xj));
            }
        }
        acc.into_iter().filter(|(_, v)| !ring.is_zero(v)).collect()
    }

    pub fn mul<R: EuclideanRing<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self, AlgebraError> {
        if self.ncols() != other.nrows {
            return Err(AlgebraError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows,
                self.ncols(),
                other.nrows,
                other.ncols()
            )));
        }
        let cols = other.cols.iter().map(|c| self.mul_sparse_vec(ring, c)).collect();
        Ok(SparseMatrix { nrows: self.nrows, cols })
    }

    pub fn to_dense<R: EuclideanRing<Elem = E>>(&self, ring: &R) -> DenseMatrix<E> {
        let mut d = DenseMatrix::zeros(ring, self.nrows, self.ncols());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                d.set(*i, j, v.clone());
            }
        }
        d
    }

    /// Reduces integer entries into `ring`.
    pub fn map_ring<R: EuclideanRing>(&self, ring: &R, f: impl Fn(&E) -> R::Elem) -> SparseMatrix<R::Elem> {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                c.iter()
                    .filter_map(|(i, v)| {
                        let w = f(v);
                        (!ring.is_zero(&w)).then_some((*i, w))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix { nrows: self.nrows, cols }
    }
}

impl SparseIntMatrix {
    /// Reduces an integer matrix into another ring.
    pub fn reduce<R: EuclideanRing>(&self, ring: &R) -> SparseMatrix<R::Elem> {
        self.map_ring(ring, |v| ring.from_integer(v))
    }

    pub fn from_dense_int(m: &IntMatrix) -> Self {
        m.to_sparse(&Integers)
    }
}

/// `a + f*b` for sorted sparse vectors.
pub(crate) fn axpy<R: EuclideanRing>(
    ring: &R,
    a: &[(usize, R::Elem)],
    f: &R::Elem,
    b: &[(usize, R::Elem)],
) -> Vec<(usize, R::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, ring.mul(f, &b[j].1)));
            j += 1;
        } else {
            let v = ring.add(&a[i].1, &ring.mul(f, &b[j].1));
            if !ring.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `s*a + t*b` for sorted sparse vectors.
pub(crate) fn lin_comb<R: EuclideanRing>(
    ring: &R,
    s: &R::Elem,
    a: &[(usize, R::Elem)],
    t: &R::Elem,
    b: &[(usize, R::Elem)],
) -> Vec<(usize, R::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let push = |out: &mut Vec<(usize, R::Elem)>, k: usize, v: R::Elem| {
        if !ring.is_zero(&v) {
            out.push((k, v));
        }
    };
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            push(&mut out, a[i].0, ring.mul(s, &a[i].1));
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            push(&mut out, b[j].0, ring.mul(t, &b[j].1));
            j += 1;
        } else {
            push(&mut out, a[i].0, ring.add(&ring.mul(s, &a[i].1), &ring.mul(t, &b[j].1)));
            i += 1;
            j += 1;
        }
    }
    out
}

pub(crate) fn sparse_entry<E: Clone>(v: &[(usize, E)], i: usize) -> Option<&E> {
    v.binary_search_by_key(&i, |e| e.0).ok().map(|k| &v[k].1)
}
