//! Compressed sparse row matrices and sparse vectors.
//!
//! Every matrix in the engine (author-paper, mesh-paper, experience and
//! update incidences, transition matrices) is a [`SparseIncidence`]. Rows are
//! stored with strictly increasing column indices and no explicit zeros, so
//! merges and intersections are linear in the supports.

use std::cmp::Ordering;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IncidenceError {
    #[error("entry ({row}, {col}) out of bounds for {n_rows}x{n_cols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        n_rows: usize,
        n_cols: usize,
    },
    #[error("entry ({row}, {col}) has non-positive value {value}")]
    NonPositive { row: usize, col: usize, value: f64 },
    #[error("entry ({row}, {col}) given with conflicting values {first} and {second}")]
    ConflictingDuplicate {
        row: usize,
        col: usize,
        first: f64,
        second: f64,
    },
}

/// Borrowed view of a sparse vector: parallel index/value slices, indices
/// strictly increasing.
#[derive(Debug, Clone, Copy)]
pub struct SparseRow<'a> {
    dim: usize,
    indices: &'a [usize],
    values: &'a [f64],
}

impl<'a> SparseRow<'a> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn indices(&self) -> &'a [usize] {
        self.indices
    }

    pub fn values(&self) -> &'a [f64] {
        self.values
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + 'a {
        self.indices.iter().copied().zip(self.values.iter().copied())
    }

    pub fn get(&self, index: usize) -> f64 {
        match self.indices.binary_search(&index) {
            Ok(pos) => self.values[pos],
            Err(_) => 0.0,
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    pub fn entry_sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn norm_l2(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn to_owned(&self) -> SparseVec {
        SparseVec {
            dim: self.dim,
            indices: self.indices.to_vec(),
            values: self.values.to_vec(),
        }
    }

    pub fn dot(&self, other: SparseRow<'_>) -> Result<f64, AlgebraError> {
        check_dims("dot", self.dim, other.dim)?;
        let mut acc = 0.0;
        intersect(*self, other, |_, x, y| acc += x * y);
        Ok(acc)
    }

    /// Hadamard product; the support of the result is the intersection of
    /// the two supports.
    pub fn elementwise_product(&self, other: SparseRow<'_>) -> Result<SparseVec, AlgebraError> {
        check_dims("elementwise_product", self.dim, other.dim)?;
        let mut out = SparseVec::zeros(self.dim);
        intersect(*self, other, |i, x, y| {
            let v = x * y;
            if v != 0.0 {
                out.indices.push(i);
                out.values.push(v);
            }
        });
        Ok(out)
    }

    pub fn add(&self, other: SparseRow<'_>) -> Result<SparseVec, AlgebraError> {
        check_dims("add", self.dim, other.dim)?;
        let mut out = SparseVec::zeros(self.dim);
        let (a, b) = (self, other);
        let (mut i, mut j) = (0, 0);
        while i < a.indices.len() || j < b.indices.len() {
            let ord = match (a.indices.get(i), b.indices.get(j)) {
                (Some(x), Some(y)) => x.cmp(y),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            let (idx, v) = match ord {
                Ordering::Less => {
                    i += 1;
                    (a.indices[i - 1], a.values[i - 1])
                }
                Ordering::Greater => {
                    j += 1;
                    (b.indices[j - 1], b.values[j - 1])
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (a.indices[i - 1], a.values[i - 1] + b.values[j - 1])
                }
            };
            if v != 0.0 {
                out.indices.push(idx);
                out.values.push(v);
            }
        }
        Ok(out)
    }

    /// Row-vector times matrix: `self · m`.
    pub fn mul_matrix(&self, m: &SparseIncidence) -> Result<SparseVec, AlgebraError> {
        check_dims("vector-matrix product", self.dim, m.n_rows)?;
        let mut acc = vec![0.0; m.n_cols];
        let mut touched = Vec::new();
        for (r, x) in self.iter() {
            for (c, y) in m.row(r).iter() {
                if acc[c] == 0.0 {
                    touched.push(c);
                }
                acc[c] += x * y;
            }
        }
        touched.sort_unstable();
        touched.dedup();
        let mut out = SparseVec::zeros(m.n_cols);
        for c in touched {
            if acc[c] != 0.0 {
                out.indices.push(c);
                out.values.push(acc[c]);
            }
        }
        Ok(out)
    }
}

fn check_dims(op: &'static str, left: usize, right: usize) -> Result<(), AlgebraError> {
    if left == right {
        Ok(())
    } else {
        Err(AlgebraError::DimensionMismatch { op, left, right })
    }
}

fn intersect(a: SparseRow<'_>, b: SparseRow<'_>, mut f: impl FnMut(usize, f64, f64)) {
    let (mut i, mut j) = (0, 0);
    while i < a.indices.len() && j < b.indices.len() {
        match a.indices[i].cmp(&b.indices[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                f(a.indices[i], a.values[i], b.values[j]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// Owned sparse vector with sorted indices and no stored zeros.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseVec {
    dim: usize,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseVec {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        assert!(index < dim, "unit index {index} out of range {dim}");
        Self {
            dim,
            indices: vec![index],
            values: vec![1.0],
        }
    }

    /// Builds from arbitrary `(index, value)` pairs; repeated indices are
    /// summed and zeros dropped.
    pub fn from_pairs(dim: usize, pairs: impl IntoIterator<Item = (usize, f64)>) -> Self {
        let mut pairs: Vec<(usize, f64)> = pairs.into_iter().collect();
        pairs.sort_by_key(|&(i, _)| i);
        let mut out = Self::zeros(dim);
        for (i, v) in pairs {
            assert!(i < dim, "index {i} out of range {dim}");
            if out.indices.last() == Some(&i) {
                *out.values.last_mut().unwrap() += v;
            } else {
                out.indices.push(i);
                out.values.push(v);
            }
        }
        out.drop_zeros();
        out
    }

    /// Dense slice to sparse.
    pub fn from_dense(values: &[f64]) -> Self {
        Self::from_pairs(values.len(), values.iter().copied().enumerate())
    }

    /// 0/1 vector over `dim` with the given support.
    pub fn indicator(dim: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut indices: Vec<usize> = support.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        if let Some(&last) = indices.last() {
            assert!(last < dim, "index {last} out of range {dim}");
        }
        let values = vec![1.0; indices.len()];
        Self {
            dim,
            indices,
            values,
        }
    }

    fn drop_zeros(&mut self) {
        let mut k = 0;
        for i in 0..self.indices.len() {
            if self.values[i] != 0.0 {
                self.indices[k] = self.indices[i];
                self.values[k] = self.values[i];
                k += 1;
            }
        }
        self.indices.truncate(k);
        self.values.truncate(k);
    }

    pub fn view(&self) -> SparseRow<'_> {
        SparseRow {
            dim: self.dim,
            indices: &self.indices,
            values: &self.values,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, index: usize) -> f64 {
        self.view().get(index)
    }

    pub fn entry_sum(&self) -> f64 {
        self.view().entry_sum()
    }

    /// Replaces every stored value with 1.
    pub fn binarize(mut self) -> Self {
        self.values.iter_mut().for_each(|v| *v = 1.0);
        self
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (i, v) in self.view().iter() {
            out[i] = v;
        }
        out
    }
}

/// Sparse matrix in CSR layout. Values are strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseIncidence {
    n_rows: usize,
    n_cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseIncidence {
    pub fn empty(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            indptr: vec![0; n_rows + 1],
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Repeated triplets
    /// with the same value collapse into one entry; repeats with a different
    /// value are rejected.
    pub fn from_triplets(
        n_rows: usize,
        n_cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self, IncidenceError> {
        let mut entries: Vec<(usize, usize, f64)> = triplets.into_iter().collect();
        for &(row, col, value) in &entries {
            if row >= n_rows || col >= n_cols {
                return Err(IncidenceError::OutOfBounds {
                    row,
                    col,
                    n_rows,
                    n_cols,
                });
            }
            if value.is_nan() || value <= 0.0 {
                return Err(IncidenceError::NonPositive { row, col, value });
            }
        }
        entries.sort_by_key(|e| (e.0, e.1));

        let mut m = Self::empty(n_rows, n_cols);
        let mut last: Option<(usize, usize, f64)> = None;
        for (row, col, value) in entries {
            if let Some((r, c, v)) = last {
                if r == row && c == col {
                    if v != value {
                        return Err(IncidenceError::ConflictingDuplicate {
                            row,
                            col,
                            first: v,
                            second: value,
                        });
                    }
                    continue;
                }
            }
            m.indices.push(col);
            m.values.push(value);
            m.indptr[row + 1] += 1;
            last = Some((row, col, value));
        }
        for r in 0..n_rows {
            m.indptr[r + 1] += m.indptr[r];
        }
        Ok(m)
    }

    /// Unit-valued matrix from `(row, col)` pairs.
    pub fn from_pairs(
        n_rows: usize,
        n_cols: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, IncidenceError> {
        Self::from_triplets(n_rows, n_cols, pairs.into_iter().map(|(r, c)| (r, c, 1.0)))
    }

    /// Stacks sparse rows. Every row must have dimension `n_cols`.
    pub fn from_rows(n_cols: usize, rows: &[SparseVec]) -> Self {
        let mut m = Self::empty(0, n_cols);
        m.indptr = vec![0];
        for row in rows {
            assert_eq!(row.dim(), n_cols, "row dimension mismatch");
            m.indices.extend_from_slice(row.indices());
            m.values.extend_from_slice(row.values());
            m.indptr.push(m.indices.len());
        }
        m.n_rows = rows.len();
        m
    }

    pub fn identity(n: usize) -> Self {
        Self::from_pairs(n, n, (0..n).map(|i| (i, i))).expect("identity is well-formed")
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_rows, self.n_cols)
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn row(&self, r: usize) -> SparseRow<'_> {
        let (start, end) = (self.indptr[r], self.indptr[r + 1]);
        SparseRow {
            dim: self.n_cols,
            indices: &self.indices[start..end],
            values: &self.values[start..end],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.row(r).get(c)
    }

    /// All stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n_rows).flat_map(move |r| self.row(r).iter().map(move |(c, v)| (r, c, v)))
    }

    pub fn is_binary(&self) -> bool {
        self.values.iter().all(|&v| v == 1.0)
    }

    pub fn transpose(&self) -> Self {
        let mut counts = vec![0usize; self.n_cols + 1];
        for &c in &self.indices {
            counts[c + 1] += 1;
        }
        for c in 0..self.n_cols {
            counts[c + 1] += counts[c];
        }
        let indptr = counts.clone();
        let mut next = counts;
        let mut indices = vec![0; self.nnz()];
        let mut values = vec![0.0; self.nnz()];
        for r in 0..self.n_rows {
            for (c, v) in self.row(r).iter() {
                let slot = next[c];
                indices[slot] = r;
                values[slot] = v;
                next[c] += 1;
            }
        }
        Self {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            indptr,
            indices,
            values,
        }
    }

    /// Matrix times column vector.
    pub fn matvec(&self, v: &SparseVec) -> Result<SparseVec, AlgebraError> {
        check_dims("matvec", self.n_cols, v.dim())?;
        let mut pairs = Vec::new();
        for r in 0..self.n_rows {
            let x = self.row(r).dot(v.view())?;
            if x != 0.0 {
                pairs.push((r, x));
            }
        }
        Ok(SparseVec::from_pairs(self.n_rows, pairs))
    }

    /// Sparse-sparse product (row-by-row accumulation).
    pub fn matmul(&self, other: &SparseIncidence) -> Result<SparseIncidence, AlgebraError> {
        check_dims("matmul", self.n_cols, other.n_rows)?;
        let rows: Result<Vec<SparseVec>, _> =
            (0..self.n_rows).map(|r| self.row(r).mul_matrix(other)).collect();
        Ok(Self::from_rows(other.n_cols, &rows?))
    }

    fn map_rows(&self, f: impl Fn(SparseRow<'_>) -> Option<f64>) -> Self {
        let mut out = self.clone();
        for r in 0..self.n_rows {
            if let Some(scale) = f(self.row(r)) {
                for v in &mut out.values[self.indptr[r]..self.indptr[r + 1]] {
                    *v *= scale;
                }
            }
        }
        out
    }

    /// Divides each nonempty row by its entry sum.
    pub fn row_normalized(&self) -> Self {
        self.map_rows(|row| {
            let s = row.entry_sum();
            (s > 0.0).then(|| 1.0 / s)
        })
    }

    /// Divides each nonempty column by its entry sum.
    pub fn column_normalized(&self) -> Self {
        self.transpose().row_normalized().transpose()
    }

    pub fn binarized(&self) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v = 1.0);
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.n_rows)
            .map(|r| SparseVec::from_pairs(self.n_cols, self.row(r).iter()).to_dense())
            .collect()
    }
}
