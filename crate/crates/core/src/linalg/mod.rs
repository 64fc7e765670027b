//! Exact dense linear algebra over [`Scalar`].
//!
//! Tensor products everywhere use the lexicographic basis ordering with the
//! left factor major: `e_i ⊗ e_j` has index `i * dim_right + j`.

mod echelon;
pub(crate) mod modular;
mod split;

use std::fmt;

use itertools::Itertools;

pub use echelon::RowReducer;
pub use split::{split_commutative_algebra, SplitFailure};

use crate::scalar::{lcm_conductor, Scalar};

/// A sparse row: `(column, value)` pairs with distinct columns.
pub type SparseRow = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: &[Vec<Scalar>], nrows: usize) -> Self {
        Self::from_fn(nrows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Smallest conductor containing every entry.
    pub fn conductor(&self) -> u32 {
        self.data.iter().fold(1, |n, s| lcm_conductor(n, s.conductor()))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in apply");
        let mut out = vec![Scalar::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += &(a * x);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * k).collect() }
    }

    /// `self += k * other`
    pub fn add_scaled(&mut self, k: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if k.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += &(k * b);
            }
        }
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        (0..self.rows).fold(Scalar::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Kronecker product under the left-major ordering.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        kronecker(self, other)
    }

    pub fn rank(&self) -> usize {
        let mut r = RowReducer::new(self.cols);
        r.extend(self.row_vecs());
        r.rank()
    }

    pub fn kernel(&self) -> Subspace {
        kernel(self)
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::span(self.cols, self.row_vecs())
    }

    pub fn column_space(&self) -> Subspace {
        Subspace::span(self.rows, (0..self.cols).map(|j| self.column(j)))
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        echelon::bareiss_det(self.row_vecs())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n));
        let (rows, pivots) = echelon::rref(aug.row_vecs(), 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| rows[i][n + j].clone()))
    }

    /// Some solution of `self · x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let aug: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let (rows, pivots) = echelon::rref(aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &p) in rows.iter().zip(&pivots) {
            x[p] = row[self.cols].clone();
        }
        Some(x)
    }

    pub fn to_sparse_rows(&self) -> Vec<SparseRow> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .map(|(j, s)| (j, s.clone()))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "[{}]", self.row(i).iter().join(", "))?;
        }
        Ok(())
    }
}

pub fn kronecker(a: &Matrix, b: &Matrix) -> Matrix {
    let (br, bc) = (b.rows, b.cols);
    let mut out = Matrix::zeros(a.rows * br, a.cols * bc);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    let y = b.get(k, l);
                    if !y.is_zero() {
                        out.set(i * br + k, j * bc + l, x * y);
                    }
                }
            }
        }
    }
    out
}

/// A linear subspace of `K^ambient`, stored as its RREF basis.
///
/// The reduced echelon basis is unique, so equality of subspaces is equality
/// of representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I: IntoIterator<Item = Vec<Scalar>>>(ambient: usize, vectors: I) -> Self {
        let vs: Vec<Vec<Scalar>> = vectors.into_iter().collect();
        assert!(vs.iter().all(|v| v.len() == ambient), "vector length differs from ambient dimension");
        let (basis, pivots) = echelon::rref(vs, ambient);
        Subspace { ambient, basis, pivots }
    }

    fn from_reducer(r: RowReducer) -> Self {
        Subspace { ambient: r.ncols(), basis: r.rows().to_vec(), pivots: r.pivots().to_vec() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after subtracting its projection along the echelon basis.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut r = RowReducer::new(self.ambient);
        r.extend(self.basis.iter().cloned());
        r.extend(other.basis.iter().cloned());
        Subspace::from_reducer(r)
    }

    /// Orthogonal complement under the standard bilinear pairing.
    pub fn annihilator(&self) -> Subspace {
        let mut r = RowReducer::new(self.ambient);
        r.extend(self.basis.iter().cloned());
        Subspace::span(self.ambient, r.kernel_basis())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.is_subspace_of(other) {
            return self.clone();
        }
        if other.is_subspace_of(self) {
            return other.clone();
        }
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Non-pivot coordinates: the standard vectors there span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Image of the subspace under a linear map given by its matrix.
    pub fn image(&self, map: &Matrix) -> Subspace {
        Subspace::span(map.rows(), self.basis.iter().map(|b| map.apply(b)))
    }

    pub fn as_matrix(&self) -> Matrix {
        if self.basis.is_empty() {
            return Matrix::zeros(0, self.ambient);
        }
        Matrix::from_rows(self.basis.clone())
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

pub fn kernel(m: &Matrix) -> Subspace {
    kernel_of_rows(m.cols(), m.to_sparse_rows())
}

/// Null space of a sparse system.
///
/// Repeated column indices within a row are summed.
///
/// The columns are split into connected components of the row/column
/// incidence graph and solved independently. A component whose rank modulo
/// a large prime is already full has a zero kernel and is skipped before any
/// exact elimination.
pub fn kernel_of_rows(ncols: usize, rows: Vec<SparseRow>) -> Subspace {
    let rows: Vec<SparseRow> = rows
        .into_iter()
        .map(|r| {
            let mut merged: std::collections::BTreeMap<usize, Scalar> = Default::default();
            for (c, s) in r {
                *merged.entry(c).or_default() += &s;
            }
            merged.into_iter().filter(|(_, s)| !s.is_zero()).collect::<SparseRow>()
        })
        .filter(|r| !r.is_empty())
        .collect();
    let conductor = rows
        .iter()
        .flatten()
        .fold(1, |n, (_, s)| lcm_conductor(n, s.conductor()));

    // union-find over columns
    let mut parent: Vec<usize> = (0..ncols).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let n = parent[c];
            parent[c] = r;
            c = n;
        }
        r
    }
    let mut touched = vec![false; ncols];
    for r in &rows {
        let first = r[0].0;
        touched[first] = true;
        for (c, _) in &r[1..] {
            touched[*c] = true;
            let (a, b) = (find(&mut parent, first), find(&mut parent, *c));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut comp_cols: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for c in 0..ncols {
        if touched[c] {
            let root = find(&mut parent, c);
            comp_cols.entry(root).or_default().push(c);
        }
    }
    let mut comp_rows: std::collections::BTreeMap<usize, Vec<SparseRow>> = Default::default();
    for r in rows {
        let root = find(&mut parent, r[0].0);
        comp_rows.entry(root).or_default().push(r);
    }

    let mut pieces: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for c in (0..ncols).filter(|&c| !touched[c]) {
        pieces.push((c, unit_vector(ncols, c)));
    }
    for (root, cols) in comp_cols {
        let crow = comp_rows.remove(&root).unwrap_or_default();
        let mut local = vec![usize::MAX; ncols];
        for (i, &c) in cols.iter().enumerate() {
            local[c] = i;
        }
        let local_rows: Vec<SparseRow> = crow
            .into_iter()
            .map(|r| r.into_iter().map(|(c, s)| (local[c], s)).collect())
            .collect();
        if modular::rank_mod_p(&local_rows, cols.len(), conductor) == Some(cols.len()) {
            continue;
        }
        let mut red = RowReducer::new(cols.len());
        for chunk in local_rows.chunks(cols.len().max(8)) {
            red.extend(chunk.iter().map(|r| {
                let mut d = vec![Scalar::zero(); cols.len()];
                for (c, s) in r {
                    d[*c] = s.clone();
                }
                d
            }));
            if red.is_full() {
                break;
            }
        }
        let local_kernel = Subspace::span(cols.len(), red.kernel_basis());
        for (v, &p) in local_kernel.basis.iter().zip(&local_kernel.pivots) {
            let mut full = vec![Scalar::zero(); ncols];
            for (i, s) in v.iter().enumerate() {
                full[cols[i]] = s.clone();
            }
            pieces.push((cols[p], full));
        }
    }
    // components have disjoint supports, so merging their echelon bases by pivot stays reduced
    pieces.sort_by_key(|(p, _)| *p);
    Subspace {
        ambient: ncols,
        pivots: pieces.iter().map(|(p, _)| *p).collect(),
        basis: pieces.into_iter().map(|(_, v)| v).collect(),
    }
}
