use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::{ArithError, Cyclotomic};

/// Dense matrix over the cyclotomic field, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Cyclotomic::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cyclotomic::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Cyclotomic) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn diag(entries: &[Cyclotomic]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Cyclotomic) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self, ArithError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(ArithError::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: n, cols: m, data: rows.into_iter().flatten().collect() })
    }

    /// Parses rows of expressions, e.g. `&[&["1", "w"], &["0", "1"]]`.
    pub fn parse_rows(rows: &[&[&str]]) -> Result<Self, ArithError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?,
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Cyclotomic>]) -> Self {
        let n = cols.first().map_or(0, Vec::len);
        Self::from_fn(n, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn permutation(perm: &[usize]) -> Self {
        // column j maps to row perm[j]
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m[(i, j)] = Cyclotomic::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Cyclotomic] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Cyclotomic> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
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

    pub fn scale(&self, c: &Cyclotomic) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn conj(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Cyclotomic::conj).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() }))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Returns `c` when `self = c * I`.
    pub fn as_scalar(&self) -> Option<Cyclotomic> {
        if !self.is_square() || !self.is_diagonal() {
            return None;
        }
        let c = if self.rows == 0 { Cyclotomic::one() } else { self[(0, 0)].clone() };
        (0..self.rows).all(|i| self[(i, i)] == c).then_some(c)
    }

    pub fn is_unitary(&self) -> bool {
        self.is_square() && self.adjoint().mul(self).is_identity()
    }

    pub fn trace(&self) -> Cyclotomic {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn pow(&self, e: u64) -> Matrix {
        let mut acc = Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            let a = &self[(r / other.rows, c / other.cols)];
            if a.is_zero() {
                return Cyclotomic::zero();
            }
            a * &other[(r % other.rows, c % other.cols)]
        })
    }

    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m[(self.rows + r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    /// Row/column reordering: entry `(i, j)` of the result is entry `(order[i], order[j])`.
    pub fn reorder(&self, order: &[usize]) -> Matrix {
        self.select(order, order)
    }

    /// Reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // pick the simplest nonzero entry in the column
            let Some(p) = (r..self.rows).filter(|&i| !self[(i, c)].is_zero()).min_by_key(|&i| self[(i, c)].weight())
            else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self[(r, c)].inverse().expect("nonzero pivot");
            for j in c..self.cols {
                if !self[(r, j)].is_zero() {
                    self[(r, j)] = &self[(r, j)] * &inv;
                }
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if !self[(r, j)].is_zero() {
                        let t = &f * &self[(r, j)];
                        self[(i, j)] -= &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right nullspace `{x : self x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Cyclotomic>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Cyclotomic::zero(); self.cols];
                v[f] = Cyclotomic::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&m[(r, f)];
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Cyclotomic {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Cyclotomic::one();
        for c in 0..n {
            let Some(p) = (c..n).filter(|&i| !m[(i, c)].is_zero()).min_by_key(|&i| m[(i, c)].weight()) else {
                return Cyclotomic::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = &det * &piv;
            let inv = piv.inverse().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        let t = &f * &m[(c, j)];
                        m[(i, j)] -= &t;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix, ArithError> {
        if !self.is_square() {
            return Err(ArithError::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Matrix::from_fn(n, n, |r, c| aug[(r, n + c)].clone()))
    }

    /// Solves `self X = rhs` for `X`, when the system is consistent.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let (n, m, k) = (self.rows, self.cols, rhs.cols);
        let mut aug = Matrix::from_fn(n, m + k, |r, c| if c < m { self[(r, c)].clone() } else { rhs[(r, c - m)].clone() });
        let pivots = aug.rref();
        if pivots.iter().any(|&p| p >= m) {
            return None;
        }
        let mut x = Matrix::zeros(m, k);
        for (r, &p) in pivots.iter().enumerate() {
            for c in 0..k {
                x[(p, c)] = aug[(r, m + c)].clone();
            }
        }
        Some(x)
    }

    /// Approximate complex entries, for display and float cross-checks.
    pub fn to_complex_rows(&self) -> Vec<Vec<(f64, f64)>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|e| {
                let z = e.to_complex();
                (z.re, z.im)
            }).collect())
            .collect()
    }

    /// Nested string rows in the canonical text form.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|e| e.to_string()).collect()).collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Cyclotomic;
    fn index(&self, (r, c): (usize, usize)) -> &Cyclotomic {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Cyclotomic {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Hermitian inner product `sum conj(u_i) v_i`.
pub fn inner(u: &[Cyclotomic], v: &[Cyclotomic]) -> Cyclotomic {
    assert_eq!(u.len(), v.len(), "inner product dimension mismatch");
    u.iter()
        .zip(v)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .map(|(a, b)| &a.conj() * b)
        .sum()
}

pub fn norm_sq(v: &[Cyclotomic]) -> Cyclotomic {
    inner(v, v)
}

pub fn scale_vec(v: &[Cyclotomic], c: &Cyclotomic) -> Vec<Cyclotomic> {
    v.iter().map(|x| x * c).collect()
}

pub fn add_vec(u: &[Cyclotomic], v: &[Cyclotomic]) -> Vec<Cyclotomic> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn sub_vec(u: &[Cyclotomic], v: &[Cyclotomic]) -> Vec<Cyclotomic> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

/// Square matrix stored by columns as `(row, value)` lists; column `j` is the
/// image of basis vector `j`.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    n: usize,
    cols: Vec<Vec<(usize, Cyclotomic)>>,
}

impl SparseMatrix {
    pub fn identity(n: usize) -> Self {
        SparseMatrix { n, cols: (0..n).map(|j| vec![(j, Cyclotomic::one())]).collect() }
    }

    pub fn from_columns(n: usize, cols: Vec<Vec<(usize, Cyclotomic)>>) -> Self {
        assert_eq!(cols.len(), n);
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.retain(|(_, v)| !v.is_zero());
                c.sort_by_key(|(r, _)| *r);
                c
            })
            .collect();
        SparseMatrix { n, cols }
    }

    pub fn from_dense(m: &Matrix) -> Self {
        assert!(m.is_square());
        let n = m.rows();
        let cols = (0..n)
            .map(|j| (0..n).filter(|&i| !m[(i, j)].is_zero()).map(|i| (i, m[(i, j)].clone())).collect())
            .collect();
        SparseMatrix { n, cols }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn column(&self, j: usize) -> &[(usize, Cyclotomic)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Cyclotomic {
        self.cols[j].iter().find(|(r, _)| *r == i).map_or_else(Cyclotomic::zero, |(_, v)| v.clone())
    }

    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(v.len(), self.n);
        let mut out = vec![Cyclotomic::zero(); self.n];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, a) in &self.cols[j] {
                out[*i] += &(a * x);
            }
        }
        out
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.n, other.n);
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: std::collections::BTreeMap<usize, Cyclotomic> = Default::default();
                for (k, b) in col {
                    for (i, a) in &self.cols[*k] {
                        let e = acc.entry(*i).or_insert_with(Cyclotomic::zero);
                        *e += &(a * b);
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix { n: self.n, cols }
    }

    pub fn scale(&self, c: &Cyclotomic) -> SparseMatrix {
        if c.is_zero() {
            return SparseMatrix { n: self.n, cols: vec![Vec::new(); self.n] };
        }
        let cols = self.cols.iter().map(|col| col.iter().map(|(i, v)| (*i, v * c)).collect()).collect();
        SparseMatrix { n: self.n, cols }
    }

    pub fn adjoint(&self) -> SparseMatrix {
        let mut cols: Vec<Vec<(usize, Cyclotomic)>> = vec![Vec::new(); self.n];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                cols[*i].push((j, v.conj()));
            }
        }
        cols.iter_mut().for_each(|c| c.sort_by_key(|(r, _)| *r));
        SparseMatrix { n: self.n, cols }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                m[(*i, j)] = v.clone();
            }
        }
        m
    }

    pub fn is_unitary(&self) -> bool {
        let p = self.adjoint().mul(self);
        p.cols.iter().enumerate().all(|(j, c)| c.len() == 1 && c[0].0 == j && c[0].1.is_one())
    }

    /// `V^dagger M V` for a matrix `V` whose columns are the given vectors.
    pub fn compress(&self, basis: &[Vec<Cyclotomic>]) -> Matrix {
        let images: Vec<Vec<Cyclotomic>> = basis.iter().map(|b| self.mul_vec(b)).collect();
        Matrix::from_fn(basis.len(), basis.len(), |r, c| inner(&basis[r], &images[c]))
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {{ n: {}, nnz: {} }}", self.n, self.nnz())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[&str]]) -> Matrix {
        Matrix::parse_rows(rows).unwrap()
    }

    #[test]
    fn hadamard_like_is_unitary() {
        let h = m(&[&["1/sqrt3", "1/sqrt3", "1/sqrt3"], &["1/sqrt3", "w/sqrt3", "w^2/sqrt3"], &["1/sqrt3", "w^2/sqrt3", "w/sqrt3"]]);
        assert!(h.is_unitary());
        let h2 = h.mul(&h);
        assert_eq!(h2, Matrix::permutation(&[0, 2, 1]));
        assert_eq!(h.pow(4), Matrix::identity(3));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&["1", "2", "0"], &["w", "1", "i"], &["0", "sqrt2", "3"]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let expected = m(&[&["1*1*3 - 1*i*sqrt2 - 2*(w*3 - 0)"]])[(0, 0)].clone();
        assert_eq!(a.det(), expected);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = m(&[&["1", "w"], &["w^2", "1"]]);
        assert_eq!(a.rank(), 1);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(Cyclotomic::is_zero));
    }

    #[test]
    fn sparse_matches_dense() {
        let a = m(&[&["0", "1", "0"], &["w", "0", "0"], &["0", "0", "i"]]);
        let b = m(&[&["1/2", "sqrt3/2", "0"], &["-sqrt3/2", "1/2", "0"], &["0", "0", "1"]]);
        let sa = SparseMatrix::from_dense(&a);
        let sb = SparseMatrix::from_dense(&b);
        assert_eq!(sa.mul(&sb).to_dense(), a.mul(&b));
        assert_eq!(sa.adjoint().to_dense(), a.adjoint());
        assert!(sa.is_unitary() && sb.is_unitary());
        let v: Vec<Cyclotomic> = ["1", "w", "2"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(sa.mul_vec(&v), a.mul_vec(&v));
    }

    #[test]
    fn kron_and_direct_sum() {
        let x = Matrix::permutation(&[1, 0]);
        let k = x.kron(&Matrix::identity(2));
        assert_eq!(k, Matrix::permutation(&[2, 3, 0, 1]));
        let d = x.direct_sum(&Matrix::identity(1));
        assert_eq!(d, Matrix::permutation(&[1, 0, 2]));
    }
}
