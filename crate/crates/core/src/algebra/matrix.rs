//! Dense matrices and sparse column vectors.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ring::Pid;
use super::serde_int;

/// Row-major dense matrix over an arbitrary element type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

/// Exact integer matrix.
pub type IntMatrix = Matrix<BigInt>;

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<F, T>(&self, f: F) -> Matrix<T>
    where
        F: Fn(&E) -> T,
    {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

impl<E: Clone> Matrix<E> {
    pub fn zeros_in<P: Pid<Elem = E>>(pid: &P, rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, pid.zero())
    }

    pub fn identity_in<P: Pid<Elem = E>>(pid: &P, n: usize) -> Self {
        let mut m = Matrix::filled(n, n, pid.zero());
        for i in 0..n {
            m.set(i, i, pid.one());
        }
        m
    }

    pub fn mul_in<P: Pid<Elem = E>>(&self, pid: &P, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Matrix::filled(self.rows, other.cols, pid.zero());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if pid.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if pid.is_zero(b) {
                        continue;
                    }
                    let v = pid.add(out.get(i, j), &pid.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero_in<P: Pid<Elem = E>>(&self, pid: &P) -> bool {
        self.data.iter().all(|x| pid.is_zero(x))
    }

    /// Columns as sparse vectors.
    pub fn to_sparse_columns<P: Pid<Elem = E>>(&self, pid: &P) -> Vec<SparseVec<E>> {
        (0..self.cols)
            .map(|c| {
                (0..self.rows)
                    .filter(|&r| !pid.is_zero(self.get(r, c)))
                    .map(|r| (r, self.get(r, c).clone()))
                    .collect()
            })
            .collect()
    }

    pub fn from_sparse_columns<P: Pid<Elem = E>>(pid: &P, rows: usize, cols: &[SparseVec<E>]) -> Self {
        let mut m = Matrix::filled(rows, cols.len(), pid.zero());
        for (c, col) in cols.iter().enumerate() {
            for (r, v) in col {
                m.set(*r, c, v.clone());
            }
        }
        m
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, BigInt::zero())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix { rows, cols, data: entries.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        self.mul_in(&super::ring::Integers, other)
    }

    /// Inverse over the integers (`None` unless the determinant is a unit).
    pub fn inverse(&self) -> Option<IntMatrix> {
        use num_rational::BigRational;
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = self.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
                row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        for k in 0..n {
            let piv = (k..n).find(|&r| !a[r][k].is_zero())?;
            a.swap(k, piv);
            let inv = a[k][k].recip();
            for x in a[k].iter_mut() {
                *x *= &inv;
            }
            for i in 0..n {
                if i != k && !a[i][k].is_zero() {
                    let f = a[i][k].clone();
                    let pivot_row = a[k].clone();
                    for (x, y) in a[i].iter_mut().zip(pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
        }
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let x = &a[i][n + j];
                if !x.is_integer() {
                    return None;
                }
                out.set(i, j, x.to_integer());
            }
        }
        Some(out)
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }
}

/// JSON form: explicit shape plus row-major entries.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MatrixReport {
    pub rows: usize,
    pub cols: usize,
    #[serde(with = "serde_int::vec")]
    pub data: Vec<BigInt>,
}

impl From<&IntMatrix> for MatrixReport {
    fn from(m: &IntMatrix) -> Self {
        MatrixReport { rows: m.rows, cols: m.cols, data: m.data.clone() }
    }
}

impl From<MatrixReport> for IntMatrix {
    fn from(r: MatrixReport) -> Self {
        Matrix { rows: r.rows, cols: r.cols, data: r.data }
    }
}

/// Sparse vector as `(index, value)` pairs sorted by index, no zero values.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `x + a * y`.
pub fn axpy<P: Pid>(pid: &P, x: &SparseVec<P::Elem>, a: &P::Elem, y: &SparseVec<P::Elem>) -> SparseVec<P::Elem> {
    if pid.is_zero(a) {
        return x.clone();
    }
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i >= x.len() || y[j].0 < x[i].0 {
            let v = pid.mul(a, &y[j].1);
            if !pid.is_zero(&v) {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = pid.add(&x[i].1, &pid.mul(a, &y[j].1));
            if !pid.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `a * x + b * y`.
pub fn lin_comb<P: Pid>(
    pid: &P,
    a: &P::Elem,
    x: &SparseVec<P::Elem>,
    b: &P::Elem,
    y: &SparseVec<P::Elem>,
) -> SparseVec<P::Elem> {
    let ax = scale(pid, a, x);
    axpy(pid, &ax, b, y)
}

pub fn scale<P: Pid>(pid: &P, a: &P::Elem, x: &SparseVec<P::Elem>) -> SparseVec<P::Elem> {
    if pid.is_zero(a) {
        return Vec::new();
    }
    x.iter()
        .filter_map(|(i, v)| {
            let w = pid.mul(a, v);
            (!pid.is_zero(&w)).then_some((*i, w))
        })
        .collect()
}

pub fn sparse_get<'a, E>(x: &'a SparseVec<E>, index: usize) -> Option<&'a E> {
    x.binary_search_by_key(&index, |(i, _)| *i).ok().map(|k| &x[k].1)
}

/// Build a sparse vector from unsorted, possibly repeated entries.
pub fn sparse_from_entries<P: Pid>(pid: &P, mut entries: Vec<(usize, P::Elem)>) -> SparseVec<P::Elem> {
    entries.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<P::Elem> = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some((j, w)) if *j == i => *w = pid.add(w, &v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !pid.is_zero(v));
    out
}

/// Apply a sparse column matrix (columns indexed by `x`'s indices) to `x`.
pub fn apply_columns<P: Pid>(pid: &P, columns: &[SparseVec<P::Elem>], x: &SparseVec<P::Elem>) -> SparseVec<P::Elem> {
    let mut entries = Vec::new();
    for (j, a) in x {
        for (i, v) in &columns[*j] {
            entries.push((*i, pid.mul(a, v)));
        }
    }
    sparse_from_entries(pid, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Integers;

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_i64(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 2]);
        assert_eq!(m.determinant(), BigInt::from(6));
        let s = IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]);
        assert_eq!(s.determinant(), BigInt::from(-8));
        let z = IntMatrix::from_i64(2, 2, &[0, 1, 0, 1]);
        assert_eq!(z.determinant(), BigInt::from(0));
        let u = IntMatrix::from_i64(2, 2, &[2, 1, 1, 1]);
        assert_eq!(u.mul(&u.inverse().unwrap()), IntMatrix::identity(2));
        assert!(s.inverse().is_none());
    }

    #[test]
    fn axpy_cancels() {
        let z = Integers;
        let x: SparseVec<BigInt> = vec![(0, 1.into()), (2, 3.into())];
        let y: SparseVec<BigInt> = vec![(2, 1.into()), (5, 1.into())];
        let r = axpy(&z, &x, &BigInt::from(-3), &y);
        assert_eq!(r, vec![(0, 1.into()), (5, (-3).into())]);
    }
}
