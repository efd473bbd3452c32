//! Dense exact linear algebra over commutative rings and fields.

mod snf;

use std::fmt::Debug;
use std::ops::{Index, IndexMut};

use crate::scalars::Scalar;

pub use snf::{integer_kernel, smith_normal_form, Smith};

/// A commutative ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn from_scalar(s: &Scalar) -> Self;
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// The unit matrix `e_{ij}`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        m[(i, j)] = R::one();
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

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Matrix::<R>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a.mul(b);
                        out[(i, j)] = out[(i, j)].add(&t);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Matrix<R> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| c.mul(a)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix<R> {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn apply(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(R::zero(), |acc, (a, b)| if a.is_zero() || b.is_zero() { acc } else { acc.add(&a.mul(b)) })
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Matrix<R> {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Row-major flattening, used as a coordinate vector.
    pub fn flatten(&self) -> Vec<R> {
        self.data.clone()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

/// Nullspace basis of a matrix over an exact field.
///
/// Forward elimination is fraction-free (Bareiss): each update is a 2×2
/// determinant divided exactly by the previous pivot. Back substitution then
/// normalises each free variable to 1.
pub fn nullspace(m: &Matrix<Scalar>) -> Vec<Vec<Scalar>> {
    let (ech, pivots) = bareiss_echelon(m);
    let n = m.cols();
    let mut basis = Vec::new();
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Scalar::zero(); n];
        v[free] = Scalar::one();
        for &(r, c) in pivots.iter().rev() {
            let mut acc = Scalar::zero();
            for j in (c + 1)..n {
                let a = &ech[(r, j)];
                if !a.is_zero() && !v[j].is_zero() {
                    acc += &(a * &v[j]);
                }
            }
            if !acc.is_zero() {
                v[c] = -(&acc / &ech[(r, c)]);
            }
        }
        basis.push(v);
    }
    basis
}

pub fn rank(m: &Matrix<Scalar>) -> usize {
    bareiss_echelon(m).1.len()
}

/// Fraction-free row echelon form. Returns the reduced matrix and the (row, column) pivots.
fn bareiss_echelon(m: &Matrix<Scalar>) -> (Matrix<Scalar>, Vec<(usize, usize)>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut prev = Scalar::one();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let piv = a[(r, c)].clone();
        for i in (r + 1)..rows {
            let f = a[(i, c)].clone();
            for j in (c + 1)..cols {
                let x = &(&piv * &a[(i, j)]) - &(&f * &a[(r, j)]);
                a[(i, j)] = if prev.is_one() { x } else { &x / &prev };
            }
            a[(i, c)] = Scalar::zero();
        }
        // columns left of c in rows below r are already zero
        prev = piv;
        pivots.push((r, c));
        r += 1;
    }
    (a, pivots)
}

/// Incrementally maintained reduced basis of a subspace of `F^n`.
///
/// Each stored vector has a distinct pivot column with entry 1, and every
/// stored vector is zero in all other pivot columns.
#[derive(Debug, Clone)]
pub struct SpanBuilder {
    dim: usize,
    basis: Vec<(usize, Vec<Scalar>)>,
}

impl SpanBuilder {
    pub fn new(dim: usize) -> Self {
        SpanBuilder {
            dim,
            basis: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `v` against the current basis; the residue is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (p, b) in &self.basis {
            if w[*p].is_zero() {
                continue;
            }
            let f = w[*p].clone();
            for (x, y) in w.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns `true` when the span grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv();
        let w: Vec<Scalar> = w.iter().map(|x| x * &inv).collect();
        for (_, b) in self.basis.iter_mut() {
            if !b[p].is_zero() {
                let f = b[p].clone();
                for (x, y) in b.iter_mut().zip(&w) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        self.basis.push((p, w));
        true
    }

    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.basis.iter().map(|(_, b)| b.clone()).collect()
    }
}
