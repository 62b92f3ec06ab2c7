//! Generic exact linear algebra over any field-like element type.
//!
//! `Matrix<T>` works for `T = Rational` and `T = RatFunc` (a polynomial
//! matrix is viewed in its fraction field).  Elimination is ordinary Gaussian
//! elimination over the fraction field; every inverse, nullspace and solution
//! is re-verified by multiplication before being returned, so a bug in the
//! elimination can only ever surface as a loud panic, not a wrong answer.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Zero};

use super::poly::Poly;
use super::scalar::Rational;

/// Everything the elimination code needs from a field element.
/// Blanket-implemented; `Rational` and `RatFunc` both qualify.
pub trait FieldScalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl<T> FieldScalar for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
{
}

#[derive(Debug, Clone, PartialEq)]
pub enum MatError {
    NonSquare,
    Singular,
    ShapeMismatch,
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::NonSquare => write!(f, "matrix is not square"),
            MatError::Singular => write!(f, "matrix is singular"),
            MatError::ShapeMismatch => write!(f, "matrix shapes do not match"),
        }
    }
}

impl std::error::Error for MatError {}

/// Row-major dense matrix.  Invariant: entries.len() = rows × cols.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: FieldScalar> Matrix<T> {
    // ---- Constructors ----

    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Matrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for k in 0..n {
            *m.get_mut(k, k) = T::one();
        }
        m
    }

    /// Column vector from a slice.
    pub fn column(entries: Vec<T>) -> Self {
        let n = entries.len();
        Matrix {
            rows: n,
            cols: 1,
            entries,
        }
    }

    /// Row vector from a slice.
    pub fn row(entries: Vec<T>) -> Self {
        let n = entries.len();
        Matrix {
            rows: 1,
            cols: n,
            entries,
        }
    }

    pub fn diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        let mut m = Matrix::zero(n, n);
        for (k, d) in diag.iter().enumerate() {
            *m.get_mut(k, k) = d.clone();
        }
        m
    }

    // ---- Access ----

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row_vec(&self, r: usize) -> Vec<T> {
        (0..self.cols).map(|c| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row_vec(r)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *m.get_mut(c, r) = self.get(r, c).clone();
            }
        }
        m
    }

    pub fn map<U: FieldScalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    // ---- Arithmetic ----

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out: Matrix<T> = Matrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let add = a.clone() * rhs.get(k, c).clone();
                    let cur = out.get(r, c).clone();
                    *out.get_mut(r, c) = cur + add;
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        assert!(self.is_square(), "powers need a square matrix");
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    // ---- Elimination ----

    /// Reduced row echelon form; returns (rref, pivot column indices).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // first nonzero entry in this column at or below `row`
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    let a = m.get(p, c).clone();
                    let b = m.get(row, c).clone();
                    *m.get_mut(p, c) = b;
                    *m.get_mut(row, c) = a;
                }
            }
            let inv = T::one() / m.get(row, col).clone();
            for c in col..m.cols {
                let v = m.get(row, c).clone() * inv.clone();
                *m.get_mut(row, c) = v;
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let f = m.get(r, col).clone();
                    for c in col..m.cols {
                        let v = m.get(r, c).clone() - f.clone() * m.get(row, c).clone();
                        *m.get_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact determinant by row elimination.  Errors on non-square input.
    pub fn det(&self) -> Result<T, MatError> {
        if !self.is_square() {
            return Err(MatError::NonSquare);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(T::zero());
            };
            if p != col {
                det = -det;
                for c in 0..n {
                    let a = m.get(p, c).clone();
                    let b = m.get(col, c).clone();
                    *m.get_mut(p, c) = b;
                    *m.get_mut(col, c) = a;
                }
            }
            let pivot = m.get(col, col).clone();
            det = det * pivot.clone();
            for r in (col + 1)..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone() / pivot.clone();
                for c in col..n {
                    let v = m.get(r, c).clone() - f.clone() * m.get(col, c).clone();
                    *m.get_mut(r, c) = v;
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse; the product M·M⁻¹ is re-checked against the identity.
    pub fn inverse(&self) -> Result<Self, MatError> {
        if !self.is_square() {
            return Err(MatError::NonSquare);
        }
        let n = self.rows;
        // Gauss-Jordan on [M | I]
        let mut aug = Matrix::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                *aug.get_mut(r, c) = self.get(r, c).clone();
            }
            *aug.get_mut(r, n + r) = T::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &p)| p != k) {
            return Err(MatError::Singular);
        }
        let mut inv = Matrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                *inv.get_mut(r, c) = red.get(r, n + c).clone();
            }
        }
        assert_eq!(
            self.mul(&inv),
            Matrix::identity(n),
            "inverse verification failed"
        );
        Ok(inv)
    }

    /// Basis of the right kernel as column vectors; empty when the kernel is
    /// trivial.  Each basis vector is re-checked to satisfy M·v = 0.
    pub fn nullspace(&self) -> Vec<Self> {
        let (red, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = Matrix::zero(self.cols, 1);
            *v.get_mut(fc, 0) = T::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                *v.get_mut(pcol, 0) = -red.get(prow, fc).clone();
            }
            assert!(
                self.mul(&v).is_zero_matrix(),
                "nullspace verification failed"
            );
            basis.push(v);
        }
        basis
    }

    /// One exact solution of A·x = b if the system is consistent; the
    /// solution is re-checked by multiplication.  b may have several columns.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows, "A and b must have equal row counts");
        let n = self.cols;
        let mut aug = Matrix::zero(self.rows, n + b.cols);
        for r in 0..self.rows {
            for c in 0..n {
                *aug.get_mut(r, c) = self.get(r, c).clone();
            }
            for c in 0..b.cols {
                *aug.get_mut(r, n + c) = b.get(r, c).clone();
            }
        }
        let (red, pivots) = aug.rref();
        // a pivot in the b-block means the system is inconsistent
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Matrix::zero(n, b.cols);
        for (prow, &pcol) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                *x.get_mut(pcol, c) = red.get(prow, n + c).clone();
            }
        }
        assert_eq!(self.mul(&x), *b, "solve verification failed");
        Some(x)
    }
}

impl<T: FieldScalar + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

// ---- Contract-level free functions ----

pub fn mat_det<T: FieldScalar>(m: &Matrix<T>) -> Result<T, MatError> {
    m.det()
}

pub fn mat_inverse<T: FieldScalar>(m: &Matrix<T>) -> Result<Matrix<T>, MatError> {
    m.inverse()
}

pub fn mat_nullspace<T: FieldScalar>(m: &Matrix<T>) -> Vec<Matrix<T>> {
    m.nullspace()
}

pub fn solve_linear<T: FieldScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Option<Matrix<T>> {
    a.solve(b)
}

/// Characteristic data of a rational matrix M: the polynomial
/// det(M − t·1) and the coefficient matrices C_m of
/// adj(M − t·1) = Σ_m C_m·t^m.
///
/// The pair is verified symbolically before being returned:
/// (M − t·1)·adj(M − t·1) = det(M − t·1)·1 as an identity of polynomial
/// matrices (coefficient by coefficient).
pub fn char_poly_adjugate(m: &Matrix<Rational>) -> Result<(Poly, Vec<Matrix<Rational>>), MatError> {
    if !m.is_square() {
        return Err(MatError::NonSquare);
    }
    let n = m.rows();
    if n == 0 {
        // empty matrix: det(M − t·1) = 1, adjugate has no coefficients
        return Ok((Poly::one(), vec![]));
    }
    // Faddeev-LeVerrier for p̂(t) = det(t·1 − M) = t^n + ĉ_{n−1}t^{n−1} + … + ĉ_0:
    //   N_1 = I, ĉ_{n−1} = −tr(M·N_1)/1, N_{k+1} = M·N_k + ĉ_{n−k}·I, …
    let mut p_hat = vec![Rational::zero(); n + 1];
    p_hat[n] = Rational::one();
    let mut nk = Matrix::<Rational>::identity(n);
    // auxiliary matrices: adj(t·1 − M) = Σ_{k=1..n} N_k t^{n−k}
    let mut aux: Vec<Matrix<Rational>> = Vec::with_capacity(n);
    for k in 1..=n {
        aux.push(nk.clone());
        let mn = m.mul(&nk);
        let trace = (0..n).fold(Rational::zero(), |acc, d| acc + mn.get(d, d));
        let c = -trace / Rational::from_integer(k.into());
        p_hat[n - k] = c.clone();
        nk = mn;
        for d in 0..n {
            let v = nk.get(d, d).clone() + c.clone();
            *nk.get_mut(d, d) = v;
        }
    }
    // det(M − t·1) = (−1)^n p̂(t);  adj(M − t·1) = (−1)^{n−1} adj(t·1 − M)
    let det_sign = if n % 2 == 0 { 1 } else { -1 };
    let adj_sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
    let det_poly = Poly::from_coeffs(
        p_hat
            .iter()
            .map(|c| c * Rational::from_integer(det_sign.into()))
            .collect(),
    );
    // reorder: coefficient of t^m in adj(t·1 − M) is N_{n−m}
    let mut adj: Vec<Matrix<Rational>> = Vec::with_capacity(n);
    for mdeg in 0..n {
        let nk = &aux[n - 1 - mdeg];
        adj.push(nk.scale(&Rational::from_integer(adj_sign.into())));
    }
    // symbolic verification: (M − t·1)·Σ C_m t^m = det·1, coefficient-wise.
    // t^m coefficient of the product: M·C_m − C_{m−1}.
    for mdeg in 0..=n {
        let mut lhs = Matrix::<Rational>::zero(n, n);
        if mdeg < n {
            lhs = m.mul(&adj[mdeg]);
        }
        if mdeg > 0 {
            lhs = lhs.sub(&adj[mdeg - 1]);
        }
        let rhs = Matrix::identity(n).scale(&det_poly.coeff(mdeg));
        assert_eq!(lhs, rhs, "adjugate product identity failed at degree {mdeg}");
    }
    Ok((det_poly, adj))
}
