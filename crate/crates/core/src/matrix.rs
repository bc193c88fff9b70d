//! Dense matrices over the rational-function field.
//!
//! Sizes here are tiny (rows and columns = number of torus-fixed points,
//! at most a handful), so plain Gauss–Jordan with exact arithmetic and
//! first-nonzero pivoting is both fast enough and deterministic.

use crate::poly::QRat;
use crate::ratfun::{AlgebraError, RationalFunction};
use crate::series::{Neg, SeriesCoeff};

#[derive(Clone, PartialEq, Debug)]
pub struct RfMatrix {
    rows: usize,
    cols: usize,
    arity: usize,
    data: Vec<RationalFunction>,
}

impl RfMatrix {
    pub fn zero(rows: usize, cols: usize, arity: usize) -> Self {
        RfMatrix {
            rows,
            cols,
            arity,
            data: vec![RationalFunction::zero(arity); rows * cols],
        }
    }

    pub fn identity(n: usize, arity: usize) -> Self {
        let mut m = Self::zero(n, n, arity);
        for i in 0..n {
            *m.at_mut(i, i) = RationalFunction::one(arity);
        }
        m
    }

    pub fn from_rows(arity: usize, rows: Vec<Vec<RationalFunction>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row);
        }
        RfMatrix {
            rows: r,
            cols: c,
            arity,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn at(&self, r: usize, c: usize) -> &RationalFunction {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut RationalFunction {
        &mut self.data[r * self.cols + c]
    }

    pub fn entries(&self) -> impl Iterator<Item = &RationalFunction> {
        self.data.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add(b))
            .collect();
        RfMatrix {
            rows: self.rows,
            cols: self.cols,
            arity: self.arity,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        RfMatrix {
            rows: self.rows,
            cols: self.cols,
            arity: self.arity,
            data,
        }
    }

    pub fn neg(&self) -> Self {
        RfMatrix {
            rows: self.rows,
            cols: self.cols,
            arity: self.arity,
            data: self.data.iter().map(RationalFunction::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        Self::fused_products(&[(self, other)], self.rows, other.cols, self.arity)
    }

    /// out[r][c] = Σ over the pairs (A, B) and inner index k of
    /// A[r,k]·B[k,c], with each entry summed in one fused pass.
    fn fused_products(
        pairs: &[(&Self, &Self)],
        rows: usize,
        cols: usize,
        arity: usize,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        let mut prods: Vec<RationalFunction> = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                prods.clear();
                for (a, b) in pairs {
                    assert_eq!(a.cols, b.rows, "matrix dimension mismatch");
                    for k in 0..a.cols {
                        let x = a.at(r, k);
                        if x.is_zero() {
                            continue;
                        }
                        let y = b.at(k, c);
                        if y.is_zero() {
                            continue;
                        }
                        prods.push(x.mul(y));
                    }
                }
                data.push(RationalFunction::sum(arity, prods.iter()));
            }
        }
        RfMatrix {
            rows,
            cols,
            arity,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[RationalFunction]) -> Vec<RationalFunction> {
        assert_eq!(self.cols, v.len(), "matrix/vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let prods: Vec<RationalFunction> = (0..self.cols)
                    .filter(|&c| !self.at(r, c).is_zero() && !v[c].is_zero())
                    .map(|c| self.at(r, c).mul(&v[c]))
                    .collect();
                RationalFunction::sum(self.arity, prods.iter())
            })
            .collect()
    }

    pub fn scale(&self, f: &RationalFunction) -> Self {
        RfMatrix {
            rows: self.rows,
            cols: self.cols,
            arity: self.arity,
            data: self.data.iter().map(|a| a.mul(f)).collect(),
        }
    }

    pub fn scale_q(&self, c: &QRat) -> Self {
        RfMatrix {
            rows: self.rows,
            cols: self.cols,
            arity: self.arity,
            data: self.data.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RationalFunction::is_zero)
    }

    /// Exact inverse by Gauss–Jordan elimination; `Err` on singularity.
    /// Pivot choice is the first row with a nonzero entry, so the result
    /// is deterministic.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n, self.arity);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a.at(r, col).is_zero())
                .ok_or(AlgebraError::DivisionByZero)?;
            if pivot_row != col {
                for c in 0..n {
                    let i1 = pivot_row * n + c;
                    let i2 = col * n + c;
                    a.data.swap(i1, i2);
                    inv.data.swap(i1, i2);
                }
            }
            let pivot = a.at(col, col).clone();
            let pivot_inv = pivot.inverse()?;
            for c in 0..n {
                *a.at_mut(col, c) = a.at(col, c).mul(&pivot_inv);
                *inv.at_mut(col, c) = inv.at(col, c).mul(&pivot_inv);
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col).clone();
                for c in 0..n {
                    let na = a.at(r, c).sub(&factor.mul(a.at(col, c)));
                    *a.at_mut(r, c) = na;
                    let ni = inv.at(r, c).sub(&factor.mul(inv.at(col, c)));
                    *inv.at_mut(r, c) = ni;
                }
            }
        }
        Ok(inv)
    }

    /// Solves A·x = b exactly; `Err` on singularity.
    pub fn solve(&self, b: &[RationalFunction]) -> Result<Vec<RationalFunction>, AlgebraError> {
        Ok(self.inverse()?.mul_vec(b))
    }
}

impl SeriesCoeff for RfMatrix {
    fn is_zero(&self) -> bool {
        RfMatrix::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        RfMatrix::add(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        RfMatrix::mul(self, other)
    }

    fn sum_of_products(pairs: &[(&Self, &Self)]) -> Option<Self> {
        let (a0, b0) = pairs.first()?;
        Some(Self::fused_products(pairs, a0.rows, b0.cols, a0.arity))
    }
}

impl Neg for RfMatrix {
    fn neg_coeff(&self) -> Self {
        self.neg()
    }
}

// ---------------------------------------------------------------------------
// Small exact helpers over plain rationals.  Fan validation and fixed-point
// computation need dense rational elimination on matrices whose entries are
// numbers, not rational functions; doing that directly on `QRat` avoids
// dragging polynomial normalization through purely numeric solves.
// ---------------------------------------------------------------------------

/// Reduces `mat` in place to reduced row echelon form and returns the pivot
/// column indices in order.
pub(crate) fn q_rref(mat: &mut [Vec<QRat>]) -> Vec<usize> {
    use num_traits::{One, Zero};
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = QRat::one() / mat[r][c].clone();
        for v in mat[r].iter_mut() {
            *v = &*v * &inv;
        }
        let prow = mat[r].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v = &*v - &(&f * pv);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves A·x = b for a matrix with independent columns (possibly more rows
/// than columns).  Returns `None` when the system is inconsistent or the
/// columns are dependent.
pub(crate) fn q_solve(a: &[Vec<QRat>], b: &[QRat]) -> Option<Vec<QRat>> {
    use num_traits::Zero;
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<QRat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = q_rref(&mut aug);
    if pivots.iter().any(|&c| c == cols) {
        return None; // pivot in the rhs column: inconsistent
    }
    if pivots.len() != cols {
        return None; // dependent columns: solution not unique
    }
    let mut x = vec![QRat::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// Determinant of a square rational matrix by fraction-free-enough Gauss.
pub(crate) fn q_det(mat: &[Vec<i64>]) -> QRat {
    use num_traits::{One, Zero};
    let n = mat.len();
    let mut m: Vec<Vec<QRat>> = mat
        .iter()
        .map(|row| row.iter().map(|&v| crate::poly::qrat(v, 1)).collect())
        .collect();
    let mut det = QRat::one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return QRat::zero();
        };
        if pr != c {
            m.swap(c, pr);
            det = -det;
        }
        det *= &m[c][c];
        let inv = QRat::one() / m[c][c].clone();
        let prow: Vec<QRat> = m[c].iter().map(|v| v * &inv).collect();
        for row in m.iter_mut().skip(c + 1) {
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v = &*v - &(&f * pv);
            }
        }
    }
    det
}

/// A nonzero kernel vector of the row space spanned by `rows` inside ℚ^dim,
/// or `None` when the rows already span everything.  With `dim − 1`
/// independent rows the kernel is a line and the result spans it.
pub(crate) fn q_kernel_vector(rows: &[Vec<QRat>], dim: usize) -> Option<Vec<QRat>> {
    use num_traits::{One, Zero};
    let mut m: Vec<Vec<QRat>> = rows.to_vec();
    let pivots = q_rref(&mut m);
    let free = (0..dim).find(|c| !pivots.contains(c))?;
    let mut v = vec![QRat::zero(); dim];
    v[free] = QRat::one();
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = -m[r][free].clone();
    }
    Some(v)
}
