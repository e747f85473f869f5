//! Dense matrices over arbitrary-precision rationals.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from integer rows; panics on ragged input.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| Rational::from_integer(rows[i][j].into()))
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// First negative entry, if any.
    pub fn find_negative(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(Signed::is_negative)
            .map(|p| (p / self.cols, p % self.cols))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn hadamard(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect(),
        }
    }

    /// 0/1 indicator of the nonzero pattern.
    pub fn support(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| if x.is_zero() { Rational::zero() } else { Rational::one() })
                .collect(),
        }
    }

    pub fn diag(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn sum(&self) -> Rational {
        self.data.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| self.row(i).iter().fold(Rational::zero(), |acc, x| acc + x))
            .collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(self.shape(), rhs.shape()));
        }
        // integer products: row i of self scaled by row_scale[i], column j of rhs by col_scale[j]
        let row_scale: Vec<BigInt> = (0..self.rows)
            .map(|i| self.row(i).iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom())))
            .collect();
        let col_scale: Vec<BigInt> = (0..rhs.cols)
            .map(|j| (0..rhs.rows).fold(BigInt::one(), |acc, k| acc.lcm(rhs[(k, j)].denom())))
            .collect();
        let left: Vec<BigInt> = (0..self.rows)
            .flat_map(|i| {
                let scale = &row_scale[i];
                self.row(i).iter().map(move |q| q.numer() * (scale / q.denom()))
            })
            .collect();
        let right: Vec<BigInt> = (0..rhs.rows)
            .flat_map(|k| (0..rhs.cols).map(move |j| (k, j)))
            .map(|(k, j)| {
                let q = &rhs[(k, j)];
                q.numer() * (&col_scale[j] / q.denom())
            })
            .collect();
        let mut acc = vec![BigInt::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &left[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &right[k * rhs.cols + j];
                    if !b.is_zero() {
                        acc[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        let data = acc
            .into_iter()
            .enumerate()
            .map(|(idx, v)| Rational::new(v, &row_scale[idx / rhs.cols] * &col_scale[idx % rhs.cols]))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Submatrix with the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn hstack(blocks: &[Self]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        assert!(blocks.iter().all(|b| b.rows == rows));
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, offset + j)] = b[(i, j)].clone();
                }
            }
            offset += b.cols;
        }
        out
    }

    /// Row echelon form by Gaussian elimination; returns (echelon, rank, sign of row swaps).
    fn eliminate(&self) -> (Self, usize, bool) {
        let mut m = self.clone();
        let mut rank = 0;
        let mut negated = false;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != rank {
                m.swap_rows(p, rank);
                negated = !negated;
            }
            let pivot = m[(rank, col)].clone();
            for r in rank + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] / &pivot;
                for c in col..m.cols {
                    let delta = &f * &m[(rank, c)];
                    m[(r, c)] -= delta;
                }
            }
            rank += 1;
        }
        (m, rank, negated)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let (mut rows, scales) = integer_rows(self, &[]);
        let Some(negated) = bareiss(&mut rows, n) else {
            return Ok(Rational::zero());
        };
        let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        let d = Rational::new(rows[n - 1][n - 1].clone(), scale);
        Ok(if negated { -d } else { d })
    }

    /// Solves `self * X = rhs`; `None` when `self` is singular.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert!(self.is_square());
        assert_eq!(self.rows, rhs.rows);
        let n = self.rows;
        let (mut rows, _) = integer_rows(self, std::slice::from_ref(rhs));
        bareiss(&mut rows, n)?;
        // back substitution on the fraction-free upper triangular system
        let mut x = Self::zeros(n, rhs.cols);
        for j in 0..rhs.cols {
            for i in (0..n).rev() {
                let mut acc = Rational::from_integer(rows[i][n + j].clone());
                for k in i + 1..n {
                    if !rows[i][k].is_zero() {
                        acc -= &x[(k, j)] * Rational::from_integer(rows[i][k].clone());
                    }
                }
                x[(i, j)] = acc / Rational::from_integer(rows[i][i].clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        self.solve(&Self::identity(self.rows))
    }

    /// Characteristic polynomial `det(xI - self)` by Berkowitz's division-free algorithm,
    /// run over the integers after clearing denominators.
    pub fn charpoly(&self) -> Polynomial {
        assert!(self.is_square());
        let n = self.rows;
        let scale = self
            .data
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = self
            .data
            .iter()
            .map(|q| q.numer() * (&scale / q.denom()))
            .collect();
        let chi = berkowitz(n, &ints);
        // det(xI - Y/c) = c^-n det(c x I - Y)
        let scale_q = Rational::from_integer(scale);
        let mut power = Rational::one();
        let mut coeffs = Vec::with_capacity(n + 1);
        for (k, ck) in chi.into_iter().enumerate() {
            if k > 0 {
                power *= &scale_q;
            }
            coeffs.push(Rational::from_integer(ck) * &power);
        }
        let top = power;
        Polynomial::new(coeffs.into_iter().map(|c| c / &top).collect())
    }

    /// `det(I - t * self)` as a polynomial in `t` (the reversed characteristic polynomial).
    pub fn det_one_minus_t(&self) -> Polynomial {
        let n = self.rows;
        self.charpoly().reverse_degree(n)
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).expect("matrix shapes must agree")
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.shape(), rhs.shape());
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.shape(), rhs.shape());
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rows of `[m | extra...]` scaled to integers; each row is multiplied by the
/// lcm of its denominators, which is returned alongside.
fn integer_rows(m: &ExactMatrix, extra: &[ExactMatrix]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(m.rows);
    let mut scales = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let entries: Vec<&Rational> = m.row(i).iter().chain(extra.iter().flat_map(|e| e.row(i))).collect();
        let scale = entries.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        rows.push(entries.iter().map(|q| q.numer() * (&scale / q.denom())).collect());
        scales.push(scale);
    }
    (rows, scales)
}

/// Fraction-free Gaussian elimination on the first `n` columns.
///
/// Leaves an upper triangular integer matrix whose last pivot is the
/// determinant of the leading `n x n` block up to the returned sign flag
/// (`true` when an odd number of row swaps occurred). `None` when singular.
fn bareiss(a: &mut [Vec<BigInt>], n: usize) -> Option<bool> {
    let width = a.first().map_or(0, Vec::len);
    let mut negated = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        if p != k {
            a.swap(p, k);
            negated = !negated;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..width {
                let v = &row[j] * &pivot_row[k] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    Some(negated)
}


/// Berkowitz on an integer `n x n` matrix (row-major); ascending coefficients of `det(xI - Y)`.
fn berkowitz(n: usize, y: &[BigInt]) -> Vec<BigInt> {
    let at = |i: usize, j: usize| &y[i * n + j];
    // coefficients stored highest degree first while iterating
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for k in 0..n {
        // leading principal submatrix of order k+1, partitioned as [[A_k, col], [row, a]]
        let row: Vec<&BigInt> = (0..k).map(|j| at(k, j)).collect();
        let mut v: Vec<BigInt> = (0..k).map(|i| at(i, k).clone()).collect();
        // Toeplitz column: 1, -a, -row*col, -row*A*col, ...
        let mut t = Vec::with_capacity(k + 2);
        t.push(BigInt::one());
        t.push(-at(k, k));
        for _ in 0..k {
            let dot = row
                .iter()
                .zip(&v)
                .filter(|(x, _)| !x.is_zero())
                .fold(BigInt::zero(), |acc, (x, y)| acc + *x * y);
            t.push(-dot);
            v = (0..k)
                .map(|i| {
                    (0..k).fold(BigInt::zero(), |acc, j| {
                        let e = at(i, j);
                        if e.is_zero() || v[j].is_zero() {
                            acc
                        } else {
                            acc + e * &v[j]
                        }
                    })
                })
                .collect();
        }
        let mut next = vec![BigInt::zero(); k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, cj) in c.iter().enumerate().take(i + 1) {
                if let Some(ti) = t.get(i - j) {
                    if !ti.is_zero() {
                        *slot += ti * cj;
                    }
                }
            }
        }
        c = next;
    }
    c.reverse();
    c
}
