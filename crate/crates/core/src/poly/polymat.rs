use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::rational::{int, Rational};

use super::Polynomial;

/// Matrix with polynomial entries and a declared grade `k` (used by reversal).
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
    declared_degree: usize,
}

impl PolyMatrix {
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let declared_degree = entries.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
        Self {
            rows,
            cols,
            entries,
            declared_degree,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::from_entries(rows, cols, entries)
    }

    /// `sum_k coeffs[k] t^k`, declared degree `coeffs.len() - 1`.
    pub fn from_coefficients(coeffs: &[ExactMatrix]) -> Self {
        let (rows, cols) = coeffs.first().map_or((0, 0), ExactMatrix::shape);
        assert!(coeffs.iter().all(|c| c.shape() == (rows, cols)));
        let mut m = Self::from_fn(rows, cols, |i, j| {
            Polynomial::new(coeffs.iter().map(|c| c[(i, j)].clone()).collect())
        });
        m.declared_degree = coeffs.len().saturating_sub(1).max(m.max_entry_degree());
        m
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Polynomial::one() } else { Polynomial::zero() })
    }

    /// Overrides the declared grade; it may not drop below the largest entry degree.
    pub fn with_declared_degree(mut self, k: usize) -> Self {
        assert!(k >= self.max_entry_degree(), "declared degree below entry degree");
        self.declared_degree = k;
        self
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

    pub fn declared_degree(&self) -> usize {
        self.declared_degree
    }

    pub fn max_entry_degree(&self) -> usize {
        self.entries.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    /// Coefficient matrix of `t^k`.
    pub fn coefficient(&self, k: usize) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).coeff(k))
    }

    pub fn eval(&self, x: &Rational) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(x))
    }

    /// Symmetric permutation: entry `(i, j)` of the result is `(perm[i], perm[j])` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert!(self.is_square() && perm.len() == self.rows);
        let mut m = Self::from_fn(self.rows, self.cols, |i, j| self.get(perm[i], perm[j]).clone());
        m.declared_degree = self.declared_degree;
        m
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone());
        m.declared_degree = self.declared_degree;
        m
    }

    /// `Rev M(t) = t^k M(1/t)` with `k` the declared degree.
    pub fn reversal(&self) -> Self {
        let k = self.declared_degree;
        let mut m = Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).reverse_degree(k));
        m.declared_degree = k;
        m
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination over `Q[t]`.
    pub fn det(&self) -> Result<Polynomial> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(Polynomial::one());
        }
        let mut a: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut prev = Polynomial::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                // pick the lowest-degree nonzero pivot below to keep degrees down
                let Some(p) = (k + 1..n)
                    .filter(|&i| !a[i][k].is_zero())
                    .min_by_key(|&i| a[i][k].degree())
                else {
                    return Ok(Polynomial::zero());
                };
                a.swap(k, p);
                negate = !negate;
            }
            let (head, tail) = a.split_at_mut(k + 1);
            let pivot_row = &head[k];
            let pivot = &pivot_row[k];
            for row in tail.iter_mut() {
                let lead = row[k].clone();
                for j in k + 1..n {
                    let cross = &(pivot * &row[j]) - &(&lead * &pivot_row[j]);
                    row[j] = if prev.is_one() { cross } else { cross.exact_div(&prev) };
                }
                row[k] = Polynomial::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -&d } else { d })
    }

    /// Upper bound on `deg det`: sum over rows of the largest entry degree.
    pub fn det_degree_bound(&self) -> usize {
        (0..self.rows)
            .map(|i| (0..self.cols).filter_map(|j| self.get(i, j).degree()).max().unwrap_or(0))
            .sum()
    }

    /// Determinant by evaluation at `bound + 1` integer points and Newton interpolation.
    pub fn det_by_interpolation(&self) -> Result<Polynomial> {
        self.require_square()?;
        let bound = self.det_degree_bound();
        let points: Vec<(Rational, Rational)> = (0..=bound as i64)
            .map(|x| {
                let x = int(x);
                let d = self.eval(&x).det().expect("square");
                (x, d)
            })
            .collect();
        Ok(Polynomial::interpolate(&points))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }
}

/// Determinant computed by elimination and confirmed by evaluation/interpolation.
pub fn polymat_det(m: &PolyMatrix) -> Result<Polynomial> {
    let d = m.det()?;
    let check = m.det_by_interpolation()?;
    assert_eq!(d, check, "Bareiss and interpolation determinants disagree");
    Ok(d)
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} (k = {}) [", self.rows, self.cols, self.declared_degree)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl PolyMatrix {
    /// Coefficient of `t^k` stacked for every entry; convenient for exact comparisons.
    pub fn coefficients(&self) -> Vec<ExactMatrix> {
        (0..=self.declared_degree).map(|k| self.coefficient(k)).collect()
    }

    pub fn is_regular(&self) -> Result<bool> {
        Ok(!self.det()?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    #[test]
    fn det_of_smith_example_diagonal() {
        let m = PolyMatrix::from_fn(3, 3, |i, j| match (i, j) {
            (0, 0) => p(&[1]),
            (1, 1) => p(&[0, 1]),
            (2, 2) => p(&[0, 1, -2, 1]),
            _ => Polynomial::zero(),
        });
        assert_eq!(polymat_det(&m).unwrap(), p(&[0, 0, 1, -2, 1]));
    }

    #[test]
    fn det_identity_and_errors() {
        assert_eq!(polymat_det(&PolyMatrix::identity(3)).unwrap(), p(&[1]));
        let rect = PolyMatrix::from_fn(2, 3, |_, _| p(&[1]));
        assert!(matches!(rect.det(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn det_needs_pivoting() {
        // [[0, t], [1, 1]] -> -t
        let m = PolyMatrix::from_entries(2, 2, vec![p(&[]), p(&[0, 1]), p(&[1]), p(&[1])]);
        assert_eq!(polymat_det(&m).unwrap(), p(&[0, -1]));
    }

    #[test]
    fn reversal_of_scalar_and_zero() {
        let m = PolyMatrix::from_entries(1, 1, vec![p(&[-1, 0, 1])]).with_declared_degree(2);
        assert_eq!(m.reversal().get(0, 0), &p(&[1, 0, -1]));
        let z = PolyMatrix::from_entries(2, 2, vec![Polynomial::zero(); 4]);
        assert!(z.reversal().is_zero());
    }
}
