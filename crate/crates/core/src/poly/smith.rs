use crate::rational::Rational;

use super::{PolyMatrix, Polynomial};

/// Invariant polynomials `s_1 | s_2 | ... | s_r` of a polynomial matrix of rank `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_polynomials: Vec<Polynomial>,
    pub rank: usize,
}

impl SmithForm {
    /// Product of the invariant polynomials (equals `det` up to a constant when regular).
    pub fn product(&self) -> Polynomial {
        self.invariant_polynomials
            .iter()
            .fold(Polynomial::one(), |acc, s| &acc * s)
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.invariant_polynomials.iter().all(Polynomial::is_monic)
            && self
                .invariant_polynomials
                .windows(2)
                .all(|w| w[0].divides(&w[1]))
    }

    /// Positive multiplicities of `lambda` across the invariant polynomials.
    pub fn partial_multiplicities(&self, lambda: &Rational) -> Vec<usize> {
        self.invariant_polynomials
            .iter()
            .map(|s| s.root_multiplicity(lambda))
            .filter(|&k| k > 0)
            .collect()
    }
}

/// Smith form by gcd-driven diagonalization with unimodular row and column operations.
///
/// The pivot is always the lowest-degree nonzero entry of the trailing block
/// (ties broken by row-major position), so the output is deterministic.
pub fn smith_form(m: &PolyMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<Polynomial>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut diagonal = Vec::new();

    for k in 0..rows.min(cols) {
        while let Some((pi, pj)) = lowest_degree_entry(&a, k) {
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            // pivot row scaled to a monic pivot
            let lc_inv = a[k][k].leading().expect("nonzero pivot").recip();
            for entry in a[k].iter_mut() {
                *entry = entry.scale(&lc_inv);
            }

            let mut clean = true;
            let (upper, lower) = a.split_at_mut(k + 1);
            let pivot_row = &upper[k];
            for row in lower.iter_mut() {
                if row[k].is_zero() {
                    continue;
                }
                let (q, r) = row[k].div_rem(&pivot_row[k]);
                for (entry, p) in row[k..].iter_mut().zip(&pivot_row[k..]) {
                    *entry = &*entry - &(&q * p);
                }
                clean &= r.is_zero();
            }
            for j in k + 1..cols {
                if a[k][j].is_zero() {
                    continue;
                }
                let (q, r) = a[k][j].div_rem(&a[k][k]);
                for row in a.iter_mut().skip(k) {
                    let delta = &q * &row[k];
                    row[j] = &row[j] - &delta;
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // row and column k are clear; the pivot must divide the trailing block
            let offender = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !a[k][k].divides(&a[i][j])));
            match offender {
                Some(i) => {
                    let addend = a[i][k..].to_vec();
                    for (entry, v) in a[k][k..].iter_mut().zip(&addend) {
                        *entry = &*entry + v;
                    }
                }
                None => break,
            }
        }
        if a[k][k].is_zero() {
            break;
        }
        diagonal.push(a[k][k].monic());
    }

    enforce_chain(&mut diagonal);
    let rank = diagonal.len();
    let form = SmithForm {
        invariant_polynomials: diagonal,
        rank,
    };
    debug_assert!(form.is_divisibility_chain());
    form
}

fn lowest_degree_entry(a: &[Vec<Polynomial>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(k) {
        for (j, e) in row.iter().enumerate().skip(k) {
            if let Some(d) = e.degree() {
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

// gcd/lcm sweep; a no-op when elimination already produced a chain
fn enforce_chain(d: &mut [Polynomial]) {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if d[i].divides(&d[j]) {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = (&d[i] * &d[j]).exact_div(&g).monic();
            d[i] = g;
            d[j] = l;
        }
    }
}
