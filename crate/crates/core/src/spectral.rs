//! Perron root of nonnegative rational matrices with certified rational
//! brackets, and nilpotency detection.

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::strongly_connected_components;
use crate::matrix::ExactMatrix;
use crate::rational::{floor_dyadic, from_f64, to_decimal, to_f64, Rational};

/// Iteration cap for the power method.
pub const DEFAULT_MAX_ITERATIONS: usize = 100_000;

/// Required bracket width relative to `max(1, rho)`.
pub fn default_tolerance() -> Rational {
    Rational::new(1.into(), num::pow(num::BigInt::from(10), 12))
}

const FLOAT_ITERATIONS: usize = 20_000;
const DYADIC_BITS: usize = 200;

/// Certified bracket `lower <= rho <= upper` on the Perron root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerronResult {
    #[serde(serialize_with = "crate::io::serde_rational")]
    pub lower: Rational,
    #[serde(serialize_with = "crate::io::serde_rational")]
    pub upper: Rational,
    pub iterations: usize,
    pub nilpotent: bool,
    pub decimal: String,
}

impl PerronResult {
    fn exact(value: Rational, iterations: usize, nilpotent: bool) -> Self {
        Self {
            decimal: to_decimal(&value, 12),
            lower: value.clone(),
            upper: value,
            iterations,
            nilpotent,
        }
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn approx(&self) -> f64 {
        to_f64(&((&self.lower + &self.upper) / Rational::from_integer(2.into())))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    /// Bracket on `1/rho`; `None` when `rho = 0` is possible.
    pub fn reciprocal(&self) -> Option<(Rational, Rational)> {
        if self.lower.is_positive() {
            Some((self.upper.recip(), self.lower.recip()))
        } else {
            None
        }
    }
}

fn check_nonnegative(m: &ExactMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    match m.find_negative() {
        Some((i, j)) => Err(Error::NegativeEntry(i, j)),
        None => Ok(()),
    }
}

fn support_successors(m: &ExactMatrix) -> Vec<Vec<usize>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).filter(|&j| !m[(i, j)].is_zero()).collect())
        .collect()
}

/// Strongly connected blocks of the support graph that carry a cycle.
fn cyclic_blocks(m: &ExactMatrix) -> Vec<Vec<usize>> {
    strongly_connected_components(&support_successors(m))
        .into_iter()
        .filter(|c| c.len() > 1 || !m[(c[0], c[0])].is_zero())
        .collect()
}

/// True iff the support digraph is acyclic (equivalently `rho = 0`).
pub fn is_nilpotent(m: &ExactMatrix) -> Result<bool> {
    check_nonnegative(m)?;
    Ok(cyclic_blocks(m).is_empty())
}

pub fn perron_radius(m: &ExactMatrix) -> Result<PerronResult> {
    perron_radius_with(m, &default_tolerance(), DEFAULT_MAX_ITERATIONS)
}

pub fn perron_radius_with(m: &ExactMatrix, tolerance: &Rational, max_iterations: usize) -> Result<PerronResult> {
    check_nonnegative(m)?;
    let blocks = cyclic_blocks(m);
    if blocks.is_empty() {
        return Ok(PerronResult::exact(Rational::zero(), 0, true));
    }
    let mut lower = Rational::zero();
    let mut upper = Rational::zero();
    let mut iterations = 0;
    for block in blocks {
        let sub = m.select(&block, &block);
        let (lo, hi, its) = irreducible_bracket(&sub, tolerance, max_iterations)?;
        iterations += its;
        lower = lower.max(lo);
        upper = upper.max(hi);
    }
    Ok(PerronResult {
        decimal: to_decimal(&((&lower + &upper) / Rational::from_integer(2.into())), 12),
        lower,
        upper,
        iterations,
        nilpotent: false,
    })
}

/// Collatz-Wielandt bounds `min_i (Mx)_i / x_i` and `max_i (Mx)_i / x_i` for positive `x`.
pub fn collatz_wielandt(m: &ExactMatrix, x: &[Rational]) -> (Rational, Rational) {
    let y = m.mul_vec(x);
    let ratios: Vec<Rational> = y.iter().zip(x).map(|(yi, xi)| yi / xi).collect();
    let lo = ratios.iter().min().cloned().expect("nonempty");
    let hi = ratios.iter().max().cloned().expect("nonempty");
    (lo, hi)
}

fn narrow_enough(lo: &Rational, hi: &Rational, tolerance: &Rational) -> bool {
    let scale = hi.clone().max(Rational::one());
    hi - lo <= tolerance * scale
}

fn irreducible_bracket(
    m: &ExactMatrix,
    tolerance: &Rational,
    max_iterations: usize,
) -> Result<(Rational, Rational, usize)> {
    let n = m.rows();
    let ones = vec![Rational::one(); n];
    let (lo, hi) = collatz_wielandt(m, &ones);
    if narrow_enough(&lo, &hi, tolerance) {
        return Ok((lo, hi, 0));
    }

    // floating warm start on M + I
    let mf: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| to_f64(&m[(i, j)])).collect()).collect();
    let mut x = vec![1.0f64; n];
    let mut iterations = 0;
    let float_budget = FLOAT_ITERATIONS.min(max_iterations);
    while iterations < float_budget {
        let mut y: Vec<f64> = (0..n)
            .map(|i| x[i] + mf[i].iter().zip(&x).map(|(a, b)| a * b).sum::<f64>())
            .collect();
        let norm = y.iter().cloned().fold(0.0, f64::max);
        y.iter_mut().for_each(|v| *v /= norm);
        let change = y.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = y;
        iterations += 1;
        if change < 1e-16 {
            break;
        }
    }
    let floor = f64::MIN_POSITIVE;
    let mut xq: Vec<Rational> = x.iter().map(|&v| from_f64(v.max(floor))).collect();
    let (mut lo, mut hi) = collatz_wielandt(m, &xq);
    let shift = &ExactMatrix::identity(n) + m;
    let tiny = Rational::new(num::BigInt::one(), num::BigInt::one() << DYADIC_BITS);
    while !narrow_enough(&lo, &hi, tolerance) {
        if iterations >= max_iterations {
            return Err(Error::IterationBudgetExceeded(max_iterations));
        }
        let y = shift.mul_vec(&xq);
        let norm = y.iter().max().cloned().expect("nonempty");
        xq = y
            .iter()
            .map(|v| floor_dyadic(&(v / &norm), DYADIC_BITS).max(tiny.clone()))
            .collect();
        let (l, h) = collatz_wielandt(m, &xq);
        lo = lo.max(l);
        hi = hi.min(h);
        iterations += 1;
    }
    Ok((lo, hi, iterations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge_space::build_edge_space;
    use crate::graph::Graph;
    use crate::rational::{int, rat};

    fn cycle(l: usize) -> Graph {
        let pairs: Vec<_> = (0..l).map(|i| (i, (i + 1) % l)).collect();
        Graph::undirected(l, &pairs).unwrap()
    }

    fn k4() -> Graph {
        let pairs: Vec<_> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        Graph::undirected(4, &pairs).unwrap()
    }

    #[test]
    fn nilpotency() {
        let tree = Graph::undirected(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert!(is_nilpotent(&build_edge_space(&tree).hashimoto).unwrap());
        let c3 = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!is_nilpotent(&build_edge_space(&c3).hashimoto).unwrap());
        assert!(is_nilpotent(&ExactMatrix::zeros(3, 3)).unwrap());
        let neg = ExactMatrix::from_i64_rows(&[vec![0, -1], vec![1, 0]]);
        assert_eq!(is_nilpotent(&neg), Err(Error::NegativeEntry(0, 1)));
    }

    #[test]
    fn cycles_have_unit_radius() {
        for l in 3..=6 {
            let r = perron_radius(&build_edge_space(&cycle(l)).hashimoto).unwrap();
            assert!(r.contains(&int(1)));
            assert!(r.width() <= default_tolerance());
        }
    }

    #[test]
    fn complete_graph_radius_two() {
        let r = perron_radius(&build_edge_space(&k4()).hashimoto).unwrap();
        assert!(r.contains(&int(2)));
    }

    #[test]
    fn weighted_cycle_cube_root() {
        let g = Graph::from_weighted_edges(3, &[(0, 1, int(2)), (1, 2, int(3)), (2, 0, int(5))]).unwrap();
        let r = perron_radius(&build_edge_space(&g).v_similar()).unwrap();
        let cube = |q: &Rational| q * q * q;
        assert!(cube(&r.lower) <= int(30) && cube(&r.upper) >= int(30));
        assert!(r.width() <= default_tolerance() * int(4));
        assert!((r.approx() - 30f64.cbrt()).abs() < 1e-12);
    }

    #[test]
    fn irrational_radius_is_refined() {
        // bowtie: two triangles sharing a vertex
        let g = Graph::undirected(5, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]).unwrap();
        let es = build_edge_space(&g);
        let r = perron_radius(&es.hashimoto).unwrap();
        assert!(r.lower > int(1));
        assert!(r.width() <= default_tolerance() * r.upper.clone().max(int(1)));
        // the root annihilates the characteristic polynomial up to bracket resolution
        let chi = es.hashimoto.charpoly();
        let (a, b) = (chi.eval(&r.lower), chi.eval(&r.upper));
        assert!(a.is_zero() || b.is_zero() || a.signum() != b.signum());
    }

    #[test]
    fn reducible_matrix_takes_block_maximum() {
        let m = ExactMatrix::from_i64_rows(&[vec![0, 1, 0, 0], vec![1, 0, 5, 0], vec![0, 0, 0, 3], vec![0, 0, 3, 0]]);
        let r = perron_radius(&m).unwrap();
        assert!(r.contains(&int(3)));
        assert_eq!(r.reciprocal().map(|(lo, _)| lo <= rat(1, 3)), Some(true));
    }
}
