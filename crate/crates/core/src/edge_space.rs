//! Edge-indexed matrices: source/target incidence, line graph, reversal
//! involution, Hashimoto matrices and non-k-cycling matrices.

use num::{One, Zero};

use crate::error::Result;
use crate::graph::Graph;
use crate::matrix::ExactMatrix;
use crate::rational::Rational;

/// Edge-space matrices of a graph. Edges follow the graph's `(src, dst)` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpace {
    pub n: usize,
    pub m: usize,
    /// `L`: `m x n`, row `e` has a 1 at `source(e)`.
    pub source: ExactMatrix,
    /// `R`: `m x n`, row `e` has a 1 at `target(e)`.
    pub target: ExactMatrix,
    /// `W_u = R L^T`: `W_u[e][f] = 1` iff `target(e) = source(f)`.
    pub line: ExactMatrix,
    /// `Delta = W_u o W_u^T`: `Delta[e][f] = 1` iff `f` is the reverse of `e`.
    pub reversal: ExactMatrix,
    /// `Omega = Delta^2`.
    pub reversal_sq: ExactMatrix,
    /// `B_u = W_u - Delta`.
    pub hashimoto: ExactMatrix,
    /// `Z = diag(weights)`.
    pub weights: ExactMatrix,
    /// Number of unreciprocated edges.
    pub a: usize,
    /// Number of reciprocal pairs.
    pub b: usize,
}

pub fn build_edge_space(g: &Graph) -> EdgeSpace {
    let (n, m) = (g.n(), g.m());
    let edges = g.edges();
    let indicator = |c: bool| if c { Rational::one() } else { Rational::zero() };
    let source = ExactMatrix::from_fn(m, n, |e, v| indicator(edges[e].src == v));
    let target = ExactMatrix::from_fn(m, n, |e, v| indicator(edges[e].dst == v));
    let line = ExactMatrix::from_fn(m, m, |e, f| indicator(edges[e].dst == edges[f].src));
    let reversal = line.hadamard(&line.transpose());
    let reversal_sq = &reversal * &reversal;
    let hashimoto = &line - &reversal;
    let weights = ExactMatrix::diagonal(&edges.iter().map(|e| e.weight.clone()).collect::<Vec<_>>());
    let b = g.reciprocal_pairs();
    EdgeSpace {
        n,
        m,
        source,
        target,
        line,
        reversal,
        reversal_sq,
        hashimoto,
        weights,
        a: m - 2 * b,
        b,
    }
}

impl EdgeSpace {
    /// `B = Z B_u Z`.
    pub fn weighted_hashimoto(&self) -> ExactMatrix {
        &(&self.weights * &self.hashimoto) * &self.weights
    }

    /// `B_u Z`, a rational matrix similar to the entrywise square root of `B`.
    pub fn v_similar(&self) -> ExactMatrix {
        &self.hashimoto * &self.weights
    }

    /// `tau B_u + (1 - tau) W_u = W_u - tau Delta`.
    pub fn deformed_hashimoto(&self, tau: &Rational) -> ExactMatrix {
        &self.line - &self.reversal.scale(tau)
    }
}

pub fn weighted_hashimoto(es: &EdgeSpace) -> ExactMatrix {
    es.weighted_hashimoto()
}

pub fn v_similar(es: &EdgeSpace) -> ExactMatrix {
    es.v_similar()
}

/// Path-to-path transition matrix for walks that never revisit any of the last `k` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonKCyclingMatrix {
    pub k: usize,
    /// Open paths on `k` distinct vertices (for `k = 1`, the single vertices).
    pub paths: Vec<Vec<usize>>,
    pub matrix: ExactMatrix,
}

/// Open paths with `len` vertices, all distinct, in lexicographic order.
pub fn open_paths(g: &Graph, len: usize) -> Vec<Vec<usize>> {
    let succ = g.out_neighbors();
    let mut out = Vec::new();
    if len == 0 || len > g.n() {
        return out;
    }
    let mut path = Vec::with_capacity(len);
    let mut used = vec![false; g.n()];
    fn extend(
        succ: &[Vec<usize>],
        len: usize,
        path: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if path.len() == len {
            out.push(path.clone());
            return;
        }
        let last = *path.last().expect("nonempty path");
        for &v in &succ[last] {
            if !used[v] {
                used[v] = true;
                path.push(v);
                extend(succ, len, path, used, out);
                path.pop();
                used[v] = false;
            }
        }
    }
    for start in 0..g.n() {
        used[start] = true;
        path.push(start);
        extend(&succ, len, &mut path, &mut used, &mut out);
        path.pop();
        used[start] = false;
    }
    out
}

pub fn non_k_cycling(g: &Graph, k: usize) -> Result<NonKCyclingMatrix> {
    g.require_unweighted()?;
    assert!(k >= 1, "k must be positive");
    if k == 1 {
        return Ok(NonKCyclingMatrix {
            k,
            paths: (0..g.n()).map(|v| vec![v]).collect(),
            matrix: g.adjacency(),
        });
    }
    let paths = open_paths(g, k);
    let matrix = ExactMatrix::from_fn(paths.len(), paths.len(), |i, j| {
        let (p, q) = (&paths[i], &paths[j]);
        if p[0] != q[k - 1] && p[1..] == q[..k - 1] {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    Ok(NonKCyclingMatrix { k, paths, matrix })
}
