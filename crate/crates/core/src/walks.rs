//! Walk counting by brute-force enumeration, Laplacian recurrences and
//! edge-space powers; generating-function evaluation and walk centrality.

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::convergence::{radius_btdw, radius_unweighted, radius_weighted, RadiusValue};
use crate::edge_space::build_edge_space;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::laplacian::{directed_dgl, tau_dgl};
use crate::matrix::ExactMatrix;
use crate::rational::{to_canonical, Rational};

/// Default cap on edge extensions during brute-force enumeration.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WalkKind {
    #[serde(rename = "NBTW")]
    Nbtw,
    #[serde(rename = "BTDW")]
    Btdw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WalkMethod {
    Oracle,
    Recurrence,
    EdgePower,
}

/// Exact walk weights `p_0 .. p_kmax` (or `q_k` for downweighted walks).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkTable {
    pub kind: WalkKind,
    pub kmax: usize,
    #[serde(serialize_with = "crate::io::serde_opt_rational")]
    pub omega: Option<Rational>,
    pub method: WalkMethod,
    pub tables: Vec<ExactMatrix>,
}

impl WalkTable {
    /// `sum_{k <= kmax} t^k p_k`.
    pub fn partial_sum(&self, t: &Rational) -> ExactMatrix {
        let n = self.tables.first().map_or(0, ExactMatrix::rows);
        let mut acc = ExactMatrix::zeros(n, n);
        let mut power = Rational::one();
        for p in &self.tables {
            acc = &acc + &p.scale(&power);
            power *= t;
        }
        acc
    }

    /// Same tables with a different provenance label (for comparisons).
    pub fn same_tables(&self, other: &WalkTable) -> bool {
        self.tables == other.tables
    }
}

/// Walk family for generating functions and centrality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WalkMode {
    Nbtw,
    Btdw { omega: Rational },
    Weighted,
}

impl WalkMode {
    pub fn label(&self) -> String {
        match self {
            WalkMode::Nbtw => "NBTW".into(),
            WalkMode::Btdw { omega } => format!("BTDW(omega={})", to_canonical(omega)),
            WalkMode::Weighted => "Weighted".into(),
        }
    }
}

pub fn check_omega(omega: &Rational) -> Result<()> {
    if omega.is_negative() || *omega > Rational::one() {
        Err(Error::OmegaOutOfRange(omega.to_string()))
    } else {
        Ok(())
    }
}

struct Enumerator<'a> {
    succ: Vec<Vec<(usize, Rational)>>,
    kmax: usize,
    omega: Option<&'a Rational>,
    budget: u64,
    steps: u64,
    tables: Vec<ExactMatrix>,
}

impl Enumerator<'_> {
    fn walk(&mut self, start: usize, prev: Option<usize>, cur: usize, len: usize, weight: Rational) -> Result<()> {
        if weight.is_zero() {
            return Ok(());
        }
        self.tables[len][(start, cur)] += &weight;
        if len == self.kmax {
            return Ok(());
        }
        for idx in 0..self.succ[cur].len() {
            let (next, ref w) = self.succ[cur][idx];
            self.steps += 1;
            if self.steps > self.budget {
                return Err(Error::EnumerationBudgetExceeded(self.budget));
            }
            let mut extended = &weight * w;
            if prev == Some(next) {
                match self.omega {
                    None => continue,
                    Some(omega) => extended *= omega,
                }
            }
            self.walk(start, Some(cur), next, len + 1, extended)?;
        }
        Ok(())
    }
}

fn enumerate(g: &Graph, kmax: usize, omega: Option<&Rational>, budget: u64) -> Result<Vec<ExactMatrix>> {
    let mut succ = vec![Vec::new(); g.n()];
    for e in g.edges() {
        succ[e.src].push((e.dst, e.weight.clone()));
    }
    let mut en = Enumerator {
        succ,
        kmax,
        omega,
        budget,
        steps: 0,
        tables: vec![ExactMatrix::zeros(g.n(), g.n()); kmax + 1],
    };
    for start in 0..g.n() {
        en.walk(start, None, start, 0, Rational::one())?;
    }
    Ok(en.tables)
}

/// Brute-force sum over all non-backtracking walks (weights multiply along the walk).
pub fn enumerate_nbtw(g: &Graph, kmax: usize, budget: u64) -> Result<WalkTable> {
    Ok(WalkTable {
        kind: WalkKind::Nbtw,
        kmax,
        omega: None,
        method: WalkMethod::Oracle,
        tables: enumerate(g, kmax, None, budget)?,
    })
}

/// Brute-force sum over all walks, each backtrack contributing a factor `omega`.
pub fn enumerate_btdw(g: &Graph, kmax: usize, omega: &Rational, budget: u64) -> Result<WalkTable> {
    check_omega(omega)?;
    Ok(WalkTable {
        kind: WalkKind::Btdw,
        kmax,
        omega: Some(omega.clone()),
        method: WalkMethod::Oracle,
        tables: enumerate(g, kmax, Some(omega), budget)?,
    })
}

/// `q_k = A q_{k-1} - tau (D - tau I) q_{k-2} - tau^2 (A - S) q_{k-3}` seeded by
/// `q_0 = I`, `q_1 = A`, `q_2 = A^2 - tau D`.
fn tau_recurrence(g: &Graph, kmax: usize, tau: &Rational) -> Vec<ExactMatrix> {
    let n = g.n();
    let id = ExactMatrix::identity(n);
    let a = g.adjacency();
    let d = g.degree_matrix();
    let c2 = (&d - &id.scale(tau)).scale(tau);
    let c3 = (&a - &g.reciprocal_adjacency()).scale(&(tau * tau));
    let mut q = vec![id];
    if kmax >= 1 {
        q.push(a.clone());
    }
    if kmax >= 2 {
        q.push(&(&a * &a) - &d.scale(tau));
    }
    for k in 3..=kmax {
        let next = &(&(&a * &q[k - 1]) - &(&c2 * &q[k - 2])) - &(&c3 * &q[k - 3]);
        q.push(next);
    }
    q
}

pub fn nbtw_recurrence(g: &Graph, kmax: usize) -> Result<WalkTable> {
    g.require_unweighted()?;
    Ok(WalkTable {
        kind: WalkKind::Nbtw,
        kmax,
        omega: None,
        method: WalkMethod::Recurrence,
        tables: tau_recurrence(g, kmax, &Rational::one()),
    })
}

pub fn btdw_recurrence(g: &Graph, kmax: usize, omega: &Rational) -> Result<WalkTable> {
    check_omega(omega)?;
    g.require_unweighted()?;
    let tau = Rational::one() - omega;
    Ok(WalkTable {
        kind: WalkKind::Btdw,
        kmax,
        omega: Some(omega.clone()),
        method: WalkMethod::Recurrence,
        tables: tau_recurrence(g, kmax, &tau),
    })
}

/// `p_k = L^T Z (B_u Z)^(k-1) R` for `k >= 1`.
pub fn weighted_nbtw(g: &Graph, kmax: usize) -> WalkTable {
    let es = build_edge_space(g);
    let mut tables = vec![ExactMatrix::identity(g.n())];
    let step = es.v_similar();
    let mut left = &es.source.transpose() * &es.weights;
    for k in 1..=kmax {
        tables.push(&left * &es.target);
        if k < kmax {
            left = &left * &step;
        }
    }
    WalkTable {
        kind: WalkKind::Nbtw,
        kmax,
        omega: None,
        method: WalkMethod::EdgePower,
        tables,
    }
}

/// `q_k = L^T V(tau)^(k-1) R` with `V(tau) = W_u - tau Delta`.
pub fn btdw_edge_power(g: &Graph, kmax: usize, omega: &Rational) -> Result<WalkTable> {
    check_omega(omega)?;
    g.require_unweighted()?;
    let es = build_edge_space(g);
    let step = es.deformed_hashimoto(&(Rational::one() - omega));
    let mut tables = vec![ExactMatrix::identity(g.n())];
    let mut left = es.source.transpose();
    for k in 1..=kmax {
        tables.push(&left * &es.target);
        if k < kmax {
            left = &left * &step;
        }
    }
    Ok(WalkTable {
        kind: WalkKind::Btdw,
        kmax,
        omega: Some(omega.clone()),
        method: WalkMethod::EdgePower,
        tables,
    })
}

/// `I + t L^T Y (I - t X)^(-1) R` for edge transition `X` and left factor `Y`.
fn edge_resolvent(g: &Graph, t: &Rational, transition: &ExactMatrix, left: &ExactMatrix) -> Option<ExactMatrix> {
    let es = build_edge_space(g);
    let m = es.m;
    let system = &ExactMatrix::identity(m) - &transition.scale(t);
    let solved = system.solve(&es.target)?;
    let core = &(&es.source.transpose() * left) * &solved;
    Some(&ExactMatrix::identity(g.n()) + &core.scale(t))
}

/// Exact value of the generating function `Phi(t) = sum_k t^k p_k`.
///
/// Unweighted modes use the Laplacian closed form and fall back to the
/// edge-space resolvent where the Laplacian is singular but the function is not.
pub fn generating_function_eval(g: &Graph, t: &Rational, mode: &WalkMode) -> Result<ExactMatrix> {
    let pole = || Error::PoleAtT(to_canonical(t));
    let es = build_edge_space(g);
    match mode {
        WalkMode::Weighted => {
            edge_resolvent(g, t, &es.v_similar(), &es.weights).ok_or_else(pole)
        }
        WalkMode::Nbtw | WalkMode::Btdw { .. } => {
            let tau = match mode {
                WalkMode::Btdw { omega } => {
                    check_omega(omega)?;
                    Rational::one() - omega
                }
                _ => Rational::one(),
            };
            g.require_unweighted()?;
            let laplacian = if tau.is_zero() {
                // classical walks: M_0(t) = I - tA, numerator 1
                let id = ExactMatrix::identity(g.n());
                Some(&id - &g.adjacency().scale(t))
            } else {
                let m = if tau.is_one() { directed_dgl(g)? } else { tau_dgl(g, &tau)? };
                Some(m.eval(t))
            };
            let numer = Rational::one() - &tau * &tau * t * t;
            if let Some(inv) = laplacian.and_then(|l| l.inverse()) {
                if !numer.is_zero() {
                    return Ok(inv.scale(&numer));
                }
            }
            let transition = es.deformed_hashimoto(&tau);
            edge_resolvent(g, t, &transition, &ExactMatrix::identity(es.m)).ok_or_else(pole)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralityResult {
    #[serde(serialize_with = "crate::io::serde_rational")]
    pub t: Rational,
    pub mode: String,
    #[serde(serialize_with = "crate::io::serde_rationals")]
    pub phi_row_sums: Vec<Rational>,
    pub converged: bool,
}

/// Certifies `|t| < r` for the chosen walk family.
pub fn check_below_radius(g: &Graph, t: &Rational, mode: &WalkMode) -> Result<()> {
    let report = match mode {
        WalkMode::Nbtw => radius_unweighted(g)?,
        WalkMode::Btdw { omega } => {
            check_omega(omega)?;
            let tau = Rational::one() - omega;
            if tau.is_zero() {
                radius_weighted(&g.unweighted_version())?
            } else {
                radius_btdw(g, &tau)?
            }
        }
        WalkMode::Weighted => radius_weighted(g)?,
    };
    let certified = match &report.r {
        RadiusValue::Infinite => true,
        other => other.lower().is_some_and(|lo| t.abs() < lo),
    };
    if certified {
        Ok(())
    } else {
        Err(Error::AboveRadius {
            t: to_canonical(t),
            radius: report.r.describe(),
        })
    }
}

/// Row sums of `Phi(t)`: the walk-based analogue of Katz centrality (raw, unnormalized).
pub fn nbt_katz_centrality(g: &Graph, t: &Rational, mode: &WalkMode) -> Result<CentralityResult> {
    check_below_radius(g, t, mode)?;
    let phi = generating_function_eval(g, t, mode)?;
    Ok(CentralityResult {
        t: t.clone(),
        mode: mode.label(),
        phi_row_sums: phi.row_sums(),
        converged: true,
    })
}
