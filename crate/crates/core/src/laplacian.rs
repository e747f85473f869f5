//! Deformed graph Laplacians (directed, tau-deformed, undirected part and
//! undirectization), eigenvalue multiplicities and defectiveness tests.

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::ExactMatrix;
use crate::poly::{smith_form, PolyMatrix};
use crate::rational::Rational;

/// Rejects `tau` outside `(0, 1]`.
pub fn check_tau(tau: &Rational) -> Result<()> {
    if tau.is_positive() && *tau <= Rational::one() {
        Ok(())
    } else {
        Err(Error::TauOutOfRange(tau.to_string()))
    }
}

/// Coefficient matrices `[I, -A, tau (D - tau I), tau^2 (A - S)]`.
fn tau_coefficients(g: &Graph, tau: &Rational) -> [ExactMatrix; 4] {
    let n = g.n();
    let id = ExactMatrix::identity(n);
    let a = g.adjacency();
    let s = g.reciprocal_adjacency();
    let d = g.degree_matrix();
    let quad = (&d - &id.scale(tau)).scale(tau);
    let cubic = (&a - &s).scale(&(tau * tau));
    [id, -&a, quad, cubic]
}

fn from_coefficients(coeffs: [ExactMatrix; 4]) -> PolyMatrix {
    let grade = if coeffs[3].is_zero() { 2 } else { 3 };
    PolyMatrix::from_coefficients(&coeffs[..=grade])
}

/// `M(t) = I - A t + (D - I) t^2 + (A - S) t^3`, graded 3 (or 2 when `A = S`).
pub fn directed_dgl(g: &Graph) -> Result<PolyMatrix> {
    g.require_unweighted()?;
    Ok(from_coefficients(tau_coefficients(g, &Rational::one())))
}

/// `M_tau(t)` for any `tau` (including 0, where it reduces to `I - A t`), without validation.
pub(crate) fn tau_polymatrix(g: &Graph, tau: &Rational) -> PolyMatrix {
    from_coefficients(tau_coefficients(g, tau))
}

/// `M_tau(t) = I - A t + tau (D - tau I) t^2 + tau^2 (A - S) t^3`.
pub fn tau_dgl(g: &Graph, tau: &Rational) -> Result<PolyMatrix> {
    check_tau(tau)?;
    g.require_unweighted()?;
    Ok(from_coefficients(tau_coefficients(g, tau)))
}

/// All Laplacians attached to one graph.
#[derive(Debug, Clone)]
pub struct LaplacianBundle {
    pub directed: PolyMatrix,
    pub tau_deformed: Option<PolyMatrix>,
    /// `M_U(t) = I - S t + (D - I) t^2`.
    pub undirected_part: PolyMatrix,
    /// Deformed Laplacian of the undirectization.
    pub undirectization: PolyMatrix,
    /// `D - S`.
    pub graph_laplacian: ExactMatrix,
    /// `D + S`.
    pub signless_laplacian: ExactMatrix,
    pub d: usize,
    pub d_u: usize,
}

pub fn laplacian_bundle(g: &Graph, tau: Option<&Rational>) -> Result<LaplacianBundle> {
    let directed = directed_dgl(g)?;
    let tau_deformed = tau.map(|t| tau_dgl(g, t)).transpose()?;
    let s = g.reciprocal_adjacency();
    let d = g.degree_matrix();
    Ok(LaplacianBundle {
        directed,
        tau_deformed,
        undirected_part: directed_dgl(&g.undirected_part())?,
        undirectization: directed_dgl(&g.undirectization())?,
        graph_laplacian: &d - &s,
        signless_laplacian: &d + &s,
        d: g.total_edges(),
        d_u: g.reciprocated_edges(),
    })
}

/// Multiplicities of a rational eigenvalue of a regular polynomial matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenReport {
    #[serde(serialize_with = "crate::io::serde_rational")]
    pub eigenvalue: Rational,
    pub algebraic: usize,
    pub geometric: usize,
    pub partials: Vec<usize>,
}

pub fn eigen_report(m: &PolyMatrix, lambda: &Rational) -> Result<EigenReport> {
    let det = m.det()?;
    if det.is_zero() {
        return Err(Error::SingularPolyMatrix);
    }
    let partials = smith_form(m).partial_multiplicities(lambda);
    Ok(EigenReport {
        eigenvalue: lambda.clone(),
        algebraic: det.root_multiplicity(lambda),
        geometric: m.eval(lambda).nullity(),
        partials,
    })
}

/// Geometric multiplicity only (rank of `M(lambda)`), without a Smith form.
pub fn geometric_multiplicity(m: &PolyMatrix, lambda: &Rational) -> usize {
    m.eval(lambda).nullity()
}

/// Defectiveness of `1/tau` as an eigenvalue of `M_tau`: `2d - d_U = 2 tau n`.
pub fn is_one_defective(g: &Graph, tau: &Rational) -> bool {
    let lhs = Rational::from_integer((2 * g.total_edges() - g.reciprocated_edges()).into());
    let rhs = tau * Rational::from_integer((2 * g.n()).into());
    lhs == rhs
}

/// Defectiveness read off the Smith form: some partial multiplicity of `lambda` exceeds 1.
pub fn is_defective_by_smith(m: &PolyMatrix, lambda: &Rational) -> bool {
    smith_form(m).partial_multiplicities(lambda).iter().any(|&p| p >= 2)
}

/// Total multiplicity of finite eigenvalues plus that of infinity
/// (`deg det M + mult_0 det Rev M`); equals `k n` for regular `M` of grade `k`.
pub fn index_sum(m: &PolyMatrix) -> Result<usize> {
    let det = m.det()?;
    let finite = det.degree().ok_or(Error::SingularPolyMatrix)?;
    let infinite = m.reversal().det()?.root_multiplicity(&Rational::zero());
    Ok(finite + infinite)
}

/// Same count taken from partial multiplicities of the two Smith forms.
pub fn index_sum_by_smith(m: &PolyMatrix) -> usize {
    let finite: usize = smith_form(m)
        .invariant_polynomials
        .iter()
        .map(|s| s.degree().unwrap_or(0))
        .sum();
    let infinite: usize = smith_form(&m.reversal())
        .partial_multiplicities(&Rational::zero())
        .iter()
        .sum();
    finite + infinite
}
