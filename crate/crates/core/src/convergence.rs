//! Radius of convergence of the walk generating functions.

use num::{One, Signed, Zero};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::edge_space::build_edge_space;
use crate::error::Result;
use crate::graph::{scc_decompose, CycleClass, Graph};
use crate::laplacian::{check_tau, directed_dgl, tau_dgl};
use crate::poly::roots::smallest_root_in;
use crate::poly::RealRoot;
use crate::rational::{to_canonical, to_decimal, Rational};
use crate::spectral::{perron_radius, PerronResult};

/// A positive real quantity known exactly, to within a rational bracket, or only from below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadiusValue {
    Infinite,
    Exact(Rational),
    Interval { lo: Rational, hi: Rational },
    AtLeast(Rational),
}

impl RadiusValue {
    fn from_root(root: &RealRoot) -> Self {
        match root.exact() {
            Some(q) => RadiusValue::Exact(q.clone()),
            None => RadiusValue::Interval {
                lo: root.lower().clone(),
                hi: root.upper().clone(),
            },
        }
    }

    /// Reciprocal of a Perron bracket; infinite for a nilpotent matrix.
    fn reciprocal_of(rho: &PerronResult) -> Self {
        match rho.reciprocal() {
            None => RadiusValue::Infinite,
            Some((lo, hi)) if lo == hi => RadiusValue::Exact(lo),
            Some((lo, hi)) => RadiusValue::Interval { lo, hi },
        }
    }

    /// Certified lower bound (`None` for an infinite value).
    pub fn lower(&self) -> Option<Rational> {
        match self {
            RadiusValue::Infinite => None,
            RadiusValue::Exact(q) | RadiusValue::AtLeast(q) => Some(q.clone()),
            RadiusValue::Interval { lo, .. } => Some(lo.clone()),
        }
    }

    /// Certified upper bound, if one is known.
    pub fn upper(&self) -> Option<Rational> {
        match self {
            RadiusValue::Exact(q) => Some(q.clone()),
            RadiusValue::Interval { hi, .. } => Some(hi.clone()),
            RadiusValue::Infinite | RadiusValue::AtLeast(_) => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, RadiusValue::Infinite)
    }

    /// Width of the bracket (zero when exact).
    pub fn width(&self) -> Option<Rational> {
        Some(self.upper()? - self.lower()?)
    }

    /// True when both values are finite brackets that intersect.
    pub fn overlaps(&self, other: &RadiusValue) -> bool {
        match (self.lower(), self.upper(), other.lower(), other.upper()) {
            (Some(a), Some(b), Some(c), Some(d)) => a <= d && c <= b,
            _ => false,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            RadiusValue::Infinite => "inf".into(),
            RadiusValue::Exact(q) => to_canonical(q),
            RadiusValue::Interval { lo, hi } => format!("[{}, {}]", to_canonical(lo), to_canonical(hi)),
            RadiusValue::AtLeast(q) => format!(">= {}", to_canonical(q)),
        }
    }
}

impl Serialize for RadiusValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RadiusValue::Infinite => s.serialize_str("inf"),
            RadiusValue::Exact(q) => s.serialize_str(&to_canonical(q)),
            RadiusValue::Interval { lo, hi } => {
                let mut map = s.serialize_map(Some(3))?;
                map.serialize_entry("lo", &to_canonical(lo))?;
                map.serialize_entry("hi", &to_canonical(hi))?;
                let mid = (lo + hi) / Rational::from_integer(2.into());
                map.serialize_entry("decimal", &to_decimal(&mid, 12))?;
                map.end()
            }
            RadiusValue::AtLeast(q) => {
                let mut map = s.serialize_map(Some(2))?;
                map.serialize_entry("at_least", &to_canonical(q))?;
                map.serialize_entry("decimal", &to_decimal(q, 12))?;
                map.end()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseLabel {
    AllTrees,
    SomeOneCycleNoneMore,
    SomeMultiCycle,
    NotCharacterized,
}

impl CaseLabel {
    fn from_class(class: CycleClass) -> Self {
        match class {
            CycleClass::Tree => CaseLabel::AllTrees,
            CycleClass::OneCycle => CaseLabel::SomeOneCycleNoneMore,
            CycleClass::MultiCycle => CaseLabel::SomeMultiCycle,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadiusReport {
    pub mode: String,
    pub case_label: CaseLabel,
    pub r: RadiusValue,
    pub mu: Option<RadiusValue>,
    pub rho_hashimoto: PerronResult,
    /// Smallest product `w(e) w(f)` over non-backtracking pairs; the bound is its square root.
    #[serde(serialize_with = "crate::io::serde_opt_rational")]
    pub sigma_squared: Option<Rational>,
    /// Every structural relation checked during classification held.
    pub consistent: bool,
    pub provenance: Vec<String>,
}

const CLASSIFICATION: &str = "case from cycle counts of component undirectizations";
const PERRON: &str = "rho from certified Collatz-Wielandt bracket";

/// Radius for non-backtracking walks on an unweighted graph.
pub fn radius_unweighted(g: &Graph) -> Result<RadiusReport> {
    g.require_unweighted()?;
    let case_label = CaseLabel::from_class(scc_decompose(g).max_cycle_class());
    let rho = perron_radius(&build_edge_space(g).hashimoto)?;
    let inverse_rho = RadiusValue::reciprocal_of(&rho);
    let one = Rational::one();
    let mut provenance = vec![CLASSIFICATION.to_owned(), format!("{PERRON} on B_u")];
    let (r, mu, consistent) = match case_label {
        CaseLabel::AllTrees => (RadiusValue::Infinite, RadiusValue::Exact(one), rho.nilpotent),
        CaseLabel::SomeOneCycleNoneMore => (RadiusValue::Exact(one.clone()), RadiusValue::Exact(one.clone()), rho.contains(&one)),
        _ => {
            provenance.push("mu = smallest root of det M(t) in (0, 1), Sturm isolation".into());
            let det = directed_dgl(g)?.det()?;
            match smallest_root_in(&det, &Rational::zero(), &one)? {
                Some(root) => {
                    let mu = RadiusValue::from_root(&root);
                    let ok = mu.overlaps(&inverse_rho) && rho.lower > one;
                    (mu.clone(), mu, ok)
                }
                None => (inverse_rho.clone(), inverse_rho.clone(), false),
            }
        }
    };
    Ok(RadiusReport {
        mode: "NBTW".into(),
        case_label,
        r,
        mu: Some(mu),
        rho_hashimoto: rho,
        sigma_squared: None,
        consistent,
        provenance,
    })
}

/// Smallest `w(e) w(f)` over edge pairs forming a non-backtracking step.
pub fn sigma_squared(g: &Graph) -> Option<Rational> {
    let es = build_edge_space(g);
    let edges = g.edges();
    let mut best: Option<Rational> = None;
    for e in 0..es.m {
        for f in 0..es.m {
            if es.hashimoto[(e, f)].is_zero() {
                continue;
            }
            let prod = &edges[e].weight * &edges[f].weight;
            if best.as_ref().is_none_or(|b| prod < *b) {
                best = Some(prod);
            }
        }
    }
    best
}

/// Radius for weighted non-backtracking walks: `r = 1 / rho(B_u Z)`.
pub fn radius_weighted(g: &Graph) -> Result<RadiusReport> {
    let rho = perron_radius(&build_edge_space(g).v_similar())?;
    let r = RadiusValue::reciprocal_of(&rho);
    let case_label = CaseLabel::from_class(scc_decompose(g).max_cycle_class());
    let sigma_sq = sigma_squared(g);
    let mut provenance = vec![
        CLASSIFICATION.to_owned(),
        format!("{PERRON} on B_u Z (similar to the square-root Hashimoto matrix)"),
        "r = 1 / rho".to_owned(),
    ];
    let square = |q: &Rational| q * q;
    let consistent = match (case_label, &sigma_sq) {
        (CaseLabel::AllTrees, _) => rho.nilpotent,
        (CaseLabel::SomeOneCycleNoneMore, Some(s2)) => {
            provenance.push("r <= 1/sigma checked as rho^2 >= sigma^2 (upper bracket)".into());
            !rho.nilpotent && square(&rho.upper) >= *s2
        }
        (CaseLabel::SomeMultiCycle, Some(s2)) => {
            provenance.push("r < 1/sigma certified as rho^2 > sigma^2 (lower bracket)".into());
            square(&rho.lower) > *s2
        }
        _ => false,
    };
    Ok(RadiusReport {
        mode: "Weighted".into(),
        case_label,
        r,
        mu: None,
        rho_hashimoto: rho,
        sigma_squared: sigma_sq,
        consistent,
        provenance,
    })
}

/// Radius for backtrack-downweighted walks with `tau = 1 - omega`.
pub fn radius_btdw(g: &Graph, tau: &Rational) -> Result<RadiusReport> {
    check_tau(tau)?;
    g.require_unweighted()?;
    let mode = format!("BTDW(tau={})", to_canonical(tau));
    if tau.is_one() {
        let mut report = radius_unweighted(g)?;
        report.mode = mode;
        return Ok(report);
    }
    let rho = perron_radius(&build_edge_space(g).deformed_hashimoto(tau))?;
    let inverse_rho = RadiusValue::reciprocal_of(&rho);
    let class = scc_decompose(g).max_cycle_class();
    let mut provenance = vec![CLASSIFICATION.to_owned(), format!("{PERRON} on W_u - tau Delta")];
    let inv_tau = tau.recip();
    if class == CycleClass::MultiCycle {
        provenance.push("mu = smallest root of det M_tau(t) in (0, 1/tau), Sturm isolation".into());
        let det = tau_dgl(g, tau)?.det()?;
        let (r, consistent) = match smallest_root_in(&det, &Rational::zero(), &inv_tau)? {
            Some(root) => {
                let mu = RadiusValue::from_root(&root);
                let ok = mu.overlaps(&inverse_rho) && mu.upper().is_some_and(|u| u < inv_tau);
                (mu, ok)
            }
            None => (inverse_rho.clone(), false),
        };
        return Ok(RadiusReport {
            mode,
            case_label: CaseLabel::SomeMultiCycle,
            mu: Some(r.clone()),
            r,
            rho_hashimoto: rho,
            sigma_squared: None,
            consistent,
            provenance,
        });
    }
    provenance.push("no closed form for this case: r >= 1/rho(W_u - tau Delta) only".into());
    let r = match inverse_rho.lower() {
        None => RadiusValue::Infinite,
        Some(lo) => RadiusValue::AtLeast(lo),
    };
    Ok(RadiusReport {
        mode,
        case_label: CaseLabel::NotCharacterized,
        r,
        mu: None,
        rho_hashimoto: rho,
        sigma_squared: None,
        consistent: true,
        provenance,
    })
}

/// `max_ij |p_k|_ij ^ (1/k)` in floating point, a crude growth-rate probe.
pub fn growth_rate(table: &crate::matrix::ExactMatrix, k: usize) -> f64 {
    let max = table
        .to_rows()
        .iter()
        .flatten()
        .map(|x| crate::rational::to_f64(&x.abs()))
        .fold(0.0f64, f64::max);
    if max == 0.0 {
        0.0
    } else {
        max.powf(1.0 / k as f64)
    }
}
