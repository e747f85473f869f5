//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (no libtest harness) so that the report lines appear
//! in the normal `cargo test` output. The process exits non-zero when any
//! criterion fails unexpectedly.

mod common;

use std::time::Instant;

use nbwalk::convergence::{growth_rate, radius_unweighted, radius_weighted, CaseLabel, RadiusValue};
use nbwalk::edge_space::{build_edge_space, non_k_cycling};
use nbwalk::graph::{bipartite_component_count, prune_reciprocal_leaves, Graph};
use nbwalk::ihara::{
    standard_taus, verify_all, verify_ihara_digraph, verify_lemma_suite, verify_tau_ihara, IdentityCertificate,
};
use nbwalk::laplacian::{
    directed_dgl, geometric_multiplicity, index_sum, index_sum_by_smith, is_defective_by_smith, is_one_defective,
    tau_dgl,
};
use nbwalk::poly::smith_form;
use nbwalk::rational::{int, rat, to_canonical, to_f64};
use nbwalk::spectral::perron_radius;
use nbwalk::walks::{btdw_recurrence, enumerate_btdw, enumerate_nbtw, nbtw_recurrence, weighted_nbtw, DEFAULT_BUDGET};
use nbwalk::{ExactMatrix, Polynomial, Rational};
use rand::Rng;

/// Outcome of one criterion.
enum Verdict {
    Pass(String),
    Fail(String),
    /// The criterion contradicts itself; the failing clause is reported but not fatal.
    KnownContradiction(String),
}

type Check = Result<(), String>;

fn ensure(condition: bool, message: impl FnOnce() -> String) -> Check {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}

fn run(number: usize, title: &str, body: impl FnOnce() -> Verdict) -> bool {
    let started = Instant::now();
    let verdict = body();
    let secs = started.elapsed().as_secs_f64();
    let (tag, detail, fatal) = match &verdict {
        Verdict::Pass(d) => ("PASS", d, false),
        Verdict::Fail(d) => ("FAIL", d, true),
        Verdict::KnownContradiction(d) => ("FAIL (known contradiction, not fatal)", d, false),
    };
    println!("{tag} criterion {number:>2}: {title}: {detail} [{secs:.1}s]");
    fatal
}

fn verdict(result: std::result::Result<String, String>) -> Verdict {
    match result {
        Ok(d) => Verdict::Pass(d),
        Err(d) => Verdict::Fail(d),
    }
}

fn p(coeffs: &[i64]) -> Polynomial {
    Polynomial::from_i64(coeffs)
}

// ---------------------------------------------------------------- criterion 1

fn pendant_triangle_matrices() -> std::result::Result<String, String> {
    let g = nbwalk::io::parse_graph("1\t2\n2\t1\n2\t3\n3\t4\n4\t2").map_err(|e| e.to_string())?;
    let a = ExactMatrix::from_i64_rows(&[vec![0, 1, 0, 0], vec![1, 0, 1, 0], vec![0, 0, 0, 1], vec![0, 1, 0, 0]]);
    let s = ExactMatrix::from_i64_rows(&[vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 0]]);
    let h = ExactMatrix::from_i64_rows(&[vec![0, 1, 0, 0], vec![1, 0, 1, 1], vec![0, 1, 0, 1], vec![0, 1, 1, 0]]);
    ensure(g.adjacency() == a, || format!("A = {:?}", g.adjacency()))?;
    ensure(g.reciprocal_adjacency() == s, || format!("S = {:?}", g.reciprocal_adjacency()))?;
    let sum = &(&g.adjacency() + &g.adjacency().transpose()) - &g.reciprocal_adjacency();
    ensure(sum == h, || format!("A + A^T - S = {sum:?}"))?;
    ensure(g.undirectization().adjacency() == h, || "undirectization adjacency differs".into())?;
    Ok("A, S and A + A^T - S match entrywise".into())
}

// ---------------------------------------------------------------- criterion 2

fn two_component_graph() -> Graph {
    // two undirected triangles, with an arc from each vertex of the first to its twin in the second
    let mut pairs = Vec::new();
    for base in [0, 3] {
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            pairs.push((base + i, base + j));
            pairs.push((base + j, base + i));
        }
    }
    pairs.extend((0..3).map(|i| (i, i + 3)));
    Graph::from_edges(6, &pairs).unwrap()
}

fn smith_goldens() -> Verdict {
    let body = || -> std::result::Result<(Polynomial, Polynomial), String> {
        let cyc = p(&[1, 1, 1]);
        let lin = p(&[-1, 1]);
        let k3 = smith_form(&directed_dgl(&common::complete(3)).map_err(|e| e.to_string())?);
        let want_k3 = vec![p(&[1]), cyc.clone(), &cyc * &lin.pow(2)];
        ensure(k3.invariant_polynomials == want_k3, || format!("K3: {:?}", k3.invariant_polynomials))?;

        let six = smith_form(&directed_dgl(&two_component_graph()).map_err(|e| e.to_string())?);
        let mut want_six = vec![p(&[1]); 4];
        want_six.push(&lin * &cyc.pow(2));
        want_six.push(&lin.pow(3) * &cyc.pow(2));
        ensure(six.invariant_polynomials == want_six, || format!("6-vertex: {:?}", six.invariant_polynomials))?;

        let half = rat(1, 2);
        let g = common::pendant_triangle();
        let before = smith_form(&tau_dgl(&g, &half).map_err(|e| e.to_string())?);
        let want_before = vec![p(&[1]), p(&[-4, 0, 1]), p(&[-4, 0, 1]), p(&[16, 0, -8, -16, 1, 0, 0, 1])];
        ensure(before.invariant_polynomials == want_before, || format!("tau = 1/2: {:?}", before.invariant_polynomials))?;
        let pruned = prune_reciprocal_leaves(&g).map_err(|e| e.to_string())?;
        let after = smith_form(&tau_dgl(&pruned, &half).map_err(|e| e.to_string())?);
        let want_after = vec![p(&[-4, 0, 1]), p(&[-4, 0, 1]), p(&[4, 0, -1, -4, 0, 1])];
        ensure(after.invariant_polynomials == want_after, || format!("pruned: {:?}", after.invariant_polynomials))?;
        Ok((want_before[3].clone(), want_after[2].clone()))
    };
    match body() {
        Err(e) => Verdict::Fail(e),
        Ok((f, h)) => {
            let common_factor = f.gcd(&h);
            let cofactors_coprime = f.exact_div(&common_factor).gcd(&h.exact_div(&common_factor)).is_one();
            let goldens = "all four Smith forms exact";
            if common_factor.is_one() {
                Verdict::Pass(format!("{goldens}; gcd of last invariants = 1"))
            } else if common_factor == p(&[-4, 0, 1]) && cofactors_coprime {
                Verdict::KnownContradiction(format!(
                    "{goldens}; gcd of the required last invariants is {common_factor}, not 1 \
                     (shared roots are exactly +-1/tau; remaining factors coprime)"
                ))
            } else {
                Verdict::Fail(format!("{goldens}; unexpected gcd {common_factor}"))
            }
        }
    }
}

// ---------------------------------------------------------------- criterion 3

fn fixtures() -> Vec<(&'static str, Graph)> {
    let weighted_cycle = Graph::from_weighted_edges(3, &[(0, 1, int(2)), (1, 2, int(3)), (2, 0, int(5))]).unwrap();
    let weighted_edge = Graph::from_weighted_edges(2, &[(0, 1, rat(2, 3)), (1, 0, rat(5, 7))]).unwrap();
    let mut single = nbwalk::graph::GraphBuilder::new();
    single.add_vertex("1");
    vec![
        ("pendant_triangle", common::pendant_triangle()),
        ("bowtie", common::bowtie()),
        ("K4", common::complete(4)),
        ("C3", common::undirected_cycle(3)),
        ("C4", common::undirected_cycle(4)),
        ("C5", common::undirected_cycle(5)),
        ("two squares", common::two_squares()),
        ("two components", two_component_graph()),
        ("path", Graph::undirected(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()),
        ("single arc", Graph::from_edges(2, &[(0, 1)]).unwrap()),
        ("single node", single.build()),
        ("weighted 3-cycle", weighted_cycle),
        ("weighted reciprocal edge", weighted_edge),
    ]
}

fn all_certificates(g: &Graph) -> nbwalk::Result<Vec<IdentityCertificate>> {
    let taus = standard_taus();
    let mut certs = verify_all(g, &taus)?;
    if !g.is_unweighted() {
        let support = g.unweighted_version();
        certs.push(verify_ihara_digraph(&support)?);
        for tau in &taus {
            certs.push(verify_tau_ihara(&support, tau)?);
            certs.extend(verify_lemma_suite(&support, tau)?);
        }
    }
    Ok(certs)
}

fn identity_suite() -> std::result::Result<String, String> {
    let mut graphs = fixtures();
    let mut rng = common::rng(3);
    let densities = [0.15, 0.3, 0.45, 0.6];
    for i in 0..200 {
        let n = rng.gen_range(1..=8);
        let g = common::random_digraph(&mut rng, n, densities[i % densities.len()], i % 2 == 1);
        graphs.push(("random", g));
    }
    let mut total = 0;
    for (name, g) in &graphs {
        let certs = all_certificates(g).map_err(|e| format!("{name}: {e}"))?;
        for c in &certs {
            ensure(c.equal, || {
                format!("{name} (n={}, m={}): {} failed {:?}", g.n(), g.m(), c.identity_name, c.checks)
            })?;
        }
        total += certs.len();
    }
    Ok(format!("{total} certificates equal on {} graphs (200 random)", graphs.len()))
}

// ---------------------------------------------------------------- criterion 4

fn oracle_families() -> Vec<Graph> {
    let mut graphs: Vec<Graph> = (1..=4)
        .flat_map(common::all_digraphs)
        .filter(common::is_weakly_connected)
        .collect();
    graphs.extend(common::all_undirected(5).into_iter().filter(common::is_weakly_connected));
    let mut rng = common::rng(4);
    let mut added = 0;
    while added < 200 {
        let g = common::random_digraph(&mut rng, 5, 0.35, false);
        if common::is_weakly_connected(&g) {
            graphs.push(g);
            added += 1;
        }
    }
    graphs
}

fn oracle_equivalence() -> std::result::Result<String, String> {
    let graphs = oracle_families();
    let omegas = [int(0), rat(1, 4), rat(1, 2), int(1)];
    for g in &graphs {
        let oracle = enumerate_nbtw(g, 8, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let recurrence = nbtw_recurrence(g, 8).map_err(|e| e.to_string())?;
        let edge_power = weighted_nbtw(g, 8);
        ensure(oracle.same_tables(&recurrence) && oracle.same_tables(&edge_power), || {
            format!("NBTW tables differ on {:?}", nbwalk::io::serialize_graph(g))
        })?;
        for omega in &omegas {
            let oracle = enumerate_btdw(g, 7, omega, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let recurrence = btdw_recurrence(g, 7, omega).map_err(|e| e.to_string())?;
            ensure(oracle.same_tables(&recurrence), || {
                format!("BTDW(omega={}) differs on {:?}", to_canonical(omega), nbwalk::io::serialize_graph(g))
            })?;
        }
    }
    Ok(format!("{} connected graphs on <= 5 vertices; NBTW k <= 8, BTDW k <= 7 at 4 omegas", graphs.len()))
}

// ---------------------------------------------------------------- criterion 5

fn radius_trichotomy() -> std::result::Result<String, String> {
    let forest = Graph::undirected(6, &[(0, 1), (1, 2), (1, 3), (4, 5)]).unwrap();
    let report = radius_unweighted(&forest).map_err(|e| e.to_string())?;
    ensure(report.case_label == CaseLabel::AllTrees && report.r.is_infinite() && report.consistent, || {
        format!("forest: {:?} r = {}", report.case_label, report.r.describe())
    })?;
    let tables = nbtw_recurrence(&forest, 12).map_err(|e| e.to_string())?;
    ensure(tables.tables.last().is_some_and(ExactMatrix::is_zero), || "forest walks do not die out".into())?;

    let one_cycle = [
        ("pendant_triangle", common::pendant_triangle()),
        ("C3", common::undirected_cycle(3)),
        ("C4", common::undirected_cycle(4)),
        ("C5", common::undirected_cycle(5)),
    ];
    for (name, g) in one_cycle {
        let report = radius_unweighted(&g).map_err(|e| e.to_string())?;
        ensure(
            report.case_label == CaseLabel::SomeOneCycleNoneMore
                && report.r == RadiusValue::Exact(int(1))
                && report.consistent,
            || format!("{name}: {:?} r = {}", report.case_label, report.r.describe()),
        )?;
    }

    let tolerance = rat(1, 10_000_000_000);
    let mut widest = Rational::from_integer(0.into());
    for (name, g) in [("bowtie", common::bowtie()), ("K4", common::complete(4))] {
        let report = radius_unweighted(&g).map_err(|e| e.to_string())?;
        let mu = report.mu.clone().ok_or("missing mu")?;
        let inverse_rho = report.rho_hashimoto.reciprocal().ok_or("rho bracket touches 0")?;
        let inverse_rho = RadiusValue::Interval {
            lo: inverse_rho.0,
            hi: inverse_rho.1,
        };
        let width = mu.width().ok_or("mu unbounded")? + inverse_rho.width().ok_or("1/rho unbounded")?;
        ensure(
            report.case_label == CaseLabel::SomeMultiCycle
                && report.consistent
                && mu.overlaps(&inverse_rho)
                && mu.upper().is_some_and(|u| u < int(1))
                && width <= tolerance,
            || format!("{name}: mu = {}, 1/rho = {}", mu.describe(), inverse_rho.describe()),
        )?;
        widest = widest.max(width);
    }
    Ok(format!("6 fixtures classified; widest combined bracket {:.2e}", to_f64(&widest)))
}

// ---------------------------------------------------------------- criterion 6

fn weighted_radius() -> std::result::Result<String, String> {
    let cycle = Graph::from_weighted_edges(3, &[(0, 1, int(2)), (1, 2, int(3)), (2, 0, int(5))]).unwrap();
    let report = radius_weighted(&cycle).map_err(|e| e.to_string())?;
    let (lo, hi) = (report.r.lower().ok_or("r infinite")?, report.r.upper().ok_or("r unbounded")?);
    let cube = |q: &Rational| q * q * q;
    // 30^(-1/3) in [lo, hi]  <=>  lo^3 <= 1/30 <= hi^3
    ensure(cube(&lo) <= rat(1, 30) && cube(&hi) >= rat(1, 30), || {
        format!("r = {} misses 30^(-1/3)", report.r.describe())
    })?;
    ensure(&hi - &lo <= rat(1, 10_000_000_000), || "r bracket too wide".into())?;

    let mut rng = common::rng(6);
    let mut worst: f64 = 0.0;
    let mut positive = 0;
    for _ in 0..20 {
        let n = rng.gen_range(3..=6);
        let g = common::random_digraph(&mut rng, n, 0.45, true);
        let rho = perron_radius(&build_edge_space(&g).v_similar()).map_err(|e| e.to_string())?;
        if rho.nilpotent {
            continue;
        }
        positive += 1;
        let table = weighted_nbtw(&g, 60);
        let growth = growth_rate(&table.tables[60], 60);
        let relative = (growth - rho.approx()).abs() / rho.approx();
        ensure(relative <= 0.05, || {
            format!("growth {growth:.4} vs rho {:.4} on {:?}", rho.approx(), nbwalk::io::serialize_graph(&g))
        })?;
        worst = worst.max(relative);
    }

    for seed in 0..10 {
        let mut rng = common::rng(600 + seed);
        let n = rng.gen_range(2..=8);
        let triples: Vec<_> = (1..n)
            .flat_map(|v| {
                let parent = rng.gen_range(0..v);
                let (w, w2) = (common::random_weight(&mut rng), common::random_weight(&mut rng));
                [(parent, v, w), (v, parent, w2)]
            })
            .collect();
        let tree = Graph::from_weighted_edges(n, &triples).unwrap();
        let report = radius_weighted(&tree).map_err(|e| e.to_string())?;
        ensure(report.r.is_infinite() && report.case_label == CaseLabel::AllTrees, || {
            format!("weighted tree r = {}", report.r.describe())
        })?;
    }
    Ok(format!(
        "3-cycle bracket contains 30^(-1/3); {positive}/20 random graphs with rho > 0, worst growth error {:.2}%; 10 weighted trees r = inf",
        worst * 100.0
    ))
}

// ---------------------------------------------------------------- criterion 7

fn defectiveness() -> std::result::Result<String, String> {
    let graphs: Vec<Graph> = (1..=4)
        .flat_map(common::all_digraphs)
        .filter(common::is_strongly_connected)
        .collect();
    let mut defective = 0;
    for g in &graphs {
        for tau in [rat(1, 2), int(1)] {
            let m = tau_dgl(g, &tau).map_err(|e| e.to_string())?;
            let by_criterion = is_one_defective(g, &tau);
            let by_smith = is_defective_by_smith(&m, &tau.recip());
            ensure(by_criterion == by_smith, || {
                format!("tau = {}: criterion {by_criterion}, Smith {by_smith} on {:?}", to_canonical(&tau), nbwalk::io::serialize_graph(g))
            })?;
            let kn = m.declared_degree() * g.n();
            ensure(index_sum(&m).ok() == Some(kn), || "index sum differs from k n".into())?;
            defective += usize::from(by_smith);
        }
    }
    Ok(format!("{} strongly connected digraphs x 2 taus agree ({defective} defective cases)", graphs.len()))
}

// ---------------------------------------------------------------- criterion 8

fn non_cycling_radius() -> std::result::Result<String, String> {
    let mut parts = Vec::new();
    for (name, g, k) in [("bowtie", common::bowtie(), 2), ("two squares", common::two_squares(), 3)] {
        let pk = non_k_cycling(&g, k).map_err(|e| e.to_string())?;
        let rho = perron_radius(&pk.matrix).map_err(|e| e.to_string())?;
        ensure(rho.lower > int(1), || format!("{name}: lower bound {} not above 1", to_canonical(&rho.lower)))?;
        parts.push(format!("{name} P_{k}: rho >= {}", nbwalk::rational::to_decimal(&rho.lower, 6)));
    }
    Ok(parts.join("; "))
}

// ---------------------------------------------------------------- criterion 9

fn leaf_pruning() -> std::result::Result<String, String> {
    let mut rng = common::rng(9);
    let mut removed = 0;
    for _ in 0..50 {
        let n = rng.gen_range(2..=6);
        let base = common::random_digraph(&mut rng, n, 0.4, false);
        let leaves = rng.gen_range(1..=3);
        let g = common::add_reciprocal_leaves(&mut rng, &base, leaves);
        let pruned = prune_reciprocal_leaves(&g).map_err(|e| e.to_string())?;
        let (m, mp) = (
            directed_dgl(&g).map_err(|e| e.to_string())?,
            directed_dgl(&pruned).map_err(|e| e.to_string())?,
        );
        let (d, dp) = (m.det().map_err(|e| e.to_string())?, mp.det().map_err(|e| e.to_string())?);
        ensure(d == dp, || format!("det changed: {d} vs {dp} on {:?}", nbwalk::io::serialize_graph(&g)))?;
        let one = int(1);
        ensure(geometric_multiplicity(&m, &one) == geometric_multiplicity(&mp, &one), || {
            format!("geometric multiplicity at 1 changed on {:?}", nbwalk::io::serialize_graph(&g))
        })?;
        for lap in [&m, &mp] {
            ensure(index_sum(lap).ok() == Some(lap.declared_degree() * lap.rows()), || "index sum".into())?;
        }
        removed += g.n() - pruned.n();
    }
    Ok(format!("50 graphs, {removed} leaves pruned; det M and nullity of M(1) preserved"))
}

// ---------------------------------------------------------------- criterion 10

fn multiplicities() -> std::result::Result<String, String> {
    let graphs: Vec<Graph> = (1..=4).flat_map(common::all_digraphs).collect();
    let (one, minus_one) = (int(1), int(-1));
    for g in &graphs {
        let m = directed_dgl(g).map_err(|e| e.to_string())?;
        let undirected = g.undirected_part();
        let components = undirected.weak_components().len();
        let bipartite = bipartite_component_count(&undirected).map_err(|e| e.to_string())?;
        let describe = || nbwalk::io::serialize_graph(g);
        ensure(geometric_multiplicity(&m, &one) == components, || format!("+1 on {:?}", describe()))?;
        ensure(geometric_multiplicity(&m, &minus_one) == bipartite, || format!("-1 on {:?}", describe()))?;
        let kn = m.declared_degree() * g.n();
        ensure(index_sum(&m).ok() == Some(kn) && index_sum_by_smith(&m) == kn, || {
            format!("index sum on {:?}", describe())
        })?;
        let half = tau_dgl(g, &rat(1, 2)).map_err(|e| e.to_string())?;
        ensure(index_sum(&half).ok() == Some(half.declared_degree() * g.n()), || {
            format!("index sum at tau = 1/2 on {:?}", describe())
        })?;
    }
    Ok(format!("{} digraphs on <= 4 vertices; index sum = k n throughout", graphs.len()))
}

fn main() {
    let started = Instant::now();
    let fatal = [
        run(1, "pendant triangle matrices", || verdict(pendant_triangle_matrices())),
        run(2, "Smith-form goldens", smith_goldens),
        run(3, "identity suite", || verdict(identity_suite())),
        run(4, "oracle equivalence", || verdict(oracle_equivalence())),
        run(5, "radius trichotomy", || verdict(radius_trichotomy())),
        run(6, "weighted radius", || verdict(weighted_radius())),
        run(7, "defectiveness criterion", || verdict(defectiveness())),
        run(8, "non-k-cycling radius above 1", || verdict(non_cycling_radius())),
        run(9, "reciprocal leaf pruning", || verdict(leaf_pruning())),
        run(10, "multiplicities of +1 and -1", || verdict(multiplicities())),
    ];
    let failures = fatal.iter().filter(|&&f| f).count();
    println!(
        "acceptance: {} of 10 criteria without unexpected failure [{:.1}s]",
        10 - failures,
        started.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
