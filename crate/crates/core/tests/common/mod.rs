//! Graph families shared by the integration tests.
#![allow(dead_code)]

use nbwalk::graph::Graph;
use nbwalk::rational::{rat, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Ordered vertex pairs `(i, j)` with `i != j`.
fn arcs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

/// Every loopless digraph on `n` labelled vertices.
pub fn all_digraphs(n: usize) -> Vec<Graph> {
    let arcs = arcs(n);
    (0u64..1 << arcs.len())
        .map(|mask| {
            let chosen: Vec<_> = arcs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &a)| a)
                .collect();
            Graph::from_edges(n, &chosen).unwrap()
        })
        .collect()
}

/// Every simple undirected graph on `n` labelled vertices.
pub fn all_undirected(n: usize) -> Vec<Graph> {
    let pairs: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let chosen: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            Graph::undirected(n, &chosen).unwrap()
        })
        .collect()
}

pub fn is_weakly_connected(g: &Graph) -> bool {
    g.weak_components().len() == 1
}

pub fn is_strongly_connected(g: &Graph) -> bool {
    nbwalk::graph::scc_decompose(g).components.len() == 1
}

/// Small positive rational `p/q` with `p, q` in `1..=9`.
pub fn random_weight(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(1..=9), rng.gen_range(1..=9))
}

/// Digraph where each ordered pair is an arc with probability `density`.
pub fn random_digraph(rng: &mut impl Rng, n: usize, density: f64, weighted: bool) -> Graph {
    let mut triples = Vec::new();
    for (i, j) in arcs(n) {
        if rng.gen_bool(density) {
            let w = if weighted { random_weight(rng) } else { Rational::from_integer(1.into()) };
            triples.push((i, j, w));
        }
    }
    Graph::from_weighted_edges(n, &triples).unwrap()
}

/// Attaches `count` new vertices, each joined to a random existing vertex by a reciprocal edge.
pub fn add_reciprocal_leaves(rng: &mut impl Rng, g: &Graph, count: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.src, e.dst)).collect();
    let mut n = g.n();
    for _ in 0..count {
        let anchor = rng.gen_range(0..n);
        pairs.push((anchor, n));
        pairs.push((n, anchor));
        n += 1;
    }
    Graph::from_edges(n, &pairs).unwrap()
}

pub fn bowtie() -> Graph {
    Graph::undirected(5, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let pairs: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Graph::undirected(n, &pairs).unwrap()
}

pub fn undirected_cycle(l: usize) -> Graph {
    let pairs: Vec<_> = (0..l).map(|i| (i, (i + 1) % l)).collect();
    Graph::undirected(l, &pairs).unwrap()
}

/// Reciprocal edge 1-2 plus the directed cycle 2 -> 3 -> 4 -> 2.
pub fn pendant_triangle() -> Graph {
    nbwalk::io::parse_graph("1\t2\n2\t1\n2\t3\n3\t4\n4\t2").unwrap()
}

/// Two undirected squares sharing one vertex.
pub fn two_squares() -> Graph {
    Graph::undirected(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)]).unwrap()
}
