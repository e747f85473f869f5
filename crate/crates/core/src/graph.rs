//! Weighted digraphs without loops or multi-edges, their undirected part and
//! undirectization, strongly connected components and reciprocal-leaf pruning.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub weight: Rational,
}

/// Immutable weighted digraph. Vertices are indexed in first-appearance order;
/// edges are kept sorted by `(src, dst)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<Edge>,
    lookup: HashMap<(usize, usize), usize>,
}

/// Incremental construction from labelled vertices and edges.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), Rational>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a vertex (no-op if already present) and returns its index.
    pub fn add_vertex(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), i);
        i
    }

    pub fn add_edge(&mut self, src: &str, dst: &str, weight: Rational) -> Result<()> {
        if src == dst {
            return Err(Error::LoopEdge { label: src.to_owned() });
        }
        if !weight.is_positive() {
            return Err(Error::NonPositiveWeight {
                src: src.to_owned(),
                dst: dst.to_owned(),
                weight: weight.to_string(),
            });
        }
        let s = self.add_vertex(src);
        let d = self.add_vertex(dst);
        if self.edges.insert((s, d), weight).is_some() {
            return Err(Error::DuplicateEdge {
                src: src.to_owned(),
                dst: dst.to_owned(),
            });
        }
        Ok(())
    }

    pub fn build(self) -> Graph {
        let edges = self
            .edges
            .into_iter()
            .map(|((src, dst), weight)| Edge { src, dst, weight })
            .collect();
        Graph::assemble(self.labels, edges)
    }
}

/// Builds a graph from labelled triples; vertices are numbered in first-appearance order.
pub fn build_graph<S: AsRef<str>>(edge_triples: &[(S, S, Rational)]) -> Result<Graph> {
    let mut b = GraphBuilder::new();
    for (s, d, w) in edge_triples {
        b.add_edge(s.as_ref(), d.as_ref(), w.clone())?;
    }
    Ok(b.build())
}

impl Graph {
    fn assemble(labels: Vec<String>, mut edges: Vec<Edge>) -> Self {
        edges.sort_by_key(|e| (e.src, e.dst));
        let lookup = edges.iter().enumerate().map(|(k, e)| ((e.src, e.dst), k)).collect();
        Self { labels, edges, lookup }
    }

    /// Graph on vertices `0..n` labelled `"1".."n"` from weighted index triples.
    pub fn from_weighted_edges(n: usize, edges: &[(usize, usize, Rational)]) -> Result<Self> {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut seen = BTreeMap::new();
        for (s, d, w) in edges {
            let (s, d) = (*s, *d);
            if s >= n || d >= n {
                return Err(Error::VertexOutOfRange(s.max(d)));
            }
            if s == d {
                return Err(Error::LoopEdge {
                    label: labels[s].clone(),
                });
            }
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight {
                    src: labels[s].clone(),
                    dst: labels[d].clone(),
                    weight: w.to_string(),
                });
            }
            if seen.insert((s, d), w.clone()).is_some() {
                return Err(Error::DuplicateEdge {
                    src: labels[s].clone(),
                    dst: labels[d].clone(),
                });
            }
        }
        let edges = seen
            .into_iter()
            .map(|((src, dst), weight)| Edge { src, dst, weight })
            .collect();
        Ok(Self::assemble(labels, edges))
    }

    /// Unweighted graph on vertices `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let triples: Vec<_> = edges.iter().map(|&(s, d)| (s, d, Rational::one())).collect();
        Self::from_weighted_edges(n, &triples)
    }

    /// Undirected unweighted graph: each pair is inserted in both directions.
    pub fn undirected(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let arcs: Vec<_> = pairs.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
        Self::from_edges(n, &arcs)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, src: usize, dst: usize) -> Option<usize> {
        self.lookup.get(&(src, dst)).copied()
    }

    pub fn has_edge(&self, src: usize, dst: usize) -> bool {
        self.lookup.contains_key(&(src, dst))
    }

    pub fn weight(&self, src: usize, dst: usize) -> Option<&Rational> {
        self.edge_index(src, dst).map(|k| &self.edges[k].weight)
    }

    pub fn is_reciprocated(&self, e: &Edge) -> bool {
        self.has_edge(e.dst, e.src)
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_one())
    }

    /// Every edge is reciprocated (symmetric support).
    pub fn is_undirected(&self) -> bool {
        self.edges.iter().all(|e| self.is_reciprocated(e))
    }

    pub fn require_unweighted(&self) -> Result<()> {
        if self.is_unweighted() {
            Ok(())
        } else {
            Err(Error::WeightedUnsupported)
        }
    }

    pub fn out_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n()];
        for e in &self.edges {
            adj[e.src].push(e.dst);
        }
        adj
    }

    /// Neighbours in the undirectization (either direction), sorted.
    pub fn undirected_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n()];
        for e in &self.edges {
            adj[e.src].push(e.dst);
            if !self.is_reciprocated(e) {
                adj[e.dst].push(e.src);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        adj
    }

    /// Weighted adjacency matrix `A`.
    pub fn adjacency(&self) -> ExactMatrix {
        let mut a = ExactMatrix::zeros(self.n(), self.n());
        for e in &self.edges {
            a[(e.src, e.dst)] = e.weight.clone();
        }
        a
    }

    /// `S`: adjacency of the undirected part.
    pub fn reciprocal_adjacency(&self) -> ExactMatrix {
        self.undirected_part().adjacency()
    }

    /// `D`: diagonal count of reciprocal edges at each vertex (`diag(diag(A^2))` when unweighted).
    pub fn degree_matrix(&self) -> ExactMatrix {
        let mut counts = vec![0i64; self.n()];
        for e in &self.edges {
            if self.is_reciprocated(e) {
                counts[e.src] += 1;
            }
        }
        ExactMatrix::diagonal(&counts.into_iter().map(int).collect::<Vec<_>>())
    }

    /// `d`: number of directed edges.
    pub fn total_edges(&self) -> usize {
        self.m()
    }

    /// `d_U`: number of reciprocated directed edges.
    pub fn reciprocated_edges(&self) -> usize {
        self.edges.iter().filter(|e| self.is_reciprocated(e)).count()
    }

    /// Number of reciprocal pairs `b`.
    pub fn reciprocal_pairs(&self) -> usize {
        self.reciprocated_edges() / 2
    }

    /// `G_U`: keeps reciprocated edges. In the weighted case each kept edge keeps its own weight.
    pub fn undirected_part(&self) -> Graph {
        let edges = self
            .edges
            .iter()
            .filter(|e| self.is_reciprocated(e))
            .cloned()
            .collect();
        Self::assemble(self.labels.clone(), edges)
    }

    /// `H`: adds the reverse of every unreciprocated edge; the result is unweighted.
    pub fn undirectization(&self) -> Graph {
        let mut pairs = BTreeMap::new();
        for e in &self.edges {
            pairs.insert((e.src, e.dst), ());
            pairs.insert((e.dst, e.src), ());
        }
        let edges = pairs
            .into_keys()
            .map(|(src, dst)| Edge {
                src,
                dst,
                weight: Rational::one(),
            })
            .collect();
        Self::assemble(self.labels.clone(), edges)
    }

    /// Same edges with every weight set to 1.
    pub fn unweighted_version(&self) -> Graph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                weight: Rational::one(),
                ..e.clone()
            })
            .collect();
        Self::assemble(self.labels.clone(), edges)
    }

    /// Every weight multiplied by `c > 0`.
    pub fn scaled(&self, c: &Rational) -> Graph {
        assert!(c.is_positive());
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                weight: &e.weight * c,
                ..e.clone()
            })
            .collect();
        Self::assemble(self.labels.clone(), edges)
    }

    /// Subgraph induced by `vertices` (renumbered in the given order).
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (k, &v) in vertices.iter().enumerate() {
            pos[v] = k;
        }
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| pos[e.src] != usize::MAX && pos[e.dst] != usize::MAX)
            .map(|e| Edge {
                src: pos[e.src],
                dst: pos[e.dst],
                weight: e.weight.clone(),
            })
            .collect();
        Self::assemble(labels, edges)
    }

    /// Graph with vertex `v` and its incident edges removed.
    pub fn without_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n()).filter(|&i| i != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Vertices adjacent to exactly one other vertex, through a reciprocal edge only.
    pub fn reciprocal_leaves(&self) -> Vec<usize> {
        let nbrs = self.undirected_neighbors();
        (0..self.n())
            .filter(|&i| {
                nbrs[i].len() == 1 && {
                    let j = nbrs[i][0];
                    self.has_edge(i, j) && self.has_edge(j, i)
                }
            })
            .collect()
    }

    /// Connected components of the undirectization, each sorted ascending.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        components_of(&self.undirected_neighbors())
    }
}

fn components_of(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Strongly connected components of the digraph with the given successor lists,
/// in topological order of the condensation (a component only reaches later ones).
pub fn strongly_connected_components(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    // iterative Tarjan; emits components in reverse topological order
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut child)) = call.last_mut() {
            if let Some(&w) = succ[v].get(*child) {
                *child += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                out.push(comp);
            }
        }
    }
    out.reverse();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ComponentKind {
    Scc,
    SingleNode,
}

/// Cycle count class of an undirectization: 0, exactly 1, or at least 2 independent cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CycleClass {
    Tree,
    OneCycle,
    MultiCycle,
}

impl CycleClass {
    /// Classification by comparing `2d - d_U` with `2n`.
    pub fn from_counts(n: usize, d: usize, d_u: usize) -> Self {
        let lhs = 2 * d - d_u;
        match lhs.cmp(&(2 * n)) {
            std::cmp::Ordering::Less => CycleClass::Tree,
            std::cmp::Ordering::Equal => CycleClass::OneCycle,
            std::cmp::Ordering::Greater => CycleClass::MultiCycle,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub kind: ComponentKind,
    pub n: usize,
    pub d: usize,
    pub d_u: usize,
    pub cycle_class: CycleClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub components: Vec<Component>,
}

impl ComponentReport {
    /// Worst cycle class over all components (`Tree` for the empty graph).
    pub fn max_cycle_class(&self) -> CycleClass {
        self.components
            .iter()
            .map(|c| c.cycle_class)
            .max()
            .unwrap_or(CycleClass::Tree)
    }
}

pub fn scc_decompose(g: &Graph) -> ComponentReport {
    let comps = strongly_connected_components(&g.out_neighbors());
    let components = comps
        .into_iter()
        .map(|vertices| {
            let sub = g.induced_subgraph(&vertices);
            let n = sub.n();
            let d = sub.total_edges();
            let d_u = sub.reciprocated_edges();
            Component {
                kind: if n == 1 {
                    ComponentKind::SingleNode
                } else {
                    ComponentKind::Scc
                },
                cycle_class: CycleClass::from_counts(n, d, d_u),
                vertices,
                n,
                d,
                d_u,
            }
        })
        .collect();
    ComponentReport { components }
}

/// Removes reciprocal leaves one at a time until none remain.
pub fn prune_reciprocal_leaves(g: &Graph) -> Result<Graph> {
    g.require_unweighted()?;
    let mut current = g.clone();
    while let Some(&leaf) = current.reciprocal_leaves().first() {
        current = current.without_vertex(leaf);
    }
    Ok(current)
}

/// Connected components of an undirected graph admitting a proper 2-colouring
/// (isolated vertices count as bipartite components).
pub fn bipartite_component_count(g: &Graph) -> Result<usize> {
    if !g.is_undirected() {
        return Err(Error::NotUndirected);
    }
    let adj = g.out_neighbors();
    let mut colour: Vec<Option<bool>> = vec![None; g.n()];
    let mut count = 0;
    for comp in components_of(&adj) {
        let s = comp[0];
        colour[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        let mut ok = true;
        while let Some(u) = queue.pop_front() {
            let cu = colour[u].expect("coloured");
            for &v in &adj[u] {
                match colour[v] {
                    None => {
                        colour[v] = Some(!cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => ok = false,
                    Some(_) => {}
                }
            }
        }
        if ok {
            count += 1;
        }
    }
    Ok(count)
}

/// True iff every edge is reciprocated and the graph is connected and acyclic.
pub fn is_undirected_tree(g: &Graph) -> bool {
    g.n() > 0
        && g.is_undirected()
        && g.weak_components().len() == 1
        && g.m() / 2 + 1 == g.n()
}

/// Number of independent cycles `m_H - n + c` of the undirectization.
pub fn cyclomatic_number(g: &Graph) -> usize {
    let h = g.undirectization();
    h.m() / 2 + h.weak_components().len() - h.n()
}
