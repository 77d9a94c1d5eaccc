//! Simple undirected graphs on dense vertex ids `0..n`.

mod io;

pub(crate) use io::content_lines as io_content_lines;
pub use io::{parse_edge_list, write_edge_list, ParseError};

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("average degree of the empty graph is undefined")]
    EmptyGraph,
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is a tree (no cycle to keep)")]
    IsTree,
}

/// Simple undirected graph stored as per-vertex neighbour sets.
///
/// Edges are unordered pairs; the edge set is derived from the adjacency, so
/// the two views can never disagree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.n(),
            self.edges().collect::<Vec<_>>()
        )
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Repeated edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.adj.len()
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n() {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    /// Adds `uv`; returns `false` when the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let fresh = self.adj[u].insert(v);
        self.adj[v].insert(u);
        if fresh {
            self.edge_count += 1;
        }
        Ok(fresh)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        self.edge_count -= 1;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Minimum degree; 0 for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).min().unwrap_or(0)
    }

    /// Vertex of minimum degree, lowest id among ties.
    pub fn min_degree_vertex(&self) -> Option<usize> {
        self.vertices().min_by_key(|&v| (self.degree(v), v))
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.range(u + 1..).map(move |&v| (u, v)))
    }

    /// Exact average degree `2|E|/n`.
    pub fn average_degree(&self) -> Result<Rational, GraphError> {
        if self.n() == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Ok(Rational::new(2 * self.m() as i64, self.n() as i64))
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> impl Iterator<Item = usize> + '_ {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a]
            .iter()
            .copied()
            .filter(move |w| self.adj[b].contains(w))
    }

    /// Subgraph induced by `keep`; vertex `keep[i]` becomes vertex `i`.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j).expect("indices are in range");
                }
            }
        }
        g
    }

    /// Deletes the given vertices and compacts ids, preserving relative order.
    /// Returns the new graph and, for each surviving new id, its old id.
    pub fn remove_vertices(&self, drop: &BTreeSet<usize>) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = self.vertices().filter(|v| !drop.contains(v)).collect();
        (self.induced_subgraph(&keep), keep)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m() + 1 == self.n() && self.is_connected()
    }

    pub fn isolated_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices().filter(|&v| self.degree(v) == 0)
    }

    /// True when every vertex of `sub` is a vertex here and every edge is an edge here.
    pub fn contains_subgraph_identity(&self, sub: &Graph) -> bool {
        sub.n() <= self.n() && sub.edges().all(|(u, v)| self.has_edge(u, v))
    }

    /// The 1-subdivision: each edge `uv` (in lexicographic order) gets a new
    /// middle vertex `n + index`.
    pub fn one_subdivision(&self) -> Graph {
        let edges: Vec<_> = self.edges().collect();
        let mut g = Graph::new(self.n() + edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            let x = self.n() + i;
            g.add_edge(u, x).expect("in range");
            g.add_edge(x, v).expect("in range");
        }
        g
    }
}

/// Contracts the edge `uv`. The merged vertex keeps the lower id; vertices
/// above the higher id shift down by one.
pub fn contract_edge(g: &Graph, u: usize, v: usize) -> Result<Graph, GraphError> {
    if !g.has_edge(u, v) {
        return Err(GraphError::NotAnEdge(u, v));
    }
    let (keep, gone) = if u < v { (u, v) } else { (v, u) };
    let relabel = |x: usize| -> usize {
        if x == gone {
            keep
        } else if x > gone {
            x - 1
        } else {
            x
        }
    };
    let mut out = Graph::new(g.n() - 1);
    for (a, b) in g.edges() {
        let (a, b) = (relabel(a), relabel(b));
        if a != b {
            out.add_edge(a, b).expect("relabelled ids are in range");
        }
    }
    Ok(out)
}

pub fn average_degree(g: &Graph) -> Result<Rational, GraphError> {
    g.average_degree()
}

/// Number of triangles through the edge `uv`, i.e. `|N(u) ∩ N(v)|`.
pub fn triangles_on_edge(g: &Graph, u: usize, v: usize) -> Result<usize, GraphError> {
    if !g.has_edge(u, v) {
        return Err(GraphError::NotAnEdge(u, v));
    }
    Ok(g.common_neighbors(u, v).count())
}

/// Vertex order in which every vertex has at most two neighbours later in the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrder(pub Vec<usize>);

impl EliminationOrder {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Checks that this is a permutation of `h`'s vertices witnessing 2-degeneracy.
    pub fn witnesses_two_degeneracy(&self, h: &Graph) -> bool {
        if self.0.len() != h.n() {
            return false;
        }
        let mut position = vec![usize::MAX; h.n()];
        for (i, &v) in self.0.iter().enumerate() {
            if v >= h.n() || position[v] != usize::MAX {
                return false;
            }
            position[v] = i;
        }
        self.0
            .iter()
            .enumerate()
            .all(|(i, &v)| h.neighbors(v).iter().filter(|&&w| position[w] > i).count() <= 2)
    }
}

/// Peels vertices of degree at most 2 (lowest id first). Returns `None`
/// when a non-empty subgraph of minimum degree at least 3 remains.
pub fn degeneracy_order_2(h: &Graph) -> Option<EliminationOrder> {
    let mut degree: Vec<usize> = h.vertices().map(|v| h.degree(v)).collect();
    let mut removed = vec![false; h.n()];
    let mut ready: BTreeSet<usize> = h.vertices().filter(|&v| degree[v] <= 2).collect();
    let mut order = Vec::with_capacity(h.n());
    while let Some(v) = ready.pop_first() {
        removed[v] = true;
        order.push(v);
        for &w in h.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
                if degree[w] <= 2 {
                    ready.insert(w);
                }
            }
        }
    }
    (order.len() == h.n()).then_some(EliminationOrder(order))
}

/// Spanning subgraph of a connected, cyclic graph made of a BFS tree plus
/// the lexicographically first non-tree edge.
pub fn tree_plus_edge_spanning(component: &Graph) -> Result<Graph, GraphError> {
    if component.n() == 0 || !component.is_connected() {
        return Err(GraphError::NotConnected);
    }
    if component.m() < component.n() {
        return Err(GraphError::IsTree);
    }
    let mut tree = Graph::new(component.n());
    let mut seen = vec![false; component.n()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &w in component.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                tree.add_edge(u, w).expect("in range");
                queue.push_back(w);
            }
        }
    }
    let extra = component
        .edges()
        .find(|&(u, v)| !tree.has_edge(u, v))
        .expect("a connected graph with m >= n has a non-tree edge");
    tree.add_edge(extra.0, extra.1).expect("in range");
    Ok(tree)
}
