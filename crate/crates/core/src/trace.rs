//! Replayable contraction/deletion sequences.
//!
//! Every reduction runs on a [`WorkGraph`], which keeps the original vertex
//! ids as labels: a contraction keeps the lower label, deletions simply retire
//! labels. Steps are recorded in label space, so replaying them on the
//! original graph and compacting the surviving labels reproduces the reduced
//! graph exactly.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::Graph;
use crate::model::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceStep {
    ContractEdge(usize, usize),
    DeleteEdge(usize, usize),
    /// Deleting a vertex records its neighbours at that moment.
    DeleteVertex {
        vertex: usize,
        incident: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("step {step}: {detail}")]
    BadStep { step: usize, detail: String },
    #[error("trace was recorded on a graph with {expected} vertices, got {found}")]
    WrongOriginal { expected: usize, found: usize },
    #[error("replayed graph differs from the claimed reduced graph")]
    Mismatch,
    #[error("origin sets disagree with the replayed merges at reduced vertex {0}")]
    OriginMismatch(usize),
    #[error("origin set of reduced vertex {0} is not connected in the original graph")]
    OriginDisconnected(usize),
}

/// Certificate that a reduced graph is a minor of an original graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub original_n: usize,
    pub steps: Vec<TraceStep>,
    /// `origins[x]`: original vertices merged into reduced vertex `x`.
    pub origins: Vec<BTreeSet<usize>>,
}

impl ReductionTrace {
    pub fn identity(n: usize) -> Self {
        ReductionTrace {
            original_n: n,
            steps: Vec::new(),
            origins: (0..n).map(|v| BTreeSet::from([v])).collect(),
        }
    }

    /// Applies the steps to `original` and returns the compacted result
    /// together with the origin sets produced by the replay.
    pub fn replay_with_origins(
        &self,
        original: &Graph,
    ) -> Result<(Graph, Vec<BTreeSet<usize>>), TraceError> {
        if original.n() != self.original_n {
            return Err(TraceError::WrongOriginal {
                expected: self.original_n,
                found: original.n(),
            });
        }
        let mut work = WorkGraph::new(original);
        for (i, step) in self.steps.iter().enumerate() {
            let bad = |detail: String| TraceError::BadStep { step: i, detail };
            match step {
                TraceStep::ContractEdge(u, v) => {
                    if !work.has_edge(*u, *v) {
                        return Err(bad(format!("contract {u}-{v}: not an edge")));
                    }
                    work.contract(*u, *v);
                }
                TraceStep::DeleteEdge(u, v) => {
                    if !work.has_edge(*u, *v) {
                        return Err(bad(format!("delete {u}-{v}: not an edge")));
                    }
                    work.delete_edge(*u, *v);
                }
                TraceStep::DeleteVertex { vertex, incident } => {
                    if !work.is_alive(*vertex) {
                        return Err(bad(format!("delete vertex {vertex}: not present")));
                    }
                    let actual: Vec<usize> = work.neighbors(*vertex).collect();
                    if &actual != incident {
                        return Err(bad(format!(
                            "delete vertex {vertex}: incident edges differ"
                        )));
                    }
                    work.delete_vertex(*vertex);
                }
            }
        }
        let (g, trace) = work.finish();
        Ok((g, trace.origins))
    }

    pub fn replay(&self, original: &Graph) -> Result<Graph, TraceError> {
        self.replay_with_origins(original).map(|(g, _)| g)
    }

    /// Full certificate check: exact replay, consistent origins, connected origins.
    pub fn verify(&self, original: &Graph, reduced: &Graph) -> Result<(), TraceError> {
        let (replayed, origins) = self.replay_with_origins(original)?;
        if &replayed != reduced {
            return Err(TraceError::Mismatch);
        }
        if origins.len() != self.origins.len() {
            return Err(TraceError::Mismatch);
        }
        for (x, (a, b)) in origins.iter().zip(&self.origins).enumerate() {
            if a != b {
                return Err(TraceError::OriginMismatch(x));
            }
        }
        let mut owner = vec![usize::MAX; original.n()];
        for (x, set) in self.origins.iter().enumerate() {
            for &v in set {
                owner[v] = x;
            }
        }
        let mut uf = UnionFind::new(original.n());
        for (u, v) in original.edges() {
            if owner[u] != usize::MAX && owner[u] == owner[v] {
                uf.union(u, v);
            }
        }
        for (x, set) in self.origins.iter().enumerate() {
            let mut it = set.iter();
            if let Some(&first) = it.next() {
                let root = uf.find(first);
                if it.any(|&v| uf.find(v) != root) {
                    return Err(TraceError::OriginDisconnected(x));
                }
            }
        }
        Ok(())
    }
}

/// Mutable graph over the original label space with bitset adjacency.
#[derive(Debug, Clone)]
pub struct WorkGraph {
    adj: Vec<FixedBitSet>,
    alive: FixedBitSet,
    alive_count: usize,
    edge_count: usize,
    origins: Vec<Vec<usize>>,
    steps: Vec<TraceStep>,
}

impl WorkGraph {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in g.edges() {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let mut alive = FixedBitSet::with_capacity(n);
        alive.insert_range(..);
        WorkGraph {
            adj,
            alive,
            alive_count: n,
            edge_count: g.m(),
            origins: (0..n).map(|v| vec![v]).collect(),
            steps: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.alive_count
    }

    /// Size of the label space (vertex count of the original graph).
    pub fn capacity(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn is_alive(&self, v: usize) -> bool {
        v < self.adj.len() && self.alive.contains(v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.alive.ones()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.is_alive(u) && self.is_alive(v) && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn triangles(&self, u: usize, v: usize) -> usize {
        self.adj[u].intersection_count(&self.adj[v])
    }

    /// Edges `(u, v)`, `u < v`, in lexicographic label order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.alive.ones().flat_map(move |u| {
            self.adj[u]
                .ones()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Alive vertex of minimum degree, lowest label among ties.
    pub fn min_degree_vertex(&self) -> Option<(usize, usize)> {
        self.vertices()
            .map(|v| (self.degree(v), v))
            .min()
            .map(|(d, v)| (v, d))
    }

    /// Edge in the fewest triangles, ties broken by lexicographic labels.
    pub fn min_triangle_edge(&self) -> Option<(usize, usize, usize)> {
        self.edges()
            .map(|(u, v)| (self.triangles(u, v), u, v))
            .min()
            .map(|(t, u, v)| (u, v, t))
    }

    pub fn origins_of(&self, v: usize) -> &[usize] {
        &self.origins[v]
    }

    /// Contracts `uv` onto the lower label; returns the surviving label.
    pub fn contract(&mut self, u: usize, v: usize) -> usize {
        debug_assert!(self.has_edge(u, v));
        let (keep, gone) = if u < v { (u, v) } else { (v, u) };
        self.steps.push(TraceStep::ContractEdge(keep, gone));
        let lost = 1 + self.triangles(keep, gone);
        let gone_nbrs: Vec<usize> = self.adj[gone].ones().collect();
        for w in gone_nbrs {
            self.adj[w].set(gone, false);
            if w != keep {
                self.adj[w].insert(keep);
                self.adj[keep].insert(w);
            }
        }
        self.adj[gone].clear();
        self.adj[keep].set(gone, false);
        self.alive.set(gone, false);
        self.alive_count -= 1;
        self.edge_count -= lost;
        let moved = std::mem::take(&mut self.origins[gone]);
        self.origins[keep].extend(moved);
        keep
    }

    pub fn delete_edge(&mut self, u: usize, v: usize) {
        debug_assert!(self.has_edge(u, v));
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.steps.push(TraceStep::DeleteEdge(a, b));
        self.adj[a].set(b, false);
        self.adj[b].set(a, false);
        self.edge_count -= 1;
    }

    pub fn delete_vertex(&mut self, v: usize) {
        debug_assert!(self.is_alive(v));
        let incident: Vec<usize> = self.adj[v].ones().collect();
        for &w in &incident {
            self.adj[w].set(v, false);
        }
        self.edge_count -= incident.len();
        self.adj[v].clear();
        self.alive.set(v, false);
        self.alive_count -= 1;
        self.origins[v].clear();
        self.steps.push(TraceStep::DeleteVertex {
            vertex: v,
            incident,
        });
    }

    /// Deletes every alive vertex outside `keep`, in increasing label order.
    pub fn restrict_to(&mut self, keep: &FixedBitSet) {
        let doomed: Vec<usize> = self.vertices().filter(|&v| !keep.contains(v)).collect();
        for v in doomed {
            self.delete_vertex(v);
        }
    }

    /// Compacted graph plus the trace that certifies it.
    pub fn snapshot(&self) -> (Graph, ReductionTrace) {
        let labels: Vec<usize> = self.vertices().collect();
        let mut index = vec![usize::MAX; self.adj.len()];
        for (i, &v) in labels.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(labels.len());
        for (u, v) in self.edges() {
            g.add_edge(index[u], index[v])
                .expect("compacted ids are in range");
        }
        let trace = ReductionTrace {
            original_n: self.adj.len(),
            steps: self.steps.clone(),
            origins: labels
                .iter()
                .map(|&v| self.origins[v].iter().copied().collect())
                .collect(),
        };
        (g, trace)
    }

    pub fn finish(self) -> (Graph, ReductionTrace) {
        self.snapshot()
    }

    /// Labels of alive vertices in compacted order (compacted id `i` is `labels[i]`).
    pub fn labels(&self) -> Vec<usize> {
        self.vertices().collect()
    }
}
