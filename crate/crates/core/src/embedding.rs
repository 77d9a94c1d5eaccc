//! Subgraph embedders: trees, 2-degenerate graphs and (≤1)-subdivisions.
//!
//! Greedy choices always take the lowest available host id, so outputs are
//! determined by the inputs (and the seed, for the randomized embedder).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::generate;
use crate::graph::{degeneracy_order_2, EliminationOrder, Graph};
use crate::model::MinorModel;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(
        "no injection reached {threshold} realized edges in {attempts} attempts (best {best})"
    )]
    RetryExhausted {
        attempts: usize,
        threshold: usize,
        best: usize,
    },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Injective map of pattern vertices into the host, plus one optional
/// division vertex per pattern edge.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexEmbedding {
    pub map: Vec<usize>,
    /// Pattern edge `(u, v)` with `u < v` → host vertex subdividing it.
    pub division: BTreeMap<(usize, usize), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingViolation {
    WrongLength { expected: usize, found: usize },
    OutOfRange(usize),
    NotInjective(usize),
    DivisionOnNonEdge(usize, usize),
    UnrealizedEdge(usize, usize),
}

impl fmt::Display for EmbeddingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingViolation::WrongLength { expected, found } => {
                write!(
                    f,
                    "map has {found} entries, pattern has {expected} vertices"
                )
            }
            EmbeddingViolation::OutOfRange(x) => write!(f, "host vertex {x} out of range"),
            EmbeddingViolation::NotInjective(x) => write!(f, "host vertex {x} used twice"),
            EmbeddingViolation::DivisionOnNonEdge(u, v) => {
                write!(f, "division vertex on non-edge {u}-{v}")
            }
            EmbeddingViolation::UnrealizedEdge(u, v) => {
                write!(f, "pattern edge {u}-{v} is not realized")
            }
        }
    }
}

impl std::error::Error for EmbeddingViolation {}

impl VertexEmbedding {
    pub fn from_map(map: Vec<usize>) -> Self {
        VertexEmbedding {
            map,
            division: BTreeMap::new(),
        }
    }

    /// Checks injectivity (over images and division vertices together) and
    /// that every pattern edge is a host edge or a two-edge path through its
    /// division vertex.
    pub fn verify(&self, pattern: &Graph, host: &Graph) -> Result<(), EmbeddingViolation> {
        if self.map.len() != pattern.n() {
            return Err(EmbeddingViolation::WrongLength {
                expected: pattern.n(),
                found: self.map.len(),
            });
        }
        let mut used = BTreeSet::new();
        for &x in self.map.iter().chain(self.division.values()) {
            if x >= host.n() {
                return Err(EmbeddingViolation::OutOfRange(x));
            }
            if !used.insert(x) {
                return Err(EmbeddingViolation::NotInjective(x));
            }
        }
        for &(u, v) in self.division.keys() {
            if !pattern.has_edge(u, v) || u > v {
                return Err(EmbeddingViolation::DivisionOnNonEdge(u, v));
            }
        }
        for (u, v) in pattern.edges() {
            let (a, b) = (self.map[u], self.map[v]);
            let ok = match self.division.get(&(u, v)) {
                Some(&x) => host.has_edge(a, x) && host.has_edge(x, b),
                None => host.has_edge(a, b),
            };
            if !ok {
                return Err(EmbeddingViolation::UnrealizedEdge(u, v));
            }
        }
        Ok(())
    }

    /// Minor model of the pattern: each division vertex joins the branch set
    /// of the lower-indexed endpoint of its edge.
    pub fn to_model(&self) -> MinorModel {
        let mut sets: Vec<BTreeSet<usize>> =
            self.map.iter().map(|&x| BTreeSet::from([x])).collect();
        for (&(u, _), &x) in &self.division {
            sets[u].insert(x);
        }
        MinorModel::new(sets)
    }

    /// Every host vertex used by the embedding.
    pub fn image(&self) -> BTreeSet<usize> {
        self.map
            .iter()
            .chain(self.division.values())
            .copied()
            .collect()
    }
}

fn lowest_unused<I: IntoIterator<Item = usize>>(candidates: I, used: &[bool]) -> Option<usize> {
    candidates.into_iter().find(|&x| !used[x])
}

/// Greedy tree embedding: BFS over the tree from vertex 0, the root goes to
/// host vertex 0 and every child to the lowest unused neighbour of its
/// parent's image.
pub fn embed_tree(g: &Graph, tree: &Graph) -> Result<VertexEmbedding, EmbedError> {
    if !tree.is_tree() {
        return Err(EmbedError::Precondition("pattern is not a tree".into()));
    }
    let ell = tree.n();
    if g.n() == 0 || g.min_degree() + 1 < ell {
        return Err(EmbedError::Precondition(format!(
            "host minimum degree {} is below {} - 1",
            if g.n() == 0 { 0 } else { g.min_degree() },
            ell
        )));
    }
    let mut map = vec![usize::MAX; ell];
    let mut used = vec![false; g.n()];
    map[0] = 0;
    used[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(p) = queue.pop_front() {
        for &c in tree.neighbors(p) {
            if map[c] != usize::MAX {
                continue;
            }
            let x = lowest_unused(g.neighbors(map[p]).iter().copied(), &used).ok_or_else(|| {
                EmbedError::Internal(format!("no unused neighbour for tree vertex {c}"))
            })?;
            map[c] = x;
            used[x] = true;
            queue.push_back(c);
        }
    }
    Ok(VertexEmbedding::from_map(map))
}

/// `2δ − n` of a non-empty host.
pub fn degree_surplus(g: &Graph) -> i64 {
    2 * g.min_degree() as i64 - g.n() as i64
}

/// Embeds a 2-degenerate pattern as a subgraph of a host with `2δ − n ≥ t − 2`,
/// inserting vertices in reverse elimination order.
pub fn embed_2degenerate(
    g: &Graph,
    h: &Graph,
    order: &EliminationOrder,
) -> Result<VertexEmbedding, EmbedError> {
    if !order.witnesses_two_degeneracy(h) {
        return Err(EmbedError::Precondition(
            "order does not witness 2-degeneracy of the pattern".into(),
        ));
    }
    if g.n() == 0 {
        return Err(EmbedError::Precondition("host is empty".into()));
    }
    let t = h.n() as i64;
    if degree_surplus(g) < t - 2 {
        return Err(EmbedError::Precondition(format!(
            "2δ - n = {} is below t - 2 = {}",
            degree_surplus(g),
            t - 2
        )));
    }
    let mut map = vec![usize::MAX; h.n()];
    let mut used = vec![false; g.n()];
    for &v in order.as_slice().iter().rev() {
        let placed: Vec<usize> = h
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| map[w] != usize::MAX)
            .collect();
        let x = match placed.as_slice() {
            [] => lowest_unused(g.vertices(), &used),
            [a] => lowest_unused(g.neighbors(map[*a]).iter().copied(), &used),
            [a, b] => lowest_unused(
                g.common_neighbors(map[*a], map[*b])
                    .collect::<BTreeSet<_>>(),
                &used,
            ),
            _ => {
                return Err(EmbedError::Internal(format!(
                    "vertex {v} has more than two placed neighbours"
                )))
            }
        }
        .ok_or_else(|| {
            EmbedError::Internal(format!("no free host vertex for pattern vertex {v}"))
        })?;
        map[v] = x;
        used[x] = true;
    }
    Ok(VertexEmbedding::from_map(map))
}

/// Edges of `h` missing from `h_prime`, lexicographic.
fn extra_edges(h: &Graph, h_prime: &Graph) -> Vec<(usize, usize)> {
    h.edges()
        .filter(|&(u, v)| !h_prime.has_edge(u, v))
        .collect()
}

/// Embeds a (≤1)-subdivision of `h` in which the edges of the spanning
/// 2-degenerate subgraph `h_prime` stay whole and every other edge gets one
/// division vertex. Requires `2δ − n ≥ q − q′ + t − 2`.
pub fn embed_le1_subdivision_degen(
    g: &Graph,
    h: &Graph,
    h_prime: &Graph,
) -> Result<VertexEmbedding, EmbedError> {
    if h_prime.n() != h.n() {
        return Err(EmbedError::Precondition("h' is not spanning".into()));
    }
    if !h.contains_subgraph_identity(h_prime) {
        return Err(EmbedError::Precondition("h' is not a subgraph of h".into()));
    }
    let inner = degeneracy_order_2(h_prime)
        .ok_or_else(|| EmbedError::Precondition("h' is not 2-degenerate".into()))?;
    let extra = extra_edges(h, h_prime);
    let t = h.n();
    let mut h2 = Graph::from_edges(t + extra.len(), h_prime.edges()).expect("in range");
    for (j, &(u, v)) in extra.iter().enumerate() {
        h2.add_edge(u, t + j).expect("in range");
        h2.add_edge(t + j, v).expect("in range");
    }
    let order = EliminationOrder((t..t + extra.len()).chain(inner.0).collect());
    let emb = embed_2degenerate(g, &h2, &order)?;
    Ok(VertexEmbedding {
        map: emb.map[..t].to_vec(),
        division: extra
            .iter()
            .enumerate()
            .map(|(j, &e)| (e, emb.map[t + j]))
            .collect(),
    })
}

/// Uniformly random injection of `V(h)` into `V(g)`; returns the realized
/// spanning subgraph `R` of `h` and the injection.
pub fn random_spanning_overlap<R: Rng + ?Sized>(
    g: &Graph,
    h: &Graph,
    rng: &mut R,
) -> Result<(Graph, VertexEmbedding), EmbedError> {
    if g.n() < h.n() {
        return Err(EmbedError::Precondition(format!(
            "host has {} < {} vertices",
            g.n(),
            h.n()
        )));
    }
    let map = rand::seq::index::sample(rng, g.n(), h.n()).into_vec();
    let realized = h.edges().filter(|&(u, v)| g.has_edge(map[u], map[v]));
    let r = Graph::from_edges(h.n(), realized).expect("pattern edges are valid");
    Ok((r, VertexEmbedding::from_map(map)))
}

/// Seeded form of [`random_spanning_overlap`].
pub fn random_spanning_overlap_seeded(
    g: &Graph,
    h: &Graph,
    seed: u64,
) -> Result<(Graph, VertexEmbedding), EmbedError> {
    random_spanning_overlap(g, h, &mut generate::rng(seed))
}

/// Default retry budget `64·⌈n/t⌉`.
pub fn default_max_attempts(n: usize, t: usize) -> usize {
    64 * n.div_ceil(t.max(1))
}

/// Exact form of `2δ + 4 + δq/(n−1) ≥ n + t + q`.
pub fn one_sub_condition(n: usize, delta: usize, t: usize, q: usize) -> bool {
    if n < 2 {
        return false;
    }
    let lhs = Rational::from_integer(2 * delta as i64 + 4)
        + Rational::new((delta * q) as i64, n as i64 - 1);
    lhs >= Rational::from_integer((n + t + q) as i64)
}

/// Random injection retried until it realizes `⌈qδ/(n−1)⌉` pattern edges,
/// then every unrealized edge (lexicographic order) is routed through the
/// lowest unused common neighbour of its endpoints' images.
pub fn embed_le1_subdivision_random(
    g: &Graph,
    h: &Graph,
    seed: u64,
    max_attempts: Option<usize>,
) -> Result<VertexEmbedding, EmbedError> {
    let (n, t, q) = (g.n(), h.n(), h.m());
    if n < t.max(2) {
        return Err(EmbedError::Precondition(format!(
            "host has {n} vertices, pattern has {t}"
        )));
    }
    let delta = g.min_degree();
    if !one_sub_condition(n, delta, t, q) {
        return Err(EmbedError::Precondition(format!(
            "2δ + 4 + δq/(n-1) < n + t + q with n = {n}, δ = {delta}, t = {t}, q = {q}"
        )));
    }
    // Counting bound used by every routing step: 2δ - (n-2) >= (t-2) + q(1 - δ/(n-1)).
    let common_lower = Rational::from_integer(2 * delta as i64 - (n as i64 - 2));
    let needed = Rational::from_integer(t as i64 - 2)
        + Rational::from_integer(q as i64)
            * (Rational::from_integer(1) - Rational::new(delta as i64, n as i64 - 1));
    if common_lower < needed {
        return Err(EmbedError::Internal(
            "routing count inequality fails despite the precondition".into(),
        ));
    }
    let threshold = rational::ceil_nonneg(Rational::new((q * delta) as i64, n as i64 - 1));
    let attempts = max_attempts.unwrap_or_else(|| default_max_attempts(n, t));
    let mut rng = generate::rng(seed);
    let mut best = 0;
    let mut chosen = None;
    for _ in 0..attempts {
        let (r, emb) = random_spanning_overlap(g, h, &mut rng)?;
        best = best.max(r.m());
        if r.m() >= threshold {
            chosen = Some(emb);
            break;
        }
    }
    let mut emb = chosen.ok_or(EmbedError::RetryExhausted {
        attempts,
        threshold,
        best,
    })?;
    let mut used = vec![false; n];
    for &x in &emb.map {
        used[x] = true;
    }
    for (u, v) in h.edges() {
        let (a, b) = (emb.map[u], emb.map[v]);
        if g.has_edge(a, b) {
            continue;
        }
        let common: BTreeSet<usize> = g.common_neighbors(a, b).collect();
        if common.len() < 2 * delta + 2 - n {
            return Err(EmbedError::Internal(format!(
                "{a} and {b} have only {} common neighbours",
                common.len()
            )));
        }
        let x = lowest_unused(common, &used).ok_or_else(|| {
            EmbedError::Internal(format!(
                "no unused common neighbour for pattern edge {u}-{v}"
            ))
        })?;
        used[x] = true;
        emb.division.insert((u, v), x);
    }
    Ok(emb)
}
