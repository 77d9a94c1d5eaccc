//! Minor models (branch sets) and their validation.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use crate::graph::{Graph, ParseError};
use crate::trace::ReductionTrace;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Branch set per pattern vertex: `branch_sets[i]` is the set of host
/// vertices contracted onto pattern vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MinorModel {
    pub branch_sets: Vec<BTreeSet<usize>>,
}

/// The first broken model invariant found by [`validate_model`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelViolation {
    WrongBranchSetCount {
        expected: usize,
        found: usize,
    },
    EmptyBranchSet {
        pattern_vertex: usize,
    },
    HostVertexOutOfRange {
        pattern_vertex: usize,
        host_vertex: usize,
    },
    Disjointness {
        host_vertex: usize,
        first: usize,
        second: usize,
    },
    Connectivity {
        pattern_vertex: usize,
    },
    MissingEdge {
        u: usize,
        v: usize,
    },
}

impl ModelViolation {
    /// Name of the violated invariant.
    pub fn invariant(&self) -> &'static str {
        match self {
            ModelViolation::WrongBranchSetCount { .. } => "branch-set-count",
            ModelViolation::EmptyBranchSet { .. } => "non-empty",
            ModelViolation::HostVertexOutOfRange { .. } => "host-range",
            ModelViolation::Disjointness { .. } => "disjointness",
            ModelViolation::Connectivity { .. } => "connectivity",
            ModelViolation::MissingEdge { .. } => "edge-realization",
        }
    }
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelViolation::WrongBranchSetCount { expected, found } => {
                write!(f, "branch-set-count: pattern has {expected} vertices, model has {found} branch sets")
            }
            ModelViolation::EmptyBranchSet { pattern_vertex } => {
                write!(f, "non-empty: branch set {pattern_vertex} is empty")
            }
            ModelViolation::HostVertexOutOfRange {
                pattern_vertex,
                host_vertex,
            } => {
                write!(f, "host-range: branch set {pattern_vertex} uses missing host vertex {host_vertex}")
            }
            ModelViolation::Disjointness {
                host_vertex,
                first,
                second,
            } => {
                write!(f, "disjointness: host vertex {host_vertex} is in branch sets {first} and {second}")
            }
            ModelViolation::Connectivity { pattern_vertex } => {
                write!(f, "connectivity: branch set {pattern_vertex} does not induce a connected subgraph")
            }
            ModelViolation::MissingEdge { u, v } => {
                write!(
                    f,
                    "edge-realization: no host edge between branch sets {u} and {v}"
                )
            }
        }
    }
}

impl std::error::Error for ModelViolation {}

impl MinorModel {
    pub fn new(branch_sets: Vec<BTreeSet<usize>>) -> Self {
        MinorModel { branch_sets }
    }

    /// One singleton branch set per pattern vertex.
    pub fn from_vertex_map(map: &[usize]) -> Self {
        MinorModel {
            branch_sets: map.iter().map(|&v| BTreeSet::from([v])).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.branch_sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branch_sets.is_empty()
    }

    /// Host vertex -> pattern vertex owning it.
    pub fn owner_map(&self, host_n: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; host_n];
        for (i, set) in self.branch_sets.iter().enumerate() {
            for &x in set {
                if x < host_n {
                    owner[x] = Some(i);
                }
            }
        }
        owner
    }

    /// Rewrites a model of some reduced graph into the original graph of `trace`,
    /// replacing each reduced vertex by the original vertices it stands for.
    pub fn lift(&self, trace: &ReductionTrace) -> MinorModel {
        MinorModel {
            branch_sets: self
                .branch_sets
                .iter()
                .map(|set| {
                    set.iter()
                        .flat_map(|&x| trace.origins[x].iter().copied())
                        .collect()
                })
                .collect(),
        }
    }

    /// Rewrites a model of an induced subgraph through its `new id -> old id` map.
    pub fn lift_through(&self, old_ids: &[usize]) -> MinorModel {
        MinorModel {
            branch_sets: self
                .branch_sets
                .iter()
                .map(|set| set.iter().map(|&x| old_ids[x]).collect())
                .collect(),
        }
    }

    /// Structural checks that need neither graph: non-empty and pairwise disjoint.
    pub fn check_disjoint(&self) -> Result<(), ModelViolation> {
        let mut owner = std::collections::BTreeMap::new();
        for (i, set) in self.branch_sets.iter().enumerate() {
            if set.is_empty() {
                return Err(ModelViolation::EmptyBranchSet { pattern_vertex: i });
            }
            for &x in set {
                if let Some(&first) = owner.get(&x) {
                    return Err(ModelViolation::Disjointness {
                        host_vertex: x,
                        first,
                        second: i,
                    });
                }
                owner.insert(x, i);
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, set) in self.branch_sets.iter().enumerate() {
            write!(out, "{i}:").expect("string write");
            for x in set {
                write!(out, " {x}").expect("string write");
            }
            out.push('\n');
        }
        out
    }

    /// Parses the `i: v1 v2 ...` format. Pattern ids must be `0..len` in any order.
    pub fn from_text(text: &str) -> Result<MinorModel, ParseError> {
        let mut rows: Vec<Option<BTreeSet<usize>>> = Vec::new();
        for (line, body) in crate::graph::io_content_lines(text) {
            let (head, rest) = body
                .split_once(':')
                .ok_or_else(|| ParseError::new(line, "expected `i: v1 v2 ...`"))?;
            let i: usize = head.trim().parse().map_err(|_| {
                ParseError::new(
                    line,
                    format!("`{}` is not a pattern vertex id", head.trim()),
                )
            })?;
            let mut set = BTreeSet::new();
            for tok in rest.split_whitespace() {
                let x: usize = tok.parse().map_err(|_| {
                    ParseError::new(line, format!("`{tok}` is not a host vertex id"))
                })?;
                set.insert(x);
            }
            if rows.len() <= i {
                rows.resize(i + 1, None);
            }
            if rows[i].is_some() {
                return Err(ParseError::new(
                    line,
                    format!("pattern vertex {i} listed twice"),
                ));
            }
            rows[i] = Some(set);
        }
        let mut branch_sets = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            branch_sets.push(
                row.ok_or_else(|| ParseError::new(0, format!("pattern vertex {i} missing")))?,
            );
        }
        Ok(MinorModel { branch_sets })
    }
}

/// Checks that `model` is a minor model of `pattern` in `host`. Never panics;
/// reports the first violated invariant.
pub fn validate_model(
    pattern: &Graph,
    host: &Graph,
    model: &MinorModel,
) -> Result<(), ModelViolation> {
    if model.len() != pattern.n() {
        return Err(ModelViolation::WrongBranchSetCount {
            expected: pattern.n(),
            found: model.len(),
        });
    }
    for (i, set) in model.branch_sets.iter().enumerate() {
        if let Some(&x) = set.iter().find(|&&x| x >= host.n()) {
            return Err(ModelViolation::HostVertexOutOfRange {
                pattern_vertex: i,
                host_vertex: x,
            });
        }
    }
    model.check_disjoint()?;
    let owner = model.owner_map(host.n());

    let mut uf = UnionFind::new(host.n());
    for (u, v) in host.edges() {
        if owner[u].is_some() && owner[u] == owner[v] {
            uf.union(u, v);
        }
    }
    for (i, set) in model.branch_sets.iter().enumerate() {
        let mut it = set.iter();
        let root = it.next().map(|&x| uf.find(x));
        if it.any(|&x| Some(uf.find(x)) != root) {
            return Err(ModelViolation::Connectivity { pattern_vertex: i });
        }
    }

    let mut realized = BTreeSet::new();
    for (u, v) in host.edges() {
        if let (Some(a), Some(b)) = (owner[u], owner[v]) {
            if a != b {
                realized.insert((a.min(b), a.max(b)));
            }
        }
    }
    for (a, b) in pattern.edges() {
        if !realized.contains(&(a, b)) {
            return Err(ModelViolation::MissingEdge { u: a, v: b });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle};

    fn sets(rows: &[&[usize]]) -> MinorModel {
        MinorModel::new(rows.iter().map(|r| r.iter().copied().collect()).collect())
    }

    #[test]
    fn k2_in_k2() {
        let k2 = complete(2);
        assert_eq!(validate_model(&k2, &k2, &sets(&[&[0], &[1]])), Ok(()));
        let err = validate_model(&k2, &k2, &sets(&[&[0], &[0]])).unwrap_err();
        assert_eq!(err.invariant(), "disjointness");
    }

    #[test]
    fn triangle_in_hexagon() {
        let c6 = cycle(6);
        let k3 = complete(3);
        assert_eq!(
            validate_model(&k3, &c6, &sets(&[&[0, 1], &[2, 3], &[4, 5]])),
            Ok(())
        );
        assert_eq!(
            validate_model(&k3, &c6, &sets(&[&[1, 2], &[3, 4], &[5, 0]])),
            Ok(())
        );
        let err = validate_model(&k3, &c6, &sets(&[&[0, 2], &[3], &[4, 5]])).unwrap_err();
        assert_eq!(err, ModelViolation::Connectivity { pattern_vertex: 0 });
        let err = validate_model(&k3, &c6, &sets(&[&[0], &[2], &[4]])).unwrap_err();
        assert_eq!(err.invariant(), "edge-realization");
        let err = validate_model(&k3, &c6, &sets(&[&[0], &[1]])).unwrap_err();
        assert_eq!(err.invariant(), "branch-set-count");
        let err = validate_model(&k3, &c6, &sets(&[&[0], &[], &[1]])).unwrap_err();
        assert_eq!(err.invariant(), "non-empty");
        let err = validate_model(&k3, &c6, &sets(&[&[0], &[9], &[1]])).unwrap_err();
        assert_eq!(err.invariant(), "host-range");
    }

    #[test]
    fn text_round_trip() {
        let m = sets(&[&[3, 1], &[0], &[2, 5, 4]]);
        let text = m.to_text();
        assert_eq!(text, "0: 1 3\n1: 0\n2: 2 4 5\n");
        assert_eq!(MinorModel::from_text(&text).unwrap(), m);
        assert!(MinorModel::from_text("0: 1\n0: 2\n").is_err());
        assert!(MinorModel::from_text("1: 1\n").is_err());
        assert!(MinorModel::from_text("0 1 2\n").is_err());
    }

    #[test]
    fn union_find_basics() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert_eq!(uf.find(0), uf.find(1));
        assert_ne!(uf.find(1), uf.find(3));
    }
}
