//! Exact minor testing by branch and bound, for small hosts.
//!
//! Pattern vertices are placed in order of decreasing degree. Each one gets
//! a connected set of free host vertices, enumerated once per set by growing
//! from its smallest vertex. A partial assignment is abandoned when a placed
//! set misses an already placed neighbour, when some unplaced pattern vertex
//! has no free component touching all its placed neighbours, or when a placed
//! set whose neighbours are all placed is not minimal. A minimum-size model
//! has only minimal branch sets, so the last pruning keeps the search
//! complete. The final pattern vertex takes a whole free component.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::generate::{complete_bipartite, disjoint_triangles};
use crate::graph::Graph;
use crate::model::MinorModel;

/// Host vertex sets are `u64` masks.
pub const MAX_HOST: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_host: usize,
    pub max_pattern: usize,
    pub max_expansions: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_host: 16,
            max_pattern: 8,
            max_expansions: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("budget caps must be positive and the host cap at most {MAX_HOST}")]
    InvalidBudget,
    #[error("{what} has {n} vertices, budget allows {cap}")]
    TooLarge {
        what: &'static str,
        n: usize,
        cap: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Model(MinorModel),
    NoMinor,
    BudgetExceeded { expansions: u64 },
}

impl OracleOutcome {
    pub fn tag(&self) -> &'static str {
        match self {
            OracleOutcome::Model(_) => "model",
            OracleOutcome::NoMinor => "no-minor",
            OracleOutcome::BudgetExceeded { .. } => "budget-exceeded",
        }
    }

    pub fn model(&self) -> Option<&MinorModel> {
        match self {
            OracleOutcome::Model(m) => Some(m),
            _ => None,
        }
    }
}

struct Exhausted;

struct Search<'a> {
    h: &'a Graph,
    order: Vec<usize>,
    /// `level[v]` is the position of pattern vertex `v` in `order`.
    level: Vec<usize>,
    adj: Vec<u64>,
    /// Smaller host vertices with the same open or closed neighbourhood.
    twins_below: Vec<u64>,
    sets: Vec<u64>,
    free: u64,
    expansions: u64,
    cap: u64,
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

impl Search<'_> {
    fn nbhd(&self, set: u64) -> u64 {
        bits(set).fold(0, |acc, v| acc | self.adj[v])
    }

    fn touches(&self, a: u64, b: u64) -> bool {
        self.nbhd(a) & b != 0
    }

    fn connected(&self, set: u64) -> bool {
        if set == 0 {
            return false;
        }
        let mut seen = set & set.wrapping_neg();
        loop {
            let next = seen | (self.nbhd(seen) & set);
            if next == seen {
                return seen == set;
            }
            seen = next;
        }
    }

    /// Components of `G[mask]`.
    fn components(&self, mut mask: u64) -> Vec<u64> {
        let mut out = Vec::new();
        while mask != 0 {
            let mut comp = mask & mask.wrapping_neg();
            loop {
                let next = comp | (self.nbhd(comp) & mask);
                if next == comp {
                    break;
                }
                comp = next;
            }
            out.push(comp);
            mask &= !comp;
        }
        out
    }

    fn placed_nbrs(&self, v: usize, upto: usize) -> impl Iterator<Item = u64> + '_ {
        self.h
            .neighbors(v)
            .iter()
            .filter(move |&&w| self.level[w] < upto)
            .map(|&w| self.sets[w])
    }

    /// A free component touching every placed neighbour of `v`.
    fn home_for(&self, v: usize, upto: usize, free: u64) -> Option<u64> {
        self.components(free)
            .into_iter()
            .find(|&c| self.placed_nbrs(v, upto).all(|s| self.touches(c, s)))
    }

    /// Every pattern vertex placed after `upto` still has a home.
    fn feasible(&self, upto: usize, free: u64, skip_nbrs_of: Option<usize>) -> bool {
        let rest = self.order.len() - upto;
        if (free.count_ones() as usize) < rest {
            return false;
        }
        self.order[upto..].iter().all(|&v| {
            skip_nbrs_of.is_some_and(|i| self.h.has_edge(i, v))
                || self.home_for(v, upto, free).is_some()
        })
    }

    /// A minimal set has at most one non-cut vertex per pattern neighbour.
    fn few_non_cut(&self, v: usize, set: u64) -> bool {
        set.count_ones() == 1
            || bits(set)
                .filter(|&x| self.connected(set & !(1 << x)))
                .count()
                <= self.h.degree(v)
    }

    /// Twins are interchangeable, so a set takes the smallest free ones.
    fn canonical_add(&self, sub: u64, w: usize) -> bool {
        self.twins_below[w] & self.free & !sub == 0
    }

    fn minimal(&self, v: usize, upto: usize) -> bool {
        let set = self.sets[v];
        if set.count_ones() == 1 {
            return true;
        }
        let nbrs: Vec<u64> = self.placed_nbrs(v, upto).collect();
        !bits(set).any(|x| {
            let rest = set & !(1 << x);
            self.connected(rest) && nbrs.iter().all(|&s| self.touches(rest, s))
        })
    }

    fn place(&mut self, idx: usize) -> Result<bool, Exhausted> {
        let v = self.order[idx];
        if idx + 1 == self.order.len() {
            return Ok(match self.home_for(v, idx, self.free) {
                Some(c) => {
                    self.sets[v] = c;
                    true
                }
                None => false,
            });
        }
        for root in bits(self.free) {
            if !self.canonical_add(0, root) {
                continue;
            }
            let allowed = self.free & !((1u64 << root) - 1) & !(1 << root);
            let ext = self.adj[root] & allowed;
            if self.grow(idx, 1 << root, ext, allowed)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Enumerates each connected superset of `sub` inside `allowed ∪ sub`
    /// exactly once (extension-set method).
    fn grow(
        &mut self,
        idx: usize,
        sub: u64,
        mut ext: u64,
        allowed: u64,
    ) -> Result<bool, Exhausted> {
        self.expansions += 1;
        if self.expansions > self.cap {
            return Err(Exhausted);
        }
        let v = self.order[idx];
        let free = self.free & !sub;
        if !self.feasible(idx + 1, free, Some(v)) {
            return Ok(false);
        }
        self.sets[v] = sub;
        let realized = self.placed_nbrs(v, idx).all(|s| self.touches(sub, s));
        if realized && self.few_non_cut(v, sub) && self.placed_ok(idx) {
            let saved = self.free;
            self.free = free;
            let found = self.feasible(idx + 1, free, None) && self.place(idx + 1)?;
            self.free = saved;
            if found {
                return Ok(true);
            }
        }
        let sub_nbhd = self.nbhd(sub) | sub;
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            // A smaller free twin outside `sub` is adjacent to `sub` and
            // already popped, so no extension of this branch can add it.
            if !self.canonical_add(sub, w) {
                continue;
            }
            let excl = self.adj[w] & allowed & !sub_nbhd;
            if self.grow(idx, sub | (1 << w), ext | excl, allowed)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Minimality of every placed set whose pattern neighbours are all placed
    /// once `order[idx]` is placed.
    fn placed_ok(&self, idx: usize) -> bool {
        let v = self.order[idx];
        let done = |u: usize| self.h.neighbors(u).iter().all(|&w| self.level[w] <= idx);
        std::iter::once(v)
            .chain(
                self.h
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&u| self.level[u] < idx),
            )
            .filter(|&u| done(u))
            .all(|u| self.minimal(u, idx + 1))
    }
}

/// Decides whether `h` is a minor of `g`; a returned model always validates.
pub fn has_minor_bruteforce(
    g: &Graph,
    h: &Graph,
    budget: &OracleBudget,
) -> Result<OracleOutcome, OracleError> {
    if budget.max_host == 0
        || budget.max_host > MAX_HOST
        || budget.max_pattern == 0
        || budget.max_expansions == 0
    {
        return Err(OracleError::InvalidBudget);
    }
    if g.n() > budget.max_host {
        return Err(OracleError::TooLarge {
            what: "host",
            n: g.n(),
            cap: budget.max_host,
        });
    }
    if h.n() > budget.max_pattern {
        return Err(OracleError::TooLarge {
            what: "pattern",
            n: h.n(),
            cap: budget.max_pattern,
        });
    }
    if h.n() == 0 {
        return Ok(OracleOutcome::Model(MinorModel::default()));
    }
    if h.n() > g.n() || h.m() > g.m() {
        return Ok(OracleOutcome::NoMinor);
    }
    let mut order: Vec<usize> = h.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    let mut level = vec![0; h.n()];
    for (i, &v) in order.iter().enumerate() {
        level[v] = i;
    }
    let adj: Vec<u64> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();
    let twins_below = g
        .vertices()
        .map(|v| {
            (0..v)
                .filter(|&u| adj[u] == adj[v] || adj[u] | (1 << u) == adj[v] | (1 << v))
                .fold(0u64, |m, u| m | (1 << u))
        })
        .collect();
    let free = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    let mut search = Search {
        h,
        order,
        level,
        adj,
        twins_below,
        sets: vec![0; h.n()],
        free,
        expansions: 0,
        cap: budget.max_expansions,
    };
    match search.place(0) {
        Ok(true) => {
            let sets = search
                .sets
                .iter()
                .map(|&m| bits(m).collect::<BTreeSet<_>>())
                .collect();
            Ok(OracleOutcome::Model(MinorModel::new(sets)))
        }
        Ok(false) => Ok(OracleOutcome::NoMinor),
        Err(Exhausted) => Ok(OracleOutcome::BudgetExceeded {
            expansions: search.expansions,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyVerdict {
    /// No `k` disjoint triangles as a minor of `K_{2k−1,n}`.
    Confirmed,
    Counterexample(MinorModel),
    BudgetExceeded {
        expansions: u64,
    },
}

/// Checks that `K_{2k−1,n}`, of average degree close to `4k−2`, has no minor
/// consisting of `k` disjoint triangles: every cycle uses two vertices of
/// the small side.
pub fn verify_triangle_family(
    k: usize,
    n: usize,
    budget: &OracleBudget,
) -> Result<FamilyVerdict, OracleError> {
    if k == 0 {
        return Err(OracleError::InvalidBudget);
    }
    let g = complete_bipartite(2 * k - 1, n);
    let h = disjoint_triangles(k);
    Ok(match has_minor_bruteforce(&g, &h, budget)? {
        OracleOutcome::Model(m) => FamilyVerdict::Counterexample(m),
        OracleOutcome::NoMinor => FamilyVerdict::Confirmed,
        OracleOutcome::BudgetExceeded { expansions } => {
            FamilyVerdict::BudgetExceeded { expansions }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, gnp, path, petersen, star};
    use crate::model::validate_model;
    use proptest::prelude::*;

    /// Tries every map from host vertices to pattern vertices or nothing.
    fn dumb_has_minor(g: &Graph, h: &Graph) -> bool {
        let (n, t) = (g.n(), h.n());
        let mut labels = vec![0usize; n];
        loop {
            let mut sets = vec![BTreeSet::new(); t];
            for (x, &l) in labels.iter().enumerate() {
                if l > 0 {
                    sets[l - 1].insert(x);
                }
            }
            if validate_model(h, g, &MinorModel::new(sets)).is_ok() {
                return true;
            }
            let mut i = 0;
            while i < n && labels[i] == t {
                labels[i] = 0;
                i += 1;
            }
            if i == n {
                return false;
            }
            labels[i] += 1;
        }
    }

    fn run(g: &Graph, h: &Graph) -> OracleOutcome {
        let out = has_minor_bruteforce(g, h, &OracleBudget::default()).unwrap();
        if let Some(m) = out.model() {
            assert_eq!(validate_model(h, g, m), Ok(()));
        }
        out
    }

    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        Graph::from_edges(g.n(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(run(&complete(5), &complete(4)).tag(), "model");
        assert_eq!(run(&petersen(), &complete(5)).tag(), "model");
        assert_eq!(run(&star(6), &cycle(3)), OracleOutcome::NoMinor);
        assert_eq!(run(&path(9), &cycle(3)), OracleOutcome::NoMinor);
        assert_eq!(run(&cycle(5), &complete(3)).tag(), "model");
        assert_eq!(run(&complete_bipartite(3, 3), &complete(4)).tag(), "model");
        assert_eq!(
            run(&complete_bipartite(3, 3), &complete(5)),
            OracleOutcome::NoMinor
        );
        assert_eq!(run(&petersen(), &complete(6)), OracleOutcome::NoMinor);
    }

    #[test]
    fn triangle_family() {
        let b = OracleBudget::default();
        assert_eq!(
            verify_triangle_family(1, 8, &b),
            Ok(FamilyVerdict::Confirmed)
        );
        assert_eq!(
            verify_triangle_family(2, 10, &b),
            Ok(FamilyVerdict::Confirmed)
        );
        let out = run(&complete_bipartite(2, 3), &cycle(3));
        assert_eq!(out.tag(), "model");
    }

    #[test]
    fn budget_is_enforced() {
        let tight = OracleBudget {
            max_expansions: 10,
            ..OracleBudget::default()
        };
        let out = has_minor_bruteforce(&petersen(), &complete(6), &tight).unwrap();
        assert!(matches!(
            out,
            OracleOutcome::BudgetExceeded { expansions: 11 }
        ));
        assert!(matches!(
            has_minor_bruteforce(&complete(17), &complete(2), &OracleBudget::default()),
            Err(OracleError::TooLarge { what: "host", .. })
        ));
        assert!(matches!(
            has_minor_bruteforce(&complete(9), &complete(9), &OracleBudget::default()),
            Err(OracleError::TooLarge {
                what: "pattern",
                ..
            })
        ));
        let zero = OracleBudget {
            max_pattern: 0,
            ..OracleBudget::default()
        };
        assert_eq!(
            has_minor_bruteforce(&complete(3), &complete(2), &zero),
            Err(OracleError::InvalidBudget)
        );
    }

    fn small_pair() -> impl Strategy<Value = (Graph, Graph)> {
        (
            1usize..=7,
            0.0f64..1.0,
            any::<u64>(),
            1usize..=4,
            0.0f64..1.0,
            any::<u64>(),
        )
            .prop_map(|(n, p, s, t, q, r)| (gnp(n, p, s).unwrap(), gnp(t, q, r).unwrap()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn agrees_with_exhaustive_enumeration((g, h) in small_pair()) {
            let fast = run(&g, &h);
            prop_assert_eq!(fast.tag() == "model", dumb_has_minor(&g, &h));
        }

        #[test]
        fn isomorphism_invariant((g, h) in small_pair(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            let mut perm: Vec<usize> = g.vertices().collect();
            perm.shuffle(&mut crate::generate::rng(seed));
            prop_assert_eq!(run(&g, &h).tag(), run(&relabel(&g, &perm), &h).tag());
        }

        #[test]
        fn monotone_under_edge_addition((g, h) in small_pair(), a in 0usize..7, b in 0usize..7) {
            if run(&g, &h).tag() == "model" && a < g.n() && b < g.n() && a != b {
                let mut bigger = g.clone();
                bigger.add_edge(a, b).unwrap();
                prop_assert_eq!(run(&bigger, &h).tag(), "model");
            }
        }
    }
}
