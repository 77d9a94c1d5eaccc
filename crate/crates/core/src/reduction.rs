//! Mader-style reductions to small dense minors.
//!
//! Every routine runs on a [`WorkGraph`] over the input's vertex ids and
//! returns the compacted result together with its [`ReductionTrace`].

use std::fmt;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use thiserror::Error;

use crate::graph::Graph;
use crate::rational::{self, Rational};
use crate::trace::{ReductionTrace, WorkGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Which single-step reduction to apply next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReductionPolicy {
    /// Contract the edge in the fewest triangles (ties by lexicographic ids),
    /// else delete a minimum-degree vertex (lowest id), else delete the
    /// lexicographically first edge.
    #[default]
    Greedy,
    /// Delete a uniformly random edge while the class allows it, else contract
    /// a random admissible edge, else delete a random admissible vertex.
    /// Reaches other minor-minimal graphs than [`ReductionPolicy::Greedy`],
    /// which almost always ends at a complete graph.
    Shuffled(u64),
}

/// Local minimisation inside a class given by `admissible(n, m)`: whether a
/// graph with `n` vertices and `m` edges is still a member. Stops when no
/// single contraction, vertex deletion or edge deletion stays in the class.
pub fn reduce_minimal<F>(work: &mut WorkGraph, admissible: F, policy: ReductionPolicy)
where
    F: Fn(usize, usize) -> bool,
{
    match policy {
        ReductionPolicy::Greedy => reduce_greedy(work, admissible),
        ReductionPolicy::Shuffled(seed) => reduce_shuffled(work, admissible, seed),
    }
}

/// The cheapest operation of each kind is tried, so when none of them is
/// admissible no single contraction or deletion is.
fn reduce_greedy<F>(work: &mut WorkGraph, admissible: F)
where
    F: Fn(usize, usize) -> bool,
{
    loop {
        let (n, m) = (work.n(), work.m());
        if n >= 2 {
            if let Some((u, v, tri)) = work.min_triangle_edge() {
                if admissible(n - 1, m - 1 - tri) {
                    work.contract(u, v);
                    continue;
                }
            }
            if let Some((v, deg)) = work.min_degree_vertex() {
                if admissible(n - 1, m - deg) {
                    work.delete_vertex(v);
                    continue;
                }
            }
        }
        if m >= 1 && admissible(n, m - 1) {
            let (u, v) = work.edges().next().expect("m >= 1");
            work.delete_edge(u, v);
            continue;
        }
        return;
    }
}

fn reduce_shuffled<F>(work: &mut WorkGraph, admissible: F, seed: u64)
where
    F: Fn(usize, usize) -> bool,
{
    let mut rng = crate::generate::rng(seed);
    loop {
        let (n, m) = (work.n(), work.m());
        if m >= 1 && admissible(n, m - 1) {
            let edges: Vec<_> = work.edges().collect();
            let (u, v) = *edges.choose(&mut rng).expect("m >= 1");
            work.delete_edge(u, v);
            continue;
        }
        if n >= 2 {
            let contractible: Vec<_> = work
                .edges()
                .filter(|&(u, v)| admissible(n - 1, m - 1 - work.triangles(u, v)))
                .collect();
            if let Some(&(u, v)) = contractible.choose(&mut rng) {
                work.contract(u, v);
                continue;
            }
            let deletable: Vec<_> = work
                .vertices()
                .filter(|&v| admissible(n - 1, m - work.degree(v)))
                .collect();
            if let Some(&v) = deletable.choose(&mut rng) {
                work.delete_vertex(v);
                continue;
            }
        }
        return;
    }
}

fn avg_at_least(d: Rational) -> impl Fn(usize, usize) -> bool {
    move |n, m| {
        n >= 1 && Rational::from_integer(2 * m as i64) >= d * Rational::from_integer(n as i64)
    }
}

fn xk_floor(k: usize, n: usize) -> i64 {
    (k * n) as i64 - (k * (k + 1) / 2) as i64
}

fn in_xk(k: usize) -> impl Fn(usize, usize) -> bool {
    move |n, m| n >= k && m as i64 >= xk_floor(k, n)
}

/// Reduces `g` to a minor that has average degree at least `d` but loses it
/// under every single contraction, edge deletion or vertex deletion.
pub fn minor_minimal_avg_degree(
    g: &Graph,
    d: Rational,
) -> Result<(Graph, ReductionTrace), ReductionError> {
    let avg = g
        .average_degree()
        .map_err(|e| ReductionError::Precondition(e.to_string()))?;
    if avg < d {
        return Err(ReductionError::Precondition(format!(
            "average degree {} is below {}",
            rational::format(avg),
            rational::format(d)
        )));
    }
    let mut work = WorkGraph::new(g);
    reduce_minimal(&mut work, avg_at_least(d), ReductionPolicy::Greedy);
    Ok(work.finish())
}

/// Induced subgraph on the (open or closed) neighbourhood of a minimum-degree
/// vertex of a minor-minimal graph with average degree `avg(g)`.
pub fn dense_minor(g: &Graph, closed: bool) -> Result<(Graph, ReductionTrace), ReductionError> {
    let d = g
        .average_degree()
        .map_err(|e| ReductionError::Precondition(e.to_string()))?;
    if d < Rational::from_integer(1) {
        return Err(ReductionError::Precondition(format!(
            "average degree {} is below 1",
            rational::format(d)
        )));
    }
    let mut work = WorkGraph::new(g);
    reduce_minimal(&mut work, avg_at_least(d), ReductionPolicy::Greedy);
    let (v, _) = work
        .min_degree_vertex()
        .expect("reduced graph is non-empty");
    let mut keep = work.neighbor_set(v).clone();
    if closed {
        keep.insert(v);
    }
    work.restrict_to(&keep);
    Ok(work.finish())
}

/// Vertex-count and minimum-degree bounds guaranteed by [`dense_minor`] for
/// average degree `d`: `⌈(d²+1)/(d+1)⌉` and `⌊d/2⌋`, one more each when closed.
pub fn dense_minor_bounds(d: Rational, closed: bool) -> (usize, usize) {
    let one = Rational::from_integer(1);
    let size = rational::ceil((d * d + one) / (d + one)) as usize;
    let degree = rational::floor(d / Rational::from_integer(2)) as usize;
    if closed {
        (size + 1, degree + 1)
    } else {
        (size, degree)
    }
}

/// Reduces `g ∈ X_k` to a minor-minimal member of `X_k`.
pub fn minor_minimal_xk(g: &Graph, k: usize) -> Result<(Graph, ReductionTrace), ReductionError> {
    if k == 0 {
        return Err(ReductionError::Precondition("k must be at least 1".into()));
    }
    if !in_xk(k)(g.n(), g.m()) {
        return Err(ReductionError::Precondition(format!(
            "graph with {} vertices and {} edges is not in X_{k}",
            g.n(),
            g.m()
        )));
    }
    let mut work = WorkGraph::new(g);
    reduce_in_xk(&mut work, k, ReductionPolicy::Greedy);
    Ok(work.finish())
}

fn reduce_in_xk(work: &mut WorkGraph, k: usize, policy: ReductionPolicy) {
    if work.n() > k {
        reduce_minimal(work, in_xk(k), policy);
    } else {
        // n = k forces m = C(k,2): already K_k.
        debug_assert_eq!(work.m() as i64, xk_floor(k, k));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OutcomeKind {
    Outcome1,
    Outcome2,
    Outcome3,
    Outcome4,
    Outcome5,
}

impl OutcomeKind {
    pub fn index(self) -> usize {
        match self {
            OutcomeKind::Outcome1 => 1,
            OutcomeKind::Outcome2 => 2,
            OutcomeKind::Outcome3 => 3,
            OutcomeKind::Outcome4 => 4,
            OutcomeKind::Outcome5 => 5,
        }
    }
}

impl fmt::Display for OutcomeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "outcome{}", self.index())
    }
}

/// A small dense minor with the outcome it certifies.
#[derive(Debug, Clone)]
pub struct DenseMinorOutcome {
    pub kind: OutcomeKind,
    pub witness: Graph,
    pub trace: ReductionTrace,
    pub n: usize,
    pub delta: usize,
    pub k: usize,
    pub c1: Rational,
    pub c2: Rational,
    /// Contraction steps taken in the middle phase.
    pub loop_steps: usize,
}

impl DenseMinorOutcome {
    fn new(
        kind: OutcomeKind,
        work: &WorkGraph,
        k: usize,
        c1: Rational,
        c2: Rational,
        loop_steps: usize,
    ) -> Self {
        let (witness, trace) = work.snapshot();
        DenseMinorOutcome {
            kind,
            n: witness.n(),
            delta: witness.min_degree(),
            witness,
            trace,
            k,
            c1,
            c2,
            loop_steps,
        }
    }

    /// Checks the size and degree bounds of this outcome's kind, exactly.
    pub fn check_invariants(&self) -> Result<(), String> {
        let k = Rational::from_integer(self.k as i64);
        let n = Rational::from_integer(self.n as i64);
        let delta = Rational::from_integer(self.delta as i64);
        let two = Rational::from_integer(2);
        let one = Rational::from_integer(1);
        if self.n != self.witness.n() || self.delta != self.witness.min_degree() {
            return Err("recorded (n, delta) disagree with the witness".into());
        }
        let (n_max, d_min) = match self.kind {
            OutcomeKind::Outcome1 => ((self.c1 / two + one) * k, two * k),
            OutcomeKind::Outcome2 => (two * k + one, (one + one / self.c1) * k),
            OutcomeKind::Outcome3 => (self.c2 * k, k),
            OutcomeKind::Outcome4 => ((Rational::from_integer(4) - self.c1 / two) * k, self.c2 * k),
            OutcomeKind::Outcome5 => {
                let complete = self.n == self.k && self.witness.m() == self.k * (self.k - 1) / 2;
                return if complete {
                    Ok(())
                } else {
                    Err(format!("{} witness is not K_{}", self.kind, self.k))
                };
            }
        };
        if n > n_max {
            return Err(format!(
                "{}: n = {} exceeds {}",
                self.kind,
                self.n,
                rational::format(n_max)
            ));
        }
        if delta < d_min {
            return Err(format!(
                "{}: delta = {} below {}",
                self.kind,
                self.delta,
                rational::format(d_min)
            ));
        }
        Ok(())
    }
}

fn remove_surplus_edges(work: &mut WorkGraph, target: usize) {
    while work.m() > target {
        let (u, v) = work
            .edges()
            .find(|&(u, v)| work.degree(u) >= 2 && work.degree(v) >= 2)
            .expect("a graph with more edges than vertices has an edge between non-leaves");
        work.delete_edge(u, v);
    }
}

fn restrict_to_neighbourhood(work: &mut WorkGraph, v: usize, closed: bool) {
    let mut keep: FixedBitSet = work.neighbor_set(v).clone();
    if closed {
        keep.insert(v);
    }
    work.restrict_to(&keep);
}

fn keep_lowest(work: &mut WorkGraph, count: usize) {
    let mut keep = FixedBitSet::with_capacity(work.capacity());
    for v in work.vertices().take(count) {
        keep.insert(v);
    }
    work.restrict_to(&keep);
}

/// The five-outcome dense minor procedure for `avg(g) ≥ 4k`.
///
/// 1. Reduce to a minor-minimal member `G'` of `X_{2k}`; `K_{2k}` gives outcome 5.
/// 2. `G₀ = G'[N(v)]` for a minimum-degree `v`; small `G₀` is outcome 1.
/// 3. Trim `G₀` to `k|V|` edges and run `k' = ⌊c₁k/2⌋` contraction steps,
///    keeping `k|Vᵢ| − ik/c₁ ≤ |Eᵢ| ≤ k|Vᵢ|`. If every edge is in at least
///    `(1+1/c₁)k − 1` triangles, a closed neighbourhood is outcome 2.
/// 4. Reduce the result in `X_k`: `K_k` is outcome 5, a low-degree vertex's
///    neighbourhood is outcome 3, otherwise the whole graph is outcome 4.
///
/// Before settling for outcome 2 on a `2k`-regular `Gᵢ`, one more edge is
/// deleted when the lower bound leaves room, so the neighbourhood has at most
/// `2k` vertices.
pub fn newmader(
    g: &Graph,
    k: usize,
    c1: Rational,
    c2: Rational,
) -> Result<DenseMinorOutcome, ReductionError> {
    newmader_with(g, k, c1, c2, ReductionPolicy::Greedy)
}

/// [`newmader`] with an explicit policy for the two `X_k` reductions.
pub fn newmader_with(
    g: &Graph,
    k: usize,
    c1: Rational,
    c2: Rational,
    policy: ReductionPolicy,
) -> Result<DenseMinorOutcome, ReductionError> {
    let one = Rational::from_integer(1);
    let two = Rational::from_integer(2);
    if k == 0 {
        return Err(ReductionError::Precondition("k must be at least 1".into()));
    }
    if c1 <= two || c2 <= one {
        return Err(ReductionError::Precondition(
            "need c1 > 2 and c2 > 1".into(),
        ));
    }
    let avg = g
        .average_degree()
        .map_err(|e| ReductionError::Precondition(e.to_string()))?;
    if avg < Rational::from_integer(4 * k as i64) {
        return Err(ReductionError::Precondition(format!(
            "average degree {} is below 4k = {}",
            rational::format(avg),
            4 * k
        )));
    }
    let kr = Rational::from_integer(k as i64);
    let mut work = WorkGraph::new(g);

    reduce_in_xk(&mut work, 2 * k, policy);
    if work.n() == 2 * k {
        keep_lowest(&mut work, k);
        return finish(DenseMinorOutcome::new(
            OutcomeKind::Outcome5,
            &work,
            k,
            c1,
            c2,
            0,
        ));
    }
    let (v, deg) = work.min_degree_vertex().expect("non-empty");
    if deg >= 4 * k {
        return Err(ReductionError::Internal(format!(
            "minimum degree {deg} of a minimal X_2k graph is not below 4k"
        )));
    }
    restrict_to_neighbourhood(&mut work, v, false);
    if Rational::from_integer(work.n() as i64) <= (c1 / two + one) * kr {
        return finish(DenseMinorOutcome::new(
            OutcomeKind::Outcome1,
            &work,
            k,
            c1,
            c2,
            0,
        ));
    }
    contraction_phase(work, k, c1, c2, policy)
}

/// Starts the proof from `G₀` directly: `g0` must have minimum degree at
/// least `2k` and more than `(c₁/2+1)k` vertices. Exposed so the contraction
/// phase can be exercised on inputs whose first reduction would not reach it.
pub fn newmader_from_dense(
    g0: &Graph,
    k: usize,
    c1: Rational,
    c2: Rational,
    policy: ReductionPolicy,
) -> Result<DenseMinorOutcome, ReductionError> {
    let one = Rational::from_integer(1);
    let two = Rational::from_integer(2);
    if k == 0 || c1 <= two || c2 <= one {
        return Err(ReductionError::Precondition(
            "need k >= 1, c1 > 2 and c2 > 1".into(),
        ));
    }
    if g0.n() == 0 || g0.min_degree() < 2 * k {
        return Err(ReductionError::Precondition(format!(
            "minimum degree below 2k = {}",
            2 * k
        )));
    }
    if Rational::from_integer(g0.n() as i64) <= (c1 / two + one) * Rational::from_integer(k as i64)
    {
        return Err(ReductionError::Precondition(
            "at most (c1/2+1)k vertices: already outcome 1".into(),
        ));
    }
    contraction_phase(WorkGraph::new(g0), k, c1, c2, policy)
}

fn contraction_phase(
    mut work: WorkGraph,
    k: usize,
    c1: Rational,
    c2: Rational,
    policy: ReductionPolicy,
) -> Result<DenseMinorOutcome, ReductionError> {
    let one = Rational::from_integer(1);
    let two = Rational::from_integer(2);
    let kr = Rational::from_integer(k as i64);
    if work.min_degree_vertex().map(|(_, d)| d).unwrap_or(0) < 2 * k {
        return Err(ReductionError::Internal(
            "G0 has minimum degree below 2k".into(),
        ));
    }
    let target = k * work.n();
    remove_surplus_edges(&mut work, target);

    let k_prime = rational::floor(c1 * kr / two) as usize;
    let tri_threshold = (one + one / c1) * kr - one;
    let lower = |n: usize, i: usize| {
        Rational::from_integer((k * n) as i64) - Rational::from_integer((i * k) as i64) / c1
    };
    let mut i = 0;
    while i < k_prime {
        let (n, m) = (work.n(), work.m());
        let m_r = Rational::from_integer(m as i64);
        if m_r < lower(n, i) || m > k * n {
            return Err(ReductionError::Internal(format!(
                "step {i}: |E| = {m} outside [k|V| - ik/c1, k|V|] for |V| = {n}"
            )));
        }
        let (u, w, tri) = work.min_triangle_edge().expect("|E| >= k|V| - ik/c1 > 0");
        if Rational::from_integer(tri as i64) >= tri_threshold {
            let (v, deg) = work
                .vertices()
                .filter(|&x| work.degree(x) > 0)
                .map(|x| (work.degree(x), x))
                .min()
                .map(|(d, x)| (x, d))
                .expect("graph has edges");
            if deg > 2 * k {
                return Err(ReductionError::Internal(format!(
                    "step {i}: no vertex of degree at most 2k"
                )));
            }
            if deg == 2 * k && m_r - one >= lower(n, i) {
                let nb = work
                    .neighbors(v)
                    .find(|&x| work.degree(x) >= 2)
                    .expect("2k-regular graph has non-leaf neighbours");
                work.delete_edge(v, nb);
                continue;
            }
            restrict_to_neighbourhood(&mut work, v, true);
            return finish(DenseMinorOutcome::new(
                OutcomeKind::Outcome2,
                &work,
                k,
                c1,
                c2,
                i,
            ));
        }
        work.contract(u, w);
        let target = k * work.n();
        remove_surplus_edges(&mut work, target);
        i += 1;
    }
    let (n, m) = (work.n(), work.m());
    if Rational::from_integer(m as i64) < lower(n, k_prime) || m > k * n {
        return Err(ReductionError::Internal(format!(
            "final step: |E| = {m} outside the loop bounds for |V| = {n}"
        )));
    }
    if n < k || (m as i64) < xk_floor(k, n) {
        return Err(ReductionError::Internal(
            "final graph of the contraction phase is not in X_k".into(),
        ));
    }

    reduce_in_xk(&mut work, k, policy);
    if work.n() == k {
        return finish(DenseMinorOutcome::new(
            OutcomeKind::Outcome5,
            &work,
            k,
            c1,
            c2,
            k_prime,
        ));
    }
    let (v, deg) = work.min_degree_vertex().expect("non-empty");
    if Rational::from_integer(deg as i64) <= c2 * kr {
        restrict_to_neighbourhood(&mut work, v, false);
        return finish(DenseMinorOutcome::new(
            OutcomeKind::Outcome3,
            &work,
            k,
            c1,
            c2,
            k_prime,
        ));
    }
    finish(DenseMinorOutcome::new(
        OutcomeKind::Outcome4,
        &work,
        k,
        c1,
        c2,
        k_prime,
    ))
}

fn finish(outcome: DenseMinorOutcome) -> Result<DenseMinorOutcome, ReductionError> {
    outcome
        .check_invariants()
        .map_err(ReductionError::Internal)?;
    Ok(outcome)
}

pub const RATIO_C1: &str = "3.2929";
pub const RATIO_C2: &str = "1.5341";
pub const FUNCTION_C1: &str = "3.4641";
pub const FUNCTION_C2: &str = "1.4227";

/// [`newmader`] tuned to maximise `δ/n`: non-complete witnesses have
/// `δ ≥ 0.6518n` and `2δ − n ≥ 0.4659k`.
pub fn ratio_minor(g: &Graph, k: usize) -> Result<DenseMinorOutcome, ReductionError> {
    ratio_minor_with(g, k, ReductionPolicy::Greedy)
}

pub fn ratio_minor_with(
    g: &Graph,
    k: usize,
    policy: ReductionPolicy,
) -> Result<DenseMinorOutcome, ReductionError> {
    newmader_with(
        g,
        k,
        rational::dec(RATIO_C1),
        rational::dec(RATIO_C2),
        policy,
    )
}

/// [`newmader`] tuned to maximise `2δ − n`: non-complete witnesses have
/// `δ ≥ 0.6273n` and `2δ − n ≥ 0.5773k`.
pub fn function_minor(g: &Graph, k: usize) -> Result<DenseMinorOutcome, ReductionError> {
    function_minor_with(g, k, ReductionPolicy::Greedy)
}

pub fn function_minor_with(
    g: &Graph,
    k: usize,
    policy: ReductionPolicy,
) -> Result<DenseMinorOutcome, ReductionError> {
    newmader_with(
        g,
        k,
        rational::dec(FUNCTION_C1),
        rational::dec(FUNCTION_C2),
        policy,
    )
}

/// `(λ, σ)` such that non-complete witnesses are claimed to satisfy
/// `δ ≥ λn` and `2δ − n ≥ σk`, for the two tuned constant pairs.
pub fn claimed_bounds(c1: Rational, c2: Rational) -> Option<(Rational, Rational)> {
    if (c1, c2) == (rational::dec(RATIO_C1), rational::dec(RATIO_C2)) {
        Some((rational::dec("0.6518"), rational::dec("0.4659")))
    } else if (c1, c2) == (rational::dec(FUNCTION_C1), rational::dec(FUNCTION_C2)) {
        Some((rational::dec("0.6273"), rational::dec("0.5773")))
    } else {
        None
    }
}

impl DenseMinorOutcome {
    /// Checks `δ ≥ λn`, `2δ − n ≥ σk` and `k ≤ δ < n ≤ 4k` for the tuned
    /// constant pairs. Outcome 2 permits `2k + 1` vertices, one more than the
    /// ratio `(1+1/c₁)/2` accounts for, so a 2k-regular `Gᵢ` with no slack can
    /// produce a witness that misses these by less than one.
    pub fn check_claimed_bounds(&self) -> Result<(), String> {
        if self.kind == OutcomeKind::Outcome5 {
            return Ok(());
        }
        let Some((lambda, sigma)) = claimed_bounds(self.c1, self.c2) else {
            return Ok(());
        };
        let n = Rational::from_integer(self.n as i64);
        let delta = Rational::from_integer(self.delta as i64);
        let k = Rational::from_integer(self.k as i64);
        if delta < lambda * n {
            return Err(format!(
                "{}: delta = {} < {} * n = {}",
                self.kind,
                self.delta,
                rational::format(lambda),
                rational::format(lambda * n)
            ));
        }
        if delta * 2 - n < sigma * k {
            return Err(format!(
                "{}: 2delta - n = {} < {} * k",
                self.kind,
                2 * self.delta as i64 - self.n as i64,
                rational::format(sigma)
            ));
        }
        if !(self.k <= self.delta && self.delta < self.n && self.n <= 4 * self.k) {
            return Err(format!(
                "{}: k <= delta < n <= 4k fails for (n, delta) = ({}, {})",
                self.kind, self.n, self.delta
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, gnp};
    use crate::graph::{contract_edge, triangles_on_edge};
    use crate::rational::dec;

    /// Every graph obtainable by one contraction, edge deletion or vertex deletion.
    fn single_step_minors(g: &Graph) -> Vec<Graph> {
        let mut out = Vec::new();
        for (u, v) in g.edges() {
            out.push(contract_edge(g, u, v).unwrap());
            let mut h = g.clone();
            h.remove_edge(u, v).unwrap();
            out.push(h);
        }
        for v in g.vertices() {
            out.push(g.remove_vertices(&[v].into()).0);
        }
        out
    }

    fn assert_locally_minimal(g: &Graph, admissible: impl Fn(usize, usize) -> bool) {
        assert!(admissible(g.n(), g.m()));
        for h in single_step_minors(g) {
            assert!(!admissible(h.n(), h.m()), "{h:?} is a smaller member");
        }
    }

    #[test]
    fn avg_degree_examples() {
        let (k5, t) = minor_minimal_avg_degree(&complete(5), Rational::from_integer(4)).unwrap();
        assert_eq!(k5, complete(5));
        assert!(t.steps.is_empty());
        let (k3, t) = minor_minimal_avg_degree(&cycle(6), Rational::from_integer(2)).unwrap();
        assert_eq!(k3, complete(3));
        assert_eq!(t.verify(&cycle(6), &k3), Ok(()));
        let (k4, _) = minor_minimal_avg_degree(&complete(4), Rational::from_integer(3)).unwrap();
        assert_eq!(k4, complete(4));
        assert!(minor_minimal_avg_degree(&cycle(6), Rational::from_integer(3)).is_err());
    }

    #[test]
    fn avg_degree_output_is_locally_minimal() {
        for seed in 0..30 {
            let g = gnp(14, 0.5, seed).unwrap();
            if g.m() == 0 {
                continue;
            }
            let d = g.average_degree().unwrap();
            let (r, trace) = minor_minimal_avg_degree(&g, d).unwrap();
            assert_eq!(trace.verify(&g, &r), Ok(()));
            assert_locally_minimal(&r, avg_at_least(d));
            let half = rational::floor(d / 2) as usize;
            for (u, v) in r.edges() {
                assert!(triangles_on_edge(&r, u, v).unwrap() >= half);
            }
            assert!(r.min_degree() > half);
        }
    }

    #[test]
    fn dense_minor_examples() {
        let (g, _) = dense_minor(&complete(5), false).unwrap();
        assert!(g.n() <= 4 && g.min_degree() >= 2);
        let (g, _) = dense_minor(&cycle(6), false).unwrap();
        assert!(g.n() <= 2 && g.min_degree() >= 1);
        assert_eq!(dense_minor_bounds(Rational::from_integer(4), false), (4, 2));
        assert_eq!(dense_minor_bounds(Rational::from_integer(2), true), (3, 2));
        assert!(dense_minor(&Graph::new(3), false).is_err());
    }

    #[test]
    fn xk_examples() {
        let (g, _) = minor_minimal_xk(&complete(3), 2).unwrap();
        assert_eq!(g, complete(2));
        let (g, t) = minor_minimal_xk(&complete(5), 2).unwrap();
        assert_eq!(g, complete(2));
        assert_eq!(t.verify(&complete(5), &g), Ok(()));
        let (g, t) = minor_minimal_xk(&complete(6), 6).unwrap();
        assert_eq!(g, complete(6));
        assert!(t.steps.is_empty());
        assert!(minor_minimal_xk(&cycle(5), 3).is_err());
    }

    #[test]
    fn xk_output_is_locally_minimal() {
        for seed in 0..30 {
            let g = gnp(14, 0.6, seed).unwrap();
            for k in 1..=4 {
                if !in_xk(k)(g.n(), g.m()) {
                    continue;
                }
                let (r, trace) = minor_minimal_xk(&g, k).unwrap();
                assert_eq!(trace.verify(&g, &r), Ok(()));
                assert_eq!(r.m() as i64, xk_floor(k, r.n()));
                if r.n() > k {
                    assert_locally_minimal(&r, in_xk(k));
                    for (u, v) in r.edges() {
                        assert!(triangles_on_edge(&r, u, v).unwrap() >= k);
                    }
                } else {
                    assert_eq!(r, complete(k));
                }
            }
        }
    }

    #[test]
    fn newmader_on_k9() {
        let out = newmader(&complete(9), 2, dec("4"), dec("1.5")).unwrap();
        assert_eq!(out.check_invariants(), Ok(()));
        assert_eq!(out.trace.verify(&complete(9), &out.witness), Ok(()));
    }

    #[test]
    fn newmader_rejects_bad_input() {
        assert!(newmader(&complete(8), 2, dec("4"), dec("1.5")).is_err());
        assert!(newmader(&complete(9), 2, dec("2"), dec("1.5")).is_err());
        assert!(newmader(&complete(9), 2, dec("3"), dec("1")).is_err());
    }

    #[test]
    fn newmader_outcomes_hold_on_random_graphs() {
        for seed in 0..100 {
            let g = gnp(60, 0.5, seed).unwrap();
            let k = 3;
            if g.average_degree().unwrap() < Rational::from_integer(12) {
                continue;
            }
            let out = newmader(&g, k, dec(FUNCTION_C1), dec(FUNCTION_C2)).unwrap();
            assert_eq!(out.check_invariants(), Ok(()));
            assert_eq!(out.trace.verify(&g, &out.witness), Ok(()));
        }
    }

    #[test]
    fn contraction_phase_invariants_on_regular_inputs() {
        for k in 1..8usize {
            for (c1, c2) in [
                (RATIO_C1, RATIO_C2),
                (FUNCTION_C1, FUNCTION_C2),
                ("4", "1.5"),
            ] {
                let (c1, c2) = (dec(c1), dec(c2));
                let lo =
                    rational::floor((c1 / 2 + 1) * Rational::from_integer(k as i64)) as usize + 1;
                for n in lo..4 * k {
                    for d in [2 * k, 2 * k + 1, 2 * k + 2] {
                        if d >= n || (n * d) % 2 == 1 {
                            continue;
                        }
                        let g = crate::generate::random_regular(n, d, (n * d) as u64).unwrap();
                        for policy in [ReductionPolicy::Greedy, ReductionPolicy::Shuffled(7)] {
                            let out = newmader_from_dense(&g, k, c1, c2, policy).unwrap();
                            assert_eq!(out.check_invariants(), Ok(()));
                            assert_eq!(out.trace.verify(&g, &out.witness), Ok(()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tight_regular_input_hits_the_outcome2_gap() {
        // 6-regular on 9 vertices: every edge is in >= 3 triangles, no slack at step 0.
        let g = crate::generate::random_regular(9, 6, 0).unwrap();
        let out = newmader_from_dense(
            &g,
            3,
            dec(FUNCTION_C1),
            dec(FUNCTION_C2),
            ReductionPolicy::Greedy,
        )
        .unwrap();
        assert_eq!(out.kind, OutcomeKind::Outcome2);
        assert_eq!(out.n, 7);
        assert_eq!(out.check_invariants(), Ok(()));
        assert!(out.check_claimed_bounds().is_err());
    }

    #[test]
    fn ratio_and_function_coefficients() {
        let eval = |c1: f64, c2: f64| {
            let ratios = [
                2.0 / (c1 / 2.0 + 1.0),
                (1.0 + 1.0 / c1) / 2.0,
                1.0 / c2,
                c2 / (4.0 - c1 / 2.0),
            ];
            let gaps = [
                4.0 - (c1 / 2.0 + 1.0),
                2.0 * (1.0 + 1.0 / c1) - 2.0,
                2.0 - c2,
                2.0 * c2 - (4.0 - c1 / 2.0),
            ];
            (
                ratios.into_iter().fold(f64::MAX, f64::min),
                gaps.into_iter().fold(f64::MAX, f64::min),
            )
        };
        let (r, g) = eval(3.2929, 1.5341);
        assert!((r - 0.6518).abs() < 1e-4 && (g - 0.4659).abs() < 1e-4);
        let (r, g) = eval(3.4641, 1.4227);
        assert!((r - 0.6273).abs() < 1e-4 && (g - 0.5773).abs() < 1e-4);
    }
}
