//! Randomized branch-set construction for hosts with minimum degree `λn`.
//!
//! Stage 1 samples disjoint `S₁..S_t` of size `ℓ` until P1–P5 hold, stage 2
//! samples `Tᵢ` of size `ℓ²` for every bad `Sᵢ` until Q1 holds, and stage 3
//! adds connector and repair vertices `Uᵢ` through unused common neighbours.
//! At desk scale the probability bounds behind stages 1 and 2 are void, so
//! each stage has a retry budget and failures name the violated properties.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::seq::index::sample;
use thiserror::Error;

use super::report::{DriverError, DriverReport, FailureReport, Hypothesis, Outcome, Theorem};
use crate::generate;
use crate::graph::Graph;
use crate::model::{validate_model, MinorModel};
use crate::rational::{self, dec, Rational};

/// Upper bound of the number of subsets of size at most `ℓ/6` is `1.5692^ℓ`.
const ENTROPY_BASE: f64 = 1.5692;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeartError {
    #[error("lambda must lie in (1/2, 1)")]
    Lambda,
    #[error("epsilon must lie in (0, lambda)")]
    Epsilon,
    #[error("pattern average degree must be positive and finite")]
    Degree,
}

/// `λ`, `ε` and the pattern average degree `d`; every other parameter is
/// computed from these on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct HeartParams {
    lambda: Rational,
    epsilon: Rational,
    d: f64,
}

impl HeartParams {
    pub fn new(lambda: Rational, epsilon: Rational, d: f64) -> Result<Self, HeartError> {
        let one = Rational::from_integer(1);
        if lambda <= Rational::new(1, 2) || lambda >= one {
            return Err(HeartError::Lambda);
        }
        if epsilon <= Rational::from_integer(0) || epsilon >= lambda {
            return Err(HeartError::Epsilon);
        }
        if !(d.is_finite() && d > 0.0) {
            return Err(HeartError::Degree);
        }
        Ok(HeartParams { lambda, epsilon, d })
    }

    pub fn lambda(&self) -> Rational {
        self.lambda
    }

    pub fn epsilon(&self) -> Rational {
        self.epsilon
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    fn lam(&self) -> f64 {
        rational::to_f64(self.lambda)
    }

    fn eps(&self) -> f64 {
        rational::to_f64(self.epsilon)
    }

    /// `b = (1 − λ + ε)⁻¹`.
    pub fn b(&self) -> f64 {
        1.0 / (1.0 - self.lam() + self.eps())
    }

    /// `ℓ = ⌈√(log_b d)⌉`, at least 1.
    pub fn ell(&self) -> usize {
        let x = self.d.ln() / self.b().ln();
        if x <= 0.0 {
            1
        } else {
            (x.sqrt().ceil() as usize).max(1)
        }
    }

    /// `ν = ((1−λ)/(1−λ+ε))^ℓ`.
    pub fn nu(&self) -> f64 {
        ((1.0 - self.lam()) / (1.0 - self.lam() + self.eps())).powi(self.ell() as i32)
    }

    /// `μ = 1.5692^ℓ (1−λ)^{5ℓ/6}`.
    pub fn mu(&self) -> f64 {
        let ell = self.ell() as f64;
        ENTROPY_BASE.powf(ell) * (1.0 - self.lam()).powf(5.0 * ell / 6.0)
    }

    /// `θ = 5(ν+μ)(ℓ+ℓ²) + 5νℓ² + 8`.
    pub fn theta(&self) -> f64 {
        let ell = self.ell() as f64;
        5.0 * (self.nu() + self.mu()) * (ell + ell * ell) + 5.0 * self.nu() * ell * ell + 8.0
    }

    /// `Sᵢ` is bad with at least this many non-neighbours: `(n−ℓ)(1−λ+ε)^ℓ`.
    pub fn bad_threshold(&self, n: usize) -> f64 {
        (n as f64 - self.ell() as f64) * (1.0 - self.lam() + self.eps()).powi(self.ell() as i32)
    }

    /// `(1+ε)ℓt`.
    pub fn min_vertices(&self, t: usize) -> f64 {
        (1.0 + self.eps()) * (self.ell() * t) as f64
    }

    /// The three size assumptions of the proof, evaluated in log space.
    pub fn assumptions(&self, n: usize) -> [bool; 3] {
        let (lam, eps, n_f) = (self.lam(), self.eps(), n as f64);
        let pairs = n_f * (n_f - 1.0) / 2.0;
        [
            eps * (1.0 - eps) * (2.0 * lam - 1.0) * self.ell() as f64 >= 2.0 * self.theta(),
            eps * eps * (2.0 * lam - 1.0).powi(2) * n_f / 8.0 >= (10.0 * pairs).ln(),
            eps.powi(4) * n_f / (2.0 * (1.0 + eps).powi(2)) >= (10.0 * n_f).ln(),
        ]
    }
}

/// Procedure settings shared by the heart and general drivers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeartConfig {
    pub lambda: Rational,
    pub epsilon: Rational,
    /// Reject inputs that violate `n ≥ (1+ε)ℓt` or the size assumptions.
    pub enforce_assumptions: bool,
    /// Resamples allowed in each of stages 1 and 2.
    pub retries: usize,
}

impl Default for HeartConfig {
    fn default() -> Self {
        HeartConfig {
            lambda: dec("0.6518"),
            epsilon: dec("0.00001"),
            enforce_assumptions: false,
            retries: 50,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    P0,
    P1,
    P2,
    P3,
    P4,
    P5,
    Q0,
    Q1,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Branch-set families and the classifications derived from them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StageState {
    pub s: Vec<Vec<usize>>,
    pub t: Vec<Vec<usize>>,
    pub u: Vec<Vec<usize>>,
    pub bad: Vec<bool>,
    pub disjointed: Vec<bool>,
    pub problematic: Vec<(usize, usize)>,
    pub nasty: Vec<(usize, usize)>,
}

impl StageState {
    /// Checks pairwise disjointness, `|Sᵢ| = ℓ` and `|Tᵢ| ∈ {0, ℓ²}`.
    pub fn check(&self, ell: usize) -> Result<(), String> {
        let mut seen = BTreeSet::new();
        for family in [&self.s, &self.t, &self.u] {
            for x in family.iter().flatten() {
                if !seen.insert(*x) {
                    return Err(format!("host vertex {x} appears twice"));
                }
            }
        }
        if let Some(i) = self.s.iter().position(|s| s.len() != ell) {
            return Err(format!("|S_{i}| != {ell}"));
        }
        if let Some(i) = self
            .t
            .iter()
            .position(|t| !t.is_empty() && t.len() != ell * ell)
        {
            return Err(format!("|T_{i}| is neither 0 nor {}", ell * ell));
        }
        Ok(())
    }

    pub fn branch_set(&self, i: usize) -> BTreeSet<usize> {
        self.s[i]
            .iter()
            .chain(&self.t[i])
            .chain(&self.u[i])
            .copied()
            .collect()
    }
}

struct Host<'a> {
    g: &'a Graph,
    adj: Vec<FixedBitSet>,
}

impl<'a> Host<'a> {
    fn new(g: &'a Graph) -> Self {
        let adj = g
            .vertices()
            .map(|v| {
                let mut row = FixedBitSet::with_capacity(g.n());
                for &w in g.neighbors(v) {
                    row.insert(w);
                }
                row
            })
            .collect();
        Host { g, adj }
    }

    fn n(&self) -> usize {
        self.g.n()
    }

    fn set(&self, xs: &[usize]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.n());
        for &x in xs {
            b.insert(x);
        }
        b
    }

    /// Vertices outside `xs` with a neighbour in `xs`.
    fn neighbourhood(&self, xs: &[usize]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.n());
        for &x in xs {
            b.union_with(&self.adj[x]);
        }
        for &x in xs {
            b.set(x, false);
        }
        b
    }

    fn touches(&self, a: &[usize], b: &FixedBitSet) -> bool {
        a.iter().any(|&x| !self.adj[x].is_disjoint(b))
    }

    /// Components of `G[xs]`, each sorted, ordered by smallest vertex.
    fn components(&self, xs: &[usize]) -> Vec<Vec<usize>> {
        let mut sorted = xs.to_vec();
        sorted.sort_unstable();
        let sub = self.g.induced_subgraph(&sorted);
        sub.components()
            .into_iter()
            .map(|c| c.into_iter().map(|i| sorted[i]).collect())
            .collect()
    }
}

fn count_stage1(
    host: &Host,
    h: &Graph,
    params: &HeartParams,
    s: &[Vec<usize>],
) -> (Vec<bool>, Vec<bool>, Vec<(usize, usize)>) {
    let n = host.n();
    let ell = params.ell();
    let bad_at = params.bad_threshold(n);
    let bad: Vec<bool> = s
        .iter()
        .map(|si| {
            let non = n - si.len() - host.neighbourhood(si).count_ones(..);
            non as f64 >= bad_at
        })
        .collect();
    let disjointed: Vec<bool> = s
        .iter()
        .map(|si| {
            host.components(si)
                .iter()
                .any(|c| (c.len() as f64) <= ell as f64 / 6.0)
        })
        .collect();
    let sets: Vec<FixedBitSet> = s.iter().map(|si| host.set(si)).collect();
    let problematic = h
        .edges()
        .filter(|&(i, j)| (!bad[i] || !bad[j]) && !host.touches(&s[i], &sets[j]))
        .collect();
    (bad, disjointed, problematic)
}

/// P4 and P5 as exact counts against the `f64` factors.
fn depletion_checks(
    host: &Host,
    params: &HeartParams,
    used: &FixedBitSet,
    ell_t: usize,
) -> (bool, bool) {
    let n = host.n();
    let (lam, eps) = (params.lam(), params.eps());
    let base = 1.0 - ell_t as f64 / n as f64;
    let f4 = base - eps / 2.0;
    let f5 = base - eps * eps / (lam * (1.0 + eps));
    let mut free = used.clone();
    free.toggle_range(..);
    let p5 = host.g.vertices().all(|v| {
        let all = host.adj[v].count_ones(..);
        let left = host.adj[v].intersection(&free).count();
        left as f64 >= f5 * all as f64
    });
    let mut p4 = true;
    'outer: for v in host.g.vertices() {
        for w in v + 1..n {
            let mut common = host.adj[v].clone();
            common.intersect_with(&host.adj[w]);
            let all = common.count_ones(..);
            let left = common.intersection(&free).count();
            if (left as f64) < f4 * all as f64 {
                p4 = false;
                break 'outer;
            }
        }
    }
    (p4, p5)
}

/// Runs the three stages on a host with minimum degree at least `λn`.
pub fn heart_embed(
    g: &Graph,
    h: &Graph,
    params: &HeartParams,
    config: &HeartConfig,
    seed: u64,
) -> Result<DriverReport, DriverError> {
    let n = g.n();
    let t = h.n();
    let lambda = params.lambda();
    let hyp = Hypothesis::new(
        "minimum-degree",
        lambda * Rational::from_integer(n as i64),
        (n > 0).then(|| Rational::from_integer(g.min_degree() as i64)),
    );
    if !hyp.satisfied() {
        return Ok(DriverReport {
            theorem: Theorem::Heart,
            hypothesis: hyp,
            outcome: Outcome::HypothesisNotMet,
            log: Vec::new(),
        });
    }
    let ell = params.ell();
    let mut log = Vec::new();
    let assumptions = params.assumptions(n);
    log.push(format!(
        "ell = {ell}, b = {:.6}, nu = {:.6}, mu = {:.6}, theta = {:.6}, assumptions (1)-(3) = {:?}",
        params.b(),
        params.nu(),
        params.mu(),
        params.theta(),
        assumptions
    ));
    if config.enforce_assumptions {
        if (n as f64) < params.min_vertices(t) {
            return Err(DriverError::Rejected(format!(
                "n = {n} is below (1+eps) * ell * t = {:.3}",
                params.min_vertices(t)
            )));
        }
        if let Some(i) = assumptions.iter().position(|ok| !ok) {
            return Err(DriverError::Rejected(format!(
                "assumption ({}) fails",
                i + 1
            )));
        }
    }
    let report = |outcome: Outcome, log: Vec<String>| DriverReport {
        theorem: Theorem::Heart,
        hypothesis: hyp.clone(),
        outcome,
        log,
    };
    if t == 0 {
        return Ok(report(Outcome::Model(MinorModel::new(Vec::new())), log));
    }
    if ell * t > n {
        let f = FailureReport::new(
            "stage1",
            vec![Property::P0.to_string()],
            format!(
                "{t} disjoint sets of size {ell} need {} > {n} vertices",
                ell * t
            ),
        );
        return Ok(report(Outcome::Failure(f), log));
    }

    let host = Host::new(g);
    let mut rng = generate::rng(seed);
    let tf = t as f64;
    let mut tallies = [0usize; 8];

    // Stage 1.
    let mut state = StageState::default();
    let mut last: Vec<Property> = Vec::new();
    let mut ok = false;
    for attempt in 1..=config.retries {
        let picked = sample(&mut rng, n, ell * t).into_vec();
        let s: Vec<Vec<usize>> = picked.chunks(ell).map(<[usize]>::to_vec).collect();
        let (bad, disjointed, problematic) = count_stage1(&host, h, params, &s);
        let used = host.set(&picked);
        let (p4, p5) = depletion_checks(&host, params, &used, ell * t);
        let nb = bad.iter().filter(|&&b| b).count();
        let nd = disjointed.iter().filter(|&&b| b).count();
        last = Vec::new();
        if nb as f64 > 5.0 * params.nu() * tf {
            last.push(Property::P1);
        }
        if nd as f64 > 5.0 * params.mu() * tf {
            last.push(Property::P2);
        }
        if problematic.len() as f64 > 2.5 * tf {
            last.push(Property::P3);
        }
        if !p4 {
            last.push(Property::P4);
        }
        if !p5 {
            last.push(Property::P5);
        }
        for p in &last {
            tallies[*p as usize] += 1;
        }
        if last.is_empty() {
            log.push(format!(
                "stage 1: attempt {attempt}: bad = {nb}, disjointed = {nd}, problematic = {}",
                problematic.len()
            ));
            state = StageState {
                s,
                t: vec![Vec::new(); t],
                u: vec![Vec::new(); t],
                bad,
                disjointed,
                problematic,
                nasty: Vec::new(),
            };
            ok = true;
            break;
        }
    }
    if !ok {
        return Ok(report(
            Outcome::Failure(stage_failure("stage1", &last, &tallies, config.retries)),
            log,
        ));
    }

    // Stage 2.
    let bad_idx: Vec<usize> = (0..t).filter(|&i| state.bad[i]).collect();
    if !bad_idx.is_empty() {
        let in_s = host.set(&state.s.concat());
        let w: Vec<usize> = g.vertices().filter(|&v| !in_s.contains(v)).collect();
        let need = bad_idx.len() * ell * ell;
        if need > w.len() {
            let f = FailureReport::new(
                "stage2",
                vec![Property::Q0.to_string()],
                format!("{need} vertices needed for T, only {} remain", w.len()),
            );
            return Ok(report(Outcome::Failure(f), log));
        }
        let mut ok = false;
        for attempt in 1..=config.retries {
            let picked: Vec<usize> = sample(&mut rng, w.len(), need)
                .into_iter()
                .map(|i| w[i])
                .collect();
            let mut tsets = vec![Vec::new(); t];
            for (chunk, &i) in picked.chunks(ell * ell).zip(&bad_idx) {
                tsets[i] = chunk.to_vec();
            }
            let unions: Vec<Vec<usize>> = (0..t)
                .map(|i| [state.s[i].as_slice(), &tsets[i]].concat())
                .collect();
            let nasty: Vec<(usize, usize)> = h
                .edges()
                .filter(|&(i, j)| {
                    state.bad[i] && state.bad[j] && !host.touches(&unions[i], &host.set(&unions[j]))
                })
                .collect();
            if nasty.len() as f64 <= tf / 2.0 {
                log.push(format!(
                    "stage 2: attempt {attempt}: {} bad sets, nasty = {}",
                    bad_idx.len(),
                    nasty.len()
                ));
                state.t = tsets;
                state.nasty = nasty;
                ok = true;
                break;
            }
            tallies[Property::Q1 as usize] += 1;
        }
        if !ok {
            return Ok(report(
                Outcome::Failure(stage_failure(
                    "stage2",
                    &[Property::Q1],
                    &tallies,
                    config.retries,
                )),
                log,
            ));
        }
    } else {
        log.push("stage 2: no bad sets".into());
    }
    state
        .check(ell)
        .map_err(|e| DriverError::Internal(format!("after stage 2: {e}")))?;

    // Stage 3.
    match stage3(&host, h, params, &mut state, &mut log) {
        Ok(()) => {}
        Err(Stage3Error::Exhausted(detail)) => {
            let f = FailureReport::new("stage3", vec!["assumption (1)".into()], detail);
            return Ok(report(Outcome::Failure(f), log));
        }
        Err(Stage3Error::Internal(detail)) => return Err(DriverError::Internal(detail)),
    }
    state
        .check(ell)
        .map_err(|e| DriverError::Internal(format!("after stage 3: {e}")))?;
    let model = MinorModel::new((0..t).map(|i| state.branch_set(i)).collect());
    validate_model(h, g, &model)
        .map_err(|v| DriverError::Internal(format!("heart produced an invalid model: {v}")))?;
    Ok(report(Outcome::Model(model), log))
}

fn stage_failure(
    stage: &str,
    last: &[Property],
    tallies: &[usize; 8],
    attempts: usize,
) -> FailureReport {
    let detail = [
        Property::P1,
        Property::P2,
        Property::P3,
        Property::P4,
        Property::P5,
        Property::Q1,
    ]
    .iter()
    .filter(|p| tallies[**p as usize] > 0)
    .map(|p| {
        format!(
            "{p} violated in {}/{attempts} attempts",
            tallies[*p as usize]
        )
    })
    .collect::<Vec<_>>()
    .join("\n");
    FailureReport::new(
        stage,
        last.iter().map(Property::to_string).collect(),
        detail,
    )
}

enum Stage3Error {
    Exhausted(String),
    Internal(String),
}

/// Adds connectors between consecutive components of each `G[Sᵢ ∪ Tᵢ]`, then
/// one repair vertex per pattern edge whose branch sets do not touch.
fn stage3(
    host: &Host,
    h: &Graph,
    params: &HeartParams,
    state: &mut StageState,
    log: &mut Vec<String>,
) -> Result<(), Stage3Error> {
    let n = host.n();
    let t = h.n();
    let ell_t = params.ell() * t;
    // Guaranteed common neighbours outside S when P4 holds and δ ≥ λn.
    let reserve = (1.0 - ell_t as f64 / n as f64 - params.eps() / 2.0)
        * (2.0 * params.lam() - 1.0)
        * n as f64;
    let mut used = host.set(&state.s.concat());
    for x in state.t.iter().flatten() {
        used.insert(*x);
    }
    let mut spent = state.t.iter().map(Vec::len).sum::<usize>();

    let pick = |candidates: FixedBitSet,
                used: &mut FixedBitSet,
                spent: &mut usize,
                what: String|
     -> Result<usize, Stage3Error> {
        let bound = reserve - *spent as f64;
        match candidates.difference(used).next() {
            Some(z) => {
                used.insert(z);
                *spent += 1;
                Ok(z)
            }
            None if bound > 0.0 => Err(Stage3Error::Internal(format!(
                "{what}: no unused common neighbour although the count bound gives {bound:.3}"
            ))),
            None => Err(Stage3Error::Exhausted(format!(
                "{what}: no unused common neighbour and the count bound is {bound:.3}"
            ))),
        }
    };

    let mut connectors = 0;
    for i in 0..t {
        let members = [state.s[i].as_slice(), &state.t[i]].concat();
        let comps = host.components(&members);
        for pair in comps.windows(2) {
            let (x, y) = (pair[0][0], pair[1][0]);
            let mut common = host.adj[x].clone();
            common.intersect_with(&host.adj[y]);
            let z = pick(
                common,
                &mut used,
                &mut spent,
                format!("connector for branch set {i}"),
            )?;
            state.u[i].push(z);
            connectors += 1;
        }
    }
    let mut repairs = 0;
    for (i, j) in h.edges() {
        let xi: Vec<usize> = state.branch_set(i).into_iter().collect();
        let xj: Vec<usize> = state.branch_set(j).into_iter().collect();
        if host.touches(&xi, &host.set(&xj)) {
            continue;
        }
        let mut common = host.neighbourhood(&xi);
        common.intersect_with(&host.neighbourhood(&xj));
        let z = pick(
            common,
            &mut used,
            &mut spent,
            format!("repair for pattern edge {i}-{j}"),
        )?;
        state.u[i].push(z);
        repairs += 1;
    }
    log.push(format!(
        "stage 3: {connectors} connectors, {repairs} repairs, theta * t = {:.3}",
        params.theta() * t as f64
    ));
    Ok(())
}
