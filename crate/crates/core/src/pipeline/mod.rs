//! End-to-end drivers: check the average-degree hypothesis, then compose
//! reductions and embedders into a minor model of the pattern in the host.
//!
//! Every model a driver returns has passed [`validate_model`] against the
//! caller's host. Recursive drivers work on reduced copies and lift the
//! model back through each reduction trace and vertex deletion.

mod heart;
mod report;

use std::collections::BTreeSet;

pub use heart::{heart_embed, HeartConfig, HeartParams, Property, StageState};
pub use report::{DriverError, DriverReport, FailureReport, Hypothesis, Outcome, Theorem};

use crate::constants;
use crate::embedding::{self, EmbedError};
use crate::graph::{degeneracy_order_2, tree_plus_edge_spanning, Graph};
use crate::model::{validate_model, MinorModel};
use crate::rational::{self, dec, Rational};
use crate::reduction::{self, DenseMinorOutcome, OutcomeKind, ReductionError};

/// Coefficient of the 2-degenerate and basic bounds.
pub const DEGEN_C: &str = "6.929";
/// Gap bound `2δ − n ≥ σk` of the Function constants.
pub const SIGMA: &str = "0.5773";
pub const PMAIN_C: &str = "6.291";
pub const GENERAL_C: &str = "3.895";

/// `(c₁, c₂)` for the dense-minor step and the `(α, β)` of the resulting
/// bound `αt + βq`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearConstants {
    pub c1: Rational,
    pub c2: Rational,
    pub alpha: Rational,
    pub beta: Rational,
}

impl LinearConstants {
    /// `7.477t + 2.375q` with `(c₁, c₂) = (3.375, 1.465)`.
    pub fn qmain() -> Self {
        LinearConstants {
            c1: dec("3.375"),
            c2: dec("1.465"),
            alpha: dec("7.477"),
            beta: dec("2.375"),
        }
    }

    /// `6.9687t + 2.484q` with `(c₁, c₂) = (3.484, 1.426)`.
    pub fn pmain_case3() -> Self {
        LinearConstants {
            c1: dec("3.484"),
            c2: dec("1.426"),
            alpha: dec("6.9687"),
            beta: dec("2.484"),
        }
    }

    /// `(aᵢ, bᵢ)` of a non-complete outcome.
    fn coefficients(&self, kind: OutcomeKind) -> (Rational, Rational) {
        let one = Rational::from_integer(1);
        let two = Rational::from_integer(2);
        match kind {
            OutcomeKind::Outcome1 => (self.c1 / two + one, two),
            OutcomeKind::Outcome2 => (two, one + one / self.c1),
            OutcomeKind::Outcome3 => (self.c2, one),
            OutcomeKind::Outcome4 => (Rational::from_integer(4) - self.c1 / two, self.c2),
            OutcomeKind::Outcome5 => unreachable!("outcome 5 is handled by subsumption"),
        }
    }
}

fn int(x: usize) -> Rational {
    Rational::from_integer(x as i64)
}

fn avg(g: &Graph) -> Option<Rational> {
    g.average_degree().ok()
}

fn internal(e: impl std::fmt::Display) -> DriverError {
    DriverError::Internal(e.to_string())
}

fn reduction_error(e: ReductionError) -> DriverError {
    DriverError::Internal(format!("reduction: {e}"))
}

/// Result of a driver stage before validation.
enum Found {
    Model(MinorModel),
    Fail(FailureReport),
}

struct Log {
    lines: Vec<String>,
}

impl Log {
    fn new() -> Self {
        Log { lines: Vec::new() }
    }

    fn at(&mut self, level: usize, line: impl AsRef<str>) {
        self.lines.push(format!("level {level}: {}", line.as_ref()));
    }
}

fn finish(
    theorem: Theorem,
    hypothesis: Hypothesis,
    found: Found,
    log: Log,
    pattern: &Graph,
    host: &Graph,
) -> Result<DriverReport, DriverError> {
    let outcome = match found {
        Found::Model(m) => {
            validate_model(pattern, host, &m).map_err(|v| {
                DriverError::Internal(format!("driver produced an invalid model: {v}"))
            })?;
            Outcome::Model(m)
        }
        Found::Fail(f) => Outcome::Failure(f),
    };
    Ok(DriverReport {
        theorem,
        hypothesis,
        outcome,
        log: log.lines,
    })
}

fn not_met(theorem: Theorem, hypothesis: Hypothesis) -> DriverReport {
    DriverReport {
        theorem,
        hypothesis,
        outcome: Outcome::HypothesisNotMet,
        log: Vec::new(),
    }
}

fn avg_hypothesis(threshold: Rational, g: &Graph) -> Hypothesis {
    Hypothesis::new("average-degree", threshold, avg(g))
}

/// Maps pattern vertex `i` to witness vertex `i` of a complete witness and
/// lifts through the witness trace.
fn subsume(outcome: &DenseMinorOutcome, t: usize) -> Result<MinorModel, DriverError> {
    let w = &outcome.witness;
    if w.n() < t || w.m() != w.n() * (w.n().saturating_sub(1)) / 2 {
        return Err(DriverError::Internal(format!(
            "K_{} witness cannot host {t} vertices",
            w.n()
        )));
    }
    let map: Vec<usize> = (0..t).collect();
    Ok(MinorModel::from_vertex_map(&map).lift(&outcome.trace))
}

fn single_vertex(g: &Graph) -> Result<Found, DriverError> {
    if g.n() == 0 {
        return Err(DriverError::Internal(
            "empty host for a one-vertex pattern".into(),
        ));
    }
    Ok(Found::Model(MinorModel::from_vertex_map(&[0])))
}

/// Embedding precondition failures are the desk-scale gaps the proofs
/// assume away; they become reports. Anything else is a bug.
fn embed_failure(stage: &str, e: EmbedError) -> Result<Found, DriverError> {
    match e {
        EmbedError::Precondition(msg) => Ok(Found::Fail(FailureReport::new(
            stage,
            vec!["embedding-precondition".into()],
            msg,
        ))),
        EmbedError::RetryExhausted { .. } => Ok(Found::Fail(FailureReport::new(
            stage,
            vec!["retry-budget".into()],
            e.to_string(),
        ))),
        EmbedError::Internal(msg) => Err(DriverError::Internal(msg)),
    }
}

/// Per-component spanning tree plus one edge; every component must contain a cycle.
pub fn spanning_unicyclic(h: &Graph) -> Result<Graph, DriverError> {
    let mut out = Graph::new(h.n());
    for comp in h.components() {
        let sub = h.induced_subgraph(&comp);
        let span = tree_plus_edge_spanning(&sub)
            .map_err(|e| DriverError::Internal(format!("component {comp:?}: {e}")))?;
        for (u, v) in span.edges() {
            out.add_edge(comp[u], comp[v]).map_err(internal)?;
        }
    }
    Ok(out)
}

/// Absorbs each division vertex of a 1-subdivision model into the branch set
/// of the lower endpoint of its edge.
pub fn absorb_subdivision(h: &Graph, model: &MinorModel) -> MinorModel {
    let t = h.n();
    let mut sets: Vec<BTreeSet<usize>> = model.branch_sets[..t].to_vec();
    for (i, (u, _)) in h.edges().enumerate() {
        sets[u].extend(model.branch_sets[t + i].iter().copied());
    }
    MinorModel::new(sets)
}

/// `k` for the 2-degenerate route: `⌈(t−2)/0.5773⌉`, raised to `t` for
/// `t ≤ 4` so that the complete outcome still subsumes the pattern.
fn degen_k(excess: i64, t: usize) -> usize {
    let k = rational::ceil_nonneg(Rational::from_integer(excess - 2) / dec(SIGMA));
    k.max(t).max(1)
}

fn degen_core(g: &Graph, h: &Graph, log: &mut Log) -> Result<Found, DriverError> {
    let t = h.n();
    if t <= 1 {
        return if t == 0 {
            Ok(Found::Model(MinorModel::new(Vec::new())))
        } else {
            single_vertex(g)
        };
    }
    let order = degeneracy_order_2(h)
        .ok_or_else(|| DriverError::Rejected("pattern is not 2-degenerate".into()))?;
    let k = degen_k(t as i64, t);
    let out = reduction::function_minor(g, k).map_err(reduction_error)?;
    log.at(
        0,
        format!(
            "function minor with k = {k}: {} on {} vertices",
            out.kind, out.n
        ),
    );
    if out.kind == OutcomeKind::Outcome5 {
        log.at(0, format!("K_{k} contains the pattern"));
        return subsume(&out, t).map(Found::Model);
    }
    log.at(
        0,
        format!(
            "2-degenerate embedding with 2delta - n = {}",
            2 * out.delta as i64 - out.n as i64
        ),
    );
    match embedding::embed_2degenerate(&out.witness, h, &order) {
        Ok(e) => Ok(Found::Model(
            MinorModel::from_vertex_map(&e.map).lift(&out.trace),
        )),
        Err(e) => embed_failure("2degen-embedding", e),
    }
}

/// Average degree at least `6.929t` forces every 2-degenerate pattern.
pub fn find_minor_2degen(g: &Graph, h: &Graph) -> Result<DriverReport, DriverError> {
    if degeneracy_order_2(h).is_none() {
        return Err(DriverError::Rejected("pattern is not 2-degenerate".into()));
    }
    let hyp = avg_hypothesis(dec(DEGEN_C) * int(h.n()), g);
    if !hyp.satisfied() {
        return Ok(not_met(Theorem::TwoDegen, hyp));
    }
    let mut log = Log::new();
    let found = degen_core(g, h, &mut log)?;
    finish(Theorem::TwoDegen, hyp, found, log, h, g)
}

/// Average degree at least `6.929(t+q)`, through the 1-subdivision.
pub fn find_minor_basic(g: &Graph, h: &Graph) -> Result<DriverReport, DriverError> {
    let sub = h.one_subdivision();
    let hyp = avg_hypothesis(dec(DEGEN_C) * int(sub.n()), g);
    if !hyp.satisfied() {
        return Ok(not_met(Theorem::Basic, hyp));
    }
    let mut log = Log::new();
    log.at(0, format!("1-subdivision has {} vertices", sub.n()));
    let found = match degen_core(g, &sub, &mut log)? {
        Found::Model(m) => {
            log.at(0, "absorb division vertices into lower endpoints");
            Found::Model(absorb_subdivision(h, &m))
        }
        f => f,
    };
    finish(Theorem::Basic, hyp, found, log, h, g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Induction {
    /// Threshold `i + 6.929q`.
    New,
    /// Threshold `t + 6.291q`.
    PMain,
}

impl Induction {
    fn threshold(self, h: &Graph) -> Rational {
        match self {
            Induction::New => int(h.isolated_vertices().count()) + dec(DEGEN_C) * int(h.m()),
            Induction::PMain => int(h.n()) + dec(PMAIN_C) * int(h.m()),
        }
    }
}

/// Combines a model of `h − removed` in `g − deleted` with explicit branch
/// sets for the removed pattern vertices.
fn combine(
    t: usize,
    rest: &MinorModel,
    pattern_old: &[usize],
    host_old: &[usize],
    fixed: Vec<(usize, BTreeSet<usize>)>,
) -> MinorModel {
    let lifted = rest.lift_through(host_old);
    let mut sets = vec![BTreeSet::new(); t];
    for (j, set) in lifted.branch_sets.into_iter().enumerate() {
        sets[pattern_old[j]] = set;
    }
    for (v, set) in fixed {
        sets[v] = set;
    }
    MinorModel::new(sets)
}

struct InductionRun {
    mode: Induction,
    seed: u64,
}

impl InductionRun {
    fn run(&self, g: &Graph, h: &Graph, level: usize, log: &mut Log) -> Result<Found, DriverError> {
        let t = h.n();
        if t == 0 {
            return Ok(Found::Model(MinorModel::new(Vec::new())));
        }
        if t == 1 {
            log.at(level, "single pattern vertex");
            return single_vertex(g);
        }
        let thr = self.mode.threshold(h);
        let (g1, trace) = reduction::minor_minimal_avg_degree(g, thr).map_err(reduction_error)?;
        log.at(
            level,
            format!(
                "minor-minimal for average degree {}: n = {}, m = {}",
                rational::format(thr),
                g1.n(),
                g1.m()
            ),
        );
        let min_deg = (rational::floor(thr / int(2)) + 1) as usize;
        if g1.min_degree() < min_deg {
            return Err(DriverError::Internal(format!(
                "minimal graph has minimum degree {} < {min_deg}",
                g1.min_degree()
            )));
        }
        let found = self.cases(&g1, h, level, log)?;
        Ok(match found {
            Found::Model(m) => Found::Model(m.lift(&trace)),
            f => f,
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse_after_deletion(
        &self,
        g1: &Graph,
        h: &Graph,
        host_drop: &BTreeSet<usize>,
        pattern_drop: &BTreeSet<usize>,
        fixed: Vec<(usize, BTreeSet<usize>)>,
        level: usize,
        log: &mut Log,
    ) -> Result<Found, DriverError> {
        let (g2, host_old) = g1.remove_vertices(host_drop);
        let (h2, pattern_old) = h.remove_vertices(pattern_drop);
        if h2.n() == 0 {
            return Ok(Found::Model(combine(
                h.n(),
                &MinorModel::new(Vec::new()),
                &[],
                &[],
                fixed,
            )));
        }
        let need = self.mode.threshold(&h2);
        let have = avg(&g2)
            .ok_or_else(|| DriverError::Internal("host became empty before the pattern".into()))?;
        if have < need {
            return Err(DriverError::Internal(format!(
                "induction step: average degree {} below {}",
                rational::format(have),
                rational::format(need)
            )));
        }
        log.at(
            level,
            format!(
                "recurse: average degree {} >= {}",
                rational::format(have),
                rational::format(need)
            ),
        );
        Ok(match self.run(&g2, &h2, level + 1, log)? {
            Found::Model(rest) => {
                Found::Model(combine(h.n(), &rest, &pattern_old, &host_old, fixed))
            }
            f => f,
        })
    }

    fn cases(
        &self,
        g1: &Graph,
        h: &Graph,
        level: usize,
        log: &mut Log,
    ) -> Result<Found, DriverError> {
        if let Some(v) = h.isolated_vertices().next() {
            let w = g1.min_degree_vertex().expect("non-empty");
            log.at(
                level,
                format!("case isolated vertex: pattern {v} at host {w}"),
            );
            return self.recurse_after_deletion(
                g1,
                h,
                &BTreeSet::from([w]),
                &BTreeSet::from([v]),
                vec![(v, BTreeSet::from([w]))],
                level,
                log,
            );
        }
        let comps = h.components();
        if let Some(comp) = comps.iter().find(|c| h.induced_subgraph(c).is_tree()) {
            let tree = h.induced_subgraph(comp);
            let emb = embedding::embed_tree(g1, &tree)
                .map_err(|e| DriverError::Internal(format!("tree case: {e}")))?;
            log.at(
                level,
                format!("case tree component of {} vertices", comp.len()),
            );
            let fixed: Vec<(usize, BTreeSet<usize>)> = comp
                .iter()
                .zip(&emb.map)
                .map(|(&v, &x)| (v, BTreeSet::from([x])))
                .collect();
            let host_drop: BTreeSet<usize> = emb.map.iter().copied().collect();
            let pattern_drop: BTreeSet<usize> = comp.iter().copied().collect();
            return self.recurse_after_deletion(
                g1,
                h,
                &host_drop,
                &pattern_drop,
                fixed,
                level,
                log,
            );
        }
        match self.mode {
            Induction::New => self.subgraph_route(g1, h, degen_k(h.m() as i64, h.n()), level, log),
            Induction::PMain => {
                let (t, q) = (int(h.n()), int(h.m()));
                let lc = LinearConstants::pmain_case3();
                if t + dec(PMAIN_C) * q >= lc.alpha * t + lc.beta * q {
                    log.at(level, "case 3: linear bound 6.9687t + 2.484q");
                    linear_core(g1, h, &lc, self.seed, level, log)
                } else {
                    let k = rational::ceil_nonneg((t + dec(PMAIN_C) * (q - int(2))) / int(4));
                    if k < h.n() {
                        return Err(DriverError::Internal(format!(
                            "case 4: k = {k} below t = {}",
                            h.n()
                        )));
                    }
                    log.at(level, format!("case 4: k = {k}"));
                    self.subgraph_route(g1, h, k, level, log)
                }
            }
        }
    }

    /// Function minor, then either `K_k` or a (≤1)-subdivision whose whole
    /// edges form the per-component tree-plus-edge spanning subgraph.
    fn subgraph_route(
        &self,
        g1: &Graph,
        h: &Graph,
        k: usize,
        level: usize,
        log: &mut Log,
    ) -> Result<Found, DriverError> {
        let out = reduction::function_minor(g1, k).map_err(reduction_error)?;
        log.at(
            level,
            format!(
                "function minor with k = {k}: {} on {} vertices",
                out.kind, out.n
            ),
        );
        if out.kind == OutcomeKind::Outcome5 {
            log.at(level, format!("K_{k} contains the pattern"));
            return subsume(&out, h.n()).map(Found::Model);
        }
        let span = spanning_unicyclic(h)?;
        log.at(
            level,
            format!(
                "subdivision embedding, {} edges subdivided",
                h.m() - span.m()
            ),
        );
        match embedding::embed_le1_subdivision_degen(&out.witness, h, &span) {
            Ok(e) => Ok(Found::Model(e.to_model().lift(&out.trace))),
            Err(e) => embed_failure("subdivision-embedding", e),
        }
    }
}

/// Average degree at least `i + 6.929q`, with `i` isolated pattern vertices.
pub fn find_minor_new(g: &Graph, h: &Graph) -> Result<DriverReport, DriverError> {
    let hyp = avg_hypothesis(Induction::New.threshold(h), g);
    if !hyp.satisfied() {
        return Ok(not_met(Theorem::New, hyp));
    }
    let mut log = Log::new();
    let found = InductionRun {
        mode: Induction::New,
        seed: 0,
    }
    .run(g, h, 0, &mut log)?;
    finish(Theorem::New, hyp, found, log, h, g)
}

/// Average degree at least `t + 6.291q`. The seed drives the randomized
/// embedding of the linear case.
pub fn find_minor_pmain(g: &Graph, h: &Graph, seed: u64) -> Result<DriverReport, DriverError> {
    let hyp = avg_hypothesis(Induction::PMain.threshold(h), g);
    if !hyp.satisfied() {
        return Ok(not_met(Theorem::PMain, hyp));
    }
    let mut log = Log::new();
    let found = InductionRun {
        mode: Induction::PMain,
        seed,
    }
    .run(g, h, 0, &mut log)?;
    finish(Theorem::PMain, hyp, found, log, h, g)
}

fn linear_core(
    g: &Graph,
    h: &Graph,
    lc: &LinearConstants,
    seed: u64,
    level: usize,
    log: &mut Log,
) -> Result<Found, DriverError> {
    let (t, q) = (h.n(), h.m());
    if t <= 1 {
        return if t == 0 {
            Ok(Found::Model(MinorModel::new(Vec::new())))
        } else {
            single_vertex(g)
        };
    }
    let bound = lc.alpha * int(t) + lc.beta * int(q);
    let k = rational::floor(bound / int(4)) as usize;
    if k < t {
        return Err(DriverError::Internal(format!("k = {k} below t = {t}")));
    }
    let out = reduction::newmader(g, k, lc.c1, lc.c2).map_err(reduction_error)?;
    log.at(
        level,
        format!(
            "dense minor with k = {k}: {} on {} vertices",
            out.kind, out.n
        ),
    );
    if out.kind == OutcomeKind::Outcome5 {
        log.at(level, format!("K_{k} contains the pattern"));
        return subsume(&out, t).map(Found::Model);
    }
    let (a, b) = lc.coefficients(out.kind);
    let lhs = (int(2) * b - a) * int(k) + int(3);
    let rhs = int(t) + (Rational::from_integer(1) - b / a) * int(q);
    if lhs < rhs {
        return Err(DriverError::Internal(format!(
            "(2b-a)k+3 = {} < t+(1-b/a)q = {}",
            rational::format(lhs),
            rational::format(rhs)
        )));
    }
    log.at(
        level,
        format!("random (<=1)-subdivision embedding, seed {seed}"),
    );
    match embedding::embed_le1_subdivision_random(&out.witness, h, seed, None) {
        Ok(e) => Ok(Found::Model(e.to_model().lift(&out.trace))),
        Err(e) => embed_failure("random-subdivision-embedding", e),
    }
}

/// Average degree at least `αt + βq` for admissible constants.
pub fn find_minor_linear(
    g: &Graph,
    h: &Graph,
    lc: &LinearConstants,
    seed: u64,
) -> Result<DriverReport, DriverError> {
    constants::check_linear_bounds(lc.c1, lc.c2, lc.alpha, lc.beta)
        .map_err(|e| DriverError::Rejected(e.to_string()))?;
    let hyp = avg_hypothesis(lc.alpha * int(h.n()) + lc.beta * int(h.m()), g);
    if !hyp.satisfied() {
        return Ok(not_met(Theorem::Linear, hyp));
    }
    let mut log = Log::new();
    let found = linear_core(g, h, lc, seed, 0, &mut log)?;
    finish(Theorem::Linear, hyp, found, log, h, g)
}

/// `3.895·√(ln d)·t`, rounded up to six decimals.
pub fn general_threshold(d: f64, t: usize) -> Rational {
    let x = rational::to_f64(dec(GENERAL_C)) * d.ln().sqrt() * t as f64;
    Rational::new((x * 1e6).ceil() as i64, 1_000_000)
}

/// Dense-pattern driver: average degree at least `3.895·√(ln d)·t` where `d`
/// is the pattern's average degree. Reduces with the Ratio constants at
/// `k = ⌈(1+ε)ℓt⌉`, then runs the randomized heart procedure on a
/// non-complete witness.
pub fn find_minor_general(
    g: &Graph,
    h: &Graph,
    config: &HeartConfig,
    seed: u64,
) -> Result<DriverReport, DriverError> {
    let t = h.n();
    let d = h
        .average_degree()
        .map_err(|e| DriverError::Rejected(e.to_string()))?;
    let d = rational::to_f64(d);
    if d <= 1.0 {
        return Err(DriverError::Rejected(format!(
            "pattern average degree {d} must exceed 1"
        )));
    }
    let params = HeartParams::new(config.lambda, config.epsilon, d)
        .map_err(|e| DriverError::Rejected(e.to_string()))?;
    let hyp = avg_hypothesis(general_threshold(d, t), g);
    if !hyp.satisfied() {
        return Ok(not_met(Theorem::General, hyp));
    }
    let mut log = Log::new();
    let ell = params.ell();
    let k = rational::ceil_nonneg((Rational::from_integer(1) + config.epsilon) * int(ell * t));
    log.at(0, format!("ell = {ell}, k = {k}"));
    let have = avg(g).expect("hypothesis holds");
    if have < int(4 * k) {
        let f = FailureReport::new(
            "general",
            vec!["average-degree-4k".into()],
            format!(
                "average degree {} is below 4k = {}; the threshold only dominates 4k for large d",
                rational::format(have),
                4 * k
            ),
        );
        return finish(Theorem::General, hyp, Found::Fail(f), log, h, g);
    }
    let out = reduction::ratio_minor(g, k).map_err(reduction_error)?;
    log.at(
        0,
        format!(
            "ratio minor: {} on {} vertices, delta = {}",
            out.kind, out.n, out.delta
        ),
    );
    let found = if out.kind == OutcomeKind::Outcome5 {
        log.at(0, format!("K_{k} contains the pattern"));
        Found::Model(subsume(&out, t)?)
    } else {
        let inner = heart_embed(&out.witness, h, &params, config, seed)?;
        log.lines
            .extend(inner.log.iter().map(|l| format!("heart {l}")));
        match inner.outcome {
            Outcome::Model(m) => Found::Model(m.lift(&out.trace)),
            Outcome::Failure(f) => Found::Fail(f),
            Outcome::HypothesisNotMet => Found::Fail(FailureReport::new(
                "glue",
                vec!["min-degree-lambda-n".into()],
                format!(
                    "witness minimum degree {} is below lambda * {}",
                    out.delta, out.n
                ),
            )),
        }
    };
    finish(Theorem::General, hyp, found, log, h, g)
}

/// Whether a dense-minor witness meets the heart procedure's `δ ≥ λn`.
pub fn meets_heart_precondition(witness: &Graph, lambda: Rational) -> bool {
    witness.n() > 0 && int(witness.min_degree()) >= lambda * int(witness.n())
}

/// Runs one driver. The linear driver uses the qMain constants; the heart
/// and general drivers take `λ`, `ε` and the retry budget from `config`.
pub fn run_driver(
    theorem: Theorem,
    g: &Graph,
    h: &Graph,
    seed: u64,
    config: &HeartConfig,
) -> Result<DriverReport, DriverError> {
    match theorem {
        Theorem::TwoDegen => find_minor_2degen(g, h),
        Theorem::Basic => find_minor_basic(g, h),
        Theorem::New => find_minor_new(g, h),
        Theorem::Linear => find_minor_linear(g, h, &LinearConstants::qmain(), seed),
        Theorem::PMain => find_minor_pmain(g, h, seed),
        Theorem::General => find_minor_general(g, h, config, seed),
        Theorem::Heart => {
            let d = h
                .average_degree()
                .map_err(|e| DriverError::Rejected(e.to_string()))?;
            let params = HeartParams::new(config.lambda, config.epsilon, rational::to_f64(d))
                .map_err(|e| DriverError::Rejected(e.to_string()))?;
            heart_embed(g, h, &params, config, seed)
        }
    }
}
