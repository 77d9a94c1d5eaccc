//! Coefficients of the four non-complete dense-minor outcomes and the
//! `(α, β)` trade-off they induce.
//!
//! For `c₁ > 2`, `c₂ > 1` outcome `i` yields a minor with at most `aᵢk + 1`
//! vertices and minimum degree at least `bᵢk`:
//!
//! | i | aᵢ        | bᵢ       |
//! |---|-----------|----------|
//! | 1 | c₁/2 + 1  | 2        |
//! | 2 | 2         | 1 + 1/c₁ |
//! | 3 | c₂        | 1        |
//! | 4 | 4 − c₁/2  | c₂       |
//!
//! Search runs in `f64`; every reported point is re-derived with
//! `BigRational` arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstantsError {
    #[error("infeasible at outcome {outcome}: {reason}")]
    Infeasible { outcome: usize, reason: String },
    #[error("need c1 > 2 and c2 > 1")]
    OutOfDomain,
    #[error("no feasible point satisfies the cap")]
    EmptyRegion,
    #[error("(alpha, beta) = ({alpha}, {beta}) is below the minimum ({min_alpha}, {min_beta})")]
    BoundsTooSmall {
        alpha: String,
        beta: String,
        min_alpha: String,
        min_beta: String,
    },
}

fn big(x: Rational) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Exact coefficients `(aᵢ, bᵢ)` for `i = 1..4`.
pub fn coefficients(c1: &BigRational, c2: &BigRational) -> [(BigRational, BigRational); 4] {
    let half = c1 / int(2);
    [
        (&half + int(1), int(2)),
        (int(2), int(1) + int(1) / c1),
        (c2.clone(), int(1)),
        (int(4) - &half, c2.clone()),
    ]
}

/// Checks `0 < 2bᵢ − aᵢ ≤ 3` and `bᵢ < aᵢ` for every outcome.
pub fn check_structure(c1: &BigRational, c2: &BigRational) -> Result<(), ConstantsError> {
    if *c1 <= int(2) || *c2 <= int(1) {
        return Err(ConstantsError::OutOfDomain);
    }
    for (i, (a, b)) in coefficients(c1, c2).iter().enumerate() {
        let gap = b * int(2) - a;
        if gap <= BigRational::zero() || gap > int(3) {
            return Err(ConstantsError::Infeasible {
                outcome: i + 1,
                reason: format!("2b - a = {} is outside (0, 3]", to_f64(&gap)),
            });
        }
        if b >= a {
            return Err(ConstantsError::Infeasible {
                outcome: i + 1,
                reason: "b >= a".into(),
            });
        }
    }
    Ok(())
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `(c₁, c₂)` with its minimal feasible `(α, β)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaderConstants {
    pub c1: BigRational,
    pub c2: BigRational,
    pub alpha: BigRational,
    pub beta: BigRational,
}

impl MaderConstants {
    pub fn coefficients(&self) -> [(BigRational, BigRational); 4] {
        coefficients(&self.c1, &self.c2)
    }

    /// `minᵢ bᵢ/aᵢ`.
    pub fn min_ratio(&self) -> BigRational {
        self.coefficients()
            .iter()
            .map(|(a, b)| b / a)
            .min()
            .expect("four outcomes")
    }

    /// `minᵢ (2bᵢ − aᵢ)`.
    pub fn min_gap(&self) -> BigRational {
        self.coefficients()
            .iter()
            .map(|(a, b)| b * int(2) - a)
            .min()
            .expect("four outcomes")
    }

    /// Whether the given `(α, β)` satisfy the lemma's inequalities here.
    pub fn admits(&self, alpha: &BigRational, beta: &BigRational) -> bool {
        *alpha >= self.alpha && *beta >= self.beta
    }

    pub fn row(&self) -> ConstantsRow {
        let coeffs = self.coefficients();
        let mut ab = [0.0; 8];
        for (i, (a, b)) in coeffs.iter().enumerate() {
            ab[2 * i] = to_f64(a);
            ab[2 * i + 1] = to_f64(b);
        }
        ConstantsRow {
            c1: to_f64(&self.c1),
            c2: to_f64(&self.c2),
            ab,
            alpha: to_f64(&self.alpha),
            beta: to_f64(&self.beta),
            min_ratio: to_f64(&self.min_ratio()),
            min_gap: to_f64(&self.min_gap()),
        }
    }
}

/// `α = max(4, maxᵢ 4/(2bᵢ−aᵢ))` and `β = maxᵢ 4(aᵢ−bᵢ)/(aᵢ(2bᵢ−aᵢ))`, exactly.
pub fn derive_exact(c1: BigRational, c2: BigRational) -> Result<MaderConstants, ConstantsError> {
    check_structure(&c1, &c2)?;
    let mut alpha = int(4);
    let mut beta: Option<BigRational> = None;
    for (a, b) in coefficients(&c1, &c2) {
        let gap = &b * int(2) - &a;
        alpha = alpha.max(int(4) / &gap);
        let bi = int(4) * (&a - &b) / (&a * &gap);
        beta = Some(match beta {
            Some(x) => x.max(bi),
            None => bi,
        });
    }
    Ok(MaderConstants {
        c1,
        c2,
        alpha,
        beta: beta.expect("four outcomes"),
    })
}

pub fn derive(c1: Rational, c2: Rational) -> Result<MaderConstants, ConstantsError> {
    derive_exact(big(c1), big(c2))
}

/// Checks that `(α, β)` is admissible for `(c₁, c₂)`.
pub fn check_linear_bounds(
    c1: Rational,
    c2: Rational,
    alpha: Rational,
    beta: Rational,
) -> Result<MaderConstants, ConstantsError> {
    let m = derive(c1, c2)?;
    if !m.admits(&big(alpha), &big(beta)) {
        return Err(ConstantsError::BoundsTooSmall {
            alpha: rational::format(alpha),
            beta: rational::format(beta),
            min_alpha: format!("{:.6}", to_f64(&m.alpha)),
            min_beta: format!("{:.6}", to_f64(&m.beta)),
        });
    }
    Ok(m)
}

/// `f64` image of the exact formulas, used only by the search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eval {
    pub alpha: f64,
    pub beta: f64,
    pub min_ratio: f64,
    pub min_gap: f64,
}

pub fn evaluate(c1: f64, c2: f64) -> Option<Eval> {
    if c1 <= 2.0 || c2 <= 1.0 {
        return None;
    }
    let coeffs = [
        (c1 / 2.0 + 1.0, 2.0),
        (2.0, 1.0 + 1.0 / c1),
        (c2, 1.0),
        (4.0 - c1 / 2.0, c2),
    ];
    let mut e = Eval {
        alpha: 4.0,
        beta: f64::NEG_INFINITY,
        min_ratio: f64::INFINITY,
        min_gap: f64::INFINITY,
    };
    for (a, b) in coeffs {
        let gap = 2.0 * b - a;
        if gap <= 0.0 || gap > 3.0 || b >= a {
            return None;
        }
        e.alpha = e.alpha.max(4.0 / gap);
        e.beta = e.beta.max(4.0 * (a - b) / (a * gap));
        e.min_ratio = e.min_ratio.min(b / a);
        e.min_gap = e.min_gap.min(gap);
    }
    Some(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    MinBeta,
    MinAlpha,
    MaxMinRatio,
    MaxMinGap,
}

impl Objective {
    /// Value to minimise, or `None` when the cap excludes the point. The cap
    /// bounds α for min-beta, β for min-alpha, and is a floor on the min-gap
    /// (resp. min-ratio) for max-min-ratio (resp. max-min-gap).
    fn score(self, e: &Eval, cap: Option<f64>) -> Option<f64> {
        let (score, ok) = match self {
            Objective::MinBeta => (e.beta, cap.is_none_or(|c| e.alpha <= c)),
            Objective::MinAlpha => (e.alpha, cap.is_none_or(|c| e.beta <= c)),
            Objective::MaxMinRatio => (-e.min_ratio, cap.is_none_or(|c| e.min_gap >= c)),
            Objective::MaxMinGap => (-e.min_gap, cap.is_none_or(|c| e.min_ratio >= c)),
        };
        ok.then_some(score)
    }
}

impl FromStr for Objective {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min-beta" => Ok(Objective::MinBeta),
            "min-alpha" => Ok(Objective::MinAlpha),
            "max-min-ratio" => Ok(Objective::MaxMinRatio),
            "max-min-gap" => Ok(Objective::MaxMinGap),
            other => Err(format!("unknown objective `{other}`")),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::MinBeta => "min-beta",
            Objective::MinAlpha => "min-alpha",
            Objective::MaxMinRatio => "max-min-ratio",
            Objective::MaxMinGap => "max-min-gap",
        })
    }
}

const C1_RANGE: (f64, f64) = (2.0, 6.0);
const C2_RANGE: (f64, f64) = (1.0, 3.0);
const COARSE_STEP: f64 = 0.01;
const REFINEMENTS: usize = 5;
/// Half-width of each refinement window, in units of the new step.
const WINDOW: i64 = 10;
const MAX_MOVES: usize = 1_000;

#[derive(Debug, Clone, Copy)]
struct Candidate {
    score: f64,
    c1: f64,
    c2: f64,
}

/// Total order: lower score first, then smaller `c₁`, then smaller `c₂`.
fn better(x: &Candidate, y: &Candidate) -> Ordering {
    x.score
        .total_cmp(&y.score)
        .then(x.c1.total_cmp(&y.c1))
        .then(x.c2.total_cmp(&y.c2))
}

fn best_of(points: Vec<(f64, f64)>, objective: Objective, cap: Option<f64>) -> Option<Candidate> {
    points
        .into_par_iter()
        .filter_map(|(c1, c2)| {
            let e = evaluate(c1, c2)?;
            objective
                .score(&e, cap)
                .map(|score| Candidate { score, c1, c2 })
        })
        .min_by(better)
}

/// Rounds to the grid of the given decimal step so grid points are exact
/// decimals rather than accumulated sums.
fn snap(x: f64, decimals: i32) -> f64 {
    let s = 10f64.powi(decimals);
    (x * s).round() / s
}

/// Result of [`optimize`]: the exact constants at the best point plus the
/// search's `f64` score.
#[derive(Debug, Clone)]
pub struct Optimum {
    pub objective: Objective,
    pub constants: MaderConstants,
    pub evaluations: usize,
}

/// Grid search on `(2, 6] × (1, 3]` at step `10⁻²`, then five rounds of
/// 10× refinement on a `±10`-step window that follows the incumbent. Ties go to
/// smaller `c₁`; the result is the same for any thread count.
pub fn optimize(objective: Objective, cap: Option<f64>) -> Result<Optimum, ConstantsError> {
    let steps1 = ((C1_RANGE.1 - C1_RANGE.0) / COARSE_STEP).round() as i64;
    let steps2 = ((C2_RANGE.1 - C2_RANGE.0) / COARSE_STEP).round() as i64;
    let coarse: Vec<(f64, f64)> = (1..=steps1)
        .flat_map(|i| (1..=steps2).map(move |j| (i, j)))
        .map(|(i, j)| {
            (
                snap(C1_RANGE.0 + i as f64 * COARSE_STEP, 2),
                snap(C2_RANGE.0 + j as f64 * COARSE_STEP, 2),
            )
        })
        .collect();
    let mut evaluations = coarse.len();
    let mut best = best_of(coarse, objective, cap).ok_or(ConstantsError::EmptyRegion)?;
    let mut step = COARSE_STEP;
    for round in 1..=REFINEMENTS {
        step /= 10.0;
        let decimals = 2 + round as i32;
        // Re-centre the window until the incumbent stops moving, so a ridge
        // longer than the window can still be followed at this resolution.
        for _ in 0..MAX_MOVES {
            let window: Vec<(f64, f64)> = (-WINDOW..=WINDOW)
                .flat_map(|i| (-WINDOW..=WINDOW).map(move |j| (i, j)))
                .map(|(i, j)| {
                    (
                        snap(best.c1 + i as f64 * step, decimals),
                        snap(best.c2 + j as f64 * step, decimals),
                    )
                })
                .filter(|&(c1, c2)| {
                    c1 > C1_RANGE.0 && c1 <= C1_RANGE.1 && c2 > C2_RANGE.0 && c2 <= C2_RANGE.1
                })
                .collect();
            evaluations += window.len();
            match best_of(window, objective, cap) {
                Some(c) if better(&c, &best) == Ordering::Less => best = c,
                _ => break,
            }
        }
    }
    let c1 = rational::from_f64_decimal(best.c1).map_err(|_| ConstantsError::OutOfDomain)?;
    let c2 = rational::from_f64_decimal(best.c2).map_err(|_| ConstantsError::OutOfDomain)?;
    let constants = derive(c1, c2)?;
    Ok(Optimum {
        objective,
        constants,
        evaluations,
    })
}

/// One table row in `f64`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ConstantsRow {
    pub c1: f64,
    pub c2: f64,
    /// `a₁, b₁, …, a₄, b₄`.
    pub ab: [f64; 8],
    pub alpha: f64,
    pub beta: f64,
    pub min_ratio: f64,
    pub min_gap: f64,
}

const HEADER: [&str; 14] = [
    "c1",
    "c2",
    "a1",
    "b1",
    "a2",
    "b2",
    "a3",
    "b3",
    "a4",
    "b4",
    "alpha",
    "beta",
    "min_ratio",
    "min_gap",
];

impl ConstantsRow {
    fn cells(&self) -> Vec<String> {
        let mut v = vec![format!("{:.6}", self.c1), format!("{:.6}", self.c2)];
        v.extend(self.ab.iter().map(|x| format!("{x:.6}")));
        v.extend(
            [self.alpha, self.beta, self.min_ratio, self.min_gap]
                .iter()
                .map(|x| format!("{x:.6}")),
        );
        v
    }
}

/// Aligned text table.
pub fn format_table(rows: &[ConstantsRow]) -> String {
    let body: Vec<Vec<String>> = rows.iter().map(ConstantsRow::cells).collect();
    let widths: Vec<usize> = (0..HEADER.len())
        .map(|i| {
            body.iter()
                .map(|r| r[i].len())
                .chain([HEADER[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut out = line(HEADER.to_vec());
    out.push('\n');
    for r in &body {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

pub fn format_csv(rows: &[ConstantsRow]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record(r.cells())?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
