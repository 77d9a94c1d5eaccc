//! Driver reports and their line-oriented text form.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::MinorModel;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    TwoDegen,
    Basic,
    New,
    Linear,
    PMain,
    Heart,
    General,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::TwoDegen,
        Theorem::Basic,
        Theorem::New,
        Theorem::Linear,
        Theorem::PMain,
        Theorem::Heart,
        Theorem::General,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::TwoDegen => "2degen",
            Theorem::Basic => "basic",
            Theorem::New => "new",
            Theorem::Linear => "linear",
            Theorem::PMain => "pmain",
            Theorem::Heart => "heart",
            Theorem::General => "general",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| format!("unknown driver `{s}`"))
    }
}

/// The driver's hypothesis: `value ≥ threshold`. For most drivers `value` is
/// the host's average degree; for the heart procedure it is the minimum
/// degree and the threshold is `λn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    pub quantity: &'static str,
    pub threshold: Rational,
    pub value: Option<Rational>,
}

impl Hypothesis {
    pub fn new(quantity: &'static str, threshold: Rational, value: Option<Rational>) -> Self {
        Hypothesis {
            quantity,
            threshold,
            value,
        }
    }

    pub fn satisfied(&self) -> bool {
        self.value.is_some_and(|v| v >= self.threshold)
    }
}

/// Why a randomized or desk-scale run produced no model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureReport {
    pub stage: String,
    /// Names of the violated properties or preconditions, e.g. `P4`, `Q1`.
    pub violated: Vec<String>,
    pub detail: String,
}

impl FailureReport {
    pub fn new(stage: impl Into<String>, violated: Vec<String>, detail: impl Into<String>) -> Self {
        FailureReport {
            stage: stage.into(),
            violated,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Model(MinorModel),
    HypothesisNotMet,
    Failure(FailureReport),
}

impl Outcome {
    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::Model(_) => "model",
            Outcome::HypothesisNotMet => "hypothesis-not-met",
            Outcome::Failure(_) => "failure",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DriverReport {
    pub theorem: Theorem,
    pub hypothesis: Hypothesis,
    pub outcome: Outcome,
    /// One line per case or lemma applied, prefixed by recursion level.
    pub log: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DriverError {
    #[error("input rejected: {0}")]
    Rejected(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl DriverReport {
    pub fn model(&self) -> Option<&MinorModel> {
        match &self.outcome {
            Outcome::Model(m) => Some(m),
            _ => None,
        }
    }

    pub fn failure(&self) -> Option<&FailureReport> {
        match &self.outcome {
            Outcome::Failure(f) => Some(f),
            _ => None,
        }
    }

    /// 0 for a model, 1 when the hypothesis fails, 2 for a failure report.
    pub fn exit_code(&self) -> i32 {
        match self.outcome {
            Outcome::Model(_) => 0,
            Outcome::HypothesisNotMet => 1,
            Outcome::Failure(_) => 2,
        }
    }

    /// ```text
    /// theorem pmain
    /// hypothesis average-degree >= 43746/1000
    /// value 44
    /// satisfied true
    /// outcome model
    /// step level 0: ...
    /// model
    /// 0: 3 7
    /// ...
    /// ```
    pub fn to_text(&self) -> String {
        let mut out = format!("theorem {}\n", self.theorem);
        out += &format!(
            "hypothesis {} >= {}\n",
            self.hypothesis.quantity,
            rational::format(self.hypothesis.threshold)
        );
        match self.hypothesis.value {
            Some(v) => out += &format!("value {}\n", rational::format(v)),
            None => out += "value undefined\n",
        }
        out += &format!("satisfied {}\n", self.hypothesis.satisfied());
        out += &format!("outcome {}\n", self.outcome.tag());
        if let Outcome::Failure(f) = &self.outcome {
            out += &format!("failure-stage {}\n", f.stage);
            out += &format!("violated {}\n", f.violated.join(" "));
            for line in f.detail.lines() {
                out += &format!("detail {line}\n");
            }
        }
        for step in &self.log {
            out += &format!("step {step}\n");
        }
        if let Outcome::Model(m) = &self.outcome {
            out += "model\n";
            out += &m.to_text();
        }
        out
    }
}
