//! Constructive graph-minor toolkit.
//!
//! Dense-minor reductions with replayable traces, embedders for sparse
//! patterns, average-degree driven minor finders, a brute-force minor oracle
//! and the constant optimizer behind the drivers' thresholds.

pub mod cli;
pub mod constants;
pub mod embedding;
pub mod experiment;
pub mod generate;
pub mod graph;
pub mod model;
pub mod oracle;
pub mod pipeline;
pub mod rational;
pub mod reduction;
pub mod trace;

pub use graph::Graph;
pub use model::{validate_model, MinorModel, ModelViolation};
pub use rational::Rational;
pub use trace::ReductionTrace;
