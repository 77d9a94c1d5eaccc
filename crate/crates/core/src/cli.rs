//! Command-line front end.
//!
//! Exit codes: 0 success or model found, 1 hypothesis not met or no minor,
//! 2 randomized failure or exhausted budget, 3 input error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::constants::{self, format_csv, format_table, ConstantsRow, Objective};
use crate::embedding::{self, EmbedError, VertexEmbedding};
use crate::experiment::{self, ExperimentSpec};
use crate::generate;
use crate::graph::{degeneracy_order_2, parse_edge_list, write_edge_list, Graph};
use crate::model::{validate_model, MinorModel};
use crate::oracle::{self, OracleBudget, OracleOutcome};
use crate::pipeline::{run_driver, DriverError, HeartConfig, Theorem};
use crate::rational::{self, Rational};
use crate::reduction::{self, ReductionError};
use crate::trace::ReductionTrace;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "minorforge",
    version,
    about = "Constructive graph-minor toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Graph arguments accept an edge-list file or, when no such file exists, a
/// generator spec such as `complete:45` or `gnp:100,0.5,1`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a host graph to a dense minor.
    Reduce {
        #[arg(value_enum)]
        op: ReduceOp,
        #[arg(long)]
        host: String,
        /// Average degree for `avg-degree`, e.g. `5` or `9/2`.
        #[arg(long)]
        d: Option<String>,
        /// Target clique size for `xk`, `newmader`, `ratio` and `function`.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        c1: Option<String>,
        #[arg(long)]
        c2: Option<String>,
        /// Keep the chosen vertex in the `dense` neighbourhood.
        #[arg(long)]
        closed: bool,
        /// Also print the reduction trace.
        #[arg(long)]
        trace: bool,
    },
    /// Embed a sparse pattern as a subgraph or (≤1)-subdivision.
    Embed {
        #[arg(value_enum)]
        kind: EmbedKind,
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run one minor-finding driver and print its report.
    FindMinor {
        /// One of 2degen, basic, new, linear, pmain, general, heart.
        driver: String,
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        epsilon: Option<String>,
        /// Resamples per randomized stage.
        #[arg(long)]
        retries: Option<usize>,
        /// Reject heart inputs violating the proof's size assumptions.
        #[arg(long)]
        enforce_assumptions: bool,
    },
    /// Exact brute-force minor test.
    Oracle {
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        max_expansions: Option<u64>,
        #[arg(long)]
        max_host: Option<usize>,
        #[arg(long)]
        max_pattern: Option<usize>,
    },
    /// Validate a minor model file.
    CheckModel {
        model: PathBuf,
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
    },
    /// Linear-bound constants.
    Constants {
        #[command(subcommand)]
        action: ConstantsAction,
    },
    /// Run an experiment spec and write its CSV.
    Experiment { spec: PathBuf },
    /// Print a generated graph as an edge list.
    Gen {
        /// Generator spec, e.g. `disjoint-triangles:2`.
        family: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReduceOp {
    AvgDegree,
    Dense,
    Xk,
    Newmader,
    Ratio,
    Function,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EmbedKind {
    Tree,
    #[value(name = "2degen")]
    TwoDegen,
    Le1sub,
}

#[derive(Debug, Subcommand)]
pub enum ConstantsAction {
    /// Coefficients and `(α, β)` for a given `(c₁, c₂)`.
    Derive {
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[arg(long)]
        csv: bool,
    },
    /// Grid search plus refinement for one objective.
    Optimize {
        /// min-beta, min-alpha, max-min-ratio or max-min-gap.
        objective: String,
        /// Upper bound on α during the search.
        #[arg(long)]
        alpha_cap: Option<f64>,
        #[arg(long)]
        csv: bool,
    },
}

/// An error carrying its exit code.
struct Exit(i32, String);

type CliResult = Result<i32, Exit>;

fn input(msg: impl Into<String>) -> Exit {
    Exit(EXIT_INPUT, msg.into())
}

fn load_graph(arg: &str) -> Result<Graph, Exit> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| input(format!("{arg}: {e}")))?;
        return parse_edge_list(&text)
            .map_err(|e| input(format!("{arg}:{}: {}", e.line, e.message)));
    }
    generate::from_spec(arg).map_err(|e| {
        input(format!(
            "{arg}: no such file, and not a generator spec ({e})"
        ))
    })
}

fn rational_arg(name: &str, value: Option<&String>) -> Result<Rational, Exit> {
    let v = value.ok_or_else(|| input(format!("--{name} is required")))?;
    rational::parse_fraction_or_decimal(v).map_err(|e| input(format!("--{name}: {e}")))
}

fn reduction_exit(e: ReductionError) -> Exit {
    match e {
        ReductionError::Precondition(m) => {
            Exit(EXIT_NEGATIVE, format!("precondition not met: {m}"))
        }
        ReductionError::Internal(m) => Exit(EXIT_FAILURE, format!("internal error: {m}")),
    }
}

fn write_trace(out: &mut dyn Write, trace: &ReductionTrace) -> std::io::Result<()> {
    for step in &trace.steps {
        writeln!(out, "# step {step:?}")?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_reduce(
    out: &mut dyn Write,
    op: ReduceOp,
    host: &str,
    d: Option<&String>,
    k: Option<usize>,
    c: (Option<&String>, Option<&String>),
    closed: bool,
    show_trace: bool,
) -> CliResult {
    let g = load_graph(host)?;
    let need_k = || k.ok_or_else(|| input("--k is required"));
    let (graph, trace, summary) = match op {
        ReduceOp::AvgDegree => {
            let d = rational_arg("d", d)?;
            let (r, t) = reduction::minor_minimal_avg_degree(&g, d).map_err(reduction_exit)?;
            (
                r,
                t,
                format!(
                    "minor-minimal for average degree >= {}",
                    rational::format(d)
                ),
            )
        }
        ReduceOp::Dense => {
            let (r, t) = reduction::dense_minor(&g, closed).map_err(reduction_exit)?;
            (r, t, format!("dense minor (closed = {closed})"))
        }
        ReduceOp::Xk => {
            let k = need_k()?;
            let (r, t) = reduction::minor_minimal_xk(&g, k).map_err(reduction_exit)?;
            (r, t, format!("minor-minimal in X_{k}"))
        }
        ReduceOp::Newmader | ReduceOp::Ratio | ReduceOp::Function => {
            let k = need_k()?;
            let o = match op {
                ReduceOp::Newmader => {
                    reduction::newmader(&g, k, rational_arg("c1", c.0)?, rational_arg("c2", c.1)?)
                        .map_err(reduction_exit)?
                }
                ReduceOp::Ratio => reduction::ratio_minor(&g, k).map_err(reduction_exit)?,
                _ => reduction::function_minor(&g, k).map_err(reduction_exit)?,
            };
            let summary = format!(
                "{} with n = {}, delta = {}, k = {}",
                o.kind, o.n, o.delta, o.k
            );
            (o.witness, o.trace, summary)
        }
    };
    let io = |e: std::io::Error| Exit(EXIT_INPUT, e.to_string());
    writeln!(out, "# {summary}").map_err(io)?;
    if show_trace {
        write_trace(out, &trace).map_err(io)?;
    }
    write!(out, "{}", write_edge_list(&graph)).map_err(io)?;
    Ok(EXIT_OK)
}

fn write_embedding(out: &mut dyn Write, e: &VertexEmbedding) -> std::io::Result<()> {
    for (i, v) in e.map.iter().enumerate() {
        writeln!(out, "{i} -> {v}")?;
    }
    for ((a, b), x) in &e.division {
        writeln!(out, "edge {a} {b} via {x}")?;
    }
    writeln!(out, "model")?;
    write!(out, "{}", e.to_model().to_text())
}

fn cmd_embed(
    out: &mut dyn Write,
    kind: EmbedKind,
    host: &str,
    pattern: &str,
    seed: u64,
) -> CliResult {
    let g = load_graph(host)?;
    let h = load_graph(pattern)?;
    let result = match kind {
        EmbedKind::Tree => embedding::embed_tree(&g, &h),
        EmbedKind::TwoDegen => {
            let order = degeneracy_order_2(&h)
                .ok_or_else(|| input(format!("{pattern}: pattern is not 2-degenerate")))?;
            embedding::embed_2degenerate(&g, &h, &order)
        }
        EmbedKind::Le1sub => embedding::embed_le1_subdivision_random(&g, &h, seed, None),
    };
    match result {
        Ok(e) => {
            write_embedding(out, &e).map_err(|e| input(e.to_string()))?;
            Ok(EXIT_OK)
        }
        Err(EmbedError::Precondition(m)) => {
            Err(Exit(EXIT_NEGATIVE, format!("precondition not met: {m}")))
        }
        Err(e @ EmbedError::RetryExhausted { .. }) => Err(Exit(EXIT_FAILURE, e.to_string())),
        Err(EmbedError::Internal(m)) => Err(Exit(EXIT_FAILURE, format!("internal error: {m}"))),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_find_minor(
    out: &mut dyn Write,
    driver: &str,
    host: &str,
    pattern: &str,
    seed: u64,
    lambda: Option<&String>,
    epsilon: Option<&String>,
    retries: Option<usize>,
    enforce: bool,
) -> CliResult {
    let theorem: Theorem = driver.parse().map_err(input)?;
    let g = load_graph(host)?;
    let h = load_graph(pattern)?;
    let mut config = HeartConfig {
        enforce_assumptions: enforce,
        ..HeartConfig::default()
    };
    if lambda.is_some() {
        config.lambda = rational_arg("lambda", lambda)?;
    }
    if epsilon.is_some() {
        config.epsilon = rational_arg("epsilon", epsilon)?;
    }
    if let Some(r) = retries {
        config.retries = r;
    }
    match run_driver(theorem, &g, &h, seed, &config) {
        Ok(report) => {
            write!(out, "{}", report.to_text()).map_err(|e| input(e.to_string()))?;
            Ok(report.exit_code())
        }
        Err(DriverError::Rejected(m)) => Err(input(format!("input rejected: {m}"))),
        Err(DriverError::Internal(m)) => Err(Exit(EXIT_FAILURE, format!("internal error: {m}"))),
    }
}

fn cmd_oracle(out: &mut dyn Write, host: &str, pattern: &str, budget: OracleBudget) -> CliResult {
    let g = load_graph(host)?;
    let h = load_graph(pattern)?;
    let outcome =
        oracle::has_minor_bruteforce(&g, &h, &budget).map_err(|e| input(e.to_string()))?;
    let io = |e: std::io::Error| input(e.to_string());
    writeln!(out, "{}", outcome.tag()).map_err(io)?;
    Ok(match outcome {
        OracleOutcome::Model(m) => {
            write!(out, "{}", m.to_text()).map_err(io)?;
            EXIT_OK
        }
        OracleOutcome::NoMinor => EXIT_NEGATIVE,
        OracleOutcome::BudgetExceeded { expansions } => {
            writeln!(out, "expansions {expansions}").map_err(io)?;
            EXIT_FAILURE
        }
    })
}

fn cmd_check_model(out: &mut dyn Write, model: &Path, host: &str, pattern: &str) -> CliResult {
    let g = load_graph(host)?;
    let h = load_graph(pattern)?;
    let text =
        std::fs::read_to_string(model).map_err(|e| input(format!("{}: {e}", model.display())))?;
    let m = MinorModel::from_text(&text)
        .map_err(|e| input(format!("{}:{}: {}", model.display(), e.line, e.message)))?;
    match validate_model(&h, &g, &m) {
        Ok(()) => {
            writeln!(out, "valid").map_err(|e| input(e.to_string()))?;
            Ok(EXIT_OK)
        }
        Err(v) => Err(input(format!("{}: invalid model: {v}", model.display()))),
    }
}

fn write_rows(out: &mut dyn Write, rows: &[ConstantsRow], csv: bool) -> CliResult {
    let text = if csv {
        format_csv(rows).map_err(|e| input(e.to_string()))?
    } else {
        format_table(rows)
    };
    write!(out, "{text}").map_err(|e| input(e.to_string()))?;
    Ok(EXIT_OK)
}

fn cmd_constants(out: &mut dyn Write, action: &ConstantsAction) -> CliResult {
    match action {
        ConstantsAction::Derive { c1, c2, csv } => {
            let c1 = rational_arg("c1", Some(c1))?;
            let c2 = rational_arg("c2", Some(c2))?;
            let mc = constants::derive(c1, c2).map_err(|e| Exit(EXIT_NEGATIVE, e.to_string()))?;
            write_rows(out, &[mc.row()], *csv)
        }
        ConstantsAction::Optimize {
            objective,
            alpha_cap,
            csv,
        } => {
            let objective: Objective = objective.parse().map_err(input)?;
            let best = constants::optimize(objective, *alpha_cap)
                .map_err(|e| Exit(EXIT_NEGATIVE, e.to_string()))?;
            writeln!(
                out,
                "# {} after {} evaluations",
                best.objective, best.evaluations
            )
            .map_err(|e| input(e.to_string()))?;
            write_rows(out, &[best.constants.row()], *csv)
        }
    }
}

fn cmd_experiment(out: &mut dyn Write, spec: &Path) -> CliResult {
    let (spec, base) = ExperimentSpec::load(spec).map_err(|e| input(e.to_string()))?;
    let (path, rows) = experiment::run_to_file(&spec, &base).map_err(|e| input(e.to_string()))?;
    writeln!(out, "wrote {} rows to {}", rows.len(), path.display())
        .map_err(|e| input(e.to_string()))?;
    Ok(EXIT_OK)
}

fn cmd_gen(out: &mut dyn Write, family: &str, path: Option<&PathBuf>) -> CliResult {
    let g = generate::from_spec(family).map_err(|e| input(e.to_string()))?;
    let text = write_edge_list(&g);
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display())))?,
        None => write!(out, "{text}").map_err(|e| input(e.to_string()))?,
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Diagnostics go to `err`.
pub fn cli_main<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Reduce {
            op,
            host,
            d,
            k,
            c1,
            c2,
            closed,
            trace,
        } => cmd_reduce(
            out,
            *op,
            host,
            d.as_ref(),
            *k,
            (c1.as_ref(), c2.as_ref()),
            *closed,
            *trace,
        ),
        Command::Embed {
            kind,
            host,
            pattern,
            seed,
        } => cmd_embed(out, *kind, host, pattern, *seed),
        Command::FindMinor {
            driver,
            host,
            pattern,
            seed,
            lambda,
            epsilon,
            retries,
            enforce_assumptions,
        } => cmd_find_minor(
            out,
            driver,
            host,
            pattern,
            *seed,
            lambda.as_ref(),
            epsilon.as_ref(),
            *retries,
            *enforce_assumptions,
        ),
        Command::Oracle {
            host,
            pattern,
            max_expansions,
            max_host,
            max_pattern,
        } => {
            let d = OracleBudget::default();
            let budget = OracleBudget {
                max_host: max_host.unwrap_or(d.max_host),
                max_pattern: max_pattern.unwrap_or(d.max_pattern),
                max_expansions: max_expansions.unwrap_or(d.max_expansions),
            };
            cmd_oracle(out, host, pattern, budget)
        }
        Command::CheckModel {
            model,
            host,
            pattern,
        } => cmd_check_model(out, model, host, pattern),
        Command::Constants { action } => cmd_constants(out, action),
        Command::Experiment { spec } => cmd_experiment(out, spec),
        Command::Gen { family, out: path } => cmd_gen(out, family, path.as_ref()),
    };
    match result {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli_main(
            std::iter::once("minorforge").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn find_minor_pmain_on_complete_host() {
        let (code, out, _) = run(&[
            "find-minor",
            "pmain",
            "--host",
            "complete:45",
            "--pattern",
            "disjoint-triangles:2",
            "--seed",
            "7",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("outcome model\n") && out.contains("\nmodel\n"));
    }

    #[test]
    fn hypothesis_and_input_codes() {
        let (code, out, _) = run(&[
            "find-minor",
            "pmain",
            "--host",
            "complete:44",
            "--pattern",
            "disjoint-triangles:2",
        ]);
        assert_eq!(code, 1, "{out}");
        let (code, _, err) = run(&[
            "find-minor",
            "nope",
            "--host",
            "complete:4",
            "--pattern",
            "path:2",
        ]);
        assert_eq!(code, 3);
        assert!(err.contains("unknown driver"));
        let (code, _, _) = run(&["bogus"]);
        assert_eq!(code, 3);
    }

    #[test]
    fn constants_derive_row() {
        let (code, out, _) = run(&[
            "constants",
            "derive",
            "--c1",
            "3.375",
            "--c2",
            "1.465",
            "--csv",
        ]);
        assert_eq!(code, 0);
        let row: Vec<f64> = out
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .map(|c| c.parse().unwrap())
            .collect();
        assert!(
            (row[10] - 7.477).abs() < 1e-3 && (row[11] - 2.375).abs() < 1e-3,
            "{out}"
        );
    }

    #[test]
    fn oracle_codes() {
        assert_eq!(
            run(&["oracle", "--host", "petersen", "--pattern", "complete:5"]).0,
            0
        );
        assert_eq!(
            run(&["oracle", "--host", "path:6", "--pattern", "cycle:3"]).0,
            1
        );
        assert_eq!(
            run(&[
                "oracle",
                "--host",
                "petersen",
                "--pattern",
                "complete:6",
                "--max-expansions",
                "5"
            ])
            .0,
            2
        );
        assert_eq!(
            run(&["oracle", "--host", "complete:20", "--pattern", "complete:3"]).0,
            3
        );
    }

    #[test]
    fn reduce_and_embed() {
        let (code, out, _) = run(&[
            "reduce",
            "newmader",
            "--host",
            "complete:30",
            "--k",
            "6",
            "--c1",
            "3.375",
            "--c2",
            "1.465",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("# outcome5"), "{out}");
        let (code, out, _) = run(&[
            "embed",
            "tree",
            "--host",
            "complete:6",
            "--pattern",
            "star:3",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("model\n"));
        let (code, _, _) = run(&[
            "embed",
            "2degen",
            "--host",
            "complete:5",
            "--pattern",
            "complete:4",
        ]);
        assert_eq!(code, 3);
    }
}
