use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use bpalign::formats;
use bpalign::report::{Metrics, NormalizedScores, RunReport};
use bpalign_core::eval;
use bpalign_core::{solve, FillMode, SolverConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Sparse network alignment via max-product belief propagation.
#[derive(Parser)]
#[command(name = "bpalign", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Align two graphs over a candidate support and write the mapping.
    Solve(SolveArgs),
    /// Score a mapping against a ground truth (and optionally the instance).
    Evaluate(EvaluateArgs),
    /// Chain mapping files into an end-to-end correspondence.
    Compose(ComposeArgs),
}

#[derive(Args)]
struct ProblemArgs {
    /// Graph file for side A (`n <count>` header, one `u v` edge per line).
    #[arg(long, value_name = "FILE")]
    graph_a: PathBuf,
    /// Graph file for side B.
    #[arg(long, value_name = "FILE")]
    graph_b: PathBuf,
    /// Candidate file (`i i' sigma_v` per line).
    #[arg(long, value_name = "FILE")]
    candidates: PathBuf,
    /// Optional square weight file (`i i' j j' w` per line); unlisted
    /// overlaps weigh 1.
    #[arg(long, value_name = "FILE")]
    square_weights: Option<PathBuf>,
    /// Trade-off between node similarity (1) and edge overlap (0).
    #[arg(long, default_value_t = 0.75)]
    alpha: f64,
    /// Penalty subtracted from every raw node similarity.
    #[arg(long, default_value_t = 0.0)]
    zeta: f64,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Initial slackness margin.
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    /// Growth factor applied to epsilon after a stall (1 disables).
    #[arg(long, default_value_t = 2.0)]
    epsilon_growth: f64,
    /// Stalled iterations tolerated before epsilon grows.
    #[arg(long, default_value_t = 10)]
    patience: u32,
    #[arg(long, default_value_t = 1000)]
    max_iters: u32,
    /// Message convergence tolerance.
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    /// Damping factor on variable messages (0 disables).
    #[arg(long, default_value_t = 0.0)]
    damping: f64,
    /// Final matching pass over unmatched rows/columns.
    #[arg(long, value_enum, default_value_t = FillArg::Complete)]
    fill: FillArg,
    /// Output mapping file (`i i' score` per line).
    #[arg(long, value_name = "FILE")]
    output: PathBuf,
    /// Optional JSON run report.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
    /// Include the per-iteration (objective, epsilon) trace in the report.
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FillArg {
    Complete,
    Positive,
}

impl From<FillArg> for FillMode {
    fn from(fill: FillArg) -> Self {
        match fill {
            FillArg::Complete => FillMode::Complete,
            FillArg::Positive => FillMode::Positive,
        }
    }
}

#[derive(Args)]
struct EvaluateArgs {
    /// Mapping file to score.
    #[arg(long, value_name = "FILE")]
    mapping: PathBuf,
    /// Ground-truth pair file.
    #[arg(long, value_name = "FILE")]
    truth: PathBuf,
    /// Instance files; when given, the objective triple and scores
    /// normalized by the ground-truth assignment are reported too.
    #[arg(long, value_name = "FILE", requires_all = ["graph_b", "candidates"])]
    graph_a: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    graph_b: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    candidates: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    square_weights: Option<PathBuf>,
    #[arg(long, default_value_t = 0.75)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    zeta: f64,
    /// Optional JSON metrics file.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct ComposeArgs {
    /// Mapping files in chain order (at least two).
    #[arg(required = true, num_args = 2.., value_name = "FILE")]
    files: Vec<PathBuf>,
    /// Output file for the composed pairs.
    #[arg(long, value_name = "FILE")]
    output: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Evaluate(args) => run_evaluate(args),
        Command::Compose(args) => run_compose(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run_solve(args: SolveArgs) -> Result<()> {
    let config = SolverConfig {
        alpha: args.problem.alpha,
        epsilon0: args.epsilon,
        max_iterations: args.max_iters,
        patience: args.patience,
        epsilon_growth: args.epsilon_growth,
        message_tolerance: args.tolerance,
        damping: args.damping,
        zeta: args.problem.zeta,
        fill: args.fill.into(),
    };
    config.validate().context("invalid solver configuration")?;

    let problem = formats::load_problem(
        &args.problem.graph_a,
        &args.problem.graph_b,
        &args.problem.candidates,
        args.problem.square_weights.as_deref(),
        args.problem.zeta,
    )?;

    let start = Instant::now();
    let result = solve(&problem, &config).context("solve failed")?;
    let wall = start.elapsed().as_secs_f64();

    formats::write_mapping(&args.output, &result.mapping)?;
    if let Some(report_path) = &args.report {
        let report = RunReport::new(&config, &problem, &result, wall, args.trace);
        std::fs::write(report_path, report.to_json())
            .with_context(|| format!("writing report to {}", report_path.display()))?;
    }

    println!(
        "mapped {} pairs: similarity {:.6}, squares {:.6}, objective {:.6} ({} iterations, {})",
        result.mapping.len(),
        result.similarity,
        result.squares,
        result.objective,
        result.iterations_used,
        if result.converged { "converged" } else { "iteration budget reached" },
    );
    Ok(())
}

fn run_evaluate(args: EvaluateArgs) -> Result<()> {
    let mapping = formats::read_mapping(&args.mapping)?;
    let truth = formats::read_ground_truth(&args.truth)?;
    let (precision, recall) = eval::precision_recall(&mapping, &truth);

    let mut normalized = None;
    let mut objective_line = String::new();
    if let Some(graph_a) = &args.graph_a {
        let problem = formats::load_problem(
            graph_a,
            args.graph_b.as_ref().expect("clap enforces graph-b"),
            args.candidates.as_ref().expect("clap enforces candidates"),
            args.square_weights.as_deref(),
            args.zeta,
        )?;
        let score = eval::objective(&mapping, &problem, args.alpha)
            .map_err(|err| anyhow::anyhow!("{err}"))
            .context("scoring the mapping against the instance")?;
        objective_line = format!(
            "\nsimilarity {:.6}, squares {:.6}, objective {:.6}",
            score.similarity, score.squares, score.objective
        );
        let truth_score =
            eval::objective_on_support(truth.pairs(), &problem, args.alpha);
        if truth_score.similarity != 0.0
            && truth_score.squares != 0.0
            && truth_score.objective != 0.0
        {
            normalized = Some(NormalizedScores {
                similarity: score.similarity / truth_score.similarity,
                squares: score.squares / truth_score.squares,
                objective: score.objective / truth_score.objective,
            });
        }
    }

    println!("precision {precision:.6}, recall {recall:.6}{objective_line}");
    if let Some(n) = &normalized {
        println!(
            "normalized: similarity {:.6}, squares {:.6}, objective {:.6}",
            n.similarity, n.squares, n.objective
        );
    }

    if let Some(report_path) = &args.report {
        let metrics = Metrics {
            precision,
            recall,
            normalized,
        };
        std::fs::write(report_path, serde_json::to_string_pretty(&metrics)?)
            .with_context(|| format!("writing metrics to {}", report_path.display()))?;
    }
    Ok(())
}

fn run_compose(args: ComposeArgs) -> Result<()> {
    let mut chain = Vec::new();
    for path in &args.files {
        chain.push(formats::read_ground_truth(path)?);
    }
    if chain.len() < 2 {
        bail!("compose needs at least two mapping files");
    }

    // warn when links break: ids leaving one file find no continuation
    let mut current = chain[0].clone();
    for (idx, next) in chain.iter().enumerate().skip(1) {
        let dropped = current
            .pairs()
            .filter(|&(_, mid)| next.image_of(mid).is_none())
            .count();
        if dropped > 0 {
            eprintln!(
                "warning: {dropped} pair(s) of {} have no continuation in {} (id spaces may differ)",
                args.files[idx - 1].display(),
                args.files[idx].display()
            );
        }
        current = eval::compose_ground_truth(&[current.clone(), next.clone()]);
    }

    formats::write_ground_truth(&args.output, &current)?;
    println!("composed {} pairs across {} files", current.len(), chain.len());
    Ok(())
}
