use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kronecker::edgelist::write_edge_list;
use kronecker_cli::{
    certify, emit, generate, measure, predict, run, CliError, ExperimentConfig, ExperimentKind, Format,
    GeneratorChoice, OutputPaths, ValidationReport,
};

/// Stochastic Kronecker graph experiments.
#[derive(Parser)]
#[command(name = "kron", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one graph and write it as an edge list.
    Generate {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        sampler: SamplerArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout if absent).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Analytic predictions only; nothing is sampled.
    Predict {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        experiment: ExperimentArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample, measure and compare; exits 0 whatever the comparison says.
    Measure {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        sampler: SamplerArgs,
        #[command(flatten)]
        experiment: ExperimentArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample, measure and compare; exits 1 if any criterion fails.
    Validate {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        sampler: SamplerArgs,
        #[command(flatten)]
        experiment: ExperimentArgs,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Second-moment certificate B_F < B_G^2 over all unions of two copies.
    Certify {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        gamma: f64,
        /// `star:k`, `cycle:k`, `path:k`, `complete:k`, `edge`, or `@file`.
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    gamma: f64,
    /// Number of Kronecker factors; the graph has 2^n vertices.
    #[arg(long, short)]
    n: u32,
    /// Leave out self-loops.
    #[arg(long)]
    no_loops: bool,
}

#[derive(Args)]
struct SamplerArgs {
    /// naive, stratified, rmat or rmat:<edges>.
    #[arg(long, default_value = "stratified")]
    generator: String,
    /// Lift the default size guards.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    /// degrees, subgraph:<pattern>, hamming, regime or thresholds[:<pattern>].
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 20)]
    trials: u64,
    #[arg(long, default_value_t = 9)]
    sweep_points: u32,
}

#[derive(Args)]
struct OutputArgs {
    /// Full JSON report (stdout if neither --json nor --csv is given).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Flat table for plotting.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Directory for one edge list per trial.
    #[arg(long)]
    edge_lists: Option<PathBuf>,
}

fn read_pattern(s: &str) -> Result<String, CliError> {
    match s.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => Ok(s.to_string()),
    }
}

fn config(
    model: &ModelArgs,
    sampler: Option<&SamplerArgs>,
    experiment: Option<&ExperimentArgs>,
    seed: u64,
) -> Result<ExperimentConfig, CliError> {
    let kind = match experiment {
        Some(e) => match e.kind.parse::<ExperimentKind>()? {
            ExperimentKind::Subgraph { pattern } => ExperimentKind::Subgraph {
                pattern: read_pattern(&pattern)?,
            },
            ExperimentKind::Thresholds { pattern } => ExperimentKind::Thresholds {
                pattern: read_pattern(&pattern)?,
            },
            k => k,
        },
        None => ExperimentKind::Degrees,
    };
    let mut c = ExperimentConfig::new(model.alpha, model.beta, model.gamma, model.n, kind);
    c.include_loops = !model.no_loops;
    c.seed = seed;
    if let Some(s) = sampler {
        c.generator = s.generator.parse::<GeneratorChoice>()?;
        c.allow_large = s.allow_large;
    }
    if let Some(e) = experiment {
        c.trials = e.trials;
        c.sweep_points = e.sweep_points;
    }
    Ok(c)
}

fn with_outputs(mut c: ExperimentConfig, output: &OutputArgs) -> ExperimentConfig {
    c.outputs = OutputPaths {
        json: output.json.clone(),
        csv: output.csv.clone(),
        edge_lists: output.edge_lists.clone(),
    };
    c
}

fn write_report(report: &ValidationReport) -> Result<(), CliError> {
    let outputs = &report.config.outputs;
    if let Some(path) = &outputs.json {
        emit(report, Format::Json, path)?;
    }
    if let Some(path) = &outputs.csv {
        emit(report, Format::Csv, path)?;
    }
    if outputs.json.is_none() && outputs.csv.is_none() {
        std::io::stdout().write_all(report.to_json()?.as_bytes())?;
    }
    eprint!("{}", report.summary());
    Ok(())
}

fn execute(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Generate { model, sampler, seed, out } => {
            let c = config(&model, Some(&sampler), None, seed)?;
            let g = generate(&c, 0)?;
            match out {
                Some(path) => write_edge_list(&g, std::io::BufWriter::new(std::fs::File::create(path)?))?,
                None => write_edge_list(&g, std::io::stdout().lock())?,
            }
            eprintln!("{} edges, {} loops", g.edge_count(), g.loops().len());
            Ok(0)
        }
        Command::Predict { model, experiment, output } => {
            let c = with_outputs(config(&model, None, Some(&experiment), 0)?, &output);
            write_report(&predict(&c)?)?;
            Ok(0)
        }
        Command::Measure { model, sampler, experiment, seed, output } => {
            let c = with_outputs(config(&model, Some(&sampler), Some(&experiment), seed)?, &output);
            write_report(&measure(&c)?)?;
            Ok(0)
        }
        Command::Validate { model, sampler, experiment, seed, output } => {
            let c = with_outputs(config(&model, Some(&sampler), Some(&experiment), seed)?, &output);
            let report = run(&c)?;
            write_report(&report)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Certify { alpha, beta, gamma, pattern, json } => {
            let report = certify(alpha, beta, gamma, &read_pattern(&pattern)?)?;
            let text = report.to_json()?;
            match json {
                Some(path) => std::fs::write(path, text)?,
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
            eprintln!(
                "{:?}: {} unions, base value {:.6}",
                report.status,
                report.unions.len(),
                report.base_value
            );
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
