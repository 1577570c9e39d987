//! `pdmetric`: diagram distances, feature maps, the ratio experiment and the
//! theory checks from the command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 internal failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pdmetric::io::read_diagram;
use pdmetric::theory::{assouad_packing, run_cauchy_suite, run_s_suite, verify_packing};
use pdmetric::{
    distance, landscape_profile, persistence_image, pss_embedding, pwg_embedding, run_experiment,
    sliced_wasserstein_distance, summarize, topological_vector, DistanceOrder, Error,
    ExperimentConfig, Method, OutputFormat, WeightFunction,
};

#[derive(Parser)]
#[command(
    name = "pdmetric",
    version,
    about = "Persistence diagram metric geometry"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two diagram files.
    Dist(DistArgs),
    /// Feature-map image of one diagram file.
    Embed(EmbedArgs),
    /// Run the ratio experiment and write ratios.csv, summary.json, boxplot.csv.
    Bench(BenchArgs),
    /// Run a theory check and print its JSON report.
    Theory(TheoryArgs),
}

#[derive(Args)]
struct DistArgs {
    /// 1, 2, any positive integer, `inf`, or `sw` (sliced Wasserstein).
    #[arg(long)]
    p: String,
    /// Number of directions for `--p sw`.
    #[arg(long, default_value_t = pdmetric::distance::DEFAULT_SW_DIRECTIONS)]
    directions: usize,
    a: PathBuf,
    b: PathBuf,
}

#[derive(Args)]
struct EmbedArgs {
    /// PWG, PSS, LS, IM or TV.
    #[arg(long)]
    method: String,
    /// Gaussian bandwidth for PWG, PSS and IM.
    #[arg(long, default_value_t = 1.0)]
    bandwidth: f64,
    /// Weight for PWG and IM (defaults: persistence_squared, persistence).
    #[arg(long)]
    weight: Option<String>,
    #[arg(long, default_value_t = pdmetric::features::DEFAULT_IMAGE_RESOLUTION)]
    resolution: usize,
    /// Topological vector length.
    #[arg(long, default_value_t = pdmetric::features::DEFAULT_TV_LENGTH)]
    length: usize,
    #[arg(long, default_value_t = pdmetric::features::DEFAULT_LANDSCAPE_K_MAX)]
    k_max: usize,
    diagram: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Replace the grid by cardinalities 10..=1000 with 100 diagrams each
    /// (several hours).
    #[arg(long)]
    full: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    S,
    Cauchy,
    Packing,
}

#[derive(Args)]
struct TheoryArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Packing: doubling constant.
    #[arg(long = "C", default_value_t = 2.0)]
    c: f64,
    /// Packing: doubling exponent.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Packing: box half-width.
    #[arg(long = "L", default_value_t = 1.0)]
    l: f64,
    /// Packing: distance order (positive integer or `inf`).
    #[arg(long, default_value = "1")]
    p: String,
    /// S-set: largest k compared with the exact solvers.
    #[arg(long, default_value_t = 4)]
    max_k: usize,
    /// S-set: size of the divergence witness.
    #[arg(long, default_value_t = 40_000)]
    witness_k: usize,
    #[arg(long, default_value_t = 5.0)]
    threshold: f64,
    /// Cauchy: sweep all 1 ≤ p < q ≤ q-max.
    #[arg(long, default_value_t = 200)]
    q_max: usize,
    #[arg(long, default_value_t = 1.0)]
    bandwidth: f64,
}

enum Failure {
    Usage(String),
    Data(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        if e.is_data_error() {
            Failure::Data(msg)
        } else {
            match e {
                Error::Config(_) | Error::InvalidParameter(_) | Error::UnknownId(_) => {
                    Failure::Usage(msg)
                }
                _ => Failure::Internal(msg),
            }
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))
}

fn weight(arg: &Option<String>, default: WeightFunction) -> Result<WeightFunction, Failure> {
    match arg {
        Some(s) => Ok(s.parse()?),
        None => Ok(default),
    }
}

fn dist(args: &DistArgs) -> Result<String, Failure> {
    let sw = args.p.eq_ignore_ascii_case("sw");
    let order = if sw {
        None
    } else {
        Some(args.p.parse::<DistanceOrder>()?)
    };
    let a = read_diagram(&args.a)?;
    let b = read_diagram(&args.b)?;
    let value = match order {
        Some(order) => distance(&a, &b, order),
        None => sliced_wasserstein_distance(&a, &b, args.directions)?,
    };
    Ok(format!("{value}"))
}

fn embed(args: &EmbedArgs) -> Result<String, Failure> {
    let method: Method = args.method.parse()?;
    let d = read_diagram(&args.diagram)?;
    Ok(match method {
        Method::Pwg => json(&pwg_embedding(
            &d,
            weight(&args.weight, WeightFunction::PersistenceSquared)?,
            args.bandwidth,
        )?)?,
        Method::Pss => json(&pss_embedding(&d, args.bandwidth)?)?,
        Method::Ls => json(&landscape_profile(&d, args.k_max)?.to_json())?,
        Method::Im => persistence_image(
            &d,
            args.resolution,
            args.bandwidth,
            weight(&args.weight, WeightFunction::Persistence)?,
        )?
        .to_csv_row(),
        Method::Tv => topological_vector(&d, args.length)?.to_csv_row(),
        Method::SwSqrt => {
            return Err(Failure::Usage(
                "SW_SQRT has no explicit embedding; use `dist --p sw`".into(),
            ))
        }
    })
}

fn write_outputs(out: &Path, table: &pdmetric::RatioTable) -> Result<(), Failure> {
    fs::create_dir_all(out).map_err(|e| Failure::Data(format!("{}: {e}", out.display())))?;
    let summary = summarize(table);
    pdmetric::emit(table, out.join("ratios.csv"), OutputFormat::Csv)?;
    pdmetric::emit(&summary, out.join("summary.json"), OutputFormat::Json)?;
    pdmetric::emit(&summary, out.join("boxplot.csv"), OutputFormat::Csv)?;
    Ok(())
}

fn bench(args: &BenchArgs) -> Result<String, Failure> {
    let mut config = ExperimentConfig::from_path(&args.config).map_err(|e| match e {
        // An unreadable config file is a usage problem for this subcommand.
        Error::Io { .. } => Failure::Usage(e.to_string()),
        other => other.into(),
    })?;
    if args.full {
        config = config.into_full_scale();
    }
    let table = run_experiment(&config)?;
    write_outputs(&args.out, &table)?;
    if !table.failures.is_empty() {
        let list: Vec<String> = table
            .failures
            .iter()
            .map(|f| format!("cardinality {}: {}", f.cardinality, f.message))
            .collect();
        return Err(Failure::Internal(format!(
            "outputs written, but some buckets failed:\n{}",
            list.join("\n")
        )));
    }
    Ok(format!(
        "{} rows ({} pairs skipped) written to {}",
        table.rows.len(),
        table.skipped_pairs,
        args.out.display()
    ))
}

fn theory(args: &TheoryArgs) -> Result<String, Failure> {
    match args.suite {
        Suite::S => json(&run_s_suite(args.max_k, args.witness_k, args.threshold)?),
        Suite::Cauchy => json(&run_cauchy_suite(args.q_max, args.bandwidth)?),
        Suite::Packing => {
            let order: DistanceOrder = args.p.parse()?;
            let family = assouad_packing(args.c, args.alpha, args.l)?;
            json(&verify_packing(&family, order, 1e-12))
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Dist(a) => dist(a),
        Command::Embed(a) => embed(a),
        Command::Bench(a) => bench(a),
        Command::Theory(a) => theory(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = std::panic::catch_unwind(|| run(&cli))
        .unwrap_or_else(|_| Err(Failure::Internal("unexpected panic".into())));
    match outcome {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Data(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}
