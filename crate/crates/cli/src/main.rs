//! Command-line front end: runs single experiments or algorithm-by-threshold
//! sweeps against a JSON config, validates configs, and generates synthetic
//! weather files.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand};
use pdcbo_tune::harness::ThresholdSegment;
use pdcbo_tune::{
    run_experiment, summarize, synth_weather, write_weather_csv, Algorithm, ExperimentConfig,
    Formulation, WeatherSource,
};
use rayon::prelude::*;

use output::{write_records_csv, write_summary_json};

/// Environment variable holding the default for `sweep --jobs`.
pub const JOBS_ENV_VAR: &str = "PDCBO_TUNE_JOBS";

#[derive(Debug)]
pub struct CliError {
    message: String,
    /// Exit code: 1 for runtime/IO failures, 2 for usage/config errors.
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self { message: message.into(), code: 2 }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Self { message: message.into(), code: 1 }
    }
}

#[derive(Parser)]
#[command(
    name = "pdcbo-tune",
    about = "Constrained day-by-day tuning of a room-heating PI controller",
    version,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write records.csv plus summary.json.
    Run(RunArgs),
    /// Run an algorithm-by-threshold sweep, one output directory per cell.
    Sweep(SweepArgs),
    /// Check a config file against the schema and invariants.
    ValidateConfig {
        #[arg(long)]
        config: PathBuf,
    },
    /// Generate a synthetic weather CSV.
    GenWeather {
        #[arg(long, default_value_t = 300)]
        days: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
}

const ALGORITHMS: [&str; 4] = ["pdcbo", "safeopt", "cei", "fixed"];
const FORMULATIONS: [&str; 2] = ["discomfort_constrained", "energy_constrained"];

#[derive(Args)]
struct RunArgs {
    /// Experiment config (JSON). Missing fields take their defaults.
    #[arg(long)]
    config: PathBuf,
    #[arg(long, value_parser = PossibleValuesParser::new(ALGORITHMS))]
    algo: Option<String>,
    #[arg(long, value_parser = PossibleValuesParser::new(FORMULATIONS))]
    formulation: Option<String>,
    #[arg(long)]
    days: Option<usize>,
    /// Single-value shorthand for the whole threshold schedule.
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Weather CSV overriding the config's weather source.
    #[arg(long)]
    weather: Option<PathBuf>,
    /// Output directory for records.csv and summary.json.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Comma-separated algorithms forming the sweep rows.
    #[arg(long, value_delimiter = ',', default_values_t = ["pdcbo".to_string(), "safeopt".to_string(), "cei".to_string()])]
    algos: Vec<String>,
    /// Comma-separated thresholds forming the sweep columns.
    #[arg(long, value_delimiter = ',', default_values_t = [5.0, 10.0, 15.0])]
    thresholds: Vec<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    days: Option<usize>,
    #[arg(long)]
    weather: Option<PathBuf>,
    /// Parallel sweep cells; defaults to $PDCBO_TUNE_JOBS, then all cores.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value = "sweep")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run(args) => run(args),
        Command::Sweep(args) => sweep(args),
        Command::ValidateConfig { config } => {
            let parsed = load_config(&config)?;
            parsed.validate().map_err(|e| CliError::usage(format!("{}: {e}", config.display())))?;
            println!("{}: ok", config.display());
            Ok(())
        }
        Command::GenWeather { days, seed, out } => {
            let generated = synth_weather(seed, days)
                .map_err(|e| CliError::usage(e.to_string()))?;
            write_weather_csv(&out, &generated)
                .map_err(|e| CliError::runtime(e.to_string()))?;
            println!("wrote {} days to {}", generated.len(), out.display());
            Ok(())
        }
    }
}

fn load_config(path: &Path) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("invalid config {}: {e}", path.display())))
}

/// Detects whether the config file explicitly sets `threshold_schedule`, to
/// reject conflicting `--threshold` shorthand.
fn config_has_schedule(path: &Path) -> Result<bool, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("invalid config {}: {e}", path.display())))?;
    Ok(value.get("threshold_schedule").is_some())
}

fn parse_algo(s: &str) -> Result<Algorithm, CliError> {
    s.parse::<Algorithm>().map_err(CliError::usage)
}

#[derive(Default)]
struct Overrides {
    algo: Option<String>,
    formulation: Option<String>,
    days: Option<usize>,
    threshold: Option<f64>,
    seed: Option<u64>,
    weather: Option<PathBuf>,
}

fn apply_overrides(
    config: &mut ExperimentConfig,
    config_path: &Path,
    overrides: &Overrides,
) -> Result<(), CliError> {
    if let Some(a) = &overrides.algo {
        config.algorithm = parse_algo(a)?;
    }
    if let Some(f) = &overrides.formulation {
        config.formulation = f.parse::<Formulation>().map_err(CliError::usage)?;
    }
    if let Some(n) = overrides.days {
        config.n_days = n;
    }
    if let Some(t) = overrides.threshold {
        if config_has_schedule(config_path)? {
            return Err(CliError::usage(
                "--threshold conflicts with an explicit threshold_schedule in the config",
            ));
        }
        config.threshold_schedule = vec![ThresholdSegment { start_day: 0, threshold: t }];
    }
    if let Some(s) = overrides.seed {
        config.seed = s;
    }
    if let Some(w) = &overrides.weather {
        config.weather = WeatherSource::Csv { path: w.clone() };
    }
    Ok(())
}

fn run_into(config: &ExperimentConfig, dir: &Path) -> Result<(), CliError> {
    config.validate().map_err(|e| CliError::usage(e.to_string()))?;
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::runtime(format!("cannot create {}: {e}", dir.display())))?;
    let records = run_experiment(config).map_err(|e| CliError::runtime(e.to_string()))?;
    let summary = summarize(&records, config.formulation)
        .map_err(|e| CliError::runtime(e.to_string()))?;
    write_records_csv(&dir.join("records.csv"), &records)?;
    write_summary_json(&dir.join("summary.json"), &summary)?;
    Ok(())
}

fn run(args: RunArgs) -> Result<(), CliError> {
    let mut config = load_config(&args.config)?;
    let overrides = Overrides {
        algo: args.algo.clone(),
        formulation: args.formulation.clone(),
        days: args.days,
        threshold: args.threshold,
        seed: args.seed,
        weather: args.weather.clone(),
    };
    apply_overrides(&mut config, &args.config, &overrides)?;
    run_into(&config, &args.out)?;
    println!("wrote {} and {}", args.out.join("records.csv").display(), args.out.join("summary.json").display());
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<(), CliError> {
    let mut base = load_config(&args.config)?;
    let overrides = Overrides {
        days: args.days,
        seed: args.seed,
        weather: args.weather.clone(),
        ..Overrides::default()
    };
    apply_overrides(&mut base, &args.config, &overrides)?;

    let mut cells = Vec::new();
    for algo_name in &args.algos {
        let algorithm = parse_algo(algo_name)?;
        for &threshold in &args.thresholds {
            let mut config = base.clone();
            config.algorithm = algorithm;
            config.threshold_schedule = vec![ThresholdSegment { start_day: 0, threshold }];
            config.validate().map_err(|e| CliError::usage(e.to_string()))?;
            cells.push((format!("{algorithm}_thr{threshold}"), config));
        }
    }

    let jobs = match args.jobs {
        Some(j) => Some(j),
        None => match std::env::var(JOBS_ENV_VAR) {
            Ok(v) => Some(v.parse::<usize>().map_err(|_| {
                CliError::usage(format!("{JOBS_ENV_VAR} must be a positive integer, got `{v}`"))
            })?),
            Err(_) => None,
        },
    };
    if jobs == Some(0) {
        return Err(CliError::usage("--jobs must be at least 1"));
    }

    let out = args.out.clone();
    let run_cells = || -> Result<(), CliError> {
        cells
            .par_iter()
            .map(|(name, config)| run_into(config, &out.join(name)))
            .collect::<Result<(), CliError>>()
    };
    match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| CliError::runtime(format!("cannot build thread pool: {e}")))?
            .install(run_cells),
        None => run_cells(),
    }?;
    println!("wrote {} sweep cells under {}", cells.len(), out.display());
    Ok(())
}
