//! Thin command-line wrapper over the library pipeline.
//!
//! Exit codes: 0 success, 2 data/config error, 3 estimation failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use voteratio::csv_io;
use voteratio::error::{Error, Result};
use voteratio::pipeline::{analyze, turnout_histogram, AnalyzeOptions, StatsConfig};
use voteratio::report;
use voteratio::simulator::{self, ScenarioConfig};
use voteratio::svg;

#[derive(Parser)]
#[command(
    name = "voteratio",
    version,
    about = "Election forensics: normalized-indicator ratios fitted to a Cauchy law"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of a returns CSV: reference stats, ratio estimates,
    /// interval probabilities. Emits a JSON report.
    Analyze(AnalyzeArgs),
    /// Render the turnout distribution of a returns CSV as an SVG bar chart.
    Histogram(HistogramArgs),
    /// Generate a synthetic corpus, optionally with fraud injection and a
    /// detection power study.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input returns CSV
    #[arg(long)]
    data: PathBuf,
    /// Comma-separated labels of the regions under suspicion
    #[arg(long, value_delimiter = ',', required = true)]
    suspect_regions: Vec<String>,
    /// Additional regions excluded from the reference statistics
    #[arg(long, value_delimiter = ',')]
    exclude_regions: Vec<String>,
    /// Comma-separated rejection counts for the estimate sweep
    #[arg(long, value_delimiter = ',', default_value = "1,3,7,9")]
    reject: Vec<usize>,
    /// Location interval "lo,hi" for the probability device (repeatable;
    /// default -0.1,0.1)
    #[arg(long, value_parser = parse_interval, allow_hyphen_values = true)]
    interval: Vec<(f64, f64)>,
    /// Assumed-known scale for the probability device (repeatable; default 1)
    #[arg(long)]
    scale: Vec<f64>,
    /// Write the JSON report to this path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report to stdout instead of the text summary
    #[arg(long)]
    json: bool,
    /// Skip malformed rows (reported on stderr) instead of failing
    #[arg(long)]
    skip_bad: bool,
}

#[derive(Args)]
struct HistogramArgs {
    /// Input returns CSV
    #[arg(long)]
    data: PathBuf,
    /// Bin width in turnout percentage points
    #[arg(long, default_value_t = 1.0)]
    bin_width: f64,
    /// Output SVG path
    #[arg(long)]
    out: PathBuf,
    /// Skip malformed rows (reported on stderr) instead of failing
    #[arg(long)]
    skip_bad: bool,
}

#[derive(Args)]
struct SimulateArgs {
    /// Scenario config file with "key = value" lines
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n_reference: Option<usize>,
    #[arg(long)]
    n_suspect: Option<usize>,
    #[arg(long)]
    turnout_mean: Option<f64>,
    #[arg(long)]
    turnout_sd: Option<f64>,
    #[arg(long)]
    against_all_mean: Option<f64>,
    #[arg(long)]
    against_all_sd: Option<f64>,
    #[arg(long)]
    registered_min: Option<u64>,
    #[arg(long)]
    registered_max: Option<u64>,
    /// none, stuffing or turnout_shift
    #[arg(long)]
    fraud_mode: Option<String>,
    #[arg(long)]
    fraud_magnitude: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the generated corpus CSV here (default: stdout when no power
    /// study is requested)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run a power study over these comma-separated fraud magnitudes
    #[arg(long, value_delimiter = ',')]
    power_magnitudes: Vec<f64>,
    /// Seeds per magnitude in the power study
    #[arg(long, default_value_t = 20)]
    power_seeds: usize,
    /// Write the power table here (default stdout)
    #[arg(long)]
    power_out: Option<PathBuf>,
    /// Power table format: csv or json
    #[arg(long, default_value = "csv")]
    power_format: String,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::Histogram(args) => run_histogram(args),
        Command::Simulate(args) => run_simulate(args),
    }
}

fn parse_interval(s: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected 'lo,hi', got '{s}'"))?;
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|e| format!("bad interval bound '{lo}': {e}"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|e| format!("bad interval bound '{hi}': {e}"))?;
    Ok((lo, hi))
}

fn print_diagnostics(diagnostics: &[csv_io::RowDiagnostic]) {
    for d in diagnostics {
        let tag = match d.severity {
            csv_io::Severity::Warning => "warning",
            csv_io::Severity::SkippedRow => "skipped",
        };
        eprintln!("{tag}: line {}: {}", d.line, d.message);
    }
}

fn run_analyze(args: AnalyzeArgs) -> Result<()> {
    let outcome = csv_io::ingest(&args.data, args.skip_bad)?;
    print_diagnostics(&outcome.diagnostics);

    let opts = AnalyzeOptions {
        suspect_regions: args.suspect_regions,
        excluded_regions: args.exclude_regions,
        rejection_levels: args.reject,
        prob_intervals: if args.interval.is_empty() {
            vec![(-0.1, 0.1)]
        } else {
            args.interval
        },
        scales: if args.scale.is_empty() {
            vec![1.0]
        } else {
            args.scale
        },
        stats: StatsConfig::default(),
    };
    let analysis = analyze(&outcome.records, &opts)?;
    let json = report::to_json(&analysis)?;
    if let Some(path) = &args.out {
        fs::write(path, &json)?;
    }
    if args.json {
        println!("{json}");
    } else {
        print!("{}", report::render_text(&analysis));
    }
    Ok(())
}

fn run_histogram(args: HistogramArgs) -> Result<()> {
    let outcome = csv_io::ingest(&args.data, args.skip_bad)?;
    print_diagnostics(&outcome.diagnostics);
    if outcome.records.is_empty() {
        return Err(Error::Data("no records in input; nothing to plot".into()));
    }
    let hist = turnout_histogram(&outcome.records, args.bin_width)?;
    fs::write(&args.out, svg::render_histogram_svg(&hist))?;
    eprintln!(
        "wrote {} ({} records, {} in the >100% overflow bin)",
        args.out.display(),
        hist.total,
        hist.overflow_count
    );
    Ok(())
}

fn run_simulate(args: SimulateArgs) -> Result<()> {
    let mut config = ScenarioConfig::default();
    if let Some(path) = &args.config {
        apply_config_file(&mut config, path)?;
    }
    if let Some(v) = args.n_reference {
        config.n_reference = v;
    }
    if let Some(v) = args.n_suspect {
        config.n_suspect = v;
    }
    if let Some(v) = args.turnout_mean {
        config.turnout_mean = v;
    }
    if let Some(v) = args.turnout_sd {
        config.turnout_sd = v;
    }
    if let Some(v) = args.against_all_mean {
        config.against_all_mean = v;
    }
    if let Some(v) = args.against_all_sd {
        config.against_all_sd = v;
    }
    if let Some(v) = args.registered_min {
        config.registered_voters_min = v;
    }
    if let Some(v) = args.registered_max {
        config.registered_voters_max = v;
    }
    if let Some(v) = &args.fraud_mode {
        config.fraud_mode = v.parse()?;
    }
    if let Some(v) = args.fraud_magnitude {
        config.fraud_magnitude = v;
    }
    if let Some(v) = args.seed {
        config.seed = v;
    }

    let corpus = simulator::generate(&config)?;
    for flag in &corpus.flags {
        eprintln!(
            "warning: {}: {}",
            flag.constituency.as_deref().unwrap_or("?"),
            flag.detail
        );
    }
    let csv_text = csv_io::corpus_to_csv_string(&corpus.records)?;
    if let Some(path) = &args.out {
        fs::write(path, &csv_text)?;
        eprintln!(
            "wrote {} ({} records)",
            path.display(),
            corpus.records.len()
        );
    } else if args.power_magnitudes.is_empty() {
        print!("{csv_text}");
    }

    if !args.power_magnitudes.is_empty() {
        let rows = simulator::power_study(&config, &args.power_magnitudes, args.power_seeds)?;
        let table = match args.power_format.as_str() {
            "csv" => power_table_csv(&rows),
            "json" => report::to_json(&rows)?,
            other => {
                return Err(Error::Config(format!(
                    "unknown power table format '{other}' (expected csv or json)"
                )))
            }
        };
        match &args.power_out {
            Some(path) => {
                fs::write(path, &table)?;
                eprintln!("wrote {}", path.display());
            }
            None => print!("{table}"),
        }
    }
    Ok(())
}

fn power_table_csv(rows: &[simulator::PowerRow]) -> String {
    let mut out = String::from("magnitude,mean_location_hat,detection_rate\n");
    for row in rows {
        out.push_str(&format!(
            "{:.6},{:.6},{:.6}\n",
            row.magnitude, row.mean_location_hat, row.detection_rate
        ));
    }
    out
}

fn apply_config_file(config: &mut ScenarioConfig, path: &Path) -> Result<()> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!(
                "{}:{}: expected 'key = value', got '{raw}'",
                path.display(),
                idx + 1
            ))
        })?;
        set_config_key(config, key.trim(), value.trim())
            .map_err(|e| e.at_stage(&format!("{}:{}", path.display(), idx + 1)))?;
    }
    Ok(())
}

fn set_config_key(config: &mut ScenarioConfig, key: &str, value: &str) -> Result<()> {
    fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        value
            .parse()
            .map_err(|e| Error::Config(format!("key '{key}': bad value '{value}': {e}")))
    }
    match key {
        "n_reference" => config.n_reference = parse(key, value)?,
        "n_suspect" => config.n_suspect = parse(key, value)?,
        "turnout_mean" => config.turnout_mean = parse(key, value)?,
        "turnout_sd" => config.turnout_sd = parse(key, value)?,
        "against_all_mean" => config.against_all_mean = parse(key, value)?,
        "against_all_sd" => config.against_all_sd = parse(key, value)?,
        "registered_voters_min" => config.registered_voters_min = parse(key, value)?,
        "registered_voters_max" => config.registered_voters_max = parse(key, value)?,
        "fraud_mode" => config.fraud_mode = value.parse()?,
        "fraud_magnitude" => config.fraud_magnitude = parse(key, value)?,
        "seed" => config.seed = parse(key, value)?,
        other => {
            return Err(Error::Config(format!("unknown config key '{other}'")));
        }
    }
    Ok(())
}
