use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use actw_bench::{render, run_suite, Format, Manifest};
use actw_core::{
    bits_to_bytes, compress, decompress, generate, redundancy_curve, Preset, Schedule, SourceKind,
    SourceSpec, VariantConfig, DEFAULT_DEPTH,
};
use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

/// Exit codes, one per error class.
mod exit {
    pub const FAILURE: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const RANGE: u8 = 3;
    pub const IO: u8 = 4;
    pub const FORMAT: u8 = 5;
}

#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: exit::USAGE, message: message.into() }
    }

    fn io(path: &Path, err: impl std::fmt::Display) -> Self {
        CliError { code: exit::IO, message: format!("{}: {err}", path.display()) }
    }
}

impl From<actw_core::Error> for CliError {
    fn from(err: actw_core::Error) -> Self {
        use actw_core::Error as E;
        let code = match err {
            E::ParameterRange { .. } | E::InvalidDepth(_) | E::UndefinedMetric => exit::RANGE,
            E::Format(_) | E::Truncated => exit::FORMAT,
            E::Io(_) => exit::IO,
            E::AlreadyFlushed => exit::FAILURE,
        };
        CliError { code, message: err.to_string() }
    }
}

impl From<actw_bench::BenchError> for CliError {
    fn from(err: actw_bench::BenchError) -> Self {
        let code = match err {
            actw_bench::BenchError::Manifest { .. } => exit::FORMAT,
            actw_bench::BenchError::Io { .. } => exit::IO,
        };
        CliError { code, message: err.to_string() }
    }
}

#[derive(Debug, Parser)]
#[command(name = "actw", version, about = "Context tree weighting compressor with adaptive (discounted) estimators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compress a file.
    Compress {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Decompress a file produced by `compress`.
    Decompress {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compress every file of a corpus directory and every merge set.
    Bench {
        /// Corpus directory.
        #[arg(short, long)]
        input: PathBuf,
        /// Merge-set manifest.
        #[arg(short, long)]
        manifest: Option<PathBuf>,
        /// Presets to run (repeatable or comma separated); all by default.
        #[arg(long = "preset", value_delimiter = ',')]
        presets: Vec<Preset>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        /// Report file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Worker threads; defaults to the number of processors.
        #[arg(long)]
        jobs: Option<usize>,
        /// Report zero seconds so repeated runs produce identical output.
        #[arg(long)]
        no_timings: bool,
    },
    /// Redundancy curves and synthetic sources.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Named parameterization (see below).
    #[arg(long)]
    preset: Option<Preset>,
    /// Schedule kind; parameters come from --gamma, --c and --alpha.
    #[arg(long, value_enum)]
    variant: Option<VariantKind>,
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantKind {
    Ctw,
    FixedRate,
    SeqLength,
    PartialVisit,
    FullVisit,
    LeafVisit,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Markdown,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SourceArg {
    Iid,
    Switching,
    Drifting,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Write the expected one-bit redundancy R(k; theta) for k = 1..=kmax as CSV.
    #[arg(long, requires = "theta", conflicts_with = "source")]
    redundancy: bool,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long, default_value_t = 1024)]
    kmax: u64,
    /// Generate a synthetic bit source, packed MSB-first into bytes.
    #[arg(long, value_enum)]
    source: Option<SourceArg>,
    /// Probabilities of a one, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.05,0.95")]
    thetas: Vec<f64>,
    #[arg(long, default_value_t = 2048)]
    segment: u64,
    #[arg(long, default_value_t = 1.0)]
    drift_rate: f64,
    #[arg(long, default_value_t = 1 << 17)]
    bits: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output for CSV when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

impl ModelArgs {
    fn config(&self) -> Result<VariantConfig, CliError> {
        let base = match (self.preset, self.variant) {
            (Some(_), Some(_)) => {
                return Err(CliError::usage("--preset and --variant are mutually exclusive"))
            }
            (Some(preset), None) => preset.schedule(),
            (None, Some(kind)) => {
                let c = self.c.unwrap_or(0.1);
                let alpha = self.alpha.unwrap_or(0.33);
                match kind {
                    VariantKind::Ctw => Schedule::Ctw,
                    VariantKind::FixedRate => Schedule::FixedRate { gamma: self.gamma.unwrap_or(0.01) },
                    VariantKind::SeqLength => Schedule::SeqLength { c, alpha },
                    VariantKind::PartialVisit => Schedule::PartialVisit { c, alpha },
                    VariantKind::FullVisit => Schedule::FullVisit { c, alpha },
                    VariantKind::LeafVisit => Schedule::LeafVisit { c, alpha },
                }
            }
            (None, None) => Schedule::Ctw,
        };
        let schedule = self.apply_overrides(base)?;
        Ok(VariantConfig::new(schedule, self.depth)?)
    }

    fn apply_overrides(&self, schedule: Schedule) -> Result<Schedule, CliError> {
        let schedule = match schedule {
            Schedule::Ctw => {
                if self.gamma.is_some() || self.c.is_some() || self.alpha.is_some() {
                    return Err(CliError::usage("ctw takes no --gamma, --c or --alpha"));
                }
                Schedule::Ctw
            }
            Schedule::FixedRate { gamma } => {
                if self.c.is_some() || self.alpha.is_some() {
                    return Err(CliError::usage("fixed-rate takes --gamma, not --c or --alpha"));
                }
                Schedule::FixedRate { gamma: self.gamma.unwrap_or(gamma) }
            }
            other => {
                if self.gamma.is_some() {
                    return Err(CliError::usage(format!("{} takes --c and --alpha, not --gamma", other.name())));
                }
                let (c, alpha) = other.params();
                let (c, alpha) = (self.c.unwrap_or(c), self.alpha.unwrap_or(alpha));
                Schedule::from_parts(other.code(), c, alpha)?
            }
        };
        Ok(schedule)
    }
}

/// Writes through a temporary file in the target directory so a failed run
/// never leaves a partial output behind.
fn write_atomically(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

fn emit_text(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => write_atomically(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compress { input, output, model } => {
            let config = model.config()?;
            let data = read(&input)?;
            write_atomically(&output, &compress(&data, &config)?)
        }
        Command::Decompress { input, output } => {
            let data = read(&input)?;
            write_atomically(&output, &decompress(&data)?)
        }
        Command::Bench {
            input,
            manifest,
            presets,
            depth,
            format,
            output,
            jobs,
            no_timings,
        } => {
            let presets = if presets.is_empty() { Preset::ALL.to_vec() } else { presets };
            let variants = presets
                .iter()
                .map(|p| VariantConfig::new(p.schedule(), depth))
                .collect::<Result<Vec<_>, _>>()?;
            let manifest = match manifest {
                Some(path) => Manifest::load(&path)?,
                None => Manifest::default(),
            };
            if jobs == Some(0) {
                return Err(CliError { code: exit::RANGE, message: "--jobs must be at least 1".into() });
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| CliError { code: exit::FAILURE, message: e.to_string() })?;
            let mut report = pool.install(|| run_suite(&input, &manifest, &variants))?;
            if no_timings {
                report = report.without_timings();
            }
            for row in &report.rows {
                for (config, cell) in report.variants.iter().zip(&row.cells) {
                    if let Err(cause) = cell {
                        eprintln!("warning: {} / {}: {cause}", row.display_name(), config.label());
                    }
                }
            }
            let format = match format {
                OutputFormat::Csv => Format::Csv,
                OutputFormat::Markdown => Format::Markdown,
            };
            emit_text(output.as_deref(), &render(&report, format))
        }
        Command::Analyze(args) => analyze(args),
    }
}

fn analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    if args.redundancy {
        let theta = args.theta.expect("clap enforces --theta");
        let mut csv = String::from("k,theta,R\n");
        for (k, r) in redundancy_curve(theta, args.kmax)? {
            writeln!(csv, "{k},{theta},{r:.12e}").unwrap();
        }
        return emit_text(args.output.as_deref(), &csv);
    }
    let Some(source) = args.source else {
        return Err(CliError::usage("analyze needs --redundancy or --source"));
    };
    let kind = match source {
        SourceArg::Iid => SourceKind::Iid,
        SourceArg::Switching => SourceKind::Switching { segment_length: args.segment },
        SourceArg::Drifting => SourceKind::Drifting { drift_rate: args.drift_rate },
    };
    let spec = SourceSpec {
        kind,
        thetas: args.thetas,
        seed: args.seed,
        total_bits: args.bits,
    };
    let bytes = bits_to_bytes(&generate(&spec)?);
    let Some(output) = args.output else {
        return Err(CliError::usage("--source needs -o/--output"));
    };
    write_atomically(&output, &bytes)
}

fn presets_help() -> String {
    let mut text = String::from("Presets:\n");
    for preset in Preset::ALL {
        writeln!(text, "  {preset}").unwrap();
    }
    text
}

fn main() -> ExitCode {
    let matches = Cli::command().after_help(presets_help()).get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(err) => err.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("actw: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
