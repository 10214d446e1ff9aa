//! Command-line front end: spoke-vector validation, counting, search and
//! extension, interleaver generation and analysis, and BER sweeps.
//!
//! Every run prints a report, writes it to `<out-dir>/<command>.report.<ext>`
//! next to any other artifacts, and records a [`RunManifest`] that
//! `cubil replay` can re-execute to reproduce the same files.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::{fmt, fs};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubil_core::spokes::DEFAULT_BUDGET;
use cubil_core::turbo::interleavers::DEFAULT_SRANDOM_ATTEMPTS;
use cubil_core::turbo::sim::SimConfig;
use serde::{Deserialize, Serialize};

mod commands;
pub mod manifest;
pub mod report;

pub use manifest::RunManifest;
pub use report::{Format, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;

const DEFAULT_EBN0: &str = "0.5,1,1.5,2,2.5";

#[derive(Debug, Parser)]
#[command(name = "cubil", version, about = "Turbo-code interleavers from cubic Hamiltonian graphs")]
struct Cli {
    /// Directory for reports, artifacts and the run manifest.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Check a spoke vector against the validity conditions.
    Validate(ValidateArgs),
    /// Closed-form count of valid spoke vectors, optionally checked by brute force.
    Count(CountArgs),
    /// List every valid spoke vector.
    Enumerate(EnumerateArgs),
    /// Exhaustive search for the spoke vectors of maximum girth.
    Search(SearchArgs),
    /// Derive a spoke vector for a larger block length.
    Extend(ExtendArgs),
    /// Write an interleaver file.
    Gen(GenArgs),
    /// Girth and summary-distance report for an interleaver file.
    Analyze(AnalyzeArgs),
    /// BER sweep of the turbo code with one interleaver.
    Simulate(SimulateArgs),
    /// BER sweep over several interleavers with shared noise.
    Compare(CompareArgs),
    /// Re-run the command recorded in a manifest.
    Replay(ReplayArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Count(_) => "count",
            Command::Enumerate(_) => "enumerate",
            Command::Search(_) => "search",
            Command::Extend(_) => "extend",
            Command::Gen(_) => "gen",
            Command::Analyze(_) => "analyze",
            Command::Simulate(_) => "simulate",
            Command::Compare(_) => "compare",
            Command::Replay(_) => "replay",
        }
    }

    /// Fills in a fresh seed where one is needed but absent; returns the
    /// seed in effect and whether it was generated.
    fn resolve_seed(&mut self) -> (Option<u64>, bool) {
        let slot = match self {
            Command::Gen(a) if a.family == Family::Srandom => &mut a.seed,
            Command::Simulate(a) => &mut a.sweep.seed,
            Command::Compare(a) => &mut a.sweep.seed,
            _ => return (None, false),
        };
        let generated = slot.is_none();
        let seed = *slot.get_or_insert_with(rand::random);
        (Some(seed), generated)
    }

    /// Makes input paths absolute so a manifest replays from any directory.
    fn absolutize_inputs(&mut self) -> Result<(), CliError> {
        let fix = |p: &mut PathBuf| -> Result<(), CliError> {
            *p = fs::canonicalize(&*p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            Ok(())
        };
        match self {
            Command::Analyze(a) => fix(&mut a.input),
            Command::Simulate(a) => fix(&mut a.input),
            Command::Compare(a) => a.inputs.iter_mut().try_for_each(fix),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ValidateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub s: usize,
    /// Comma-separated entries.
    #[arg(long, value_delimiter = ',', required = true)]
    pub c: Vec<usize>,
    /// Also reject entries 1 and N-1.
    #[arg(long)]
    pub simple: bool,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct CountArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub s: usize,
    /// Report the closed form only.
    #[arg(long)]
    pub skip_brute_force: bool,
    /// Largest tuple space the brute force may scan.
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64)]
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub s: usize,
    /// Skip vectors with entries 1 or N-1.
    #[arg(long)]
    pub simple: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64)]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreakArg {
    /// Largest summary distance, then lexicographic.
    MaxDsum,
    Lexicographic,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub s: usize,
    #[arg(long, value_enum, default_value_t = TieBreakArg::MaxDsum)]
    pub tie_break: TieBreakArg,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64)]
    pub budget: u64,
    /// Maximum number of winners listed in the report.
    #[arg(long, default_value_t = 20)]
    pub list: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ExtendArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub s: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    pub c: Vec<usize>,
    /// Extension steps.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Spokes,
    Quadratic,
    Srandom,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    /// Spoke entries (spokes family).
    #[arg(long, value_delimiter = ',')]
    pub c: Vec<usize>,
    /// Odd multiplier (quadratic family).
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Spread (srandom family); defaults to floor(sqrt(N/2)).
    #[arg(long)]
    pub spread: Option<usize>,
    /// Restart budget (srandom family).
    #[arg(long, default_value_t = DEFAULT_SRANDOM_ATTEMPTS)]
    pub attempts: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Interleaver file name inside the output directory.
    #[arg(long, default_value = "interleaver.txt")]
    pub output: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct AnalyzeArgs {
    /// Interleaver file.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    /// Comma-separated Eb/N0 grid in dB.
    #[arg(long, value_delimiter = ',', default_value = DEFAULT_EBN0)]
    pub ebn0: Vec<f64>,
    #[arg(long, default_value_t = SimConfig::DEFAULT_ITERATIONS)]
    pub iterations: usize,
    /// Stop a point after this many bit errors.
    #[arg(long, default_value_t = SimConfig::DEFAULT_MIN_BIT_ERRORS)]
    pub min_errors: u64,
    /// Stop a point after this many blocks.
    #[arg(long, default_value_t = SimConfig::DEFAULT_MAX_BLOCKS)]
    pub max_blocks: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SimulateArgs {
    /// Interleaver file.
    #[arg(long)]
    pub input: PathBuf,
    /// Curve title in the plot script.
    #[arg(long)]
    pub label: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct CompareArgs {
    /// Interleaver file; repeat for each curve.
    #[arg(long = "input", required = true)]
    pub inputs: Vec<PathBuf>,
    /// Curve label, one per input; defaults to the file stem.
    #[arg(long = "label")]
    pub labels: Vec<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub sweep: SweepArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// Manifest written by an earlier run.
    #[arg(long)]
    pub manifest: PathBuf,
}

/// Failure of a CLI run, carrying its exit code class.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Invalid(String),
    Resource(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Resource(_) => EXIT_RESOURCE,
            _ => EXIT_INVALID,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Invalid(m) | CliError::Resource(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<cubil_core::Error> for CliError {
    fn from(e: cubil_core::Error) -> Self {
        if e.is_resource() {
            CliError::Resource(e.to_string())
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code: 0 on success, 1 on usage or validation failure, 2 when
/// a budget or resource limit is hit.
pub fn run_cli<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_INVALID
                }
            };
        }
    };
    match execute(cli.command, cli.format, cli.out_dir, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(
    mut command: Command,
    format: Format,
    out_dir: Option<PathBuf>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    if let Command::Replay(args) = &command {
        let m = RunManifest::read(&args.manifest).map_err(|e| CliError::Io(format!("{}: {e}", args.manifest.display())))?;
        if matches!(m.params, Command::Replay(_)) {
            return Err(CliError::Invalid("a manifest cannot record a replay".into()));
        }
        return execute(m.params, m.format, Some(out_dir.unwrap_or(m.out_dir)), stdout, stderr);
    }

    let (seed, generated) = command.resolve_seed();
    if let (Some(seed), true) = (seed, generated) {
        let _ = writeln!(stderr, "generated seed {seed}");
    }
    command.absolutize_inputs()?;

    let outcome = commands::run(&command)?;

    let out_dir = out_dir.unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&out_dir)?;
    let out_dir = fs::canonicalize(&out_dir)?;
    let name = command.name();

    let text = outcome.report.render(format);
    stdout.write_all(text.as_bytes())?;

    let report_file = PathBuf::from(format!("{name}.report.{}", format.extension()));
    let mut artifacts = vec![report_file.clone()];
    write_file(&out_dir, &report_file, &text)?;
    for (file, contents) in &outcome.artifacts {
        write_file(&out_dir, file, contents)?;
        artifacts.push(file.clone());
    }

    let manifest = RunManifest {
        command: name.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed,
        format,
        params: command,
        out_dir: out_dir.clone(),
        artifacts,
    };
    manifest.write(&out_dir.join(RunManifest::file_name(name)))?;
    Ok(outcome.status)
}

fn write_file(dir: &Path, file: &Path, contents: &str) -> Result<(), CliError> {
    let path = dir.join(file);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(&path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
