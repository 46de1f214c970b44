//! The `pthermit` command line: `spectrum`, `verify` and `figures`.
//!
//! Exit codes: 0 on success, 1 when a computation or verification fails,
//! 2 on usage or configuration errors.

pub mod config;
pub mod figures;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::build_gamma_rep;
use crate::dirac::{build_hamiltonian, spectrum, SignVariant};
use crate::error::Error;
use crate::verify::{run_suite, Suite, VerifyReport};
use config::Config;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const STDOUT_MARKER: &str = "-";

#[derive(Debug, Parser)]
#[command(name = "pthermit", version, about = "Gamma5-mass Dirac Hamiltonians: spectra, operator identities, figure data")]
pub struct Cli {
    /// Emit JSON; with a PATH, write it there instead of stdout.
    #[arg(long, global = true, value_name = "PATH", num_args = 0..=1, default_missing_value = STDOUT_MARKER)]
    pub json: Option<String>,

    /// Suppress human-readable output.
    #[arg(long, short, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues, PT phase and physical mass of H at one momentum.
    Spectrum(SpectrumArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Write fig1.csv .. fig4.csv.
    Figures(FiguresArgs),
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub m1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub m2: Option<f64>,
    /// Momentum; comma-separated components in 4D (a single value is taken along the third axis).
    #[arg(long, allow_negative_numbers = true, value_delimiter = ',')]
    pub p: Option<Vec<f64>>,
    /// Spacetime dimension, 2 or 4.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Mass signs: pp, pm, mp, mm (or ++, +-, -+, --).
    #[arg(long, allow_hyphen_values = true)]
    pub variant: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Operators,
    Desitter,
    Massdomain,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Operators => Suite::Operators,
            SuiteArg::Desitter => Suite::Desitter,
            SuiteArg::Massdomain => Suite::Massdomain,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Option<SuiteArg>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(long)]
    pub mmax: Option<f64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub points: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Where JSON output goes.
enum JsonTarget {
    None,
    Stdout,
    File(PathBuf),
}

impl JsonTarget {
    fn from_flag(flag: &Option<String>) -> Self {
        match flag.as_deref() {
            None => Self::None,
            Some(STDOUT_MARKER) => Self::Stdout,
            Some(path) => Self::File(PathBuf::from(path)),
        }
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(json_before_subcommand(args)) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let config = match Config::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    run(&cli, &config)
}

/// A bare `--json` directly followed by a subcommand name means stdout, not a
/// file named after the subcommand.
fn json_before_subcommand<I, T>(args: I) -> Vec<OsString>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let command = Cli::command();
    let is_subcommand = |arg: &OsString| command.get_subcommands().any(|c| arg.to_str() == Some(c.get_name()));
    let mut out: Vec<OsString> = Vec::new();
    for arg in args.into_iter().map(Into::into) {
        if is_subcommand(&arg) && out.last().is_some_and(|prev| prev == "--json") {
            out.push(STDOUT_MARKER.into());
        }
        out.push(arg);
    }
    out
}

pub fn run(cli: &Cli, config: &Config) -> i32 {
    let json = JsonTarget::from_flag(&cli.json);
    let outcome = match &cli.command {
        Command::Spectrum(args) => cmd_spectrum(args, config, &json, cli.quiet),
        Command::Verify(args) => cmd_verify(args, config, &json, cli.quiet),
        Command::Figures(args) => cmd_figures(args, config, &json, cli.quiet),
    };
    match outcome {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            EXIT_FAILURE
        }
    }
}

enum CliError {
    Usage(String),
    Failure(String),
}

impl From<config::ConfigError> for CliError {
    fn from(e: config::ConfigError) -> Self {
        Self::Usage(e.to_string())
    }
}

fn emit_json<T: Serialize>(value: &T, target: &JsonTarget) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Failure(e.to_string()))?;
    match target {
        JsonTarget::None => Ok(()),
        JsonTarget::Stdout => stdout_line(&text),
        JsonTarget::File(path) => write_file(path, &text),
    }
}

/// Writes a line to stdout; a closed pipe ends output quietly.
fn stdout_line(text: &str) -> Result<(), CliError> {
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Failure(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    let mut f = std::fs::File::create(path).map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))?;
    f.write_all(text.as_bytes()).map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))
}

#[derive(Debug, Serialize)]
struct ComplexOut {
    re: f64,
    im: f64,
}

impl From<Complex64> for ComplexOut {
    fn from(z: Complex64) -> Self {
        // Normalise −0 so that output does not depend on roundoff signs.
        Self { re: z.re + 0.0, im: z.im + 0.0 }
    }
}

#[derive(Debug, Serialize)]
struct SpectrumOut {
    dim: usize,
    p: Vec<f64>,
    m1: f64,
    m2: f64,
    variant: &'static str,
    eigenvalues: Vec<ComplexOut>,
    phase: &'static str,
    physical_mass: ComplexOut,
}

fn cmd_spectrum(args: &SpectrumArgs, config: &Config, json: &JsonTarget, quiet: bool) -> Result<i32, CliError> {
    let dim = config.resolve(args.dim, "dim", 2usize)?;
    let rep = build_gamma_rep(dim).map_err(|e| CliError::Usage(e.to_string()))?;
    let m1 = config.lookup(args.m1, "m1")?.ok_or_else(|| CliError::Usage("--m1 is required".into()))?;
    let m2 = config.lookup(args.m2, "m2")?.ok_or_else(|| CliError::Usage("--m2 is required".into()))?;
    let variant_raw = args.variant.clone().or_else(|| config.raw("variant").map(str::to_string)).unwrap_or_else(|| "pp".into());
    let variant: SignVariant = variant_raw.parse().map_err(|e: Error| CliError::Usage(e.to_string()))?;
    let mut p = match &args.p {
        Some(p) => p.clone(),
        None => match config.raw("p") {
            Some(raw) => raw
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::Usage(format!("config key `p`: cannot parse `{raw}`")))?,
            None => vec![0.0],
        },
    };
    if p.len() == 1 && rep.spatial_dim() == 3 {
        p = vec![0.0, 0.0, p[0]];
    }

    let h = build_hamiltonian(&rep, &p, m1, m2, variant).map_err(|e| match e {
        Error::DimensionMismatch { .. } | Error::InvalidArgument(_) => CliError::Usage(e.to_string()),
        other => CliError::Failure(other.to_string()),
    })?;
    let report = spectrum(&h).map_err(|e| CliError::Failure(e.to_string()))?;
    let out = SpectrumOut {
        dim,
        p,
        m1,
        m2,
        variant: variant.as_str(),
        eigenvalues: report.eigenvalues.iter().map(|&z| z.into()).collect(),
        phase: report.phase.as_str(),
        physical_mass: report.physical_mass.into(),
    };
    match json {
        JsonTarget::None if !quiet => emit_json(&out, &JsonTarget::Stdout)?,
        JsonTarget::None => {}
        target => emit_json(&out, target)?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, config: &Config, json: &JsonTarget, quiet: bool) -> Result<i32, CliError> {
    let suite = match args.suite {
        Some(s) => Suite::from(s),
        None => match config.raw("suite") {
            Some(raw) => raw.parse().map_err(|e: Error| CliError::Usage(e.to_string()))?,
            None => Suite::All,
        },
    };
    let samples = config.resolve(args.samples, "samples", 1000u64)?;
    if samples == 0 {
        return Err(CliError::Usage("samples must be at least 1".into()));
    }
    let seed = config.resolve(args.seed, "seed", 7u64)?;
    let report = run_suite(suite, samples as usize, seed).map_err(|e| CliError::Failure(e.to_string()))?;

    if !quiet {
        print_verify_summary(&report, matches!(json, JsonTarget::Stdout))?;
    }
    emit_json(&report, json)?;
    Ok(if report.passed { EXIT_OK } else { EXIT_FAILURE })
}

fn print_verify_summary(report: &VerifyReport, to_stderr: bool) -> Result<(), CliError> {
    let mut lines = Vec::with_capacity(report.checks.len() + 1);
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {:<32} residual {:.3e}  tolerance {:.3e}", c.name, c.residual, c.tolerance);
        if let Some(note) = &c.note {
            line.push_str(&format!("  [{note}]"));
        }
        lines.push(line);
    }
    let verdict = if report.passed { "passed" } else { "FAILED" };
    lines.push(format!("suite {}: {verdict} ({} checks, seed {})", report.suite, report.checks.len(), report.seed));
    for line in lines {
        if to_stderr {
            eprintln!("{line}");
        } else {
            stdout_line(&line)?;
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct FiguresOut {
    m_max: f64,
    points: u64,
    files: Vec<String>,
}

fn cmd_figures(args: &FiguresArgs, config: &Config, json: &JsonTarget, quiet: bool) -> Result<i32, CliError> {
    let m_max = config.resolve(args.mmax, "m_max", figures::DEFAULT_M_MAX)?;
    if !(m_max > 0.0) || !m_max.is_finite() {
        return Err(CliError::Usage(format!("--mmax must be positive, got {m_max}")));
    }
    let points = config.resolve(args.points, "points", figures::DEFAULT_POINTS as u64)?;
    if points < 2 {
        return Err(CliError::Usage(format!("--points must be at least 2, got {points}")));
    }
    let out = config.resolve(args.out.clone(), "out", PathBuf::from("."))?;
    let written =
        figures::write_figures(&out, m_max, points as usize).map_err(|e| CliError::Failure(format!("{}: {e}", out.display())))?;
    if !quiet && matches!(json, JsonTarget::None) {
        for path in &written {
            stdout_line(&format!("wrote {}", path.display()))?;
        }
    }
    let summary = FiguresOut { m_max, points, files: written.iter().map(|p| p.display().to_string()).collect() };
    emit_json(&summary, json)?;
    Ok(EXIT_OK)
}
