// Copyright 2026 the Sessile Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Command-line front end for the `sessile` library.
//!
//! Every option can also come from a `key=value` file passed with
//! `--config`; flags given on the command line win. Exit status: 0 on
//! success, 1 on I/O failure, 2 on invalid input, 3 when a checked property
//! fails and 4 when the solver does not converge.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sessile::analytic::{self, AdhesionParam};
use sessile::candidates::{rank_candidates, write_ranking_csv};
use sessile::curve::{fmt_f64, sample_closed_form, GraphCurve};
use sessile::solver::{minimize_free_width, verify_angle, SolverConfig};
use sessile::svg::{self, ArcOverlay};
use sessile::verify::{gradient_check_sweep, inequality_sweep, SweepSpec};

const DEFAULT_GRID: usize = 256;
const DEFAULT_SWEEP_BETAS: &str = "0.1,0.3,0.5,0.7,0.9";
const DEFAULT_GRADCHECK_BETAS: &str = "0.1,0.5,0.9";
const GRADCHECK_TOLERANCE: f64 = 1e-6;
const GRADCHECK_GRID: usize = 32;

#[derive(Debug, Parser)]
#[command(
    name = "sessile",
    version,
    about = "Equilibrium shapes of a two-dimensional sessile drop"
)]
pub struct Cli {
    /// `key=value` file with defaults for any flag.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the closed-form minimizer.
    Analytic(AnalyticArgs),
    /// Minimize the energy numerically and compare with the closed form.
    Solve(SolveArgs),
    /// Check the sharp length inequality on random polylines.
    VerifyInequality(VerifyArgs),
    /// Compare the discrete gradient with central differences.
    Gradcheck(GradcheckArgs),
    /// Rank the candidate chamber configurations.
    Compare(CompareArgs),
    /// Write a sampled closed-form curve, or re-export a curve file.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub area: Option<f64>,
    /// `text` (default) or `csv`.
    #[arg(long)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub area: Option<f64>,
    /// Number of grid intervals.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Directory for `report.txt` and `curve.csv`. Without it the report
    /// goes to standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// `svg` also writes `curve.svg`.
    #[arg(long)]
    pub format: Option<Format>,
    /// Descent steps allowed per multiplier value.
    #[arg(long)]
    pub max_iterations: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma-separated β values.
    #[arg(long, allow_hyphen_values = true)]
    pub betas: Option<String>,
    /// Curves per β.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// CSV summary file.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GradcheckArgs {
    /// Comma-separated β values.
    #[arg(long, allow_hyphen_values = true)]
    pub betas: Option<String>,
    /// Curves per β.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub grid: Option<usize>,
    /// Largest accepted relative error.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Area of the bounded chamber.
    #[arg(long)]
    pub area: Option<f64>,
    /// CSV file; standard output if absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub area: Option<f64>,
    #[arg(long)]
    pub grid: Option<usize>,
    /// Curve CSV to re-export instead of sampling the closed form.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Destination file; standard output if absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// `csv` (default) or `svg`.
    #[arg(long)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Io(String),
    Validation(String),
    Property(String),
    NonConvergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Property(_) => 3,
            CliError::NonConvergence(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Property(m) => write!(f, "property check failed: {m}"),
            CliError::NonConvergence(m) => write!(f, "not converged: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<sessile::Error> for CliError {
    fn from(e: sessile::Error) -> Self {
        match &e {
            sessile::Error::Io(_) => CliError::Io(e.to_string()),
            sessile::Error::Csv(c) if c.is_io_error() => CliError::Io(e.to_string()),
            sessile::Error::BracketMiss { .. } => CliError::NonConvergence(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

const CONFIG_KEYS: &[&str] = &[
    "beta",
    "area",
    "grid",
    "samples",
    "seed",
    "betas",
    "output",
    "format",
    "input",
    "tolerance",
    "max_iterations",
];

/// Values read from a `key=value` file. Blank lines and `#` comments are
/// skipped.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Validation(format!("config line {}: expected key=value", i + 1))
            })?;
            let key = k.trim().replace('-', "_");
            if !CONFIG_KEYS.contains(&key.as_str()) {
                return Err(CliError::Validation(format!(
                    "config line {}: unknown key `{key}`",
                    i + 1
                )));
            }
            values.insert(key, v.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        self.values
            .get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| CliError::Validation(format!("config `{key}`: {e}")))
            })
            .transpose()
    }

    /// The flag if given, else the file value.
    fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        self.pick(flag, key)?
            .ok_or_else(|| CliError::Validation(format!("missing --{}", key.replace('_', "-"))))
    }
}

fn parse_betas(list: &str) -> Result<Vec<AdhesionParam>> {
    let betas = list
        .split(',')
        .map(|s| {
            let v: f64 = s
                .trim()
                .parse()
                .map_err(|_| CliError::Validation(format!("bad β `{s}`")))?;
            Ok(AdhesionParam::new(v)?)
        })
        .collect::<Result<Vec<_>>>()?;
    if betas.is_empty() {
        return Err(CliError::Validation("empty β list".into()));
    }
    Ok(betas)
}

fn positive_count(v: usize, name: &str) -> Result<usize> {
    if v == 0 {
        Err(CliError::Validation(format!("--{name} must be positive")))
    } else {
        Ok(v)
    }
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, contents: &[u8]) -> Result<()> {
    match path {
        Some(p) => write_file(p, contents),
        None => Ok(out.write_all(contents)?),
    }
}

/// Runs one command, writing its standard output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match &cli.command {
        Command::Analytic(a) => analytic_cmd(a, &file, out),
        Command::Solve(a) => solve_cmd(a, &file, out),
        Command::VerifyInequality(a) => verify_cmd(a, &file, out),
        Command::Gradcheck(a) => gradcheck_cmd(a, &file, out),
        Command::Compare(a) => compare_cmd(a, &file, out),
        Command::Export(a) => export_cmd(a, &file, out),
    }
}

fn analytic_cmd(a: &AnalyticArgs, file: &FileConfig, out: &mut dyn Write) -> Result<()> {
    let beta = AdhesionParam::new(file.require(a.beta, "beta")?)?;
    let area: f64 = file.require(a.area, "area")?;
    let format = file.pick(a.format, "format")?.unwrap_or(Format::Text);
    let regime = analytic::classify_beta(beta);
    let sol = analytic::closed_form_solution(beta, area)
        .map_err(|e| CliError::Validation(format!("{e} (regime {regime})")))?;
    let rows = [
        ("regime", regime.to_string()),
        ("R", fmt_f64(sol.radius)),
        ("p", fmt_f64(sol.half_width)),
        ("lambda", fmt_f64(sol.lambda)),
        (
            "angle_deg",
            fmt_f64(analytic::endpoint_angle(beta)?.to_degrees()),
        ),
        ("J*", fmt_f64(analytic::minimal_energy(beta, area)?)),
        ("c", fmt_f64(analytic::shape_constant(beta)?)),
        ("apex", fmt_f64(sol.apex_height)),
    ];
    let text = match format {
        Format::Text => rows
            .iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect::<String>(),
        Format::Csv => std::iter::once("quantity,value\n".to_string())
            .chain(rows.iter().map(|(k, v)| format!("{k},{v}\n")))
            .collect(),
        Format::Svg => return Err(CliError::Validation("analytic prints text or csv".into())),
    };
    Ok(out.write_all(text.as_bytes())?)
}

fn overlay(beta: AdhesionParam, area: f64) -> Result<ArcOverlay> {
    let sol = analytic::closed_form_solution(beta, area)?;
    Ok(ArcOverlay {
        radius: sol.radius,
        half_width: sol.half_width,
        center_depth: sol.center_depth,
    })
}

fn solve_cmd(a: &SolveArgs, file: &FileConfig, out: &mut dyn Write) -> Result<()> {
    let beta = AdhesionParam::new(file.require(a.beta, "beta")?)?;
    let area: f64 = file.require(a.area, "area")?;
    let grid = file.pick(a.grid, "grid")?.unwrap_or(DEFAULT_GRID);
    let output: Option<PathBuf> = file.pick(a.output.clone(), "output")?;
    let format = file.pick(a.format, "format")?.unwrap_or(Format::Csv);
    let mut config = SolverConfig::new(grid);
    if let Some(m) = file.pick(a.max_iterations, "max_iterations")? {
        config.max_inner_iterations = positive_count(m, "max-iterations")?;
    }

    let report = minimize_free_width(beta, area, &config)?;
    let angle = verify_angle(&report, beta)?;
    let sol = analytic::closed_form_solution(beta, area)?;
    let mut text = report.to_key_values();
    text.push_str(&format!(
        "contact_angle_deg={}\n",
        fmt_f64(angle.measured.to_degrees())
    ));
    text.push_str(&format!(
        "oracle_angle_deg={}\n",
        fmt_f64(angle.expected.to_degrees())
    ));
    text.push_str(&format!("oracle_p={}\n", fmt_f64(sol.half_width)));
    text.push_str(&format!(
        "oracle_energy={}\n",
        fmt_f64(analytic::minimal_energy(beta, area)?)
    ));

    match &output {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            write_file(&dir.join("report.txt"), text.as_bytes())?;
            write_file(
                &dir.join("curve.csv"),
                report.curve.to_csv_string().as_bytes(),
            )?;
            if format == Format::Svg {
                let picture = svg::render(&report.curve, Some(overlay(beta, area)?));
                write_file(&dir.join("curve.svg"), picture.as_bytes())?;
            }
            writeln!(out, "wrote {}", dir.display())?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    if report.converged {
        Ok(())
    } else {
        Err(CliError::NonConvergence(format!(
            "gradient norm {} after {} steps",
            fmt_f64(report.gradient_norm),
            report.inner_iterations
        )))
    }
}

fn verify_cmd(a: &VerifyArgs, file: &FileConfig, out: &mut dyn Write) -> Result<()> {
    let list: String = file
        .pick(a.betas.clone(), "betas")?
        .unwrap_or_else(|| DEFAULT_SWEEP_BETAS.into());
    let betas = parse_betas(&list)?;
    let samples = positive_count(
        file.pick(a.samples, "samples")?.unwrap_or(10_000),
        "samples",
    )?;
    let seed = file.pick(a.seed, "seed")?.unwrap_or(0);
    let output: Option<PathBuf> = file.pick(a.output.clone(), "output")?;
    let spec = SweepSpec::new(samples, seed);

    let mut csv =
        String::from("beta,samples,min_gap,min_scaled_gap,failures,energy_bound_failures\n");
    let mut failed = Vec::new();
    for (stream, beta) in betas.iter().enumerate() {
        let s = inequality_sweep(*beta, stream as u64, &spec)?;
        writeln!(
            out,
            "beta={} samples={} min_gap={} min_scaled_gap={} failures={} energy_bound_failures={}",
            fmt_f64(s.beta),
            s.samples,
            fmt_f64(s.min_gap),
            fmt_f64(s.min_scaled_gap),
            s.failures.len(),
            s.energy_bound_failures.len()
        )?;
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_f64(s.beta),
            s.samples,
            fmt_f64(s.min_gap),
            fmt_f64(s.min_scaled_gap),
            s.failures.len(),
            s.energy_bound_failures.len()
        ));
        if !s.passed() {
            failed.push(s.beta);
        }
    }
    if let Some(p) = &output {
        write_file(p, csv.as_bytes())?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Property(format!(
            "negative gap at β = {failed:?}"
        )))
    }
}

fn gradcheck_cmd(a: &GradcheckArgs, file: &FileConfig, out: &mut dyn Write) -> Result<()> {
    let list: String = file
        .pick(a.betas.clone(), "betas")?
        .unwrap_or_else(|| DEFAULT_GRADCHECK_BETAS.into());
    let betas = parse_betas(&list)?;
    let samples = positive_count(file.pick(a.samples, "samples")?.unwrap_or(100), "samples")?;
    let seed = file.pick(a.seed, "seed")?.unwrap_or(0);
    let grid = file.pick(a.grid, "grid")?.unwrap_or(GRADCHECK_GRID);
    if grid < 3 {
        return Err(CliError::Validation("--grid must be at least 3".into()));
    }
    let tolerance: f64 = file
        .pick(a.tolerance, "tolerance")?
        .unwrap_or(GRADCHECK_TOLERANCE);
    if tolerance.is_nan() || tolerance < 0.0 {
        return Err(CliError::Validation(
            "--tolerance must be nonnegative".into(),
        ));
    }
    let g = gradient_check_sweep(&betas, samples, seed, grid)?;
    writeln!(out, "curves={}", samples * betas.len())?;
    writeln!(out, "max_relative_error={}", fmt_f64(g.max_relative_error))?;
    writeln!(out, "max_absolute_error={}", fmt_f64(g.max_absolute_error))?;
    writeln!(out, "tolerance={}", fmt_f64(tolerance))?;
    if g.max_relative_error <= tolerance {
        Ok(())
    } else {
        Err(CliError::Property(format!(
            "relative gradient error {} exceeds {}",
            fmt_f64(g.max_relative_error),
            fmt_f64(tolerance)
        )))
    }
}

fn compare_cmd(a: &CompareArgs, file: &FileConfig, out: &mut dyn Write) -> Result<()> {
    let area: f64 = file.require(a.area, "area")?;
    let output: Option<PathBuf> = file.pick(a.output.clone(), "output")?;
    let mut buf = Vec::new();
    write_ranking_csv(&rank_candidates(area)?, &mut buf)?;
    emit(out, output.as_deref(), &buf)
}

fn export_cmd(a: &ExportArgs, file: &FileConfig, out: &mut dyn Write) -> Result<()> {
    let input: Option<PathBuf> = file.pick(a.input.clone(), "input")?;
    let output: Option<PathBuf> = file.pick(a.output.clone(), "output")?;
    let format = file.pick(a.format, "format")?.unwrap_or(Format::Csv);
    let beta = file
        .pick(a.beta, "beta")?
        .map(AdhesionParam::new)
        .transpose()?;

    let (curve, arc) = match &input {
        Some(path) => {
            let f = fs::File::open(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let curve = GraphCurve::read_csv(io::BufReader::new(f))?;
            let arc = match beta {
                Some(b) => Some(overlay(b, curve.area())?),
                None => None,
            };
            (curve, arc)
        }
        None => {
            let beta = beta.ok_or_else(|| CliError::Validation("missing --beta".into()))?;
            let area: f64 = file.require(a.area, "area")?;
            let grid = file.pick(a.grid, "grid")?.unwrap_or(DEFAULT_GRID);
            (
                sample_closed_form(beta, area, grid)?,
                Some(overlay(beta, area)?),
            )
        }
    };
    let bytes = match format {
        Format::Csv => curve.to_csv_string().into_bytes(),
        Format::Svg => svg::render(&curve, arc).into_bytes(),
        Format::Text => return Err(CliError::Validation("export writes csv or svg".into())),
    };
    emit(out, output.as_deref(), &bytes)
}
