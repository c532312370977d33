//! Command-line front end behind the `gascatter` binary.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 bad configuration
//! or I/O failure, 3 a pole was hit under `--strict`.

pub mod config;
pub mod output;
pub mod presets;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use crate::analysis::{self, SweepSpec};
use crate::verify;
pub use config::{AxisConfig, ConfigIssue, Format, RunConfig};
use output::{Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_STRICT_POLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gascatter", version, about = "Giant-atom single-photon scattering and frequency conversion")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    /// JSON run configuration; `-` reads stdin.
    #[arg(long, global = true, conflicts_with = "preset")]
    pub config: Option<PathBuf>,
    /// Named figure recipe (fig2a, fig3, fig4, fig5a, fig6, ...).
    #[arg(long, global = true)]
    pub preset: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, env = "GASCATTER_THREADS")]
    pub threads: Option<usize>,
    /// Seed for the verification suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Exit with code 3 when any evaluated point sits on a pole.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Scattering spectrum along a single detuning axis.
    Spectrum,
    /// Dense table over one or two axes.
    Sweep,
    /// Local extrema of the conversion contrast I2 along detuning.
    Contrast,
    /// Conversion zeros along detuning, classified.
    FindZeros,
    /// Randomized consistency suites.
    Verify,
}

/// A run that could not produce output, with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

fn config_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        message: message.into(),
    }
}

/// Parsed configuration and, when it came from a file, its text for error
/// locations.
struct Loaded {
    config: RunConfig,
    source: Option<String>,
}

impl Loaded {
    fn issue(&self, issue: ConfigIssue) -> Failure {
        let line = issue
            .key
            .zip(self.source.as_deref())
            .and_then(|(key, source)| config::locate_key(source, key));
        match line {
            Some(line) => config_error(format!("config line {line}: {}", issue.message)),
            None => config_error(format!("config: {}", issue.message)),
        }
    }
}

fn load(args: &Args, command: Command, stdin: &mut dyn Read) -> Result<Loaded, Failure> {
    let mut loaded = match (&args.preset, &args.config) {
        (Some(name), _) => Loaded {
            config: presets::preset(name).ok_or_else(|| {
                config_error(format!(
                    "unknown preset `{name}`; available: {}",
                    presets::PRESETS.join(", ")
                ))
            })?,
            source: None,
        },
        (None, Some(path)) => {
            let mut text = String::new();
            let read = if path.as_os_str() == "-" {
                stdin.read_to_string(&mut text).map(|_| ())
            } else {
                std::fs::read_to_string(path).map(|t| text = t)
            };
            read.map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
            let config: RunConfig = serde_json::from_str(&text).map_err(|e| {
                config_error(format!("config line {}: {e}", e.line()))
            })?;
            Loaded {
                config,
                source: Some(text),
            }
        }
        (None, None) if command == Command::Verify => Loaded {
            config: RunConfig::baseline(),
            source: None,
        },
        (None, None) => return Err(config_error("give --config FILE or --preset NAME")),
    };
    let config = &mut loaded.config;
    if args.format.is_some() {
        config.format = args.format;
    }
    if args.out.is_some() {
        config.out = args.out.clone();
    }
    if args.threads.is_some() {
        config.threads = args.threads;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    config.strict |= args.strict;
    Ok(loaded)
}

struct Rendered {
    text: String,
    code: i32,
}

/// Parse `argv` and run. Help and usage errors are reported through clap's
/// own exit codes (0 and 2).
pub fn main_with<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Args::try_parse_from(argv) {
        Ok(args) => run(&args, stdin, stdout, stderr),
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                EXIT_CONFIG
            } else {
                let _ = write!(stdout, "{}", e.render());
                EXIT_OK
            }
        }
    }
}

pub fn run(args: &Args, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match execute(args, stdin) {
        Ok((rendered, out)) => {
            let written = match &out {
                Some(path) => std::fs::write(path, &rendered.text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => stdout
                    .write_all(rendered.text.as_bytes())
                    .map_err(|e| format!("cannot write output: {e}")),
            };
            if let Err(message) = written {
                let _ = writeln!(stderr, "error: {message}");
                return EXIT_CONFIG;
            }
            match rendered.code {
                EXIT_STRICT_POLE => {
                    let _ = writeln!(stderr, "error: pole encountered in strict mode");
                }
                EXIT_VERIFY_FAILED => {
                    let _ = writeln!(stderr, "error: verification failed");
                }
                _ => {}
            }
            rendered.code
        }
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message);
            failure.code
        }
    }
}

fn execute(args: &Args, stdin: &mut dyn Read) -> Result<(Rendered, Option<PathBuf>), Failure> {
    let command = args.command;
    let loaded = load(args, command, stdin)?;
    let threads = match loaded.config.threads {
        Some(0) => return Err(config_error("--threads must be at least 1")),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| config_error(format!("cannot start worker pool: {e}")))?;
    let rendered = pool.install(|| dispatch(command, &loaded))?;
    Ok((rendered, loaded.config.out.clone()))
}

fn dispatch(command: Command, loaded: &Loaded) -> Result<Rendered, Failure> {
    let config = &loaded.config;
    if command == Command::Verify {
        return cmd_verify(loaded);
    }
    let spec = config.sweep_spec().map_err(|i| loaded.issue(i))?;
    let (table, poles) = match command {
        Command::Spectrum => cmd_spectrum(&spec)?,
        Command::Sweep => cmd_sweep(&spec)?,
        Command::Contrast => (cmd_contrast(&spec)?, false),
        Command::FindZeros => (cmd_find_zeros(&spec)?, false),
        Command::Verify => unreachable!(),
    };
    let text = match config.format.unwrap_or(Format::Csv) {
        Format::Csv => output::render_csv(config, &table),
        Format::Json => output::render_json(config, &table),
    };
    let code = if poles && config.strict {
        EXIT_STRICT_POLE
    } else {
        EXIT_OK
    };
    Ok(Rendered { text, code })
}

fn analysis_failure(e: analysis::AnalysisError) -> Failure {
    config_error(format!("config: {e}"))
}

fn spectrum_table(spec: &SweepSpec) -> Result<(Table, bool), Failure> {
    let sweep = analysis::sweep(spec).map_err(analysis_failure)?;
    let mut table = Table::new(sweep.columns());
    let mut poles = false;
    for row in sweep.rows {
        poles |= row.spectrum.pole;
        let mut cells: Vec<Cell> = row.coords.iter().copied().map(Cell::from).collect();
        cells.extend(row.spectrum.values().iter().copied().map(Cell::from));
        cells.push(Cell::from(row.spectrum.pole));
        table.rows.push(cells);
    }
    Ok((table, poles))
}

/// Spectrum along a single Δ axis.
pub fn cmd_spectrum(spec: &SweepSpec) -> Result<(Table, bool), Failure> {
    if spec.axis1.axis != analysis::SweepAxis::Delta || spec.axis2.is_some() {
        return Err(config_error(
            "config: spectrum needs axis1 = delta and no axis2 (use `sweep` otherwise)",
        ));
    }
    spectrum_table(spec)
}

pub fn cmd_sweep(spec: &SweepSpec) -> Result<(Table, bool), Failure> {
    spectrum_table(spec)
}

fn slice_columns(spec: &SweepSpec, rest: &[&str]) -> Vec<String> {
    spec.axis2
        .iter()
        .map(|a| a.axis.column_name().to_string())
        .chain(rest.iter().map(|s| s.to_string()))
        .collect()
}

/// Search results keyed by the outer axis value.
type Slices<T> = Vec<(Option<f64>, Vec<T>)>;

fn per_slice<T, F>(spec: &SweepSpec, search: F) -> Result<Slices<T>, Failure>
where
    T: Send,
    F: Fn(&SweepSpec) -> Result<Vec<T>, analysis::AnalysisError> + Sync,
{
    if spec.axis1.axis != analysis::SweepAxis::Delta {
        return Err(config_error("config: axis1 must be delta for this command"));
    }
    let results: Vec<_> = spec
        .slices()
        .into_par_iter()
        .map(|(value, slice)| search(&slice).map(|found| (value, found)))
        .collect();
    results.into_iter().collect::<Result<_, _>>().map_err(analysis_failure)
}

pub fn cmd_contrast(spec: &SweepSpec) -> Result<Table, Failure> {
    let slices = per_slice(spec, analysis::find_contrast_extrema)?;
    let mut table = Table::new(slice_columns(spec, &["delta", "I2", "kind", "bracket_width"]));
    for (value, extrema) in slices {
        for e in extrema {
            let mut row: Vec<Cell> = value.map(Cell::from).into_iter().collect();
            row.extend([
                Cell::from(e.delta),
                Cell::from(e.value),
                Cell::Text(kind_name(&e.kind)),
                Cell::from(e.bracket_width),
            ]);
            table.rows.push(row);
        }
    }
    Ok(table)
}

pub fn cmd_find_zeros(spec: &SweepSpec) -> Result<Table, Failure> {
    let slices = per_slice(spec, analysis::find_conversion_zeros)?;
    let mut table = Table::new(slice_columns(
        spec,
        &[
            "direction",
            "kind",
            "delta",
            "channel",
            "line_index",
            "phase_over_pi",
            "mismatch",
            "T_c",
            "bracket_width",
        ],
    ));
    for (value, zeros) in slices {
        for z in zeros {
            let mut row: Vec<Cell> = value.map(Cell::from).into_iter().collect();
            row.extend([
                Cell::Text(kind_name(&z.direction)),
                Cell::Text(kind_name(&z.kind)),
                Cell::from(z.location.unwrap_or(f64::NAN)),
                Cell::Text(kind_name(&z.condition.channel)),
                Cell::Int(z.condition.line_index),
                Cell::from(z.condition.phase_over_pi),
                Cell::from(z.condition.mismatch),
                Cell::from(z.residual),
                Cell::from(z.bracket_width),
            ]);
            table.rows.push(row);
        }
    }
    Ok(table)
}

/// snake_case name of a unit enum variant, as serde writes it.
fn kind_name<T: serde::Serialize>(value: &T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

fn cmd_verify(loaded: &Loaded) -> Result<Rendered, Failure> {
    let config = &loaded.config;
    let cfg = config.verify_config().map_err(|i| loaded.issue(i))?;
    let reports = verify::run_all(&cfg);
    let pass = reports.iter().all(|r| r.pass);
    let text = match config.format.unwrap_or(Format::Json) {
        Format::Json => output::render_report(config, &reports, pass),
        Format::Csv => {
            let mut table = Table::new(
                ["suite", "samples", "max_abs_error", "tolerance", "skipped", "pass"]
                    .map(String::from)
                    .to_vec(),
            );
            for r in &reports {
                table.rows.push(vec![
                    Cell::Text(r.suite.to_string()),
                    Cell::Int(r.samples as i64),
                    Cell::from(r.max_abs_error),
                    Cell::from(r.tolerance),
                    Cell::Int(r.skipped as i64),
                    Cell::from(r.pass),
                ]);
            }
            output::render_csv(config, &table)
        }
    };
    Ok(Rendered {
        text,
        code: if pass { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}
