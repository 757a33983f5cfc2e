//! `transpin`: spin-density maps, observable reports and the verification
//! suite for guided and surface electromagnetic modes.
//!
//! Exit codes: 0 success, 1 configuration error, 2 I/O error, 3 failed
//! verification. `TRANSPIN_THREADS` caps the worker pool (0 or unset = auto).

mod config;
mod error;
mod report;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;
use transpin::spinmap::{guided_spin_map, surface_spin_map, SpinMapRow};
use transpin::verify::{run_checks, Bound, CatalogueOptions, CheckOutcome};

use crate::config::{ResolvedMode, RunConfig};
use crate::error::{CliError, CliResult};

pub const THREADS_ENV: &str = "TRANSPIN_THREADS";

#[derive(Debug, Parser)]
#[command(name = "transpin", version, about = "Transverse spin of guided and surface electromagnetic modes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the closed-form spin density on a uniform grid as CSV.
    Spinmap(RunArgs),
    /// Write quadrature totals, closed forms, residuals and mass data as JSON.
    Report(RunArgs),
    /// Run the verification catalogue and print a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// JSON run configuration; flags below override its fields.
    #[arg(long, short)]
    config: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
}

/// Command-line overrides; each flag sets the config field of the same name.
#[derive(Debug, Default, Args)]
struct Overrides {
    /// Mode kind: guided | surface  [mode.kind]
    #[arg(long)]
    kind: Option<String>,
    /// Mode family: TM | TE  [mode.family]
    #[arg(long)]
    family: Option<String>,
    /// Propagation direction: +z | -z  [mode.direction]
    #[arg(long, allow_hyphen_values = true)]
    direction: Option<String>,
    /// Field amplitude (E0 for TM, cB0 for TE)  [mode.amplitude]
    #[arg(long)]
    amplitude: Option<f64>,
    /// Set the amplitude so the mode carries this many quanta  [mode.n_quanta]
    #[arg(long)]
    n_quanta: Option<u64>,
    /// Angular frequency  [mode.omega]
    #[arg(long)]
    omega: Option<f64>,
    /// Angular frequency as a multiple of the cutoff  [mode.omega_ratio]
    #[arg(long)]
    omega_ratio: Option<f64>,
    /// First mode index  [mode.m]
    #[arg(long)]
    m: Option<u32>,
    /// Second mode index  [mode.n]
    #[arg(long)]
    n: Option<u32>,
    /// Guide width along x  [mode.a]
    #[arg(long)]
    a: Option<f64>,
    /// Guide height along y  [mode.b]
    #[arg(long)]
    b: Option<f64>,
    /// Guide length  [mode.length]
    #[arg(long)]
    length: Option<f64>,
    /// Refractive index of the denser medium  [mode.eta]
    #[arg(long)]
    eta: Option<f64>,
    /// Incidence angle in radians  [mode.phi]
    #[arg(long)]
    phi: Option<f64>,
    /// Incidence angle in degrees  [mode.phi_deg]
    #[arg(long)]
    phi_deg: Option<f64>,
    /// Interface area for surface totals  [mode.area]
    #[arg(long)]
    area: Option<f64>,
    /// Unit system: si | natural  [units]
    #[arg(long)]
    units: Option<String>,
    /// Spin combination: single | averaged  [combination]
    #[arg(long)]
    combination: Option<String>,
    /// Amplitude preset: none | paper-figures  [normalize]
    #[arg(long)]
    normalize: Option<String>,
    /// Grid samples along x  [grid.nx]
    #[arg(long)]
    nx: Option<usize>,
    /// Grid samples along y  [grid.ny]
    #[arg(long)]
    ny: Option<usize>,
    /// Surface map extent in decay lengths  [depth]
    #[arg(long)]
    depth: Option<f64>,
    /// Output file, `-` for standard output  [output]
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl Overrides {
    fn entries(&self) -> Vec<(&'static str, Value)> {
        fn push<T: Into<Value> + Clone>(out: &mut Vec<(&'static str, Value)>, key: &'static str, v: &Option<T>) {
            if let Some(v) = v {
                out.push((key, v.clone().into()));
            }
        }
        let mut out = Vec::new();
        push(&mut out, "mode.kind", &self.kind);
        push(&mut out, "mode.family", &self.family);
        push(&mut out, "mode.direction", &self.direction);
        push(&mut out, "mode.amplitude", &self.amplitude);
        push(&mut out, "mode.n_quanta", &self.n_quanta);
        push(&mut out, "mode.omega", &self.omega);
        push(&mut out, "mode.omega_ratio", &self.omega_ratio);
        push(&mut out, "mode.m", &self.m);
        push(&mut out, "mode.n", &self.n);
        push(&mut out, "mode.a", &self.a);
        push(&mut out, "mode.b", &self.b);
        push(&mut out, "mode.length", &self.length);
        push(&mut out, "mode.eta", &self.eta);
        push(&mut out, "mode.phi", &self.phi);
        push(&mut out, "mode.phi_deg", &self.phi_deg);
        push(&mut out, "mode.area", &self.area);
        push(&mut out, "units", &self.units);
        push(&mut out, "combination", &self.combination);
        push(&mut out, "normalize", &self.normalize);
        push(&mut out, "grid.nx", &self.nx);
        push(&mut out, "grid.ny", &self.ny);
        push(&mut out, "depth", &self.depth);
        if let Some(p) = &self.output {
            out.push(("output", Value::String(p.to_string_lossy().into_owned())));
        }
        out
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Run only checks whose name contains this substring.
    filter: Option<String>,
    /// Append a check that always fails (exercises the failure path).
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version go to stdout with success; usage errors are
            // configuration errors like any other bad input
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("transpin: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Spinmap(args) => cmd_spinmap(&load(&args)?),
        Command::Report(args) => cmd_report(&load(&args)?),
        Command::Verify(args) => cmd_verify(args.filter.as_deref(), args.inject_fault),
    }
}

fn configure_threads() -> CliResult<()> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|e| CliError::Config(format!("{THREADS_ENV}={s:?}: {e}")))?,
        Err(std::env::VarError::NotPresent) => 0,
        Err(e) => return Err(CliError::Config(format!("{THREADS_ENV}: {e}"))),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))
}

fn load(args: &RunArgs) -> CliResult<RunConfig> {
    config::load(args.config.as_deref(), &args.overrides.entries())
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

/// Shortest round-trip decimal form of a binary64 value.
fn fmt_f64(buf: &mut ryu::Buffer, x: f64) -> &str {
    if x.is_finite() {
        buf.format_finite(x)
    } else if x.is_nan() {
        "NaN"
    } else if x > 0.0 {
        "inf"
    } else {
        "-inf"
    }
}

pub fn spinmap_csv(rows: &[SpinMapRow]) -> String {
    let mut out = String::with_capacity(32 + rows.len() * 96);
    out.push_str("x,y,sx,sy,sz,mag\n");
    let mut buf = ryu::Buffer::new();
    for r in rows {
        for (i, v) in [r.x, r.y, r.sx, r.sy, r.sz, r.mag].into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(fmt_f64(&mut buf, v));
        }
        out.push('\n');
    }
    out
}

fn cmd_spinmap(cfg: &RunConfig) -> CliResult<()> {
    cfg.validate_grid()?;
    let (nx, ny) = (cfg.grid.nx, cfg.grid.ny);
    let rows = match cfg.resolve()? {
        ResolvedMode::Guided(spec) => guided_spin_map(&spec, nx, ny, cfg.combination)?,
        ResolvedMode::Surface(spec) => surface_spin_map(&spec, nx, ny, cfg.depth, cfg.combination)?,
    };
    write_output(cfg.output_path(), &spinmap_csv(&rows))
}

fn cmd_report(cfg: &RunConfig) -> CliResult<()> {
    let json = match cfg.resolve()? {
        ResolvedMode::Guided(spec) => serde_json::to_string_pretty(&report::guided_report(&spec, cfg.units, &cfg.quadrature)?),
        ResolvedMode::Surface(spec) => serde_json::to_string_pretty(&report::surface_report(
            &spec,
            cfg.units,
            &cfg.quadrature,
            cfg.combination,
        )?),
    }
    .map_err(|e| CliError::Config(format!("serializing report: {e}")))?;
    write_output(cfg.output_path(), &(json + "\n"))
}

fn describe_outcome(o: &CheckOutcome) -> String {
    match (&o.measurement, &o.error) {
        (_, Some(err)) => format!("error: {err}"),
        (Some(m), None) => {
            let op = match m.bound {
                Bound::AtMost => "<=",
                Bound::AtLeast => ">=",
            };
            format!(
                "expected {:e}, actual {:e}, residual {:e} {op} {:e}",
                m.expected, m.actual, m.residual, m.tolerance
            )
        }
        (None, None) => String::from("no measurement"),
    }
}

fn cmd_verify(filter: Option<&str>, inject_fault: bool) -> CliResult<()> {
    let report = run_checks(filter, CatalogueOptions { inject_fault });
    if report.outcomes.is_empty() {
        return Err(CliError::Config(format!("no checks match {:?}", filter.unwrap_or(""))));
    }
    let width = report.outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut table = String::new();
    for o in &report.outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(table, "{status}  {:width$}  {}", o.name, describe_outcome(o));
    }
    let failed = report.failures().count();
    let total = report.outcomes.len();
    let _ = writeln!(table, "\n{} passed, {failed} failed, {total} total", total - failed);
    write_output(None, &table)?;
    if failed > 0 {
        for o in report.failures() {
            eprintln!("FAILED {}: {}", o.name, describe_outcome(o));
        }
        return Err(CliError::Verification { failed, total });
    }
    Ok(())
}
