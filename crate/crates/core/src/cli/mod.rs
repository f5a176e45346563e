//! Command-line driver: one task per invocation, CSV output with a `#`
//! header block and a JSON sidecar that can be fed back as `--config`.

pub mod config;
mod tasks;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser};
use serde_json::json;

pub use config::{Grid, SweepConfig, Task};
pub use tasks::{build, Table};

use config::RawConfig;

pub const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (", env!("NHSSH_GIT_DESCRIBE"), ")");

const UNITS: &str = "k_B = hbar = v = 1; energies and temperatures in units of t2; beta = 1/T";

const AFTER_HELP: &str = "\
Grids are written start:stop:count and include both endpoints.
--L-list takes a comma list (50,60,70) or an integer grid (50:250:5).
A configuration file holds `key = value` lines with the flag names as keys,
or a JSON object; the JSON sidecar of a previous run is accepted as is.
Flags override the file.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure at {point}: {source}")]
    Numeric { point: String, source: crate::Error },
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric { .. } => 3,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "nhssh", version = VERSION, about = "Sweeps of the Hermitian and non-reciprocal SSH chains", after_help = AFTER_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub task: Option<Task>,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Default, Args)]
pub struct Flags {
    /// Intracell hopping.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub t1: Option<f64>,
    /// Intercell hopping.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub t2: Option<f64>,
    /// Non-reciprocity: hoppings t1 + delta (A to B) and t1 - delta (B to A).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Delta grid start:stop:count.
    #[arg(long = "delta-range", global = true)]
    pub delta_range: Option<Grid>,
    /// t1 grid start:stop:count (phase-diagram).
    #[arg(long = "t1-range", global = true)]
    pub t1_range: Option<Grid>,
    /// Number of unit cells.
    #[arg(long = "L", global = true)]
    pub length: Option<usize>,
    /// Chain lengths for ee-scaling.
    #[arg(long = "L-list", global = true)]
    pub sizes: Option<String>,
    /// Temperature grid start:stop:count.
    #[arg(long = "T-range", alias = "T", global = true)]
    pub t_range: Option<Grid>,
    /// Inverse-temperature grid start:stop:count.
    #[arg(long = "beta-range", global = true)]
    pub beta_range: Option<Grid>,
    /// Largest inverse temperature; the grid is max/n, 2 max/n, ..., max.
    #[arg(long = "beta-max", global = true)]
    pub beta_max: Option<f64>,
    /// Number of inverse temperatures with --beta-max.
    #[arg(long = "beta-points", global = true)]
    pub beta_points: Option<usize>,
    /// Momentum points of the periodic reference spectrum.
    #[arg(long = "k-points", global = true)]
    pub k_points: Option<usize>,
    /// Entanglement block: half or centered.
    #[arg(long, global = true)]
    pub cut: Option<String>,
    /// Derivative order, 1 or 2.
    #[arg(long, global = true)]
    pub order: Option<u8>,
    /// Finite-difference step in delta.
    #[arg(long, global = true)]
    pub step: Option<f64>,
    /// Boundary condition for spectrum: obc or pbc.
    #[arg(long, global = true)]
    pub boundary: Option<String>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Output CSV path; a sidecar <out>.json is written next to it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Configuration file (key = value lines or JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

impl Flags {
    fn raw(&self) -> RawConfig {
        let mut m = RawConfig::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                m.insert(k.to_string(), v);
            }
        };
        put("t1", self.t1.map(|x| x.to_string()));
        put("t2", self.t2.map(|x| x.to_string()));
        put("delta", self.delta.map(|x| x.to_string()));
        put("delta-range", self.delta_range.map(|g| g.to_string()));
        put("t1-range", self.t1_range.map(|g| g.to_string()));
        put("L", self.length.map(|x| x.to_string()));
        put("L-list", self.sizes.clone());
        put("T-range", self.t_range.map(|g| g.to_string()));
        put("beta-range", self.beta_range.map(|g| g.to_string()));
        put("beta-max", self.beta_max.map(|x| x.to_string()));
        put("beta-points", self.beta_points.map(|x| x.to_string()));
        put("k-points", self.k_points.map(|x| x.to_string()));
        put("cut", self.cut.clone());
        put("order", self.order.map(|x| x.to_string()));
        put("step", self.step.map(|x| x.to_string()));
        put("boundary", self.boundary.clone());
        put("jobs", self.jobs.map(|x| x.to_string()));
        m
    }
}

/// Merges the configuration file (if any) with the flags; flags win.
pub fn resolve(cli: &Cli) -> Result<SweepConfig, CliError> {
    let mut raw = match &cli.flags.config {
        Some(path) => config::read_config_file(path)?,
        None => RawConfig::new(),
    };
    let flags = cli.flags.raw();
    // The file's beta shorthand and an explicit range on the command line
    // would otherwise conflict.
    if flags.contains_key("beta-range") {
        raw.remove("beta-max");
        raw.remove("beta-points");
    }
    if flags.contains_key("beta-max") || flags.contains_key("beta-points") {
        raw.remove("beta-range");
    }
    raw.extend(flags);
    SweepConfig::resolve(cli.task, &raw)
}

fn quote_free(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

/// Writes the `#` header block and the CSV body.
pub fn write_csv<W: Write>(out: W, cfg: &SweepConfig, table: &Table) -> Result<(), CliError> {
    let mut out = io::BufWriter::new(out);
    writeln!(out, "# nhssh {VERSION}")?;
    writeln!(out, "# task: {}", cfg.task.as_str())?;
    writeln!(out, "# units: {UNITS}")?;
    let settings: Vec<String> = cfg
        .to_raw()
        .into_iter()
        .map(|(k, v)| match v {
            serde_json::Value::String(s) => format!("{k}={s}"),
            other => format!("{k}={other}"),
        })
        .collect();
    writeln!(out, "# config: {}", quote_free(&settings.join(" ")))?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.columns).map_err(csv_error)?;
    for row in &table.rows {
        w.write_record(row).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(io::Error::other(e.to_string()))
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn write_sidecar(path: &Path, csv: &Path, cfg: &SweepConfig, table: &Table, seconds: f64, jobs: usize) -> Result<(), CliError> {
    let doc = json!({
        "tool": "nhssh",
        "version": VERSION,
        "task": cfg.task.as_str(),
        "config": cfg.to_raw(),
        "units": UNITS,
        "output": {
            "csv": csv.display().to_string(),
            "columns": table.columns,
            "rows": table.rows.len(),
        },
        "report": table.report,
        "jobs": jobs,
        "wall_time_s": seconds,
    });
    let text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(io::Error::other(e)))?;
    fs::write(path, text + "\n")?;
    Ok(())
}

/// Runs one task. CSV goes to `--out` (with sidecar) or standard output;
/// report lines go to standard output when a file is written and to
/// standard error otherwise.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = resolve(cli)?;
    let jobs = cfg.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Config(format!("--jobs {jobs}: {e}")))?;
    let start = Instant::now();
    let table = pool.install(|| tasks::build(&cfg))?;
    let seconds = start.elapsed().as_secs_f64();
    match &cli.flags.out {
        Some(path) => {
            write_csv(fs::File::create(path)?, &cfg, &table)?;
            write_sidecar(&sidecar_path(path), path, &cfg, &table, seconds, jobs)?;
            for line in &table.report {
                println!("{line}");
            }
        }
        None => {
            write_csv(io::stdout().lock(), &cfg, &table)?;
            for line in &table.report {
                eprintln!("{line}");
            }
        }
    }
    Ok(())
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("nhssh: {e}");
            e.exit_code()
        }
    }
}
