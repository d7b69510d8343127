//! The `pendant` command.
//!
//! Exit status: 0 success, 1 failed verification or I/O failure, 2 bad
//! arguments or malformed spec, 3 numeric failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use pendant_core::bands::{uniform_grid, DEFAULT_GRID};
use pendant_core::lattice2d::brillouin_grid;
use pendant_core::verify::{run_all, VerifyConfig};
use pendant_core::{analyze, band_function, build_bloch, decompose, eigenvalues, extract, normalize};
use pendant_core::{scan_spectrum_2d, PendantSpec1D, PendantSpec2D};

use crate::export::{self, BandSample, ExportError, ScanSample};
use crate::report::{self, AnalysisJson, CharPolyJson, Scan2dJson, Settings, DEFAULT_TOL};
use crate::spec_file::{load_spec, SpecError, SpecFile, SpecJson};

#[derive(Debug, Parser)]
#[command(name = "pendant", version, about = "Spectra of pendant-decorated lattices")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bands, gaps, flat band and characteristic polynomial of a 1D pattern.
    Analyze {
        spec: PathBuf,
        /// Emit the full JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Coefficients of the exact characteristic polynomial, as JSON.
    Charpoly { spec: PathBuf },
    /// Sample every nonzero band on [0, pi] and write k,i,lambda as CSV.
    Bands {
        spec: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every invariant suite and print a pass/fail table.
    Verify {
        spec: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Scan a 2D pattern on an M x M Brillouin grid.
    Gap2d {
        spec: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Analyze,
    Charpoly,
    Bands,
    Verify,
    Gap2d,
}

/// Validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub command: CommandKind,
    pub spec_path: PathBuf,
    /// Sample count for `bands`, grid size for `verify` and `gap2d`.
    pub grid: usize,
    pub tol: f64,
    /// `None` writes to standard output.
    pub output: Option<PathBuf>,
    pub json_flag: bool,
}

impl CliConfig {
    pub const DEFAULT_GRID: usize = DEFAULT_GRID;
    pub const DEFAULT_TOL: f64 = DEFAULT_TOL;
    pub const MAX_TOL: f64 = 1e-2;

    pub fn parse_from<I, T>(argv: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        Ok(Self::from_args(Args::try_parse_from(argv)?))
    }

    fn from_args(args: Args) -> Self {
        let base = |command, spec_path| CliConfig {
            command,
            spec_path,
            grid: Self::DEFAULT_GRID,
            tol: Self::DEFAULT_TOL,
            output: None,
            json_flag: false,
        };
        match args.command {
            Command::Analyze { spec, json } => CliConfig { json_flag: json, ..base(CommandKind::Analyze, spec) },
            Command::Charpoly { spec } => base(CommandKind::Charpoly, spec),
            Command::Bands { spec, samples, out } => {
                CliConfig { grid: samples, output: out, ..base(CommandKind::Bands, spec) }
            }
            Command::Verify { spec, grid, tol } => CliConfig { grid, tol, ..base(CommandKind::Verify, spec) },
            Command::Gap2d { spec, grid, csv } => {
                CliConfig { grid, output: csv, ..base(CommandKind::Gap2d, spec) }
            }
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        match self.command {
            CommandKind::Bands if self.grid < 2 => Err(format!("--samples must be at least 2, got {}", self.grid)),
            CommandKind::Verify | CommandKind::Gap2d if self.grid < 3 => {
                Err(format!("--grid must be at least 3, got {}", self.grid))
            }
            _ if !(self.tol > 0.0 && self.tol <= Self::MAX_TOL) => {
                Err(format!("--tol must lie in (0, {:e}], got {}", Self::MAX_TOL, self.tol))
            }
            _ => Ok(()),
        }
    }

    fn settings(&self) -> Settings {
        Settings { grid: self.grid, tol: self.tol }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Spec(#[from] SpecError),
    #[error("{0}")]
    Core(#[from] pendant_core::Error),
    #[error("{0}")]
    Export(#[from] ExportError),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{failed} of {total} suites failed")]
    VerificationFailed { failed: usize, total: usize },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Spec(_) => 2,
            CliError::Core(e) if e.is_numeric() => 3,
            CliError::Core(_) => 2,
            CliError::Export(_) | CliError::Io(_) | CliError::VerificationFailed { .. } => 1,
        }
    }
}

/// Run the command line `argv` (program name first) and return the exit
/// status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match execute(&cfg, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cfg: &CliConfig, out: &mut dyn Write) -> Result<(), CliError> {
    cfg.validate().map_err(CliError::Usage)?;
    let spec = load_spec(&cfg.spec_path)?;
    match (cfg.command, spec) {
        (CommandKind::Gap2d, SpecFile::TwoD(spec)) => gap2d(cfg, &spec, out),
        (CommandKind::Gap2d, SpecFile::OneD(_)) => Err(CliError::Usage("gap2d needs a spec with dim 2".into())),
        (_, SpecFile::TwoD(_)) => Err(CliError::Usage("this command needs a spec with dim 1".into())),
        (CommandKind::Analyze, SpecFile::OneD(spec)) => analyze_cmd(cfg, &spec, out),
        (CommandKind::Charpoly, SpecFile::OneD(spec)) => {
            let p = extract(&normalize(&spec))?;
            out.write_all(report::to_json(&CharPolyJson::from(&p)).as_bytes())?;
            Ok(())
        }
        (CommandKind::Bands, SpecFile::OneD(spec)) => bands(cfg, &spec, out),
        (CommandKind::Verify, SpecFile::OneD(spec)) => verify(cfg, &spec, out),
    }
}

fn analyze_cmd(cfg: &CliConfig, spec: &PendantSpec1D, out: &mut dyn Write) -> Result<(), CliError> {
    let rep = analyze(spec)?;
    let json = AnalysisJson::new(&rep, cfg.settings());
    if cfg.json_flag {
        out.write_all(report::to_json(&json).as_bytes())?;
        return Ok(());
    }
    let d = &rep.decomposition;
    writeln!(out, "pattern       r={} pendants={:?}", spec.period(), spec.pendants())?;
    writeln!(out, "normalized    r={} pendants={:?}", rep.normalized.period(), rep.normalized.pendants())?;
    writeln!(out, "runs          {:?} (s={} p={} q={} star={} t={})", d.runs, d.s, d.p, d.q, d.star, d.t)?;
    if let Some(p) = &rep.charpoly {
        let coeffs = p.nonzero_coeffs().into_iter().map(|(m, a)| format!("A{m}={a}")).collect::<Vec<_>>();
        writeln!(out, "charpoly      sign={} {}", p.sign, coeffs.join(" "))?;
    }
    for (i, b) in json.bands.iter().enumerate() {
        writeln!(out, "band {:<8} [{:.16e}, {:.16e}]", i + 1, b[0], b[1])?;
    }
    writeln!(out, "flat_band     {} (multiplicity {})", json.flat_band, json.flat_band_multiplicity)?;
    for g in &json.gaps {
        writeln!(out, "gap           ({:.16e}, {:.16e})", g[0], g[1])?;
    }
    match json.spectral_gap {
        Some(r) => writeln!(out, "spectral_gap  {r:.16e}")?,
        None => writeln!(out, "spectral_gap  none")?,
    }
    writeln!(out, "settings      grid={} tol={:e}", cfg.grid, cfg.tol)?;
    Ok(())
}

fn bands(cfg: &CliConfig, spec: &PendantSpec1D, out: &mut dyn Write) -> Result<(), CliError> {
    let ks = uniform_grid(cfg.grid);
    let spec = normalize(spec);
    let dec = decompose(&spec)?;
    let mut samples = Vec::new();
    if dec.pure_lattice {
        for &k in &ks {
            let lambda = eigenvalues(&build_bloch(&spec, k)?)?[0];
            samples.push(BandSample { k, i: 1, lambda });
        }
    } else {
        for i in 1..=spec.cell_size() - dec.q {
            for (k, lambda) in band_function(&spec, i, &ks)? {
                samples.push(BandSample { k, i, lambda });
            }
        }
    }
    match &cfg.output {
        Some(path) => export::write_bands(BufWriter::new(File::create(path)?), &samples)?,
        None => export::write_bands(out, &samples)?,
    }
    Ok(())
}

fn verify(cfg: &CliConfig, spec: &PendantSpec1D, out: &mut dyn Write) -> Result<(), CliError> {
    let outcomes = run_all(spec, &VerifyConfig { grid: cfg.grid, tol: cfg.tol });
    writeln!(out, "pattern r={} pendants={:?} grid={} tol={:e}", spec.period(), spec.pendants(), cfg.grid, cfg.tol)?;
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    for o in &outcomes {
        let mark = if o.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{mark}  {:<width$}  {}", o.name, o.detail)?;
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        return Err(CliError::VerificationFailed { failed, total: outcomes.len() });
    }
    writeln!(out, "all {} suites passed", outcomes.len())?;
    Ok(())
}

fn gap2d(cfg: &CliConfig, spec: &PendantSpec2D, out: &mut dyn Write) -> Result<(), CliError> {
    let scan = scan_spectrum_2d(spec, cfg.grid)?;
    let summary = Gap2dReport { summary: Scan2dJson::new(SpecJson::from(spec), cfg.grid, &scan), settings: cfg.settings() };
    if let Some(path) = &cfg.output {
        let ks = brillouin_grid(cfg.grid);
        let n = scan.cell_size();
        let mut rows = Vec::with_capacity(scan.fiber_eigenvalues.len());
        for (f, chunk) in scan.fiber_eigenvalues.chunks(n).enumerate() {
            let (k1, k2) = (ks[f / ks.len()], ks[f % ks.len()]);
            rows.extend(chunk.iter().map(|&lambda| ScanSample { k1, k2, lambda }));
        }
        export::write_scan(BufWriter::new(File::create(path)?), &rows)?;
    }
    out.write_all(report::to_json(&summary).as_bytes())?;
    Ok(())
}

#[derive(serde::Serialize)]
struct Gap2dReport {
    #[serde(flatten)]
    summary: Scan2dJson,
    settings: Settings,
}
