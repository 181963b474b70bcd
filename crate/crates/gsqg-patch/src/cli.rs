//! `gsqg` command-line front end.
//!
//! Exit codes: 0 success, 1 validation finished with failing checks, 2 invalid
//! configuration, 3 Newton divergence (the partial branch is still written),
//! 4 I/O failure. Errors are reported as one JSON line on stderr.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::diagnostics::{reconstruct, record_diagnostics};
use crate::functional::{Mode, PatchGeometry, WindowPolicy};
use crate::kernels::MultiplierTable;
use crate::solver::{continue_branch, geometric_schedule, linear_schedule, SolutionBranch, SolverConfig};
use crate::{io, validate, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECKS_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DIVERGENCE: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "gsqg", version, about = "Co-rotating and travelling gSQG patch solutions near the point-vortex limit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Continue a branch of co-rotating m-fold patches.
    Corotating(RunArgs),
    /// Continue a branch of travelling patch pairs.
    Travelling(RunArgs),
    /// Write the multipliers beta_j and gamma_j as CSV.
    Multipliers(MultiplierArgs),
    /// Run the validation suite and write a pass/fail report.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub d: Option<f64>,
    /// Number of co-rotating patches.
    #[arg(long)]
    pub m: Option<usize>,
    /// Schedule as start:stop:count.
    #[arg(long)]
    pub eps: Option<String>,
    /// Geometric rather than linear spacing of the schedule.
    #[arg(long)]
    pub geom: bool,
    /// Fourier truncation J.
    #[arg(long = "J")]
    pub j: Option<usize>,
    /// Outer collocation grid N.
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Inner quadrature grid M.
    #[arg(long = "M")]
    pub inner: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MultiplierArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 16)]
    pub jmax: usize,
    /// Output directory; the CSV goes to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value = "validation")]
    pub out: PathBuf,
    /// Coarser grids and a 5-point schedule.
    #[arg(long)]
    pub quick: bool,
}

/// File form of a run; every field is optional and flags take precedence.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub alpha: Option<f64>,
    pub d: Option<f64>,
    pub m: Option<usize>,
    /// Explicit increasing schedule.
    pub schedule: Option<Vec<f64>>,
    #[serde(rename = "J")]
    pub j: Option<usize>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    #[serde(rename = "M")]
    pub inner: Option<usize>,
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub fd_step: Option<f64>,
    pub policy: Option<WindowPolicy>,
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Self { code: EXIT_CONFIG, kind: "config", message: message.into() }
    }

    fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        Self { code: EXIT_IO, kind: "io", message: format!("{}: {e}", path.display()) }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) => Self { code: EXIT_IO, kind: "io", message: e.to_string() },
            Error::Divergence { .. } => Self { code: EXIT_DIVERGENCE, kind: "divergence", message: e.to_string() },
            _ => Self::config(e.to_string()),
        }
    }
}

/// Parses `start:stop:count`.
pub fn parse_schedule(spec: &str, geometric: bool) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("eps schedule '{spec}' is not start:stop:count"));
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| format!("bad eps start '{}'", parts[0]))?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| format!("bad eps stop '{}'", parts[1]))?;
    let count: usize = parts[2].trim().parse().map_err(|_| format!("bad eps count '{}'", parts[2]))?;
    if count == 0 {
        return Err("eps count must be positive".into());
    }
    if count > 1 && !(stop > start) {
        return Err(format!("eps stop {stop} must exceed start {start}"));
    }
    if geometric {
        if !(start > 0.0) {
            return Err("geometric schedule needs start > 0".into());
        }
        Ok(geometric_schedule(start, stop, count))
    } else {
        Ok(linear_schedule(start, stop, count))
    }
}

fn resolve(args: &RunArgs, travelling: bool) -> Result<(PatchGeometry, SolverConfig, PathBuf), Failure> {
    let file = match &args.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::io(p, e))?;
            serde_json::from_str::<RunConfig>(&text).map_err(|e| Failure::config(format!("{}: {e}", p.display())))?
        }
        None => RunConfig::default(),
    };
    let alpha = args.alpha.or(file.alpha).ok_or_else(|| Failure::config("missing --alpha"))?;
    let d = args.d.or(file.d).unwrap_or(1.0);
    let mode = if travelling {
        if args.m.is_some() || file.m.is_some() {
            return Err(Failure::config("--m applies to corotating runs only"));
        }
        Mode::Travelling
    } else {
        Mode::Corotating { m: args.m.or(file.m).unwrap_or(2) }
    };
    let defaults = SolverConfig::default();
    let schedule = match (&args.eps, file.schedule) {
        (Some(s), _) => parse_schedule(s, args.geom).map_err(Failure::config)?,
        (None, Some(s)) => s,
        (None, None) => defaults.schedule.clone(),
    };
    let cfg = SolverConfig {
        j: args.j.or(file.j).unwrap_or(defaults.j),
        n: args.n.or(file.n).unwrap_or(defaults.n),
        m: args.inner.or(file.inner).unwrap_or(defaults.m),
        tol: args.tol.or(file.tol).unwrap_or(defaults.tol),
        max_iter: file.max_iter.unwrap_or(defaults.max_iter),
        fd_step: file.fd_step.unwrap_or(defaults.fd_step),
        schedule,
        policy: file.policy.unwrap_or(defaults.policy),
    };
    let geom = PatchGeometry::new(alpha, d, mode, 0.0)?;
    if !(1.0..2.0).contains(&alpha) {
        return Err(Failure::config(format!("alpha = {alpha} outside the solver domain [1, 2)")));
    }
    cfg.validate()?;
    let out = args.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from("."));
    Ok((geom, cfg, out))
}

fn create_dir(dir: &Path) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::io(path, e))
}

fn attach_diagnostics(branch: &mut SolutionBranch, geom: &PatchGeometry) {
    let n = branch.config.n;
    for r in branch.records.iter_mut() {
        let g = PatchGeometry { eps: r.eps, ..*geom };
        r.diagnostics = record_diagnostics(r, &g, n, Some(n))
            .or_else(|_| record_diagnostics(r, &g, n, None))
            .ok();
    }
}

fn run_branch(args: &RunArgs, travelling: bool) -> Result<i32, Failure> {
    let (geom, cfg, out) = resolve(args, travelling)?;
    create_dir(&out)?;
    let mut branch = continue_branch(&geom, &cfg)?;
    attach_diagnostics(&mut branch, &geom);
    write(&out.join("branch.json"), &io::to_json(&branch)?)?;
    for (k, r) in branch.records.iter().enumerate().filter(|(_, r)| r.eps != 0.0) {
        let fam = reconstruct(r, &geom, cfg.n)?;
        write(&out.join(format!("patch_{k:03}.csv")), &io::boundary_csv(&fam))?;
    }
    match &branch.termination {
        None => Ok(EXIT_OK),
        Some(t) => Err(Failure { code: EXIT_DIVERGENCE, kind: "divergence", message: t.message.clone() }),
    }
}

fn run_multipliers(args: &MultiplierArgs) -> Result<i32, Failure> {
    if args.jmax == 0 {
        return Err(Failure::config("--jmax must be positive"));
    }
    let table = MultiplierTable::new(args.alpha, args.jmax)?;
    let csv = io::multiplier_csv(&table);
    match &args.out {
        Some(dir) => {
            create_dir(dir)?;
            write(&dir.join("multipliers.csv"), &csv)?;
        }
        None => print!("{csv}"),
    }
    Ok(EXIT_OK)
}

fn run_validate(args: &ValidateArgs) -> Result<i32, Failure> {
    let cfg = if args.quick {
        SolverConfig { j: 16, n: 128, m: 128, schedule: geometric_schedule(5e-3, 5e-2, 5), ..SolverConfig::default() }
    } else {
        validate::suite_config()
    };
    create_dir(&args.out)?;
    let report = validate::run(&cfg)?;
    for c in &report.checks {
        println!("[{}] {} {}: {}", c.criterion, if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    println!("{} passed, {} failed", report.passed, report.failed);
    write(&args.out.join("report.json"), &io::to_json(&report)?)?;
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_CHECKS_FAILED })
}

fn report(f: &Failure) {
    let line = serde_json::json!({ "error": f.kind, "code": f.code, "message": f.message });
    eprintln!("{line}");
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return EXIT_OK;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            report(&Failure::config(first));
            return EXIT_CONFIG;
        }
    };
    let result = match &cli.command {
        Command::Corotating(a) => run_branch(a, false),
        Command::Travelling(a) => run_branch(a, true),
        Command::Multipliers(a) => run_multipliers(a),
        Command::Validate(a) => run_validate(a),
    };
    result.unwrap_or_else(|f| {
        report(&f);
        f.code
    })
}
