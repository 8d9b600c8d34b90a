//! Command-line front end.
//!
//! Exit status: 0 when every verdict is `Pass`, 1 on any `Fail`, 2 on usage
//! errors, 3 when a check is inconclusive or classification fails, 4 on I/O
//! errors.

pub mod parse;
pub mod render;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::check::{
    check_backward_inclusion_with, check_cb_convexity_with, check_critical_in_hull_with,
    check_filled_in_hull_with, check_thurston_surjectivity_with, classify_equality_with, run_suite_with,
    CheckConfig, CheckName, CheckReport, JuliaHull,
};
use crate::error::Error;
use parse::{parse_polynomial, PolySpec};
use render::Scene;
use report::{exit_code, to_csv, to_json, Format, SuiteDocument};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Environment variable capping the worker count; 0 or unset means automatic.
pub const THREADS_ENV: &str = "JULIAHULL_THREADS";

#[derive(Parser, Debug)]
#[command(name = "juliahull", version, about = "Convex hulls of polynomial Julia sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the inclusion checks.
    Check(CheckArgs),
    /// Decide whether p⁻¹(H) = H and recover the normal form.
    Classify(CommonArgs),
    /// Draw the Julia sample, its hull, preimages and critical points as SVG.
    Render(RenderArgs),
    /// All checks and the classifier.
    Suite(CommonArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Coefficients `a0,a1,...` or a preset `cheb:d`, `negcheb:d`,
    /// `monomial:c,d`, `quad:c`.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    /// Julia samples.
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    /// Boundary samples of the hull.
    #[arg(long, default_value_t = 512)]
    pub m: usize,
    /// Interior samples of the hull.
    #[arg(long, default_value_t = 256)]
    pub k: usize,
    /// Tolerance relative to the hull diameter.
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Escape-grid resolution.
    #[arg(long, default_value_t = 512)]
    pub res: usize,
    #[arg(long = "max-iter", default_value_t = 200)]
    pub max_iter: usize,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct CheckArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Run a single check.
    #[arg(long, value_parser = parse_check_name)]
    pub only: Option<CheckName>,
}

#[derive(Args, Debug, Clone)]
pub struct RenderArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Also write the escape-time raster as binary PGM.
    #[arg(long = "raster-out")]
    pub raster_out: Option<PathBuf>,
}

fn parse_check_name(s: &str) -> Result<CheckName, String> {
    CheckName::ALL
        .into_iter()
        .find(|c| c.as_str() == s)
        .ok_or_else(|| {
            let names: Vec<&str> = CheckName::ALL.iter().map(|c| c.as_str()).collect();
            format!("unknown check `{s}`; expected one of {}", names.join(", "))
        })
}

impl CommonArgs {
    pub fn config(&self) -> CheckConfig {
        CheckConfig {
            julia_samples: self.n,
            boundary_samples: self.m,
            interior_samples: self.k,
            tol_rel: self.tol,
            seed: self.seed,
            residual_tol: CheckConfig::default().residual_tol,
            grid_resolution: self.res,
            max_iter: self.max_iter,
        }
    }
}

/// Parses arguments, runs the command, writes its output and returns the
/// exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    match execute(&cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            EXIT_IO
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| format!("{THREADS_ENV} must be a nonnegative integer, got `{value}`"))?;
    if n > 0 {
        // a pool installed earlier in the same process wins
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

enum Failure {
    Usage(String),
    Io(String),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn prepare(args: &CommonArgs) -> Result<(PolySpec, CheckConfig), Failure> {
    let spec = parse_polynomial(&args.poly).map_err(usage)?;
    spec.polynomial.require_degree(2).map_err(usage)?;
    let cfg = args.config();
    cfg.validate().map_err(usage)?;
    Ok((spec, cfg))
}

fn emit(out: &Option<PathBuf>, body: &[u8]) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Io(e.to_string());
    match out {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body).map_err(io)?;
            stdout.flush().map_err(io)
        }
    }
}

fn build_context(spec: &PolySpec, cfg: &CheckConfig) -> Result<Option<JuliaHull>, Failure> {
    match JuliaHull::build(&spec.polynomial, cfg) {
        Ok(ctx) => Ok(Some(ctx)),
        Err(Error::OrbitAborted { .. }) | Err(Error::NoConvergence { .. }) => Ok(None),
        Err(e) => Err(usage(e)),
    }
}

fn serialize_err(e: Error) -> Failure {
    Failure::Io(e.to_string())
}

fn execute(command: &Command) -> Result<i32, Failure> {
    match command {
        Command::Check(args) => {
            let common = &args.common;
            let (spec, cfg) = prepare(common)?;
            let names: Vec<CheckName> = match args.only {
                Some(c) => vec![c],
                None => CheckName::ALL.to_vec(),
            };
            let reports: Vec<CheckReport> = match build_context(&spec, &cfg)? {
                Some(ctx) => names.iter().map(|&c| run_check(c, &ctx, &cfg)).collect(),
                None => {
                    let outcome = crate::check::run_suite(&spec.polynomial, &cfg).map_err(usage)?;
                    outcome.reports.into_iter().filter(|r| names.contains(&r.check)).collect()
                }
            };
            let body = match common.format {
                Format::Json => to_json(&reports),
                Format::Csv => to_csv(&reports, None, &cfg),
            }
            .map_err(serialize_err)?;
            emit(&common.out, body.as_bytes())?;
            Ok(exit_code(&reports))
        }
        Command::Classify(common) => {
            let (spec, cfg) = prepare(common)?;
            let result = match build_context(&spec, &cfg)? {
                Some(ctx) => classify_equality_with(&ctx, &cfg),
                None => crate::check::classify_equality(&spec.polynomial, &cfg),
            };
            match result {
                Ok(cl) => {
                    let body = match common.format {
                        Format::Json => to_json(&cl),
                        Format::Csv => to_csv(&[], Some(&cl), &cfg),
                    }
                    .map_err(serialize_err)?;
                    emit(&common.out, body.as_bytes())?;
                    Ok(EXIT_PASS)
                }
                Err(e) => {
                    eprintln!("classification failed: {e}");
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }
        Command::Suite(common) => {
            let (spec, cfg) = prepare(common)?;
            let outcome = match build_context(&spec, &cfg)? {
                Some(ctx) => run_suite_with(&ctx, &cfg),
                None => crate::check::run_suite(&spec.polynomial, &cfg).map_err(usage)?,
            };
            let classification = outcome.classification.as_ref().ok();
            let body = match common.format {
                Format::Json => to_json(&SuiteDocument {
                    reports: &outcome.reports,
                    classification,
                    classification_error: outcome.classification.as_ref().err().map(|e| e.to_string()),
                }),
                Format::Csv => to_csv(&outcome.reports, classification, &cfg),
            }
            .map_err(serialize_err)?;
            emit(&common.out, body.as_bytes())?;
            let code = exit_code(&outcome.reports);
            Ok(if code == EXIT_PASS && classification.is_none() {
                EXIT_INCONCLUSIVE
            } else {
                code
            })
        }
        Command::Render(args) => {
            let common = &args.common;
            let (spec, cfg) = prepare(common)?;
            let Some(ctx) = build_context(&spec, &cfg)? else {
                eprintln!("inverse iteration failed; nothing to render");
                return Ok(EXIT_INCONCLUSIVE);
            };
            let outcome = run_suite_with(&ctx, &cfg);
            let scene = match Scene::build(&ctx, &cfg, &outcome.reports) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("render failed: {e}");
                    return Ok(EXIT_INCONCLUSIVE);
                }
            };
            emit(&common.out, scene.to_svg().as_bytes())?;
            if let Some(path) = &args.raster_out {
                let pgm = scene.raster.to_pgm(&spec.polynomial.coefficient_list());
                std::fs::write(path, pgm).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
            Ok(EXIT_PASS)
        }
    }
}

fn run_check(name: CheckName, ctx: &JuliaHull, cfg: &CheckConfig) -> CheckReport {
    match name {
        CheckName::BackwardInclusion => check_backward_inclusion_with(ctx, cfg),
        CheckName::CriticalInHull => check_critical_in_hull_with(ctx, cfg),
        CheckName::FilledInHull => check_filled_in_hull_with(ctx, cfg),
        CheckName::CbConvexity => check_cb_convexity_with(ctx, cfg),
        CheckName::ThurstonSurjectivity => check_thurston_surjectivity_with(ctx, cfg),
    }
}
