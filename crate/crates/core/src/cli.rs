//! Command-line front end.
//!
//! ```text
//! rrsk eval     --params P.json --z 1+0i [--k K] [--tol T] [--max-terms N]
//! rrsk classify --params P.json --z 0.3+0i [--k K]
//! rrsk verify   (--identity ID | --all) [--samples N] [--seed S] [--quad-tol T]
//! rrsk table    --params P.json --z FROM --z-to TO [--points N]
//! ```
//!
//! Every command takes `--output json|csv|pretty` and `--out FILE`.
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 invalid input, 4 numerical failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::Error;
use crate::matrix::ComplexMatrix;
use crate::operators::QuadratureSpec;
use crate::rrsk::{classify_convergence, eval_series, ConvergenceClass, EvalOptions, EvalResult, ParamSet};
use crate::verify::{verify, verify_all, IdentityReport, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "rrsk", version, about = "Evaluate, classify and verify the matrix (r+1)R(s,k) series")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub output: OutputFormat,
    /// Write the result here instead of stdout.
    #[arg(long = "out", global = true)]
    pub out_path: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sum the series at one point.
    Eval {
        #[command(flatten)]
        input: SeriesInput,
        #[command(flatten)]
        series: SeriesFlags,
    },
    /// Report the convergence class at one point.
    Classify {
        #[command(flatten)]
        input: SeriesInput,
    },
    /// Check catalog identities on random commuting families.
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        identity: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        series: SeriesFlags,
        /// Absolute and relative quadrature tolerance.
        #[arg(long)]
        quad_tol: Option<f64>,
    },
    /// Evaluate along the segment from `--z` to `--z-to`.
    Table {
        #[command(flatten)]
        input: SeriesInput,
        #[arg(long, allow_hyphen_values = true)]
        z_to: Complex64,
        #[arg(long, default_value_t = 11)]
        points: usize,
        #[command(flatten)]
        series: SeriesFlags,
    },
}

#[derive(Debug, Args)]
pub struct SeriesInput {
    /// ParamSet JSON file.
    #[arg(long = "params")]
    pub params_path: PathBuf,
    /// Complex point, written `a+bi`.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Complex64,
    /// Replaces the `k` stored in the parameter file.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SeriesFlags {
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_terms: Option<usize>,
}

impl SeriesFlags {
    fn options(&self) -> EvalOptions {
        let mut o = EvalOptions::default();
        if let Some(t) = self.tol {
            o.tol = t;
        }
        if let Some(n) = self.max_terms {
            o.max_terms = n;
        }
        o
    }
}

/// What a run produced; the binary forwards it to the process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutcome {
    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        CliOutcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(if e.is_input_error() { EXIT_INPUT } else { EXIT_NUMERICAL }, e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Parses `argv` (program name first) and executes it.
pub fn run<I, T>(argv: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CliOutcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => CliOutcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let (code, body) = match execute(&cfg) {
        Ok(r) => r,
        Err(Failure(code, msg)) => return CliOutcome::fail(code, msg),
    };
    match &cfg.out_path {
        None => CliOutcome { code, stdout: body, stderr: String::new() },
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => CliOutcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => CliOutcome::fail(EXIT_INPUT, format!("cannot write {}: {e}", path.display())),
        },
    }
}

fn execute(cfg: &CliConfig) -> Outcome<(i32, String)> {
    let fmt = cfg.output;
    match &cfg.command {
        Command::Eval { input, series } => {
            let p = load_params(input)?;
            let opts = series.options();
            opts.validate()?;
            let r = eval_series(&p, input.z, &opts)?;
            Ok((EXIT_OK, render_eval(&r, fmt)?))
        }
        Command::Classify { input } => {
            let p = load_params(input)?;
            let c = classify_convergence(&p, input.z)?;
            Ok((EXIT_OK, render_class(&c, fmt)?))
        }
        Command::Verify { identity, all, samples, seed, series, quad_tol } => {
            let mut opts = VerifyOptions { eval: series.options(), ..VerifyOptions::default() };
            if let Some(t) = quad_tol {
                opts.quad = QuadratureSpec { abs_tol: *t, rel_tol: *t, ..opts.quad };
            }
            let reports = match identity {
                Some(id) if !*all => vec![verify(id, *samples, *seed, &opts)?],
                _ => verify_all(*samples, *seed, &opts)?,
            };
            let code = if reports.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok((code, render_reports(&reports, identity.is_some(), fmt)?))
        }
        Command::Table { input, z_to, points, series } => {
            if *points < 2 {
                return Err(Failure(EXIT_INPUT, "table needs at least 2 points".into()));
            }
            let p = load_params(input)?;
            let opts = series.options();
            opts.validate()?;
            let rows = (0..*points)
                .map(|i| {
                    let z = input.z + (z_to - input.z) * (i as f64 / (*points - 1) as f64);
                    eval_series(&p, z, &opts).map(|r| TableRow { z: [z.re, z.im], result: r })
                })
                .collect::<crate::Result<Vec<_>>>()?;
            Ok((EXIT_OK, render_table(&rows, fmt)?))
        }
    }
}

fn load_params(input: &SeriesInput) -> Outcome<ParamSet> {
    let text = read(&input.params_path)?;
    let p: ParamSet = serde_json::from_str(&text)
        .map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", input.params_path.display())))?;
    Ok(match input.k {
        Some(k) => ParamSet::new(k, p.a, p.p, p.q, p.b, p.c)?,
        None => p,
    })
}

fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))
}

fn json<T: Serialize + ?Sized>(v: &T) -> Outcome<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Failure(EXIT_NUMERICAL, format!("cannot serialize output: {e}")))
}

fn csv_rows(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Outcome<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure(EXIT_NUMERICAL, format!("cannot write csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure(EXIT_NUMERICAL, e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn entry_header(n: usize) -> Vec<String> {
    let mut h = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            h.push(format!("m{i}{j}_re"));
            h.push(format!("m{i}{j}_im"));
        }
    }
    h
}

/// Shortest round-trip form, in exponent notation away from moderate magnitudes.
fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() || (1e-4..1e16).contains(&x.abs()) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn entries(m: &ComplexMatrix) -> Vec<String> {
    m.to_rows().into_iter().flatten().flat_map(|v| [num(v.re), num(v.im)]).collect()
}

fn pretty_matrix(m: &ComplexMatrix) -> String {
    let mut s = String::new();
    for row in m.to_rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{:.16e}{:+.16e}i", v.re, v.im)).collect();
        let _ = writeln!(s, "  [{}]", cells.join(", "));
    }
    s
}

fn class_text(c: &ConvergenceClass) -> String {
    match c.radius {
        Some(r) => format!("{:?} (radius {r})", c.tag),
        None => format!("{:?}", c.tag),
    }
}

fn render_eval(r: &EvalResult, fmt: OutputFormat) -> Outcome<String> {
    match fmt {
        OutputFormat::Json => json(r),
        OutputFormat::Csv => {
            let mut h = vec!["terms_used".into(), "residual_estimate".into(), "convergence".into()];
            h.extend(entry_header(r.value.dim()));
            let mut row = vec![r.terms_used.to_string(), num(r.residual_estimate), format!("{:?}", r.convergence.tag)];
            row.extend(entries(&r.value));
            csv_rows(&h, [row])
        }
        OutputFormat::Pretty => Ok(format!(
            "value:\n{}terms used: {}\nresidual estimate: {:e}\nconvergence: {}\n",
            pretty_matrix(&r.value),
            r.terms_used,
            r.residual_estimate,
            class_text(&r.convergence)
        )),
    }
}

fn render_class(c: &ConvergenceClass, fmt: OutputFormat) -> Outcome<String> {
    match fmt {
        OutputFormat::Json => json(c),
        OutputFormat::Csv => csv_rows(
            &["tag".into(), "radius".into()],
            [vec![format!("{:?}", c.tag), c.radius.map(num).unwrap_or_default()]],
        ),
        OutputFormat::Pretty => Ok(class_text(c) + "\n"),
    }
}

fn render_reports(reports: &[IdentityReport], single: bool, fmt: OutputFormat) -> Outcome<String> {
    match fmt {
        OutputFormat::Json if single => json(&reports[0]),
        OutputFormat::Json => json(reports),
        OutputFormat::Csv => csv_rows(
            &["id".into(), "samples".into(), "max_rel_residual".into(), "passed".into()],
            reports
                .iter()
                .map(|r| vec![r.id.clone(), r.samples.to_string(), num(r.max_rel_residual), r.passed.to_string()]),
        ),
        OutputFormat::Pretty => {
            let mut s = String::new();
            for r in reports {
                let _ = write!(
                    s,
                    "{:<5} {:<4} max {:.2e} mean {:.2e} tol {:.0e}",
                    r.id,
                    if r.passed { "ok" } else { "FAIL" },
                    r.max_rel_residual,
                    r.mean_rel_residual,
                    r.tol
                );
                if let Some(f) = r.failures.first() {
                    let _ = write!(s, "  sample {} seed {}", f.sample, f.seed);
                    if let Some(e) = &f.error {
                        let _ = write!(s, ": {e}");
                    }
                }
                s.push('\n');
            }
            let passed = reports.iter().filter(|r| r.passed).count();
            let _ = writeln!(s, "{passed}/{} passed", reports.len());
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct TableRow {
    z: [f64; 2],
    #[serde(flatten)]
    result: EvalResult,
}

fn render_table(rows: &[TableRow], fmt: OutputFormat) -> Outcome<String> {
    match fmt {
        OutputFormat::Json => json(rows),
        OutputFormat::Csv => {
            let mut h = vec!["z_re".into(), "z_im".into()];
            h.extend(entry_header(rows[0].result.value.dim()));
            csv_rows(
                &h,
                rows.iter().map(|r| {
                    let mut row = vec![num(r.z[0]), num(r.z[1])];
                    row.extend(entries(&r.result.value));
                    row
                }),
            )
        }
        OutputFormat::Pretty => {
            let mut s = String::new();
            for r in rows {
                let _ = write!(s, "z = {}{:+}i  ({} terms)\n{}", r.z[0], r.z[1], r.result.terms_used, pretty_matrix(&r.result.value));
            }
            Ok(s)
        }
    }
}
