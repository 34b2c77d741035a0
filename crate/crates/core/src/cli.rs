//! Batch command-line front end: verification sweeps, single-point reports,
//! certified quadrature and means checks, emitting plot-ready CSV/JSON.
//!
//! Exit status contract: 0 when no invariant is violated, 1 when a violation
//! is found (negative slack beyond tolerance, identity residual above its
//! gate, consistency failure), 2 for usage errors. CSV output is
//! deterministic: fixed float formatting (17 significant digits), fixed row
//! order, versioned header line.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{reduce_check, verify_bound, BoundReport, Theorem};
use crate::coeffs::{coefficient_set, Params};
use crate::error::{Error, Result};
use crate::funcspace::{catalog_lookup, Interval};
use crate::identity::{identity_residual, IdentityReport};
use crate::means::{mean_inequality, MeanFamily};
use crate::numint;
use crate::quadrules::{composite_certified, RuleKind, RuleSpec};

/// Versioned CSV schema marker, first line of every CSV report.
pub const CSV_HEADER: &str = "# hh-bounds v1";
/// Slack below this is an invariant violation.
pub const SLACK_GATE: f64 = -1e-10;
/// Identity residual above this is an invariant violation.
pub const IDENTITY_GATE: f64 = 1e-8;
/// Certified quadrature must cover the true error up to this allowance.
pub const CERTIFICATION_GATE: f64 = 1e-12;

/// 17 significant digits, '.' decimal, no locale.
fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Grid sweep configuration (the `sweep` subcommand).
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub alpha_grid: usize,
    pub lambda_grid: usize,
    pub q_values: Vec<f64>,
    pub functions: Vec<String>,
    pub interval: Interval,
    pub theorems: Vec<Theorem>,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl SweepConfig {
    fn validate(&self) -> Result<()> {
        if self.alpha_grid < 2 || self.lambda_grid < 2 {
            return Err(Error::Parameter(format!(
                "grids must have at least 2 points, got {}x{}",
                self.alpha_grid, self.lambda_grid
            )));
        }
        if self.functions.is_empty() {
            return Err(Error::Parameter("need at least one function".into()));
        }
        if self.q_values.iter().any(|&q| !(q >= 1.0)) {
            return Err(Error::Parameter("q values must be ≥ 1".into()));
        }
        if self.theorems.is_empty() {
            return Err(Error::Parameter("need at least one theorem".into()));
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "hh-bounds",
    version,
    about = "Certified error bounds for a two-parameter family of quadrature rules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate both sides of the integral identity and report residuals
    Identity(IdentityArgs),
    /// Emit the closed-form coefficient set for one (alpha, lambda, q)
    Coeffs(CoeffsArgs),
    /// Verify one theorem bound for one function and parameter point
    Bounds(BoundsArgs),
    /// Verify theorem bounds over a full (function, alpha, lambda, q) grid
    Sweep(SweepArgs),
    /// Composite quadrature with a certified error bound
    Quadrature(QuadratureArgs),
    /// Evaluate one printed mean inequality
    Means(MeansArgs),
    /// Compare the alpha = 1/2 specialization against the reference bounds
    ReduceCheck(ReduceCheckArgs),
}

#[derive(Args, Debug)]
struct IdentityArgs {
    #[arg(long)]
    function: String,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Sweep an NxN (alpha, lambda) grid instead of a single point
    #[arg(long, conflicts_with_all = ["alpha", "lambda"])]
    grid: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CoeffsArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    q: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    function: String,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    q: f64,
    #[arg(long)]
    theorem: String,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Comma-separated catalog names
    #[arg(long, value_delimiter = ',')]
    functions: Vec<String>,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    /// Points per axis for both grids
    #[arg(long, default_value = "9")]
    grid: usize,
    #[arg(long)]
    alpha_grid: Option<usize>,
    #[arg(long)]
    lambda_grid: Option<usize>,
    /// Comma-separated q values (T4 combos skip q = 1)
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    q: Vec<f64>,
    /// Comma-separated subset of T2,T3,T4
    #[arg(long, value_delimiter = ',', default_value = "T2,T3,T4")]
    theorems: Vec<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Self-test hook: halve every bound so slack violations appear
    #[arg(long, default_value = "false")]
    inject_fault: bool,
}

#[derive(Args, Debug)]
struct QuadratureArgs {
    #[arg(long)]
    function: String,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    /// midpoint | trapezoid | simpson | custom:<alpha>,<lambda>
    #[arg(long, default_value = "midpoint")]
    rule: String,
    #[arg(long, default_value = "1")]
    cells: usize,
    #[arg(long, default_value = "2")]
    q: f64,
    #[arg(long, default_value = "T3")]
    theorem: String,
    /// Also compute |value − oracle| and check the certificate
    #[arg(long, default_value = "false")]
    true_error: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MeansArgs {
    /// recip | log | pow_n
    #[arg(long)]
    family: String,
    /// midpoint | trapezoid | simpson
    #[arg(long)]
    variant: String,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    q: f64,
    /// Power for the pow_n family (integer > 2)
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReduceCheckArgs {
    #[arg(long)]
    function: String,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1")]
    lambdas: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    q: Vec<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

struct Tolerances {
    oracle: f64,
    identity: f64,
}

fn tolerances_from_env() -> Result<Tolerances> {
    match std::env::var("HH_BOUNDS_TOL") {
        Ok(raw) => {
            let tol: f64 = raw.parse().map_err(|_| {
                Error::Parameter(format!("HH_BOUNDS_TOL must be a number, got `{raw}`"))
            })?;
            if !(tol >= numint::MIN_TOL) {
                return Err(Error::Parameter(format!(
                    "HH_BOUNDS_TOL must be ≥ {:e}, got {tol:e}",
                    numint::MIN_TOL
                )));
            }
            Ok(Tolerances {
                oracle: tol,
                identity: tol,
            })
        }
        Err(_) => Ok(Tolerances {
            oracle: numint::DEFAULT_TOL,
            identity: numint::IDENTITY_TOL,
        }),
    }
}

fn grid_point(i: usize, n: usize) -> f64 {
    if i + 1 == n {
        1.0
    } else {
        i as f64 / (n - 1) as f64
    }
}

fn emit(dest: &Option<PathBuf>, out: &mut dyn Write, content: &str) -> Result<()> {
    match dest {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Parameter(format!("cannot write {}: {e}", path.display()))),
        None => out
            .write_all(content.as_bytes())
            .map_err(|e| Error::Parameter(format!("cannot write output: {e}"))),
    }
}

fn identity_csv_row(r: &IdentityReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        fmt_float(r.alpha),
        fmt_float(r.lambda),
        fmt_float(r.a),
        fmt_float(r.b),
        r.function,
        fmt_float(r.lhs),
        fmt_float(r.rhs),
        fmt_float(r.residual),
        fmt_float(r.oracle_error),
    )
}

fn bound_csv_row(r: &BoundReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        r.theorem,
        fmt_float(r.params.alpha),
        fmt_float(r.params.lambda),
        fmt_float(r.params.q),
        fmt_float(r.interval.a()),
        fmt_float(r.interval.b()),
        r.function,
        fmt_float(r.lhs_abs),
        fmt_float(r.bound),
        fmt_float(r.slack),
        r.regime.case_id,
        r.hypothesis_ok,
    )
}

const BOUND_CSV_COLUMNS: &str =
    "theorem,alpha,lambda,q,a,b,function,lhs_abs,bound,slack,regime,hypothesis_ok";

fn run_identity(
    args: &IdentityArgs,
    tols: &Tolerances,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let f = catalog_lookup(&args.function)?;
    let iv = Interval::new(args.a, args.b)?;
    let points: Vec<(f64, f64)> = match (args.alpha, args.lambda, args.grid) {
        (Some(alpha), Some(lambda), None) => vec![(alpha, lambda)],
        (None, None, Some(n)) => {
            if n < 2 {
                return Err(Error::Parameter("grid needs at least 2 points".into()));
            }
            let mut pts = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    pts.push((grid_point(i, n), grid_point(j, n)));
                }
            }
            pts
        }
        _ => {
            return Err(Error::Parameter(
                "give either --alpha and --lambda, or --grid".into(),
            ))
        }
    };

    let mut reports = Vec::with_capacity(points.len());
    for (alpha, lambda) in points {
        reports.push(identity_residual(&f, iv, alpha, lambda, tols.identity)?);
    }

    let mut violations = 0usize;
    for r in &reports {
        if r.residual > IDENTITY_GATE {
            violations += 1;
            writeln!(
                err,
                "violation: identity residual {} at (alpha, lambda) = ({}, {})",
                fmt_float(r.residual),
                r.alpha,
                r.lambda
            )
            .ok();
        }
    }

    let content = match args.format {
        OutputFormat::Csv => {
            let mut s = String::new();
            writeln!(s, "{CSV_HEADER}").unwrap();
            writeln!(s, "alpha,lambda,a,b,function,lhs,rhs,residual,oracle_error").unwrap();
            for r in &reports {
                writeln!(s, "{}", identity_csv_row(r)).unwrap();
            }
            s
        }
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(&reports).unwrap()),
    };
    emit(&args.output, out, &content)?;
    Ok(if violations > 0 { 1 } else { 0 })
}

fn run_coeffs(args: &CoeffsArgs, out: &mut dyn Write) -> Result<i32> {
    let params = Params::new(args.alpha, args.lambda, args.q)?;
    let set = coefficient_set(&params)?;
    let content = format!("{}\n", serde_json::to_string_pretty(&set).unwrap());
    emit(&args.output, out, &content)?;
    Ok(0)
}

fn run_bounds(args: &BoundsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let f = catalog_lookup(&args.function)?;
    let iv = Interval::new(args.a, args.b)?;
    let params = Params::new(args.alpha, args.lambda, args.q)?;
    let theorem: Theorem = args.theorem.parse()?;
    let report = verify_bound(&f, iv, params, theorem)?;

    let violated = report.hypothesis_ok && report.slack < SLACK_GATE;
    if violated {
        writeln!(
            err,
            "violation: slack {} below gate",
            fmt_float(report.slack)
        )
        .ok();
    }
    let content = match args.format {
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
        OutputFormat::Csv => format!(
            "{CSV_HEADER}\n{BOUND_CSV_COLUMNS}\n{}\n",
            bound_csv_row(&report)
        ),
    };
    emit(&args.output, out, &content)?;
    Ok(if violated { 1 } else { 0 })
}

fn run_sweep(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mut theorems = Vec::new();
    for t in &args.theorems {
        theorems.push(t.parse::<Theorem>()?);
    }
    theorems.sort_by_key(|t| format!("{t}"));
    theorems.dedup();

    let config = SweepConfig {
        alpha_grid: args.alpha_grid.unwrap_or(args.grid),
        lambda_grid: args.lambda_grid.unwrap_or(args.grid),
        q_values: {
            let mut q = args.q.clone();
            q.sort_by(f64::total_cmp);
            q.dedup();
            q
        },
        functions: {
            let mut f = args.functions.clone();
            f.sort();
            f.dedup();
            f
        },
        interval: Interval::new(args.a, args.b)?,
        theorems,
        output_format: args.format,
        output_path: args.output.clone(),
    };
    config.validate()?;

    // row order is (function, alpha, lambda, q, theorem) lexicographic
    // regardless of how the work is scheduled
    let mut reports: Vec<BoundReport> = Vec::new();
    for name in &config.functions {
        let f = catalog_lookup(name)?;
        for i in 0..config.alpha_grid {
            let alpha = grid_point(i, config.alpha_grid);
            for j in 0..config.lambda_grid {
                let lambda = grid_point(j, config.lambda_grid);
                for &q in &config.q_values {
                    let params = Params::new(alpha, lambda, q)?;
                    for &theorem in &config.theorems {
                        if theorem == Theorem::T4 && q <= 1.0 {
                            continue;
                        }
                        let mut report = verify_bound(&f, config.interval, params, theorem)?;
                        if args.inject_fault {
                            report.bound *= 0.5;
                            report.slack = report.bound - report.lhs_abs;
                        }
                        reports.push(report);
                    }
                }
            }
        }
    }

    let mut violations = 0usize;
    let mut min_slack: Option<&BoundReport> = None;
    for r in &reports {
        if !r.hypothesis_ok {
            continue;
        }
        if r.slack < SLACK_GATE {
            violations += 1;
            writeln!(
                err,
                "violation: {} slack {} for {} at (alpha, lambda, q) = ({}, {}, {})",
                r.theorem,
                fmt_float(r.slack),
                r.function,
                r.params.alpha,
                r.params.lambda,
                r.params.q
            )
            .ok();
        }
        if min_slack.is_none_or(|m| r.slack < m.slack) {
            min_slack = Some(r);
        }
    }

    let summary = match min_slack {
        Some(r) => format!(
            "# summary min_slack={} function={} alpha={} lambda={} q={} theorem={}",
            fmt_float(r.slack),
            r.function,
            fmt_float(r.params.alpha),
            fmt_float(r.params.lambda),
            fmt_float(r.params.q),
            r.theorem
        ),
        None => "# summary no rows with verified hypothesis".to_string(),
    };

    let content = match config.output_format {
        OutputFormat::Csv => {
            let mut s = String::new();
            writeln!(s, "{CSV_HEADER}").unwrap();
            writeln!(s, "{BOUND_CSV_COLUMNS}").unwrap();
            for r in &reports {
                writeln!(s, "{}", bound_csv_row(r)).unwrap();
            }
            writeln!(s, "{summary}").unwrap();
            s
        }
        OutputFormat::Json => {
            let payload = json!({
                "reports": reports,
                "min_slack": min_slack.map(|r| r.slack),
                "violations": violations,
            });
            format!("{}\n", serde_json::to_string_pretty(&payload).unwrap())
        }
    };
    emit(&config.output_path, out, &content)?;
    Ok(if violations > 0 { 1 } else { 0 })
}

fn run_quadrature(args: &QuadratureArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let f = catalog_lookup(&args.function)?;
    let iv = Interval::new(args.a, args.b)?;
    let rule = RuleSpec::parse(&args.rule)?;
    let theorem: Theorem = args.theorem.parse()?;
    let result = composite_certified(&f, iv, args.cells, rule, args.q, theorem)?;

    let mut payload = json!({
        "value": result.value,
        "error_bound": result.error_bound,
        "cells": result.cells,
        "theorem": result.theorem_used,
        "q": result.q,
    });
    let mut status = 0;
    if args.true_error {
        let tols = tolerances_from_env()?;
        let exact = numint::integrate(|x| f.f(x), iv, tols.oracle)?;
        let true_error = (result.value - exact.value).abs();
        payload["true_error"] = json!(true_error);
        if true_error > result.error_bound + CERTIFICATION_GATE {
            writeln!(
                err,
                "violation: true error {} exceeds certificate {}",
                fmt_float(true_error),
                fmt_float(result.error_bound)
            )
            .ok();
            status = 1;
        }
    }
    let content = format!("{}\n", serde_json::to_string_pretty(&payload).unwrap());
    emit(&args.output, out, &content)?;
    Ok(status)
}

fn run_means(args: &MeansArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let family: MeanFamily = args.family.parse()?;
    let variant: RuleKind = args.variant.parse()?;
    let report = mean_inequality(family, variant, args.a, args.b, args.q, args.n)?;

    let violated = report.slack < SLACK_GATE;
    if violated {
        writeln!(err, "violation: means slack {}", fmt_float(report.slack)).ok();
    }
    let content = match args.format {
        OutputFormat::Csv => {
            let n_col = report.n.map(|n| n.to_string()).unwrap_or_default();
            format!(
                "{CSV_HEADER}\nfamily,variant,a,b,q,n,lhs,rhs,slack\n{},{},{},{},{},{},{},{},{}\n",
                report.family,
                report.variant,
                fmt_float(report.a),
                fmt_float(report.b),
                fmt_float(report.q),
                n_col,
                fmt_float(report.lhs),
                fmt_float(report.rhs),
                fmt_float(report.slack),
            )
        }
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
    };
    emit(&args.output, out, &content)?;
    Ok(if violated { 1 } else { 0 })
}

fn run_reduce_check(args: &ReduceCheckArgs, out: &mut dyn Write) -> Result<i32> {
    let f = catalog_lookup(&args.function)?;
    let iv = Interval::new(args.a, args.b)?;
    let tols = tolerances_from_env()?;
    let rows = reduce_check(&f, iv, &args.lambdas, &args.q, tols.oracle)?;
    let mismatches = rows.iter().filter(|r| !r.matches).count();

    let mut s = String::new();
    writeln!(s, "{CSV_HEADER}").unwrap();
    writeln!(
        s,
        "lambda,q,lhs_general,lhs_reference,lhs_abs_diff,t2_bound,g2_bound,t2_diff,t3_bound,g3_bound,t3_diff,matches"
    )
    .unwrap();
    for r in &rows {
        writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt_float(r.lambda),
            fmt_float(r.q),
            fmt_float(r.lhs_general),
            fmt_float(r.lhs_reference),
            fmt_float(r.lhs_abs_diff),
            fmt_float(r.t2_bound),
            fmt_float(r.g2_bound),
            fmt_float(r.t2_diff),
            fmt_float(r.t3_bound),
            fmt_float(r.g3_bound),
            fmt_float(r.t3_diff),
            r.matches,
        )
        .unwrap();
    }
    writeln!(s, "# summary rows={} mismatches={}", rows.len(), mismatches).unwrap();
    emit(&args.output, out, &s)?;
    // a completed comparison exits 0: disagreement is recorded, not fatal
    Ok(0)
}

/// Runs one subcommand. `argv` excludes the program name. Returns the exit
/// status; the report stream goes to `out` (or the --output file), violation
/// flags and errors go to `err`.
pub fn run_command(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let full = std::iter::once("hh-bounds".to_string()).chain(argv.iter().cloned());
    let cli = match Cli::try_parse_from(full) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                out.write_all(rendered.as_bytes()).ok();
                0
            } else {
                err.write_all(rendered.as_bytes()).ok();
                2
            };
        }
    };

    let tols = match tolerances_from_env() {
        Ok(t) => t,
        Err(e) => {
            writeln!(err, "error: {e}").ok();
            return 2;
        }
    };

    let outcome = match &cli.command {
        Command::Identity(args) => run_identity(args, &tols, out, err),
        Command::Coeffs(args) => run_coeffs(args, out),
        Command::Bounds(args) => run_bounds(args, out, err),
        Command::Sweep(args) => run_sweep(args, out, err),
        Command::Quadrature(args) => run_quadrature(args, out, err),
        Command::Means(args) => run_means(args, out, err),
        Command::ReduceCheck(args) => run_reduce_check(args, out),
    };

    match outcome {
        Ok(status) => status,
        Err(e) => {
            writeln!(err, "error: {e}").ok();
            match e {
                Error::Parameter(_)
                | Error::UnknownFunction(_)
                | Error::Unsupported(_)
                | Error::Domain(_) => 2,
                Error::OracleFailure { .. } | Error::Consistency(_) | Error::Hypothesis { .. } => 1,
            }
        }
    }
}
