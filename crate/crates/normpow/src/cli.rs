//! The `normpow` command line: polynomial generation, tensor evaluation,
//! constants tables, Hölder estimation and the verification suites, with
//! machine-readable output.
//!
//! Exit codes: 0 — all checks passed, 1 — a verification suite found a
//! violation, 2 — usage or configuration error. All defaults can also be
//! set through `NORMPOW_*` environment variables.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;
use thiserror::Error;

use crate::constants::{self, ConstantsError};
use crate::normcalc::{
    self, default_fd_step, deriv_diag, fd_oracle, EvalError, Metric, MetricError,
};
use crate::polyfamily::{self, GPolyJson};
use crate::propcheck::{self, SuiteError, TensorMode};
use crate::report::VerifyReport;

#[derive(Debug, Parser)]
#[command(
    name = "normpow",
    version,
    about = "Derivatives of powers of the Euclidean norm: polynomial family, tensors, smoothness constants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Pretty,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteSelect {
    All,
    Identities,
    Inequalities,
    Tensor,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate the polynomial family g_{p,q} for p = 0..pmax.
    Poly {
        #[arg(long, default_value_t = 20, env = "NORMPOW_PMAX")]
        pmax: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Pretty, env = "NORMPOW_FORMAT")]
        format: OutputFormat,
    },
    /// Evaluate the p-th derivative of f_q at x along the direction h.
    Eval {
        /// Derivative order.
        #[arg(long)]
        p: u32,
        /// Norm power.
        #[arg(long)]
        q: f64,
        /// Point, comma-separated (e.g. --x 3,4).
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        x: Vec<f64>,
        /// Direction, comma-separated; need not be a unit vector.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        h: Vec<f64>,
        /// Metric file: JSON {"dim": n, "b": [[...], ...]}; identity if omitted.
        #[arg(long)]
        metric: Option<PathBuf>,
        /// Also run the finite-difference oracle and report the relative error.
        #[arg(long)]
        fd_check: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Pretty, env = "NORMPOW_FORMAT")]
        format: OutputFormat,
    },
    /// Smoothness constants for one (p, nu), or a whole table.
    Constants {
        /// Derivative order.
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Hölder degree in [0, 1].
        #[arg(long, default_value_t = 0.5)]
        nu: f64,
        /// Emit one row per (p, nu) over p = 0..pmax and the nu grid.
        #[arg(long)]
        table: bool,
        #[arg(long, default_value_t = 8, env = "NORMPOW_PMAX")]
        pmax: u32,
        /// Step of the nu grid used with --table.
        #[arg(long = "nu-grid", default_value_t = 0.05, env = "NORMPOW_NU_STEP")]
        nu_step: f64,
        #[arg(long, default_value_t = 2001, env = "NORMPOW_GRID")]
        grid: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Pretty, env = "NORMPOW_FORMAT")]
        format: OutputFormat,
    },
    /// Empirical Hölder constant of g_{p,p+nu} on the unit interval.
    Holder {
        /// Derivative order.
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Hölder degree in [0, 1].
        #[arg(long, default_value_t = 0.5)]
        nu: f64,
        #[arg(long, default_value_t = 2001, env = "NORMPOW_GRID")]
        grid: usize,
        /// Golden-section refinement tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Pretty, env = "NORMPOW_FORMAT")]
        format: OutputFormat,
    },
    /// Run the verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteSelect::All)]
        suite: SuiteSelect,
        #[arg(long, default_value_t = 8, env = "NORMPOW_PMAX")]
        pmax: u32,
        #[arg(long, default_value_t = 42, env = "NORMPOW_SEED")]
        seed: u64,
        #[arg(long, default_value_t = 10_000, env = "NORMPOW_SAMPLES")]
        samples: usize,
        #[arg(long, default_value_t = 2001, env = "NORMPOW_GRID")]
        grid: usize,
        /// Tensor-suite order p.
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Tensor-suite Hölder degree nu.
        #[arg(long, default_value_t = 0.5)]
        nu: f64,
        #[arg(long)]
        metric: Option<PathBuf>,
        /// Run the negative controls instead; exit 0 when every control
        /// produces at least one violation, as it must.
        #[arg(long)]
        negative_controls: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Pretty, env = "NORMPOW_FORMAT")]
        format: OutputFormat,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid metric file {path}: {message}")]
    MetricFile { path: PathBuf, message: String },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Constants(#[from] ConstantsError),
    #[error("output error: {0}")]
    Output(#[from] std::io::Error),
}

impl From<SuiteError> for CliError {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::Constants(c) => CliError::Constants(c),
            SuiteError::Eval(c) => CliError::Eval(c),
        }
    }
}

/// 17-significant-digit float formatting, '.' decimal separator; keeps CSV
/// output bit-stable for a given configuration.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Deserialize)]
struct MetricFile {
    dim: usize,
    b: Vec<Vec<f64>>,
}

fn load_metric(path: &Path) -> Result<Metric, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let parsed: MetricFile = serde_json::from_str(&text).map_err(|e| CliError::MetricFile {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    if parsed.b.len() != parsed.dim {
        return Err(CliError::MetricFile {
            path: path.to_path_buf(),
            message: format!("dim={} but b has {} rows", parsed.dim, parsed.b.len()),
        });
    }
    Ok(Metric::new(&parsed.b)?)
}

fn metric_or_identity(path: Option<&PathBuf>, dim: usize) -> Result<Metric, CliError> {
    match path {
        Some(p) => {
            let m = load_metric(p)?;
            if m.dim() != dim {
                return Err(CliError::Usage(format!(
                    "metric dimension {} does not match vector dimension {dim}",
                    m.dim()
                )));
            }
            Ok(m)
        }
        None => Ok(Metric::identity(dim)),
    }
}

/// Dispatch a parsed command; returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Poly { pmax, format } => run_poly(*pmax, *format, out),
        Command::Eval {
            p,
            q,
            x,
            h,
            metric,
            fd_check,
            format,
        } => run_eval(*p, *q, x, h, metric.as_ref(), *fd_check, *format, out),
        Command::Constants {
            p,
            nu,
            table,
            pmax,
            nu_step,
            grid,
            format,
        } => {
            if *table {
                emit_constants_table(*pmax, *nu_step, *grid, *format, out)
            } else {
                emit_constants_rows(&[(*p, *nu)], *grid, *format, out)
            }
        }
        Command::Holder {
            p,
            nu,
            grid,
            tol,
            format,
        } => run_holder(*p, *nu, *grid, *tol, *format, out),
        Command::Verify {
            suite,
            pmax,
            seed,
            samples,
            grid,
            p,
            nu,
            metric,
            negative_controls,
            format,
        } => run_verify(
            *suite,
            *pmax,
            *seed,
            *samples,
            *grid,
            *p,
            *nu,
            metric.as_ref(),
            *negative_controls,
            *format,
            out,
        ),
    }
}

fn run_poly(pmax: u32, format: OutputFormat, out: &mut dyn Write) -> Result<i32, CliError> {
    let family = polyfamily::generate_family(pmax);
    match format {
        OutputFormat::Pretty => {
            for g in &family {
                writeln!(out, "{g}")?;
            }
        }
        OutputFormat::Json => {
            let rows: Vec<GPolyJson> = family.iter().map(GPolyJson::from).collect();
            writeln!(out, "{}", serde_json::to_string(&rows).expect("serializable"))?;
        }
        OutputFormat::Csv => {
            writeln!(out, "p,tau_power,q_power,coeff")?;
            for g in &family {
                for (k, c) in g.tau_coeffs().iter().enumerate() {
                    for (i, b) in c.coeffs().iter().enumerate() {
                        if *b != num_bigint::BigInt::ZERO {
                            writeln!(out, "{},{},{},{}", g.p_index(), k, i, b)?;
                        }
                    }
                }
            }
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn run_eval(
    p: u32,
    q: f64,
    x: &[f64],
    h: &[f64],
    metric_path: Option<&PathBuf>,
    fd_check: bool,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if x.is_empty() || x.len() != h.len() {
        return Err(CliError::Usage(format!(
            "--x has {} entries but --h has {}",
            x.len(),
            h.len()
        )));
    }
    let metric = metric_or_identity(metric_path, x.len())?;
    let value = deriv_diag(&metric, p, q, x, h)?;
    let tau = metric
        .normalize(h)
        .map(|u| normcalc::tau(&metric, x, &u))
        .transpose()?;

    let fd = if fd_check {
        // The oracle wants a unit direction; by p-homogeneity the closed
        // form on the normalized direction is the comparable quantity.
        let u = metric.normalize(h).ok_or_else(|| {
            CliError::Usage("--fd-check needs a nonzero direction".to_string())
        })?;
        let step = default_fd_step(p, metric.norm(x));
        let fd_value = fd_oracle(&metric, p, q, x, &u, step)?;
        let closed_unit = deriv_diag(&metric, p, q, x, &u)?;
        let rel_err = (fd_value - closed_unit).abs() / (1.0 + closed_unit.abs());
        Some((fd_value, closed_unit, rel_err, step))
    } else {
        None
    };

    match format {
        OutputFormat::Pretty => {
            writeln!(out, "D^{p} f_{q}(x)[h]^{p} = {value:.12}")?;
            if let Some(t) = tau {
                writeln!(out, "tau_h(x) = {t:.12}")?;
            }
            if let Some((fd_value, closed_unit, rel_err, step)) = fd {
                writeln!(out, "fd oracle (unit h, step {step:.3e}) = {fd_value:.12}")?;
                writeln!(out, "closed form (unit h) = {closed_unit:.12}")?;
                writeln!(out, "relative error = {rel_err:.3e}")?;
            }
        }
        OutputFormat::Json => {
            let mut obj = json!({ "p": p, "q": q, "value": value, "tau": tau });
            if let Some((fd_value, closed_unit, rel_err, step)) = fd {
                obj["fd_value"] = json!(fd_value);
                obj["closed_form_unit"] = json!(closed_unit);
                obj["rel_err"] = json!(rel_err);
                obj["fd_step"] = json!(step);
            }
            writeln!(out, "{obj}")?;
        }
        OutputFormat::Csv => {
            if let Some((fd_value, _, rel_err, _)) = fd {
                writeln!(out, "p,q,value,fd_value,rel_err")?;
                writeln!(
                    out,
                    "{p},{q},{},{},{}",
                    fmt_f64(value),
                    fmt_f64(fd_value),
                    fmt_f64(rel_err)
                )?;
            } else {
                writeln!(out, "p,q,value")?;
                writeln!(out, "{p},{q},{}", fmt_f64(value))?;
            }
        }
    }
    Ok(0)
}

/// One row per (p, nu): all smoothness constants, plus the exact Lipschitz
/// constant when nu = 1.
pub fn emit_constants_table(
    p_max: u32,
    nu_step: f64,
    grid: usize,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if !(nu_step > 0.0 && nu_step <= 1.0) {
        return Err(CliError::Usage(format!(
            "--nu-grid must lie in (0, 1], got {nu_step}"
        )));
    }
    let steps = (1.0 / nu_step).round() as usize;
    let mut pairs = Vec::new();
    for p in 0..=p_max {
        for k in 0..=steps {
            let nu = (k as f64 * nu_step).min(1.0);
            pairs.push((p, nu));
        }
    }
    emit_constants_rows(&pairs, grid, format, out)
}

fn emit_constants_rows(
    pairs: &[(u32, f64)],
    grid: usize,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let mut rows = Vec::with_capacity(pairs.len());
    for &(p, nu) in pairs {
        let hc = constants::holder_constants(p, nu, grid, 1e-10)?;
        let lipschitz = (nu == 1.0).then(|| constants::lipschitz_constant(p));
        rows.push((hc, lipschitz));
    }
    match format {
        OutputFormat::Pretty => {
            writeln!(
                out,
                "{:>3} {:>6} {:>14} {:>14} {:>14} {:>14} {:>14} {:>14} {:>12}",
                "p", "nu", "C", "H_bound", "H_est", "H_sym", "A", "A_tilde", "lipschitz"
            )?;
            for (hc, lip) in &rows {
                writeln!(
                    out,
                    "{:>3} {:>6.3} {:>14.6} {:>14.6} {:>14.6} {:>14.6} {:>14.6} {:>14.6} {:>12}",
                    hc.p,
                    hc.nu,
                    hc.c,
                    hc.h_bound,
                    hc.h_est,
                    hc.h_sym,
                    hc.a,
                    hc.a_tilde,
                    lip.as_ref().map_or(String::new(), |l| l.to_string()),
                )?;
            }
        }
        OutputFormat::Json => {
            let objs: Vec<_> = rows
                .iter()
                .map(|(hc, lip)| {
                    let mut o = serde_json::to_value(hc).expect("serializable");
                    o["lipschitz"] = match lip {
                        Some(l) => json!(l.to_string()),
                        None => serde_json::Value::Null,
                    };
                    o
                })
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(objs))?;
        }
        OutputFormat::Csv => {
            writeln!(out, "p,nu,C,H_bound,H_est,H_sym,A,A_tilde,lipschitz")?;
            for (hc, lip) in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    hc.p,
                    fmt_f64(hc.nu),
                    fmt_f64(hc.c),
                    fmt_f64(hc.h_bound),
                    fmt_f64(hc.h_est),
                    fmt_f64(hc.h_sym),
                    fmt_f64(hc.a),
                    fmt_f64(hc.a_tilde),
                    lip.as_ref().map_or(String::new(), |l| l.to_string()),
                )?;
            }
        }
    }
    Ok(0)
}

fn run_holder(
    p: u32,
    nu: f64,
    grid: usize,
    tol: f64,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let est = constants::estimate_h_poly(p, nu, grid, tol)?;
    let bound = constants::holder_bound_product(p, nu)?;
    let h_sym = constants::extend_h_to_symmetric(p, nu, est.value);
    let closed = (p == 2).then(|| constants::optimal_h2(nu)).transpose()?;
    match format {
        OutputFormat::Pretty => {
            writeln!(out, "H estimate      = {:.12}", est.value)?;
            writeln!(out, "maximizer tau1  = {:.12}", est.tau1)?;
            writeln!(out, "product bound   = {bound:.12}")?;
            writeln!(out, "symmetric ext.  = {h_sym:.12}")?;
            writeln!(out, "2-D cross-check = {:.12}", est.cross_check)?;
            if let Some(c) = closed {
                writeln!(out, "closed form     = {:.12} at tau* = {:.12}", c.value, c.tau_star)?;
            }
        }
        OutputFormat::Json => {
            let mut o = json!({
                "p": p, "nu": nu,
                "h_est": est.value, "tau1": est.tau1,
                "h_bound": bound, "h_sym": h_sym,
                "cross_check": est.cross_check,
            });
            if let Some(c) = closed {
                o["closed_form"] = json!(c.value);
                o["tau_star"] = json!(c.tau_star);
            }
            writeln!(out, "{o}")?;
        }
        OutputFormat::Csv => {
            writeln!(out, "p,nu,h_est,tau1,h_bound,h_sym")?;
            writeln!(
                out,
                "{p},{},{},{},{},{}",
                fmt_f64(nu),
                fmt_f64(est.value),
                fmt_f64(est.tau1),
                fmt_f64(bound),
                fmt_f64(h_sym)
            )?;
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    suite: SuiteSelect,
    pmax: u32,
    seed: u64,
    samples: usize,
    grid: usize,
    p: u32,
    nu: f64,
    metric_path: Option<&PathBuf>,
    negative_controls: bool,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let metric = match metric_path {
        Some(path) => load_metric(path)?,
        None => Metric::identity(3),
    };
    // Fixed defaults for the lemma grids; the quadratic two-point sweep
    // makes --grid unsuitable there.
    let (nu_grid, lemma_tau) = (10, 101);

    let mut reports: Vec<VerifyReport> = Vec::new();
    if negative_controls {
        let small = grid.min(201);
        reports.push(propcheck::check_nonnegativity_control(pmax.min(4), small));
        reports.push(propcheck::check_monotonicity_control(pmax.min(4), small));
        reports.push(propcheck::check_max_abs_control(pmax.min(4), small));
        reports.push(propcheck::check_fraction_monotone_control(pmax.min(3), lemma_tau));
        reports.push(propcheck::check_inequality_lemmas_control(pmax.min(3), lemma_tau));
        let odd_p = if p % 2 == 1 { p } else { 3 };
        let control_nu = if nu < 1.0 { nu } else { 0.5 };
        reports.push(propcheck::sample_tensor_holder_control(
            &metric,
            odd_p,
            control_nu,
            samples.min(500),
            seed,
        )?);
        emit_reports(&reports, format, out)?;
        let all_found = reports.iter().all(|r| !r.passed());
        if !all_found {
            writeln!(out, "negative control failed to produce a violation")?;
        }
        return Ok(if all_found { 0 } else { 1 });
    }

    if matches!(suite, SuiteSelect::All | SuiteSelect::Identities) {
        reports.push(polyfamily::check_identity_suite(pmax));
    }
    if matches!(suite, SuiteSelect::All | SuiteSelect::Inequalities) {
        reports.push(propcheck::check_nonnegativity(pmax, grid));
        reports.push(propcheck::check_monotonicity(pmax, grid));
        reports.push(propcheck::check_max_abs(pmax, grid));
        reports.push(propcheck::check_fraction_monotone(pmax, nu_grid, lemma_tau));
        reports.push(propcheck::check_inequality_lemmas(pmax, nu_grid, lemma_tau));
    }
    if matches!(suite, SuiteSelect::All | SuiteSelect::Tensor) {
        for mode in [
            TensorMode::General,
            TensorMode::Collinear,
            TensorMode::Construction,
        ] {
            let n = if mode == TensorMode::Construction {
                samples.min(200)
            } else {
                samples
            };
            reports.push(propcheck::sample_tensor_holder(
                &metric, p, nu, mode, n, seed,
            )?);
        }
    }

    emit_reports(&reports, format, out)?;
    Ok(if reports.iter().all(VerifyReport::passed) {
        0
    } else {
        1
    })
}

fn emit_reports(
    reports: &[VerifyReport],
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Pretty => {
            for r in reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                let mut line = format!(
                    "{status} {:<28} cases={:<8} violations={:<5} worst_margin={:.3e}",
                    r.suite_name,
                    r.cases_run,
                    r.violations.len(),
                    r.worst_margin
                );
                if let Some(max_ratio) = r.stats.get("max_ratio") {
                    let _ = write!(line, " max_ratio={max_ratio:.9}");
                }
                if let Some(bound) = r.stats.get("bound") {
                    let _ = write!(line, " bound={bound:.9}");
                }
                writeln!(out, "{line}")?;
                for v in r.violations.iter().take(5) {
                    writeln!(out, "    {} lhs={} rhs={} gap={:.3e}", v.params, v.lhs, v.rhs, v.gap)?;
                }
                if r.violations.len() > 5 {
                    writeln!(out, "    ... and {} more", r.violations.len() - 5)?;
                }
            }
        }
        OutputFormat::Json => {
            writeln!(out, "{}", serde_json::to_string(reports).expect("serializable"))?;
        }
        OutputFormat::Csv => {
            writeln!(out, "suite,cases_run,violations,worst_margin,passed")?;
            for r in reports {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.suite_name,
                    r.cases_run,
                    r.violations.len(),
                    fmt_f64(r.worst_margin),
                    r.passed()
                )?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn poly_json_round_trips_byte_identically() {
        let mut buf = Vec::new();
        run_poly(6, OutputFormat::Json, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let parsed: Vec<GPolyJson> = serde_json::from_str(text.trim_end()).unwrap();
        let again = serde_json::to_string(&parsed).unwrap();
        assert_eq!(text.trim_end(), again);
    }

    #[test]
    fn poly_pmax_zero_is_the_constant_one() {
        let mut buf = Vec::new();
        run_poly(0, OutputFormat::Pretty, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "g_0(tau) = (1)\n");
    }

    #[test]
    fn constants_row_with_lipschitz() {
        let mut buf = Vec::new();
        emit_constants_rows(&[(2, 1.0)], 801, OutputFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "p,nu,C,H_bound,H_est,H_sym,A,A_tilde,lipschitz");
        let row = lines.next().unwrap();
        assert!(row.starts_with("2,"));
        assert!(row.ends_with(",6"), "lipschitz column: {row}");
        let c_field: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
        assert_eq!(c_field, 6.0);
    }

    #[test]
    fn table_row_count_matches() {
        let mut buf = Vec::new();
        emit_constants_table(3, 0.5, 401, OutputFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        // header + 4 p-values x 3 nu-values
        assert_eq!(text.lines().count(), 1 + 12);
    }

    #[test]
    fn eval_dimension_mismatch_is_usage_error() {
        let mut buf = Vec::new();
        let err = run_eval(
            1,
            2.0,
            &[1.0, 2.0],
            &[1.0],
            None,
            false,
            OutputFormat::Pretty,
            &mut buf,
        )
        .unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));
    }
}
