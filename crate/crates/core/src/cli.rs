//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a bound check reported `ViolationSuspected`,
//! 2 invalid flags or warp, 3 solver failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::oracle;
use crate::radial::{self, ShootingConfig};
use crate::reilly;
use crate::spectrum::{self, BoundReport, SpectrumRow, Verdict};
use crate::warping::{curvature_classify, CurvatureReport, Geometry, WarpSpec};
use crate::{Problem, SteklovError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

pub const THREADS_ENV: &str = "STEKLOV_THREADS";

#[derive(Debug, Parser)]
#[command(name = "steklov", version, about = "Steklov-type spectra of warped product balls")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct GeometryArgs {
    /// Ambient dimension (at least 2).
    #[arg(long)]
    pub n: u32,
    /// Radius of the ball.
    #[arg(long = "R", default_value_t = 1.0)]
    pub radius: f64,
    /// Warp: euclidean, sphere:<a>, sinh:<a>, series:<c1,c3,...>, or key=value form.
    #[arg(long, default_value = "euclidean")]
    pub warp: String,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Relative tolerance of the shooting integrator.
    #[arg(long)]
    pub rtol: Option<f64>,
    /// Seed radius near the origin (default 1e-6 R).
    #[arg(long)]
    pub eps_origin: Option<f64>,
}

impl SolverArgs {
    pub fn config(&self) -> ShootingConfig {
        let mut cfg = ShootingConfig::default();
        if let Some(rtol) = self.rtol {
            cfg.rtol = rtol;
        }
        cfg.eps_origin = self.eps_origin;
        cfg
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-degree eigenvalues with multiplicities and spectral indices.
    Spectrum {
        #[arg(long)]
        problem: Problem,
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long)]
        m_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Check eigenvalues against the curvature-conditioned bounds.
    Verify {
        #[arg(long)]
        problem: Problem,
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long, default_value_t = 1)]
        m_min: u32,
        #[arg(long)]
        m_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Ricci eigenvalue ranges, sign and boundary convexity.
    Curvature {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long, default_value_t = 1000)]
        grid_points: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Terms of the Reilly formula and Rayleigh quotients of computed eigenfunctions.
    ReillyCheck {
        #[arg(long)]
        problem: Problem,
        #[command(flatten)]
        geometry: GeometryArgs,
        /// Single degree; overrides the range.
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 0)]
        m_min: u32,
        #[arg(long, default_value_t = 4)]
        m_max: u32,
        /// Write `r,psi` samples of each eigenfunction profile to this CSV path.
        #[arg(long)]
        dump_radial: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Shooting eigenvalues against the finite-difference oracle.
    OracleCompare {
        #[arg(long)]
        problem: Problem,
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 1)]
        m_min: u32,
        #[arg(long, default_value_t = 3)]
        m_max: u32,
        /// Coarse grid size; the fine grid doubles it.
        #[arg(long, default_value_t = 400)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Bound checks across a one-parameter warp family.
    Sweep {
        #[arg(long)]
        problem: Problem,
        /// Warp template containing the parameter name, e.g. `sphere:a`.
        #[arg(long)]
        warp: String,
        #[arg(long)]
        param: String,
        /// Inclusive range `lo:hi:step`.
        #[arg(long)]
        range: String,
        #[arg(long)]
        n: u32,
        #[arg(long = "R", default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 1)]
        m_min: u32,
        #[arg(long)]
        m_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(err: impl std::fmt::Display) -> Self {
        CliError {
            code: EXIT_SOLVER,
            message: format!("output failed: {err}"),
        }
    }

    fn solver(context: &str, err: SteklovError) -> Self {
        match err {
            SteklovError::InvalidWarp(_) | SteklovError::InvalidArgument(_) => CliError::usage(err.to_string()),
            other => CliError {
                code: EXIT_SOLVER,
                message: format!("{context}: {other}"),
            },
        }
    }
}

impl From<SteklovError> for CliError {
    fn from(err: SteklovError) -> Self {
        CliError::solver("error", err)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn geometry_from(n: u32, radius: f64, warp: &str) -> CliResult<Geometry> {
    let spec: WarpSpec = warp.parse().map_err(|e: SteklovError| CliError::usage(e.to_string()))?;
    Geometry::new(n, radius, spec).map_err(|e| CliError::usage(e.to_string()))
}

fn degrees(m: Option<u32>, m_min: u32, m_max: u32) -> CliResult<Vec<u32>> {
    match m {
        Some(m) => Ok(vec![m]),
        None if m_min > m_max => Err(CliError::usage(format!("--m-min {m_min} exceeds --m-max {m_max}"))),
        None => Ok((m_min..=m_max).collect()),
    }
}

fn context(problem: Problem, m: u32) -> String {
    format!("solver failure for ({problem}, m = {m})")
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(CliError::io)?;
    writeln!(out, "{text}").map_err(CliError::io)
}

fn write_csv<T: Serialize>(out: &mut dyn Write, rows: &[T]) -> CliResult<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row).map_err(CliError::io)?;
    }
    writer.flush().map_err(CliError::io)
}

#[derive(Debug, Serialize)]
struct DiagnosticsRow {
    m: u32,
    eps_used: f64,
    residual: f64,
    eps_convergence_delta: f64,
}

#[derive(Debug, Serialize)]
struct SpectrumOutput {
    problem: Problem,
    n: u32,
    #[serde(rename = "R")]
    radius: f64,
    warp: String,
    rows: Vec<SpectrumRow>,
    ordering_certified: bool,
    diagnostics: Vec<DiagnosticsRow>,
}

#[derive(Debug, Serialize)]
struct SpectrumCsvRow {
    problem: Problem,
    n: u32,
    #[serde(rename = "R")]
    radius: f64,
    warp: String,
    m: u32,
    eigenvalue: f64,
    multiplicity: u64,
    index_from: u64,
    index_to: u64,
    ordering_certified: bool,
}

fn cmd_spectrum(problem: Problem, g: &GeometryArgs, m_max: u32, format: Format, cfg: &ShootingConfig, out: &mut dyn Write) -> CliResult<i32> {
    let geometry = geometry_from(g.n, g.radius, &g.warp)?;
    let table = spectrum::assemble_spectrum(problem, &geometry, m_max, cfg)
        .map_err(|e| CliError::solver(&format!("solver failure for ({problem}, m <= {m_max})"), e))?;
    let warp = geometry.spec().to_short();
    match format {
        Format::Json => write_json(
            out,
            &SpectrumOutput {
                problem,
                n: g.n,
                radius: g.radius,
                warp,
                ordering_certified: table.ordering_certified,
                diagnostics: table
                    .diagnostics
                    .iter()
                    .map(|(m, d)| DiagnosticsRow {
                        m: *m,
                        eps_used: d.eps_used,
                        residual: d.residual,
                        eps_convergence_delta: d.eps_convergence_delta,
                    })
                    .collect(),
                rows: table.rows,
            },
        )?,
        Format::Csv => {
            let rows: Vec<SpectrumCsvRow> = table
                .rows
                .iter()
                .map(|r| SpectrumCsvRow {
                    problem,
                    n: g.n,
                    radius: g.radius,
                    warp: warp.clone(),
                    m: r.m,
                    eigenvalue: r.eigenvalue,
                    multiplicity: r.multiplicity,
                    index_from: r.index_from,
                    index_to: r.index_to,
                    ordering_certified: table.ordering_certified,
                })
                .collect();
            write_csv(out, &rows)?
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct VerifyRow {
    warp: String,
    #[serde(rename = "R")]
    radius: f64,
    #[serde(flatten)]
    report: BoundReport,
}

#[derive(Debug, Serialize)]
struct VerifyCsvRow<'a> {
    warp: &'a str,
    #[serde(rename = "R")]
    radius: f64,
    problem: Problem,
    n: u32,
    m: u32,
    eigenvalue: f64,
    bound_value: f64,
    bound_kind: spectrum::BoundKind,
    theorem_tag: &'a str,
    margin: f64,
    tolerance: f64,
    verdict: Verdict,
    applicability: &'a str,
}

fn verify_csv_row<'a>(warp: &'a str, radius: f64, r: &'a BoundReport) -> VerifyCsvRow<'a> {
    VerifyCsvRow {
        warp,
        radius,
        problem: r.problem,
        n: r.n,
        m: r.m,
        eigenvalue: r.eigenvalue,
        bound_value: r.bound_value,
        bound_kind: r.bound_kind,
        theorem_tag: r.theorem_tag,
        margin: r.margin,
        tolerance: r.tolerance,
        verdict: r.verdict,
        applicability: &r.applicability,
    }
}

fn verify_all(problem: Problem, geometry: &Geometry, ms: &[u32], cfg: &ShootingConfig) -> CliResult<Vec<BoundReport>> {
    let report = curvature_classify(geometry, 1000)?;
    ms.iter()
        .map(|&m| {
            let eig = radial::eigenvalue(geometry, problem, m, cfg).map_err(|e| CliError::solver(&context(problem, m), e))?;
            Ok(spectrum::report_for(problem, geometry, &report, m, eig.value))
        })
        .collect()
}

fn exit_for(reports: &[BoundReport]) -> i32 {
    if reports.iter().any(|r| r.verdict == Verdict::ViolationSuspected) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

fn cmd_verify(problem: Problem, g: &GeometryArgs, ms: &[u32], format: Format, cfg: &ShootingConfig, out: &mut dyn Write) -> CliResult<i32> {
    let geometry = geometry_from(g.n, g.radius, &g.warp)?;
    let reports = verify_all(problem, &geometry, ms, cfg)?;
    let warp = geometry.spec().to_short();
    match format {
        Format::Json => {
            let rows: Vec<VerifyRow> = reports
                .iter()
                .cloned()
                .map(|report| VerifyRow {
                    warp: warp.clone(),
                    radius: g.radius,
                    report,
                })
                .collect();
            write_json(out, &rows)?
        }
        Format::Csv => {
            let rows: Vec<VerifyCsvRow> = reports.iter().map(|r| verify_csv_row(&warp, g.radius, r)).collect();
            write_csv(out, &rows)?
        }
    }
    Ok(exit_for(&reports))
}

#[derive(Debug, Serialize)]
struct CurvatureCsvRow {
    n: u32,
    #[serde(rename = "R")]
    radius: f64,
    warp: String,
    ric_radial_min: f64,
    ric_radial_max: f64,
    ric_tangential_min: f64,
    ric_tangential_max: f64,
    ric_sign: crate::RicSign,
    boundary_convex: bool,
    concave_unit_slope: bool,
    kappa: f64,
}

fn cmd_curvature(g: &GeometryArgs, grid_points: usize, format: Format, out: &mut dyn Write) -> CliResult<i32> {
    let geometry = geometry_from(g.n, g.radius, &g.warp)?;
    let report: CurvatureReport = curvature_classify(&geometry, grid_points).map_err(|e| CliError::solver("curvature", e))?;
    match format {
        Format::Json => write_json(out, &report)?,
        Format::Csv => write_csv(
            out,
            &[CurvatureCsvRow {
                n: report.n,
                radius: report.radius,
                warp: report.warp.to_short(),
                ric_radial_min: report.ric_radial_range.0,
                ric_radial_max: report.ric_radial_range.1,
                ric_tangential_min: report.ric_tangential_range.0,
                ric_tangential_max: report.ric_tangential_range.1,
                ric_sign: report.ric_sign,
                boundary_convex: report.boundary_convex,
                concave_unit_slope: report.concave_unit_slope,
                kappa: report.kappa,
            }],
        )?,
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct ReillyRow {
    problem: Problem,
    m: u32,
    hess_sq: f64,
    lap_sq: f64,
    ric_term: f64,
    boundary_term: f64,
    residual: f64,
    scale: f64,
    relative_residual: f64,
    rayleigh: f64,
    shooting: f64,
}

fn dump_path(base: &Path, m: u32, several: bool) -> PathBuf {
    if !several {
        return base.to_path_buf();
    }
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}_m{m}.{}", ext.to_string_lossy()),
        None => format!("{stem}_m{m}"),
    };
    base.with_file_name(name)
}

/// Writes a two-column `r,psi` CSV of a radial profile.
pub fn dump_radial(path: &Path, sol: &radial::RadialSolution) -> CliResult<()> {
    let mut writer = csv::Writer::from_path(path).map_err(CliError::io)?;
    writer.write_record(["r", "psi"]).map_err(CliError::io)?;
    for (r, psi) in sol.r.iter().zip(&sol.psi) {
        writer.write_record([r.to_string(), psi.to_string()]).map_err(CliError::io)?;
    }
    writer.flush().map_err(CliError::io)
}

#[allow(clippy::too_many_arguments)]
fn cmd_reilly(problem: Problem, g: &GeometryArgs, ms: &[u32], dump: Option<&Path>, format: Format, cfg: &ShootingConfig, out: &mut dyn Write) -> CliResult<i32> {
    let geometry = geometry_from(g.n, g.radius, &g.warp)?;
    let mut rows = Vec::with_capacity(ms.len());
    for &m in ms {
        let fail = |e| CliError::solver(&context(problem, m), e);
        let sol = radial::eigen_solution(&geometry, problem, m, cfg).map_err(fail)?;
        let b = reilly::reilly_residual(&geometry, problem, m, &sol).map_err(fail)?;
        let rayleigh = reilly::rayleigh_quotient(&geometry, problem, m, &sol).map_err(fail)?;
        let shooting = radial::eigenvalue(&geometry, problem, m, cfg).map_err(fail)?.value;
        if let Some(base) = dump {
            dump_radial(&dump_path(base, m, ms.len() > 1), &sol)?;
        }
        rows.push(ReillyRow {
            problem,
            m,
            hess_sq: b.hess_sq,
            lap_sq: b.lap_sq,
            ric_term: b.ric_term,
            boundary_term: b.boundary_term,
            residual: b.residual,
            scale: b.scale,
            relative_residual: b.relative_residual(),
            rayleigh,
            shooting,
        });
    }
    match format {
        Format::Json => write_json(out, &rows)?,
        Format::Csv => write_csv(out, &rows)?,
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct OracleRow {
    problem: Problem,
    m: u32,
    shooting: f64,
    fd_grid: usize,
    fd_coarse: f64,
    fd_fine: f64,
    fd_extrapolated: f64,
    richardson_error: f64,
    relative_difference: f64,
}

#[allow(clippy::too_many_arguments)]
fn cmd_oracle(problem: Problem, g: &GeometryArgs, ms: &[u32], grid: usize, format: Format, cfg: &ShootingConfig, out: &mut dyn Write) -> CliResult<i32> {
    let geometry = geometry_from(g.n, g.radius, &g.warp)?;
    let mut rows = Vec::with_capacity(ms.len());
    for &m in ms {
        let fail = |e| CliError::solver(&context(problem, m), e);
        let shooting = radial::eigenvalue(&geometry, problem, m, cfg).map_err(fail)?.value;
        let fd = oracle::fd_extrapolated(&geometry, problem, m, grid).map_err(fail)?;
        rows.push(OracleRow {
            problem,
            m,
            shooting,
            fd_grid: grid,
            fd_coarse: fd.coarse,
            fd_fine: fd.fine,
            fd_extrapolated: fd.extrapolated,
            richardson_error: fd.error,
            relative_difference: (fd.extrapolated - shooting).abs() / shooting.abs(),
        });
    }
    match format {
        Format::Json => write_json(out, &rows)?,
        Format::Csv => write_csv(out, &rows)?,
    }
    Ok(EXIT_OK)
}

/// Values `lo, lo + step, ...` up to and including `hi`.
pub fn parse_range(text: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || CliError::usage(format!("range must be lo:hi:step, got '{text}'"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad())?;
    let (lo, hi, step) = (nums[0], nums[1], nums[2]);
    if !(lo.is_finite() && hi.is_finite() && step.is_finite() && step > 0.0 && hi >= lo) {
        return Err(bad());
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > 100_000 {
        return Err(CliError::usage(format!("range '{text}' has too many points")));
    }
    // round away accumulated binary noise such as 0.6000000000000001
    Ok((0..count)
        .map(|k| {
            let v = lo + k as f64 * step;
            (v * 1e12).round() / 1e12
        })
        .collect())
}

/// Replaces every token of `template` equal to `param` by `value`.
pub fn substitute_param(template: &str, param: &str, value: f64) -> String {
    let mut out = String::with_capacity(template.len() + 8);
    let mut token = String::new();
    let flush = |token: &mut String, out: &mut String| {
        if token == param {
            out.push_str(&value.to_string());
        } else {
            out.push_str(token);
        }
        token.clear();
    };
    for ch in template.chars() {
        if ch == '=' {
            // keys are never substituted
            out.push_str(&token);
            token.clear();
            out.push(ch);
        } else if matches!(ch, ':' | ',' | ' ') {
            flush(&mut token, &mut out);
            out.push(ch);
        } else {
            token.push(ch);
        }
    }
    flush(&mut token, &mut out);
    out
}

// the csv writer cannot flatten nested structs, so the columns are repeated
#[derive(Debug, Serialize)]
struct SweepCsvRow<'a> {
    param: &'a str,
    value: f64,
    warp: &'a str,
    #[serde(rename = "R")]
    radius: f64,
    problem: Problem,
    n: u32,
    m: u32,
    eigenvalue: f64,
    bound_value: f64,
    bound_kind: spectrum::BoundKind,
    theorem_tag: &'a str,
    margin: f64,
    tolerance: f64,
    verdict: Verdict,
    applicability: &'a str,
}

fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(text) = std::env::var(THREADS_ENV) {
        let threads: usize = text
            .trim()
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| CliError::usage(format!("{THREADS_ENV} must be a positive integer, got '{text}'")))?;
        builder = builder.num_threads(threads);
    }
    builder.build().map_err(|e| CliError {
        code: EXIT_SOLVER,
        message: format!("thread pool: {e}"),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    problem: Problem,
    template: &str,
    param: &str,
    range: &str,
    n: u32,
    radius: f64,
    ms: &[u32],
    format: Format,
    cfg: &ShootingConfig,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let values = parse_range(range)?;
    if !template.split([':', ',', '=', ' ']).any(|t| t == param) {
        return Err(CliError::usage(format!("warp template '{template}' does not mention parameter '{param}'")));
    }
    // validate every geometry before any solving
    let geometries: Vec<(f64, Geometry)> = values
        .iter()
        .map(|&v| geometry_from(n, radius, &substitute_param(template, param, v)).map(|g| (v, g)))
        .collect::<CliResult<_>>()?;
    let pool = thread_pool()?;
    let results: Vec<CliResult<Vec<BoundReport>>> =
        pool.install(|| geometries.par_iter().map(|(_, g)| verify_all(problem, g, ms, cfg)).collect());
    let mut per_value = Vec::with_capacity(results.len());
    for ((v, g), res) in geometries.iter().zip(results) {
        per_value.push((*v, g.spec().to_short(), res?));
    }
    let all: Vec<BoundReport> = per_value.iter().flat_map(|(_, _, r)| r.iter().cloned()).collect();
    match format {
        Format::Csv => {
            let rows: Vec<SweepCsvRow> = per_value
                .iter()
                .flat_map(|(v, warp, reports)| {
                    reports.iter().map(move |r| SweepCsvRow {
                        param,
                        value: *v,
                        warp,
                        radius,
                        problem: r.problem,
                        n: r.n,
                        m: r.m,
                        eigenvalue: r.eigenvalue,
                        bound_value: r.bound_value,
                        bound_kind: r.bound_kind,
                        theorem_tag: r.theorem_tag,
                        margin: r.margin,
                        tolerance: r.tolerance,
                        verdict: r.verdict,
                        applicability: &r.applicability,
                    })
                })
                .collect();
            write_csv(out, &rows)?
        }
        Format::Json => {
            let rows: Vec<VerifyRow> = per_value
                .iter()
                .flat_map(|(_, warp, reports)| {
                    reports.iter().cloned().map(move |report| VerifyRow {
                        warp: warp.clone(),
                        radius,
                        report,
                    })
                })
                .collect();
            write_json(out, &rows)?
        }
    }
    Ok(exit_for(&all))
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult<i32> {
    match cli.command {
        Command::Spectrum {
            problem,
            geometry,
            m_max,
            format,
            solver,
        } => cmd_spectrum(problem, &geometry, m_max, format, &solver.config(), out),
        Command::Verify {
            problem,
            geometry,
            m_min,
            m_max,
            format,
            solver,
        } => cmd_verify(problem, &geometry, &degrees(None, m_min, m_max)?, format, &solver.config(), out),
        Command::Curvature {
            geometry,
            grid_points,
            format,
        } => cmd_curvature(&geometry, grid_points, format, out),
        Command::ReillyCheck {
            problem,
            geometry,
            m,
            m_min,
            m_max,
            dump_radial,
            format,
            solver,
        } => cmd_reilly(
            problem,
            &geometry,
            &degrees(m, m_min, m_max)?,
            dump_radial.as_deref(),
            format,
            &solver.config(),
            out,
        ),
        Command::OracleCompare {
            problem,
            geometry,
            m,
            m_min,
            m_max,
            grid,
            format,
            solver,
        } => cmd_oracle(problem, &geometry, &degrees(m, m_min, m_max)?, grid, format, &solver.config(), out),
        Command::Sweep {
            problem,
            warp,
            param,
            range,
            n,
            radius,
            m_min,
            m_max,
            format,
            solver,
        } => cmd_sweep(
            problem,
            &warp,
            &param,
            &range,
            n,
            radius,
            &degrees(None, m_min, m_max)?,
            format,
            &solver.config(),
            out,
        ),
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and messages to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
            } else {
                let _ = write!(out, "{}", e.render());
            }
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
