//! Shooting solvers for the radial reductions of the three eigenvalue problems.
//!
//! With `L psi = psi'' + (n-1)(h'/h) psi' - tau_m psi / h^2`, the degree-`m`
//! eigenvalues are read off regular solutions at `r = R`:
//!
//! * `sigma_(m) = psi'(R) / psi(R)` with `L psi = 0`;
//! * `xi_(m) = -psit'(R) / psi(R)` with `L psit = 0`, `L psi = psit`, `psi'(R) = 0`;
//! * `eta_(m) = psit(R) / psi'(R)` with the same system and `psi(R) = 0`.
//!
//! The origin is a regular singular point with indicial roots `m` and
//! `2 - n - m`; integration starts at `eps_origin` from the leading Frobenius
//! term `psi ~ r^m`, and the sensitivity to that seed is measured by repeating
//! the computation with half the seed radius.

use serde::Serialize;

use crate::closedform;
use crate::harmonics;
use crate::ode::{self, OdeOptions};
use crate::warping::Geometry;
use crate::{Problem, Result, SteklovError};

/// Numerical controls for the shooting solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    /// Seed radius; `None` means `1e-6 R`.
    pub eps_origin: Option<f64>,
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Number of uniform intervals of the recorded grid (multiple of 4, at least 512).
    pub grid_intervals: usize,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        Self {
            eps_origin: None,
            rtol: 1e-10,
            atol: 1e-12,
            max_steps: 1_000_000,
            grid_intervals: 1024,
        }
    }
}

impl ShootingConfig {
    pub fn eps_for(&self, radius: f64) -> Result<f64> {
        let eps = self.eps_origin.unwrap_or(1e-6 * radius);
        if !(eps > 0.0 && eps < 0.1 * radius) {
            return Err(SteklovError::InvalidArgument(format!(
                "eps_origin must lie in (0, R/10), got {eps} for R = {radius}"
            )));
        }
        if !(self.rtol > 0.0 && self.atol > 0.0) {
            return Err(SteklovError::InvalidArgument("rtol and atol must be positive".into()));
        }
        if self.grid_intervals < 512 || !self.grid_intervals.is_multiple_of(4) {
            return Err(SteklovError::InvalidArgument(format!(
                "grid_intervals must be a multiple of 4 and at least 512, got {}",
                self.grid_intervals
            )));
        }
        Ok(eps)
    }

    fn ode_options(&self, eps: f64) -> OdeOptions {
        OdeOptions {
            rtol: self.rtol,
            atol: self.atol,
            max_steps: self.max_steps,
            initial_step: Some(1e-2 * eps),
        }
    }

    fn with_eps(&self, eps: f64) -> Self {
        Self {
            eps_origin: Some(eps),
            ..*self
        }
    }
}

/// Radial profile of an eigenfunction (or of a shooting trajectory) on a
/// uniform grid of `[eps_origin, R]`.
#[derive(Debug, Clone, Serialize)]
pub struct RadialSolution {
    pub problem: Problem,
    pub m: u32,
    pub n: u32,
    pub r: Vec<f64>,
    pub psi: Vec<f64>,
    pub dpsi: Vec<f64>,
    /// `Delta`-profile `psit` for the fourth-order problems.
    pub psit: Option<Vec<f64>>,
    pub dpsit: Option<Vec<f64>>,
    pub eps_origin: f64,
    /// Largest relative defect of the flux form of the ODE between grid points.
    pub residual: f64,
}

impl RadialSolution {
    pub fn step(&self) -> f64 {
        self.r[1] - self.r[0]
    }

    pub fn psi_end(&self) -> f64 {
        *self.psi.last().expect("non-empty grid")
    }

    pub fn dpsi_end(&self) -> f64 {
        *self.dpsi.last().expect("non-empty grid")
    }

    pub fn psit_at(&self, i: usize) -> f64 {
        self.psit.as_ref().map_or(0.0, |v| v[i])
    }

    pub fn dpsit_end(&self) -> f64 {
        self.dpsit.as_ref().and_then(|v| v.last().copied()).unwrap_or(0.0)
    }

    /// `psi''` reconstructed from the ODE `L psi = psit`.
    pub fn d2psi(&self, geometry: &Geometry) -> Vec<f64> {
        let tau = harmonics::tau(self.m, self.n) as f64;
        let nm1 = self.n as f64 - 1.0;
        let warp = geometry.warp();
        (0..self.r.len())
            .map(|i| {
                let r = self.r[i];
                let (h, dh) = (warp.h(r), warp.dh(r));
                tau * self.psi[i] / (h * h) - nm1 * dh / h * self.dpsi[i] + self.psit_at(i)
            })
            .collect()
    }
}

/// The three trajectories of the fourth-order shooting: `psit` (regular
/// homogeneous), `psi_p` (particular, `L psi_p = psit`, zero seed) and
/// `psi_h` (regular homogeneous, identical seed to `psit`).
#[derive(Debug, Clone)]
pub struct FourthOrderSolution {
    pub m: u32,
    pub n: u32,
    pub r: Vec<f64>,
    pub psit: Vec<f64>,
    pub dpsit: Vec<f64>,
    pub psi_p: Vec<f64>,
    pub dpsi_p: Vec<f64>,
    pub psi_h: Vec<f64>,
    pub dpsi_h: Vec<f64>,
    pub eps_origin: f64,
    /// End state `(psit, psit', psi_p, psi_p')` up to a common positive factor.
    pub end_scaled: [f64; 4],
    pub residual: f64,
}

impl FourthOrderSolution {
    /// `psi_p + c psi_h` as the profile of `problem`.
    pub fn combine(&self, problem: Problem, c: f64) -> RadialSolution {
        let psi = self.psi_p.iter().zip(&self.psi_h).map(|(p, h)| p + c * h).collect();
        let dpsi = self.dpsi_p.iter().zip(&self.dpsi_h).map(|(p, h)| p + c * h).collect();
        RadialSolution {
            problem,
            m: self.m,
            n: self.n,
            r: self.r.clone(),
            psi,
            dpsi,
            psit: Some(self.psit.clone()),
            dpsit: Some(self.dpsit.clone()),
            eps_origin: self.eps_origin,
            residual: self.residual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diagnostics {
    pub eps_used: f64,
    pub residual: f64,
    pub eps_convergence_delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenResult {
    pub problem: Problem,
    pub m: u32,
    pub value: f64,
    pub multiplicity: u64,
    pub diagnostics: Diagnostics,
}

fn output_grid(eps: f64, radius: f64, intervals: usize) -> Vec<f64> {
    (0..=intervals)
        .map(|i| {
            if i == intervals {
                radius
            } else {
                eps + (radius - eps) * i as f64 / intervals as f64
            }
        })
        .collect()
}

/// Leading Frobenius seed `(1, m / eps)` with log-scale `m ln eps`, i.e.
/// `psi(eps) = eps^m`, `psi'(eps) = m eps^(m-1)`.
fn seed(m: u32, eps: f64) -> ([f64; 2], f64) {
    let m = m as f64;
    ([1.0, m / eps], m * eps.ln())
}

/// Right-hand side of `L y = forcing` as a first-order system.
fn radial_rhs(geometry: &Geometry, tau: f64, r: f64, y: f64, dy: f64, forcing: f64) -> Option<f64> {
    let warp = geometry.warp();
    let h = warp.h(r);
    if !h.is_finite() || h <= 0.0 {
        return None;
    }
    let nm1 = geometry.n() as f64 - 1.0;
    Some(tau * y / (h * h) - nm1 * warp.dh(r) / h * dy + forcing)
}

/// Largest defect of `(h^(n-1) y')' = h^(n-1) (tau y / h^2 + forcing)` over
/// pairs of grid intervals, with the source integrated by Simpson's rule.
fn flux_residual(geometry: &Geometry, tau: f64, r: &[f64], y: &[f64], dy: &[f64], forcing: Option<&[f64]>) -> f64 {
    let warp = geometry.warp();
    let exponent = geometry.n() as i32 - 1;
    let flux: Vec<f64> = r.iter().zip(dy).map(|(&r, d)| warp.h(r).powi(exponent) * d).collect();
    let source: Vec<f64> = (0..r.len())
        .map(|i| {
            let h = warp.h(r[i]);
            h.powi(exponent) * (tau * y[i] / (h * h) + forcing.map_or(0.0, |f| f[i]))
        })
        .collect();
    let mut worst = 0.0f64;
    let mut total = 0.0f64;
    let mut i = 0;
    while i + 2 < r.len() {
        let step = 0.5 * (r[i + 2] - r[i]);
        let integral = step / 3.0 * (source[i] + 4.0 * source[i + 1] + source[i + 2]);
        total += integral.abs();
        worst = worst.max((flux[i + 2] - flux[i] - integral).abs());
        i += 2;
    }
    let scale = flux.iter().fold(total, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        0.0
    } else {
        worst / scale
    }
}

fn check_common(geometry: &Geometry, cfg: &ShootingConfig) -> Result<f64> {
    cfg.eps_for(geometry.radius())
}

/// Regular solution of `L psi = 0` seeded with `psi(eps) = eps^m`, recorded on
/// the output grid. For `m = 0` this is the constant 1.
pub fn integrate_homogeneous(geometry: &Geometry, m: u32, cfg: &ShootingConfig) -> Result<RadialSolution> {
    let eps = check_common(geometry, cfg)?;
    let radius = geometry.radius();
    let tau = harmonics::tau(m, geometry.n()) as f64;
    let grid = output_grid(eps, radius, cfg.grid_intervals);
    let (y0, log_scale) = seed(m, eps);
    let traj = ode::integrate(
        |r, y: &[f64; 2]| Some([y[1], radial_rhs(geometry, tau, r, y[0], y[1], 0.0)?]),
        eps,
        y0,
        log_scale,
        radius,
        &grid,
        cfg.ode_options(eps),
    )?;
    let psi: Vec<f64> = traj.y.iter().map(|s| s[0]).collect();
    let dpsi: Vec<f64> = traj.y.iter().map(|s| s[1]).collect();
    let residual = flux_residual(geometry, tau, &traj.r, &psi, &dpsi, None);
    Ok(RadialSolution {
        problem: Problem::Sigma,
        m,
        n: geometry.n(),
        r: traj.r,
        psi,
        dpsi,
        psit: None,
        dpsit: None,
        eps_origin: eps,
        residual,
    })
}

fn fourth_order_rhs(geometry: &Geometry, tau: f64, r: f64, y: &[f64; 4]) -> Option<[f64; 4]> {
    Some([
        y[1],
        radial_rhs(geometry, tau, r, y[0], y[1], 0.0)?,
        y[3],
        radial_rhs(geometry, tau, r, y[2], y[3], y[0])?,
    ])
}

/// Trajectories needed by the fourth-order problems. The homogeneous solution
/// `psi_h` and `psit` obey the same equation with the same seed, so they are
/// integrated once.
pub fn integrate_fourth_order(geometry: &Geometry, m: u32, cfg: &ShootingConfig) -> Result<FourthOrderSolution> {
    let eps = check_common(geometry, cfg)?;
    let radius = geometry.radius();
    let tau = harmonics::tau(m, geometry.n()) as f64;
    let grid = output_grid(eps, radius, cfg.grid_intervals);
    let (seed2, log_scale) = seed(m, eps);
    let traj = ode::integrate(
        |r, y: &[f64; 4]| fourth_order_rhs(geometry, tau, r, y),
        eps,
        [seed2[0], seed2[1], 0.0, 0.0],
        log_scale,
        radius,
        &grid,
        cfg.ode_options(eps),
    )?;
    let col = |k: usize| traj.y.iter().map(|s| s[k]).collect::<Vec<f64>>();
    let (psit, dpsit, psi_p, dpsi_p) = (col(0), col(1), col(2), col(3));
    let residual = flux_residual(geometry, tau, &traj.r, &psit, &dpsit, None).max(flux_residual(
        geometry,
        tau,
        &traj.r,
        &psi_p,
        &dpsi_p,
        Some(&psit),
    ));
    Ok(FourthOrderSolution {
        m,
        n: geometry.n(),
        r: traj.r,
        psi_h: psit.clone(),
        dpsi_h: dpsit.clone(),
        psit,
        dpsit,
        psi_p,
        dpsi_p,
        eps_origin: eps,
        end_scaled: traj.end_scaled,
        residual,
    })
}

/// Homogeneous coefficient enforcing the boundary condition, and the eigenvalue.
fn fourth_order_eigen(problem: Problem, m: u32, end: [f64; 4]) -> Result<(f64, f64)> {
    let [t, dt, p, dp] = end;
    match problem {
        Problem::Xi => {
            if dt == 0.0 {
                return Err(SteklovError::DegenerateCombination { problem, m, value: dt });
            }
            let c = -dp / dt;
            let psi_end = p + c * t;
            if psi_end.abs() <= 1e-12 * (p.abs() + (c * t).abs()) {
                return Err(SteklovError::DegenerateCombination {
                    problem,
                    m,
                    value: psi_end,
                });
            }
            Ok((c, -dt / psi_end))
        }
        Problem::Eta => {
            if t == 0.0 {
                return Err(SteklovError::DegenerateCombination { problem, m, value: t });
            }
            let c = -p / t;
            let dpsi_end = dp + c * dt;
            if dpsi_end.abs() <= 1e-12 * (dp.abs() + (c * dt).abs()) {
                return Err(SteklovError::DegenerateCombination {
                    problem,
                    m,
                    value: dpsi_end,
                });
            }
            Ok((c, t / dpsi_end))
        }
        Problem::Sigma => unreachable!("second-order problem"),
    }
}

/// Eigenvalue only, without recording the grid.
fn shoot(geometry: &Geometry, problem: Problem, m: u32, cfg: &ShootingConfig) -> Result<f64> {
    let eps = check_common(geometry, cfg)?;
    let radius = geometry.radius();
    let tau = harmonics::tau(m, geometry.n()) as f64;
    let (y0, log_scale) = seed(m, eps);
    match (problem, m) {
        (Problem::Sigma, 0) | (Problem::Xi, 0) => Ok(0.0),
        (Problem::Eta, 0) => closedform::eta0(geometry),
        (Problem::Sigma, _) => {
            let traj = ode::integrate(
                |r, y: &[f64; 2]| Some([y[1], radial_rhs(geometry, tau, r, y[0], y[1], 0.0)?]),
                eps,
                y0,
                log_scale,
                radius,
                &[],
                cfg.ode_options(eps),
            )?;
            let [psi, dpsi] = traj.end_scaled;
            Ok(dpsi / psi)
        }
        (_, _) => {
            let traj = ode::integrate(
                |r, y: &[f64; 4]| fourth_order_rhs(geometry, tau, r, y),
                eps,
                [y0[0], y0[1], 0.0, 0.0],
                log_scale,
                radius,
                &[],
                cfg.ode_options(eps),
            )?;
            Ok(fourth_order_eigen(problem, m, traj.end_scaled)?.1)
        }
    }
}

/// Relative change of the eigenvalue when the seed radius is halved.
pub fn eps_convergence_check(geometry: &Geometry, problem: Problem, m: u32, cfg: &ShootingConfig) -> Result<f64> {
    let eps = check_common(geometry, cfg)?;
    let full = shoot(geometry, problem, m, cfg)?;
    let half = shoot(geometry, problem, m, &cfg.with_eps(0.5 * eps))?;
    Ok(relative_delta(full, half))
}

fn relative_delta(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Eigenfunction profile of `problem` in degree `m`, normalised by the seed
/// `psit(eps) = eps^m` (or `psi(eps) = eps^m` for the classical problem).
pub fn eigen_solution(geometry: &Geometry, problem: Problem, m: u32, cfg: &ShootingConfig) -> Result<RadialSolution> {
    match (problem, m) {
        (Problem::Sigma, _) => integrate_homogeneous(geometry, m, cfg),
        (Problem::Xi, 0) => {
            // constant eigenfunction, Delta phi = 0
            let mut sol = integrate_homogeneous(geometry, 0, cfg)?;
            sol.problem = Problem::Xi;
            sol.psit = Some(vec![0.0; sol.r.len()]);
            sol.dpsit = Some(vec![0.0; sol.r.len()]);
            Ok(sol)
        }
        _ => {
            let four = integrate_fourth_order(geometry, m, cfg)?;
            let (c, _) = fourth_order_eigen(problem, m, four.end_scaled)?;
            Ok(four.combine(problem, c))
        }
    }
}

fn eigen_result(geometry: &Geometry, problem: Problem, m: u32, cfg: &ShootingConfig) -> Result<EigenResult> {
    let eps = check_common(geometry, cfg)?;
    let (value, residual) = match (problem, m) {
        (Problem::Sigma, 0) | (Problem::Xi, 0) => (0.0, 0.0),
        (Problem::Eta, 0) => (closedform::eta0(geometry)?, 0.0),
        (Problem::Sigma, _) => {
            let sol = integrate_homogeneous(geometry, m, cfg)?;
            (sol.dpsi_end() / sol.psi_end(), sol.residual)
        }
        _ => {
            let four = integrate_fourth_order(geometry, m, cfg)?;
            let (_, value) = fourth_order_eigen(problem, m, four.end_scaled)?;
            (value, four.residual)
        }
    };
    let half = shoot(geometry, problem, m, &cfg.with_eps(0.5 * eps))?;
    Ok(EigenResult {
        problem,
        m,
        value,
        multiplicity: harmonics::multiplicity(m, geometry.n()),
        diagnostics: Diagnostics {
            eps_used: eps,
            residual,
            eps_convergence_delta: relative_delta(value, half),
        },
    })
}

/// `sigma_(m) = psi'(R) / psi(R)`; zero for `m = 0`.
pub fn sigma_eigenvalue(geometry: &Geometry, m: u32, cfg: &ShootingConfig) -> Result<EigenResult> {
    eigen_result(geometry, Problem::Sigma, m, cfg)
}

/// `xi_(m) = -psit'(R) / psi(R)` with `psi'(R) = 0`; zero for `m = 0`.
pub fn xi_eigenvalue(geometry: &Geometry, m: u32, cfg: &ShootingConfig) -> Result<EigenResult> {
    eigen_result(geometry, Problem::Xi, m, cfg)
}

/// `eta_(m) = psit(R) / psi'(R)` with `psi(R) = 0`; `m = 0` uses the
/// closed form of the radially symmetric ground state.
pub fn eta_eigenvalue(geometry: &Geometry, m: u32, cfg: &ShootingConfig) -> Result<EigenResult> {
    eigen_result(geometry, Problem::Eta, m, cfg)
}

pub fn eigenvalue(geometry: &Geometry, problem: Problem, m: u32, cfg: &ShootingConfig) -> Result<EigenResult> {
    eigen_result(geometry, problem, m, cfg)
}
