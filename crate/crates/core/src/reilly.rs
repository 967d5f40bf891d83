//! Radial reductions of the Reilly formula and of the Rayleigh quotients.
//!
//! For `phi = psi(r) omega` with `omega` an `L^2`-normalised degree-`m`
//! harmonic, every volume integral becomes a one-dimensional integral against
//! `h^(n-1) dr`. The boundary side of the Reilly formula,
//! `int_{dM} (H f_nu + 2 Delta_dM u) f_nu + II(grad u, grad u)`, reduces to
//!
//! `[(n-1) kappa psi'(R)^2 - 2 lambda psi(R) psi'(R) + kappa lambda psi(R)^2] h^(n-1)(R)`
//!
//! with `lambda = tau_m / h(R)^2`, which covers all three boundary conditions.

use serde::Serialize;

use crate::harmonics;
use crate::quadrature::{simpson_uniform, Estimate};
use crate::radial::RadialSolution;
use crate::warping::Geometry;
use crate::{Problem, Result, SteklovError};

/// The four terms of the Reilly formula for one separated test function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReillyBreakdown {
    pub problem: Problem,
    pub m: u32,
    pub hess_sq: f64,
    pub lap_sq: f64,
    pub ric_term: f64,
    pub boundary_term: f64,
    /// `lap_sq - hess_sq - ric_term - boundary_term`.
    pub residual: f64,
    /// Size of the boundary data, `(psi(R)^2 / h(R)^2 + psi'(R)^2) h(R)^(n-3)`.
    pub scale: f64,
    /// Largest quadrature error estimate among the three integrals.
    pub quadrature_error: f64,
}

impl ReillyBreakdown {
    /// `|residual|` relative to the largest term.
    pub fn relative_residual(&self) -> f64 {
        let size = self
            .lap_sq
            .abs()
            .max(self.hess_sq.abs())
            .max(self.boundary_term.abs())
            .max(self.scale);
        if size == 0.0 {
            0.0
        } else {
            self.residual.abs() / size
        }
    }
}

struct Pointwise {
    h: f64,
    dh: f64,
    d2h_over_h: f64,
    one_minus_dh_sq: f64,
    weight: f64,
}

fn pointwise(geometry: &Geometry, r: f64) -> Pointwise {
    let warp = geometry.warp();
    let h = warp.h(r);
    Pointwise {
        h,
        dh: warp.dh(r),
        d2h_over_h: warp.d2h(r) / h,
        one_minus_dh_sq: warp.one_minus_dh_sq(r),
        weight: h.powi(geometry.n() as i32 - 1),
    }
}

/// Boundary scale of a radial profile.
pub fn boundary_scale(geometry: &Geometry, sol: &RadialSolution) -> f64 {
    let radius = geometry.radius();
    let h = geometry.warp().h(radius);
    let (psi, dpsi) = (sol.psi_end(), sol.dpsi_end());
    (psi * psi / (h * h) + dpsi * dpsi) * h.powi(geometry.n() as i32 - 3)
}

fn integrate_profile<F>(geometry: &Geometry, sol: &RadialSolution, scale: f64, integrand: F) -> Result<Estimate>
where
    F: Fn(usize, &Pointwise, f64) -> f64,
{
    if sol.n != geometry.n() || (sol.r.last().copied() != Some(geometry.radius())) {
        return Err(SteklovError::InvalidArgument(
            "radial solution does not belong to this geometry".into(),
        ));
    }
    if sol.r.len() < 5 || sol.r.len().is_multiple_of(2) {
        return Err(SteklovError::InvalidArgument(
            "radial solution needs an even number of grid intervals".into(),
        ));
    }
    let d2psi = sol.d2psi(geometry);
    let values: Vec<f64> = (0..sol.r.len())
        .map(|i| {
            let p = pointwise(geometry, sol.r[i]);
            integrand(i, &p, d2psi[i]) * p.weight
        })
        .collect();
    let est = simpson_uniform(&values, sol.step());
    if est.error > 1e-6 * est.value.abs().max(scale) {
        return Err(SteklovError::GridTooCoarse { estimate: est.error });
    }
    Ok(est)
}

fn hessian_estimate(geometry: &Geometry, m: u32, sol: &RadialSolution) -> Result<Estimate> {
    let n = geometry.n() as f64;
    let tau = harmonics::tau(m, geometry.n()) as f64;
    integrate_profile(geometry, sol, boundary_scale(geometry, sol), |i, p, d2| {
        let (psi, dpsi) = (sol.psi[i], sol.dpsi[i]);
        let h2 = p.h * p.h;
        let ratio = p.dh / p.h;
        d2 * d2
            + (n - 1.0) * dpsi * dpsi * ratio * ratio
            + 2.0 * tau / h2 * (dpsi * dpsi + psi * psi * ratio * ratio - 3.0 * psi * dpsi * ratio)
            + psi * psi / (h2 * h2) * tau * (tau - n + 2.0)
    })
}

fn laplacian_estimate(geometry: &Geometry, m: u32, sol: &RadialSolution) -> Result<Estimate> {
    let n = geometry.n() as f64;
    let tau = harmonics::tau(m, geometry.n()) as f64;
    integrate_profile(geometry, sol, boundary_scale(geometry, sol), |i, p, d2| {
        let lap = d2 + (n - 1.0) * sol.dpsi[i] * p.dh / p.h - tau * sol.psi[i] / (p.h * p.h);
        lap * lap
    })
}

fn ricci_estimate(geometry: &Geometry, m: u32, sol: &RadialSolution) -> Result<Estimate> {
    let n = geometry.n() as f64;
    let tau = harmonics::tau(m, geometry.n()) as f64;
    integrate_profile(geometry, sol, boundary_scale(geometry, sol), |i, p, _| {
        let (psi, dpsi) = (sol.psi[i], sol.dpsi[i]);
        let h2 = p.h * p.h;
        let tangential = p.d2h_over_h - (n - 2.0) * p.one_minus_dh_sq / h2;
        -((n - 1.0) * p.d2h_over_h * dpsi * dpsi + tau * tangential * psi * psi / h2)
    })
}

/// `int |Hess phi|^2`, with `psi''` taken from the radial ODE.
pub fn hessian_sq_integral(geometry: &Geometry, m: u32, sol: &RadialSolution) -> Result<f64> {
    Ok(hessian_estimate(geometry, m, sol)?.value)
}

/// `int (Delta phi)^2`.
pub fn laplacian_sq_integral(geometry: &Geometry, m: u32, sol: &RadialSolution) -> Result<f64> {
    Ok(laplacian_estimate(geometry, m, sol)?.value)
}

/// `int Ric(grad phi, grad phi)`.
pub fn ricci_integral(geometry: &Geometry, m: u32, sol: &RadialSolution) -> Result<f64> {
    Ok(ricci_estimate(geometry, m, sol)?.value)
}

/// `int psit^2 h^(n-1)`, which equals `int (Delta phi)^2` for the fourth-order profiles.
pub fn delta_profile_sq_integral(geometry: &Geometry, sol: &RadialSolution) -> Result<f64> {
    Ok(integrate_profile(geometry, sol, boundary_scale(geometry, sol), |i, _, _| {
        let t = sol.psit_at(i);
        t * t
    })?
    .value)
}

/// Boundary side of the Reilly formula for the profile's own boundary data.
pub fn boundary_term(geometry: &Geometry, m: u32, sol: &RadialSolution) -> f64 {
    let radius = geometry.radius();
    let n = geometry.n() as f64;
    let kappa = geometry.kappa();
    let lambda = harmonics::boundary_eigenvalue(geometry, m);
    let (psi, dpsi) = (sol.psi_end(), sol.dpsi_end());
    ((n - 1.0) * kappa * dpsi * dpsi - 2.0 * lambda * psi * dpsi + kappa * lambda * psi * psi) * geometry.density(radius)
}

/// All terms of the Reilly formula for `phi = psi omega`.
///
/// The boundary term uses the general form above, which for an eigenfunction
/// of `problem` reduces to the condition-specific combination.
pub fn reilly_residual(geometry: &Geometry, problem: Problem, m: u32, sol: &RadialSolution) -> Result<ReillyBreakdown> {
    let hess = hessian_estimate(geometry, m, sol)?;
    let lap = laplacian_estimate(geometry, m, sol)?;
    let ric = ricci_estimate(geometry, m, sol)?;
    let boundary = boundary_term(geometry, m, sol);
    Ok(ReillyBreakdown {
        problem,
        m,
        hess_sq: hess.value,
        lap_sq: lap.value,
        ric_term: ric.value,
        boundary_term: boundary,
        residual: lap.value - hess.value - ric.value - boundary,
        scale: boundary_scale(geometry, sol),
        quadrature_error: hess.error.max(lap.error).max(ric.error),
    })
}

/// Eigenvalue recomputed from its variational characterisation.
pub fn rayleigh_quotient(geometry: &Geometry, problem: Problem, m: u32, sol: &RadialSolution) -> Result<f64> {
    let boundary_density = geometry.density(geometry.radius());
    match problem {
        Problem::Sigma => {
            let tau = harmonics::tau(m, geometry.n()) as f64;
            let dirichlet = integrate_profile(geometry, sol, boundary_scale(geometry, sol), |i, p, _| {
                sol.dpsi[i] * sol.dpsi[i] + tau * sol.psi[i] * sol.psi[i] / (p.h * p.h)
            })?;
            let psi = sol.psi_end();
            Ok(dirichlet.value / (psi * psi * boundary_density))
        }
        Problem::Xi => {
            let psi = sol.psi_end();
            Ok(laplacian_sq_integral(geometry, m, sol)? / (psi * psi * boundary_density))
        }
        Problem::Eta => {
            let dpsi = sol.dpsi_end();
            Ok(laplacian_sq_integral(geometry, m, sol)? / (dpsi * dpsi * boundary_density))
        }
    }
}
