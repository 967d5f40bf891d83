//! Finite-difference Rayleigh-quotient minimisers.
//!
//! These share nothing with the shooting code beyond the warp itself: the
//! classical quotient is minimised over continuous piecewise-linear
//! functions, the fourth-order quotients over grid functions with the radial
//! operator replaced by second-order differences. Both converge like
//! `O(N^-2)`, so two resolutions give a Richardson estimate.

use serde::Serialize;

use crate::harmonics;
use crate::linalg::{solve_tridiagonal, BandedLeastSquares};
use crate::quadrature::gauss5;
use crate::warping::Geometry;
use crate::{Problem, Result, SteklovError};

pub const MIN_GRID: usize = 200;

fn check(m: u32, grid_n: usize) -> Result<()> {
    if m == 0 {
        return Err(SteklovError::InvalidArgument("finite-difference oracle needs m >= 1".into()));
    }
    if grid_n < MIN_GRID {
        return Err(SteklovError::InvalidArgument(format!(
            "finite-difference grid needs at least {MIN_GRID} intervals, got {grid_n}"
        )));
    }
    Ok(())
}

/// Minimum of `int (psi'^2 + tau psi^2 / h^2) h^(n-1)` over piecewise-linear
/// `psi` with `psi(0) = 0`, `psi(R) = 1`, divided by `h^(n-1)(R)`.
pub fn fd_sigma(geometry: &Geometry, m: u32, grid_n: usize) -> Result<f64> {
    check(m, grid_n)?;
    let radius = geometry.radius();
    let tau = harmonics::tau(m, geometry.n()) as f64;
    let warp = geometry.warp();
    let step = radius / grid_n as f64;

    // stiffness rows for nodes 1..=N, stored at index node - 1
    let nodes = grid_n;
    let mut lower = vec![0.0; nodes];
    let mut diag = vec![0.0; nodes];
    let mut upper = vec![0.0; nodes];
    for e in 0..grid_n {
        let (a, b) = (e as f64 * step, (e + 1) as f64 * step);
        let density = |r: f64| geometry.density(r);
        let mass = |r: f64| {
            let h = warp.h(r);
            tau * density(r) / (h * h)
        };
        let grad = gauss5(density, a, b) / (step * step);
        let left_left = gauss5(|r| mass(r) * ((b - r) / step).powi(2), a, b);
        let left_right = gauss5(|r| mass(r) * (b - r) * (r - a) / (step * step), a, b);
        let right_right = gauss5(|r| mass(r) * ((r - a) / step).powi(2), a, b);
        if e > 0 {
            diag[e - 1] += grad + left_left;
            upper[e - 1] += -grad + left_right;
            lower[e] += -grad + left_right;
        }
        diag[e] += grad + right_right;
    }
    let interior = nodes - 1;
    let rhs: Vec<f64> = (0..interior)
        .map(|i| if i + 1 == interior { -upper[i] } else { 0.0 })
        .collect();
    let x = solve_tridiagonal(&lower[..interior], &diag[..interior], &upper[..interior], &rhs)?;
    let quotient = diag[nodes - 1] + lower[nodes - 1] * x[interior - 1];
    Ok(quotient / geometry.density(radius))
}

/// A row of the discrete radial operator: coefficients on grid nodes.
type StencilRow = Vec<(usize, f64)>;

fn operator_rows(geometry: &Geometry, m: u32, grid_n: usize) -> Vec<(StencilRow, f64)> {
    let radius = geometry.radius();
    let step = radius / grid_n as f64;
    let nm1 = geometry.n() as f64 - 1.0;
    let tau = harmonics::tau(m, geometry.n()) as f64;
    let warp = geometry.warp();
    let mut rows = Vec::with_capacity(grid_n);
    for i in 1..=grid_n {
        let r = if i == grid_n { radius } else { i as f64 * step };
        let h = warp.h(r);
        let drift = nm1 * warp.dh(r) / h;
        let potential = tau / (h * h);
        let s2 = step * step;
        let row = vec![
            (i - 1, 1.0 / s2 - drift / (2.0 * step)),
            (i, -2.0 / s2 - potential),
            (i + 1, 1.0 / s2 + drift / (2.0 * step)),
        ];
        let weight = if i == grid_n { 0.5 * step } else { step } * geometry.density(r);
        rows.push((row, weight));
    }
    rows
}

/// Minimises `sum_i w_i (L psi)_i^2` over rows `1..=N` with `psi_0 = 0`,
/// `psi_N = end_value` and the central `psi'_N = end_slope`, which eliminates
/// the ghost value `psi_{N+1}`. A one-sided closure of the slope only gives
/// first-order convergence of the minimum.
fn constrained_minimum(geometry: &Geometry, m: u32, grid_n: usize, end_value: f64, end_slope: f64) -> Result<f64> {
    let step = geometry.radius() / grid_n as f64;
    let unknowns = grid_n - 1; // psi_1 ..= psi_{N-1}
    let mut ls = BandedLeastSquares::new(unknowns, 3);
    for (row, weight) in operator_rows(geometry, m, grid_n) {
        let sw = weight.sqrt();
        let mut constant = 0.0;
        let mut coeffs: Vec<(usize, f64)> = Vec::with_capacity(3);
        let mut push = |node: usize, c: f64| {
            if let Some(slot) = coeffs.iter_mut().find(|(j, _)| *j == node) {
                slot.1 += c;
            } else {
                coeffs.push((node, c));
            }
        };
        for (node, c) in row {
            match node {
                0 => {}
                j if j == grid_n => constant += c * end_value,
                // ghost node from (psi_{N+1} - psi_{N-1}) / (2 step) = slope
                j if j == grid_n + 1 => {
                    constant += c * 2.0 * step * end_slope;
                    push(grid_n - 1, c);
                }
                j => push(j, c),
            }
        }
        let first = coeffs.iter().map(|(j, _)| *j).min().expect("every row touches an unknown");
        let mut dense = [0.0; 3];
        for (j, c) in coeffs {
            dense[j - first] += sw * c;
        }
        let last = dense.iter().rposition(|&c| c != 0.0).map_or(1, |p| p + 1);
        ls.add_row(first - 1, &dense[..last], -sw * constant);
    }
    Ok(ls.residual_sq())
}

/// `min int (L psi)^2 h^(n-1)` subject to `psi(R) = 1`, `psi'(R) = 0`, over `h^(n-1)(R)`.
pub fn fd_xi(geometry: &Geometry, m: u32, grid_n: usize) -> Result<f64> {
    check(m, grid_n)?;
    Ok(constrained_minimum(geometry, m, grid_n, 1.0, 0.0)? / geometry.density(geometry.radius()))
}

/// `min int (L psi)^2 h^(n-1)` subject to `psi(R) = 0`, `psi'(R) = 1`, over `h^(n-1)(R)`.
pub fn fd_eta(geometry: &Geometry, m: u32, grid_n: usize) -> Result<f64> {
    check(m, grid_n)?;
    Ok(constrained_minimum(geometry, m, grid_n, 0.0, 1.0)? / geometry.density(geometry.radius()))
}

pub fn fd_value(geometry: &Geometry, problem: Problem, m: u32, grid_n: usize) -> Result<f64> {
    match problem {
        Problem::Sigma => fd_sigma(geometry, m, grid_n),
        Problem::Xi => fd_xi(geometry, m, grid_n),
        Problem::Eta => fd_eta(geometry, m, grid_n),
    }
}

/// Values on grids `N` and `2N` with their second-order Richardson extrapolation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdEstimate {
    pub grid_n: usize,
    pub coarse: f64,
    pub fine: f64,
    pub extrapolated: f64,
    /// `|fine - coarse| / 3`.
    pub error: f64,
}

/// Richardson combination of second-order values on grids `N` and `2N`.
pub fn richardson(coarse: f64, fine: f64) -> (f64, f64) {
    let delta = (fine - coarse) / 3.0;
    (fine + delta, delta.abs())
}

pub fn fd_extrapolated(geometry: &Geometry, problem: Problem, m: u32, grid_n: usize) -> Result<FdEstimate> {
    let coarse = fd_value(geometry, problem, m, grid_n)?;
    let fine = fd_value(geometry, problem, m, 2 * grid_n)?;
    let (extrapolated, error) = richardson(coarse, fine);
    Ok(FdEstimate {
        grid_n,
        coarse,
        fine,
        extrapolated,
        error,
    })
}

/// Observed order `log2(|f(N) - f(2N)| / |f(2N) - f(4N)|)`.
pub fn convergence_order(geometry: &Geometry, problem: Problem, m: u32, grid_n: usize) -> Result<f64> {
    let a = fd_value(geometry, problem, m, grid_n)?;
    let b = fd_value(geometry, problem, m, 2 * grid_n)?;
    let c = fd_value(geometry, problem, m, 4 * grid_n)?;
    Ok(((a - b).abs() / (b - c).abs()).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::WarpSpec;

    #[test]
    fn sigma_flat_examples() {
        let g3 = Geometry::euclidean(3, 1.0).unwrap();
        assert!((fd_sigma(&g3, 1, 400).unwrap() - 1.0).abs() < 2e-5);
        let g2 = Geometry::euclidean(2, 1.0).unwrap();
        assert!((fd_sigma(&g2, 2, 800).unwrap() - 2.0).abs() < 1e-5);
    }

    #[test]
    fn sigma_is_an_upper_bound_from_the_trial_space() {
        let g = Geometry::new(3, 1.0, WarpSpec::sphere(1.0)).unwrap();
        let shot = crate::radial::sigma_eigenvalue(&g, 2, &Default::default()).unwrap().value;
        for n in [200, 400, 800] {
            assert!(fd_sigma(&g, 2, n).unwrap() >= shot - 1e-12);
        }
    }

    #[test]
    fn richardson_sharpens_sigma() {
        let g = Geometry::euclidean(2, 1.0).unwrap();
        let est = fd_extrapolated(&g, Problem::Sigma, 2, 400).unwrap();
        assert!((est.extrapolated - 2.0).abs() < 1e-7);
        let ratio = (est.coarse - 2.0) / (est.fine - 2.0);
        assert!((ratio - 4.0).abs() < 0.2, "ratio {ratio}");
    }

    #[test]
    fn fourth_order_flat_examples() {
        let g3 = Geometry::euclidean(3, 1.0).unwrap();
        assert!((fd_xi(&g3, 1, 800).unwrap() - 5.0).abs() < 1e-3);
        let g2 = Geometry::euclidean(2, 1.0).unwrap();
        assert!((fd_eta(&g2, 1, 800).unwrap() - 4.0).abs() < 1e-3);
    }

    #[test]
    fn fourth_order_matches_shooting_on_cap() {
        let g = Geometry::new(3, 1.0, WarpSpec::sphere(1.0)).unwrap();
        let shot = crate::radial::xi_eigenvalue(&g, 2, &Default::default()).unwrap().value;
        let est = fd_extrapolated(&g, Problem::Xi, 2, 400).unwrap();
        assert!((est.extrapolated - shot).abs() <= 3.0 * est.error.max(1e-12 * shot), "{est:?} vs {shot}");
    }

    #[test]
    fn observed_order_is_two() {
        let g = Geometry::new(2, 1.0, WarpSpec::hyperbolic(1.0)).unwrap();
        for problem in Problem::ALL {
            let p = convergence_order(&g, problem, 1, 200).unwrap();
            assert!((1.7..=2.3).contains(&p), "{problem}: {p}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let g = Geometry::euclidean(2, 1.0).unwrap();
        assert!(fd_sigma(&g, 0, 400).is_err());
        assert!(fd_xi(&g, 1, 100).is_err());
    }
}
