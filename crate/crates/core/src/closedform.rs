//! Closed-form spectra used as independent oracles.
//!
//! For the Euclidean ball everything is explicit. In the plane the radial
//! equation becomes `b'' = m^2 b` in the conformal coordinate
//! `s(r) = int dr / h`, which reduces the fourth-order problems to single
//! integrals of `E(r) = exp(2m (s(r) - s(R)))`. `E` is evaluated as
//! `(r/R)^(2m) exp(-2m J(r))` with `J(r) = int_r^R (1/h - 1/t) dt`, so it stays
//! in `[0, 1]` and the logarithmic singularity of `s` at the origin never
//! enters a quadrature.

use crate::quadrature::{self, QuadOptions};
use crate::warping::Geometry;
use crate::{Problem, Result, SteklovError};

/// `m / R`.
pub fn euclid_sigma(_n: u32, radius: f64, m: u32) -> f64 {
    m as f64 / radius
}

/// `m^2 (n + 2m) / R^3`.
pub fn euclid_xi(n: u32, radius: f64, m: u32) -> f64 {
    let m = m as f64;
    m * m * (n as f64 + 2.0 * m) / radius.powi(3)
}

/// `(n + 2m) / R`.
pub fn euclid_eta(n: u32, radius: f64, m: u32) -> f64 {
    (n as f64 + 2.0 * m as f64) / radius
}

pub fn euclid(problem: Problem, n: u32, radius: f64, m: u32) -> f64 {
    match problem {
        Problem::Sigma => euclid_sigma(n, radius, m),
        Problem::Xi => euclid_xi(n, radius, m),
        Problem::Eta => euclid_eta(n, radius, m),
    }
}

fn require_planar(geometry: &Geometry) -> Result<()> {
    if geometry.n() != 2 {
        return Err(SteklovError::InvalidArgument(format!(
            "planar closed form needs n = 2, got n = {}",
            geometry.n()
        )));
    }
    Ok(())
}

/// `m / h(R)`.
pub fn sigma_n2(geometry: &Geometry, m: u32) -> Result<f64> {
    require_planar(geometry)?;
    Ok(m as f64 / geometry.warp().h(geometry.radius()))
}

fn log_ratio_integral(geometry: &Geometry, r: f64) -> Result<f64> {
    let warp = geometry.warp();
    let est = quadrature::integrate(
        |t| {
            let h = warp.h(t);
            (t - h) / (h * t)
        },
        r,
        geometry.radius(),
        QuadOptions {
            abs_tol: 1e-15,
            rel_tol: 1e-14,
            ..QuadOptions::default()
        },
    )?;
    Ok(est.value)
}

/// `exp(2m (s(r) - s(R)))`.
pub fn conformal_weight(geometry: &Geometry, m: u32, r: f64) -> Result<f64> {
    if m == 0 {
        return Ok(1.0);
    }
    if r <= 0.0 {
        return Ok(0.0);
    }
    let two_m = 2.0 * m as f64;
    Ok((r / geometry.radius()).powf(two_m) * (-two_m * log_ratio_integral(geometry, r)?).exp())
}

/// `int_a^b E(t) h(t) dt`.
fn weighted_area(geometry: &Geometry, m: u32, a: f64, b: f64) -> Result<f64> {
    let warp = geometry.warp();
    // integrand is at most h(R); tolerance is relative to that scale
    let scale = warp.h(geometry.radius()) * geometry.radius();
    let failure = std::cell::Cell::new(None);
    let est = quadrature::integrate(
        |t| match conformal_weight(geometry, m, t) {
            Ok(e) => e * warp.h(t),
            Err(err) => {
                failure.set(Some(err));
                f64::NAN
            }
        },
        a,
        b,
        QuadOptions::absolute(1e-13 * scale),
    );
    if let Some(err) = failure.take() {
        return Err(err);
    }
    Ok(est?.value)
}

/// `m^2 E(R) / (h(R) int_0^R E h)` for `m >= 1`, zero for `m = 0`.
pub fn xi_n2(geometry: &Geometry, m: u32) -> Result<f64> {
    require_planar(geometry)?;
    if m == 0 {
        return Ok(0.0);
    }
    let radius = geometry.radius();
    let area = weighted_area(geometry, m, 0.0, radius)?;
    let mf = m as f64;
    Ok(mf * mf / (geometry.warp().h(radius) * area))
}

/// `E(R) h(R) / int_0^R E h`; for `m = 0` this is the ground state.
pub fn eta_n2(geometry: &Geometry, m: u32) -> Result<f64> {
    require_planar(geometry)?;
    let radius = geometry.radius();
    let area = weighted_area(geometry, m, 0.0, radius)?;
    Ok(geometry.warp().h(radius) / area)
}

/// `h^(n-1)(R) / int_0^R h^(n-1)`, the radially symmetric eigenvalue of the
/// `eta` problem.
pub fn eta0(geometry: &Geometry) -> Result<f64> {
    let radius = geometry.radius();
    let scale = geometry.density(radius) * radius;
    let volume = quadrature::integrate(|t| geometry.density(t), 0.0, radius, QuadOptions::absolute(1e-13 * scale))?;
    Ok(geometry.density(radius) / volume.value)
}

/// `G(r) = E(r) h(r)^2 / h'(r) - 2(m+1) int_0^r E h`.
pub fn g_function(geometry: &Geometry, m: u32, r: f64) -> Result<f64> {
    require_planar(geometry)?;
    let warp = geometry.warp();
    let dh = warp.dh(r);
    if dh <= 0.0 {
        return Err(SteklovError::ConvexityFailure { r, dh });
    }
    let h = warp.h(r);
    let area = weighted_area(geometry, m, 0.0, r)?;
    Ok(conformal_weight(geometry, m, r)? * h * h / dh - 2.0 * (m as f64 + 1.0) * area)
}

/// Natural size of `G`: `h(R)^2 / h'(R)`.
pub fn g_scale(geometry: &Geometry) -> f64 {
    let radius = geometry.radius();
    let h = geometry.warp().h(radius);
    h * h / geometry.warp().dh(radius).abs()
}

pub const G_GRID_POINTS: usize = 512;

/// Minimum of `G` over `r_i = i R / 512`, `i = 1..=512`.
pub fn g_min(geometry: &Geometry, m: u32) -> Result<f64> {
    require_planar(geometry)?;
    let warp = geometry.warp();
    let radius = geometry.radius();
    let grid: Vec<f64> = (1..=G_GRID_POINTS)
        .map(|i| radius * i as f64 / G_GRID_POINTS as f64)
        .collect();
    for &r in &grid {
        let dh = warp.dh(r);
        if dh <= 0.0 {
            return Err(SteklovError::ConvexityFailure { r, dh });
        }
    }
    let mut area = 0.0;
    let mut prev = 0.0;
    let mut best = f64::INFINITY;
    for &r in &grid {
        area += weighted_area(geometry, m, prev, r)?;
        prev = r;
        let h = warp.h(r);
        let g = conformal_weight(geometry, m, r)? * h * h / warp.dh(r) - 2.0 * (m as f64 + 1.0) * area;
        best = best.min(g);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::WarpSpec;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn euclidean_formulas() {
        assert_eq!(euclid_sigma(3, 1.0, 2), 2.0);
        assert_eq!(euclid_xi(2, 1.0, 1), 4.0);
        assert_eq!(euclid_eta(4, 2.0, 1), 3.0);
        assert_eq!(euclid_eta(3, 1.0, 0), 3.0);
    }

    #[test]
    fn sigma_planar() {
        let flat = Geometry::euclidean(2, 1.0).unwrap();
        assert_eq!(sigma_n2(&flat, 3).unwrap(), 3.0);
        assert_eq!(sigma_n2(&flat, 0).unwrap(), 0.0);
        let cap = Geometry::new(2, FRAC_PI_2, WarpSpec::sphere(1.0)).unwrap();
        assert_relative_eq!(sigma_n2(&cap, 1).unwrap(), 1.0, max_relative = 1e-15);
        assert!(sigma_n2(&Geometry::euclidean(3, 1.0).unwrap(), 1).is_err());
    }

    #[test]
    fn planar_flat_fourth_order() {
        let flat = Geometry::euclidean(2, 1.0).unwrap();
        assert_relative_eq!(xi_n2(&flat, 1).unwrap(), 4.0, max_relative = 1e-12);
        assert_relative_eq!(xi_n2(&flat, 2).unwrap(), 24.0, max_relative = 1e-12);
        assert_relative_eq!(eta_n2(&flat, 1).unwrap(), 4.0, max_relative = 1e-12);
        let wide = Geometry::euclidean(2, 2.0).unwrap();
        assert_relative_eq!(eta_n2(&wide, 3).unwrap(), 4.0, max_relative = 1e-12);
    }

    #[test]
    fn conformal_weight_flat_is_power() {
        let flat = Geometry::euclidean(2, 2.0).unwrap();
        assert_relative_eq!(conformal_weight(&flat, 3, 1.0).unwrap(), 0.5f64.powi(6), max_relative = 1e-14);
        assert_eq!(conformal_weight(&flat, 3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn conformal_weight_on_cap() {
        // s(r) = ln tan(r/2) for h = sin
        let cap = Geometry::new(2, 1.0, WarpSpec::sphere(1.0)).unwrap();
        let r: f64 = 0.3;
        let expected = ((0.5 * r).tan() / 0.5f64.tan()).powi(4);
        assert_relative_eq!(conformal_weight(&cap, 2, r).unwrap(), expected, max_relative = 1e-12);
    }

    #[test]
    fn planar_identity() {
        for spec in [WarpSpec::sphere(1.0), WarpSpec::hyperbolic(0.5)] {
            let g = Geometry::new(2, 1.0, spec).unwrap();
            let h = g.warp().h(1.0);
            for m in 1..=4u32 {
                let mf = m as f64;
                let lhs = eta_n2(&g, m).unwrap() * mf * mf;
                let rhs = xi_n2(&g, m).unwrap() * h * h;
                assert_relative_eq!(lhs, rhs, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn ground_state() {
        assert_relative_eq!(eta0(&Geometry::euclidean(3, 1.0).unwrap()).unwrap(), 3.0, max_relative = 1e-13);
        assert_relative_eq!(eta0(&Geometry::euclidean(2, 4.0).unwrap()).unwrap(), 0.5, max_relative = 1e-13);
        let cap = Geometry::new(2, FRAC_PI_2, WarpSpec::sphere(1.0)).unwrap();
        assert_relative_eq!(eta0(&cap).unwrap(), 1.0, max_relative = 1e-13);
        // planar m = 0 agrees with the general ground state
        let hyp = Geometry::new(2, 0.9, WarpSpec::hyperbolic(1.0)).unwrap();
        assert_relative_eq!(eta_n2(&hyp, 0).unwrap(), eta0(&hyp).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn g_vanishes_on_flat_disc() {
        let flat = Geometry::euclidean(2, 1.0).unwrap();
        for r in [1e-3, 0.25, 0.5, 1.0] {
            assert!(g_function(&flat, 1, r).unwrap().abs() < 1e-13);
        }
        assert!(g_min(&flat, 3).unwrap().abs() < 1e-12);
    }

    #[test]
    fn g_small_radius_limit() {
        let cap = Geometry::new(2, 1.0, WarpSpec::sphere(1.0)).unwrap();
        assert!(g_function(&cap, 2, 1e-4).unwrap().abs() < 1e-12);
    }

    #[test]
    fn g_nonnegative_on_cap() {
        let cap = Geometry::new(2, 1.0, WarpSpec::sphere(1.0)).unwrap();
        assert!(g_min(&cap, 2).unwrap() >= -1e-12);
    }

    #[test]
    fn g_requires_increasing_warp() {
        let cap = Geometry::new(2, 2.0, WarpSpec::sphere(1.0)).unwrap();
        assert!(matches!(g_min(&cap, 1), Err(SteklovError::ConvexityFailure { .. })));
        assert!(matches!(g_function(&cap, 1, 1.9), Err(SteklovError::ConvexityFailure { .. })));
    }
}
