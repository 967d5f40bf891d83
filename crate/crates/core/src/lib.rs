//! Spectra of three Steklov-type eigenvalue problems on warped product balls
//! `[0, R) x S^{n-1}` with metric `dr^2 + h(r)^2 g_sphere`.
//!
//! Every eigenfunction separates as `psi(r) * omega(p)` with `omega` a spherical
//! harmonic of degree `m`, so each problem reduces to a radial boundary value
//! problem per degree:
//!
//! * `Sigma`: the classical Steklov problem, `Delta phi = 0`, `d_nu phi = sigma phi`.
//! * `Xi`: `Delta^2 phi = 0`, `d_nu phi = 0`, `d_nu(Delta phi) + xi phi = 0`.
//! * `Eta`: `Delta^2 phi = 0`, `phi = 0`, `Delta phi = eta d_nu phi`.
//!
//! The [`radial`] module solves these by shooting from the regular singular
//! point at the origin. [`closedform`] and [`oracle`] provide independent
//! reference values, [`reilly`] checks the integral identities satisfied by
//! the computed eigenfunctions and [`spectrum`] evaluates the curvature
//! conditioned eigenvalue bounds.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub mod cli;
pub mod closedform;
pub mod error;
pub mod harmonics;
pub mod linalg;
pub mod ode;
pub mod oracle;
pub mod quadrature;
pub mod radial;
pub mod reilly;
pub mod spectrum;
pub mod warping;

pub use error::{Result, SteklovError};
pub use radial::{EigenResult, RadialSolution, ShootingConfig};
pub use spectrum::{BoundKind, BoundReport, SpectrumTable, Verdict};
pub use warping::{CurvatureReport, Geometry, RicSign, Warp, WarpSpec};

/// Which of the three boundary eigenvalue problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Sigma,
    Xi,
    Eta,
}

impl Problem {
    pub const ALL: [Problem; 3] = [Problem::Sigma, Problem::Xi, Problem::Eta];

    pub fn as_str(self) -> &'static str {
        match self {
            Problem::Sigma => "sigma",
            Problem::Xi => "xi",
            Problem::Eta => "eta",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Problem {
    type Err = SteklovError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sigma" => Ok(Problem::Sigma),
            "xi" => Ok(Problem::Xi),
            "eta" => Ok(Problem::Eta),
            other => Err(SteklovError::InvalidArgument(format!(
                "unknown problem '{other}' (expected sigma, xi or eta)"
            ))),
        }
    }
}
