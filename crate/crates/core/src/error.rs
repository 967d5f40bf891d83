use thiserror::Error;

use crate::Problem;

pub type Result<T> = std::result::Result<T, SteklovError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SteklovError {
    #[error("invalid warp: {0}")]
    InvalidWarp(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature failed on [{a}, {b}]: error estimate {error:e} above tolerance {tolerance:e}")]
    QuadratureFailure {
        a: f64,
        b: f64,
        error: f64,
        tolerance: f64,
    },

    #[error("integrator exceeded {max_steps} steps at r = {r:e}")]
    StiffnessFailure { r: f64, max_steps: usize },

    #[error("warping function vanished or became non-finite at r = {r:e}")]
    SingularWarp { r: f64 },

    #[error("degenerate shooting combination for {problem} at m = {m}: boundary value {value:e}")]
    DegenerateCombination { problem: Problem, m: u32, value: f64 },

    #[error("quadrature grid too coarse: relative error estimate {estimate:e}")]
    GridTooCoarse { estimate: f64 },

    #[error("boundary convexity fails: h'({r}) = {dh} <= 0")]
    ConvexityFailure { r: f64, dh: f64 },

    #[error("singular linear system at row {row}")]
    SingularSystem { row: usize },
}
