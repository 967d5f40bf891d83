//! Small banded solvers used by the finite-difference oracle.

use crate::{Result, SteklovError};

/// Solves the tridiagonal system with sub-diagonal `lower`, diagonal `diag`
/// and super-diagonal `upper` (`lower[0]` and `upper[n-1]` are ignored).
pub fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    assert!(lower.len() == n && upper.len() == n && rhs.len() == n);
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    for i in 0..n {
        let pivot = if i == 0 { diag[0] } else { diag[i] - lower[i] * c[i - 1] };
        if pivot == 0.0 || !pivot.is_finite() {
            return Err(SteklovError::SingularSystem { row: i });
        }
        c[i] = if i + 1 < n { upper[i] / pivot } else { 0.0 };
        d[i] = if i == 0 { rhs[0] / pivot } else { (rhs[i] - lower[i] * d[i - 1]) / pivot };
    }
    let mut x = d;
    for i in (0..n.saturating_sub(1)).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}

/// Row-by-row Givens QR for least-squares problems whose rows each touch at
/// most `width` consecutive unknowns.
#[derive(Debug, Clone)]
pub struct BandedLeastSquares {
    width: usize,
    r: Vec<Vec<f64>>,
    filled: Vec<bool>,
    qtb: Vec<f64>,
    residual_sq: f64,
}

impl BandedLeastSquares {
    pub fn new(unknowns: usize, width: usize) -> Self {
        assert!(width >= 1);
        Self {
            width,
            r: vec![vec![0.0; width]; unknowns],
            filled: vec![false; unknowns],
            qtb: vec![0.0; unknowns],
            residual_sq: 0.0,
        }
    }

    pub fn unknowns(&self) -> usize {
        self.r.len()
    }

    /// Adds the equation `sum_k coeffs[k] x[first + k] = rhs` to the system.
    pub fn add_row(&mut self, first: usize, coeffs: &[f64], rhs: f64) {
        assert!(coeffs.len() <= self.width);
        let n = self.unknowns();
        let mut row = vec![0.0; self.width];
        row[..coeffs.len()].copy_from_slice(coeffs);
        let mut rhs = rhs;
        let mut j = first;
        while j < n {
            if row[0] != 0.0 {
                if !self.filled[j] {
                    self.r[j] = row;
                    self.qtb[j] = rhs;
                    self.filled[j] = true;
                    return;
                }
                let a = self.r[j][0];
                let b = row[0];
                let rad = a.hypot(b);
                let (c, s) = (a / rad, b / rad);
                for (target, incoming) in self.r[j].iter_mut().zip(row.iter_mut()) {
                    let (u, v) = (*target, *incoming);
                    *target = c * u + s * v;
                    *incoming = -s * u + c * v;
                }
                let (u, v) = (self.qtb[j], rhs);
                self.qtb[j] = c * u + s * v;
                rhs = -s * u + c * v;
            }
            row.rotate_left(1);
            row[self.width - 1] = 0.0;
            j += 1;
            if row.iter().all(|&v| v == 0.0) {
                break;
            }
        }
        self.residual_sq += rhs * rhs;
    }

    /// Minimal value of `|A x - b|^2` over all `x`.
    pub fn residual_sq(&self) -> f64 {
        self.residual_sq
    }

    /// Least-squares solution by back substitution.
    pub fn solve(&self) -> Result<Vec<f64>> {
        let n = self.unknowns();
        let mut x = vec![0.0; n];
        let scale = self
            .r
            .iter()
            .map(|row| row[0].abs())
            .fold(0.0f64, f64::max);
        for j in (0..n).rev() {
            let diag = self.r[j][0];
            if !self.filled[j] || diag.abs() <= 1e-20 * scale {
                return Err(SteklovError::SingularSystem { row: j });
            }
            let mut acc = self.qtb[j];
            for k in 1..self.width {
                if j + k < n {
                    acc -= self.r[j][k] * x[j + k];
                }
            }
            x[j] = acc / diag;
        }
        Ok(x)
    }
}
