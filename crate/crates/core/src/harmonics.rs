//! Degree bookkeeping for spherical harmonics on `S^{n-1}`.

use serde::Serialize;

use crate::warping::Geometry;

/// A harmonic degree `m` on the sphere of the ambient dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HarmonicDegree {
    pub m: u32,
    pub n: u32,
}

impl HarmonicDegree {
    pub fn new(m: u32, n: u32) -> Self {
        assert!(n >= 2, "ambient dimension must be at least 2");
        Self { m, n }
    }

    pub fn tau(self) -> u64 {
        tau(self.m, self.n)
    }

    pub fn multiplicity(self) -> u64 {
        multiplicity(self.m, self.n)
    }
}

/// Eigenvalue `m (n - 2 + m)` of `-Laplacian` on `S^{n-1}`.
pub fn tau(m: u32, n: u32) -> u64 {
    let m = m as u64;
    m * (n as u64 - 2 + m)
}

/// Binomial coefficient, zero when `k > top` or `top < 0`.
pub fn binomial(top: i64, k: i64) -> u64 {
    if top < 0 || k < 0 || k > top {
        return 0;
    }
    let k = k.min(top - k) as u128;
    let top = top as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (top - i) / (i + 1);
    }
    acc as u64
}

/// Dimension of the degree-`m` spherical harmonics on `S^{n-1}`.
pub fn multiplicity(m: u32, n: u32) -> u64 {
    match m {
        0 => 1,
        1 => n as u64,
        _ => {
            let (m, n) = (m as i64, n as i64);
            binomial(n + m - 1, n - 1) - binomial(n + m - 3, n - 1)
        }
    }
}

/// `lambda_(m) = tau_m / h(R)^2`, the degree-`m` eigenvalue of the boundary sphere.
pub fn boundary_eigenvalue(geometry: &Geometry, m: u32) -> f64 {
    let h = geometry.warp().h(geometry.radius());
    tau(m, geometry.n()) as f64 / (h * h)
}
