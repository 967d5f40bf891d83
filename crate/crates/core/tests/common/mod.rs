#![allow(dead_code)]

use steklov::WarpSpec;

/// A warp and radius; the dimension is chosen per check.
#[derive(Debug, Clone)]
pub struct Instance {
    pub spec: WarpSpec,
    pub radius: f64,
}

pub const RADII: [f64; 3] = [0.5, 0.8, 1.2];

/// 15 spherical caps and 15 concave odd series `r - c3 r^3 + c5 r^5` with
/// `0 < h' <= 1` and `h'' <= 0` on `(0, R]`.
pub fn ric_nonneg_grid() -> Vec<Instance> {
    let mut out = Vec::new();
    for a in [0.25, 0.5, 0.75, 1.0, 1.25] {
        for radius in RADII {
            out.push(Instance {
                spec: WarpSpec::sphere(a),
                radius,
            });
        }
    }
    for f in [0.1, 0.3, 0.5, 0.7, 0.9] {
        for radius in RADII {
            let c3 = f / (3.0 * radius * radius);
            // half of the largest c5 keeping h'' <= 0
            let c5 = 0.5 * 3.0 * c3 / (10.0 * radius * radius);
            out.push(Instance {
                spec: WarpSpec::series(vec![1.0, -c3, c5]),
                radius,
            });
        }
    }
    out
}

/// Hyperbolic warps, `Ric <= 0`.
pub fn ric_nonpos_grid() -> Vec<Instance> {
    let mut out = Vec::new();
    for a in [0.25, 0.5, 0.75, 1.0, 1.25] {
        for radius in RADII {
            out.push(Instance {
                spec: WarpSpec::hyperbolic(a),
                radius,
            });
        }
    }
    out
}

/// The two curved families used for method comparisons at `R = 1`.
pub fn curved_pair() -> [WarpSpec; 2] {
    [WarpSpec::sphere(1.0), WarpSpec::hyperbolic(1.0)]
}

pub fn rel_err(value: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        value.abs()
    } else {
        (value - reference).abs() / reference.abs()
    }
}
