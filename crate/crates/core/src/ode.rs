//! Dormand-Prince 5(4) integrator with PI step control.
//!
//! Solutions of the radial equations grow like `r^m` from a tiny seed radius,
//! so the state is carried as `scaled * exp(log_scale)` and renormalised
//! whenever it leaves `[1e-100, 1e100]`. The recorded samples are unscaled.

use crate::{Result, SteklovError};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A21: f64 = 1.0 / 5.0;
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
// fifth-order weights, also the last stage row (FSAL)
const B: [f64; 6] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
];
// difference between fifth- and embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const RESCALE_HIGH: f64 = 1e100;
const RESCALE_LOW: f64 = 1e-100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    pub initial_step: Option<f64>,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            max_steps: 1_000_000,
            initial_step: None,
        }
    }
}

/// Samples recorded at the requested output radii plus the final state.
#[derive(Debug, Clone)]
pub struct Trajectory<const D: usize> {
    pub r: Vec<f64>,
    pub y: Vec<[f64; D]>,
    /// State at the end point, still divided by `exp(log_scale)`.
    pub end_scaled: [f64; D],
    pub log_scale: f64,
    pub accepted: usize,
    pub rejected: usize,
}

impl<const D: usize> Trajectory<D> {
    pub fn end_value(&self) -> [f64; D] {
        let s = self.log_scale.exp();
        self.end_scaled.map(|v| v * s)
    }
}

fn axpy<const D: usize>(y: &[f64; D], h: f64, terms: &[(f64, &[f64; D])]) -> [f64; D] {
    let mut out = *y;
    for (coef, k) in terms {
        if *coef != 0.0 {
            for i in 0..D {
                out[i] += h * coef * k[i];
            }
        }
    }
    out
}

/// Integrates `y' = rhs(r, y)` from `r0` to `r_end`.
///
/// `y0 * exp(log_scale0)` is the initial value. Samples are recorded at every
/// radius of `outputs` (increasing, within `[r0, r_end]`); steps are clipped so
/// each output is hit exactly. `rhs` returns `None` where the equation is
/// singular.
pub fn integrate<const D: usize, F>(
    mut rhs: F,
    r0: f64,
    y0: [f64; D],
    log_scale0: f64,
    r_end: f64,
    outputs: &[f64],
    opts: OdeOptions,
) -> Result<Trajectory<D>>
where
    F: FnMut(f64, &[f64; D]) -> Option<[f64; D]>,
{
    assert!(r_end > r0, "integration interval must be increasing");
    debug_assert!(outputs.windows(2).all(|w| w[0] <= w[1]));

    let mut traj = Trajectory {
        r: Vec::with_capacity(outputs.len()),
        y: Vec::with_capacity(outputs.len()),
        end_scaled: y0,
        log_scale: log_scale0,
        accepted: 0,
        rejected: 0,
    };

    let mut r = r0;
    let mut y = y0;
    let mut log_scale = log_scale0;
    let mut out_idx = 0;
    let record = |traj: &mut Trajectory<D>, r: f64, y: &[f64; D], log_scale: f64| {
        let s = log_scale.exp();
        traj.r.push(r);
        traj.y.push(y.map(|v| v * s));
    };
    while out_idx < outputs.len() && outputs[out_idx] <= r0 {
        record(&mut traj, r0, &y, log_scale);
        out_idx += 1;
    }

    let mut k1 = rhs(r, &y).ok_or(SteklovError::SingularWarp { r })?;
    let mut h = opts.initial_step.unwrap_or(if r0 > 0.0 {
        1e-2 * r0
    } else {
        1e-6 * (r_end - r0)
    });
    let mut err_old: f64 = 1e-4;
    let mut last_rejected = false;

    while r < r_end {
        if traj.accepted + traj.rejected >= opts.max_steps {
            return Err(SteklovError::StiffnessFailure {
                r,
                max_steps: opts.max_steps,
            });
        }
        let target = if out_idx < outputs.len() {
            outputs[out_idx].min(r_end)
        } else {
            r_end
        };
        let natural = h;
        let clipped = r + h >= target - 1e-14 * target.abs();
        if clipped {
            h = target - r;
        }
        if h <= 1e-14 * r.abs().max(f64::MIN_POSITIVE) {
            return Err(SteklovError::StiffnessFailure {
                r,
                max_steps: opts.max_steps,
            });
        }

        let singular = || SteklovError::SingularWarp { r };
        let k2 = rhs(r + C[1] * h, &axpy(&y, h, &[(A21, &k1)])).ok_or_else(singular)?;
        let k3 = rhs(r + C[2] * h, &axpy(&y, h, &[(A3[0], &k1), (A3[1], &k2)])).ok_or_else(singular)?;
        let k4 = rhs(
            r + C[3] * h,
            &axpy(&y, h, &[(A4[0], &k1), (A4[1], &k2), (A4[2], &k3)]),
        )
        .ok_or_else(singular)?;
        let k5 = rhs(
            r + C[4] * h,
            &axpy(&y, h, &[(A5[0], &k1), (A5[1], &k2), (A5[2], &k3), (A5[3], &k4)]),
        )
        .ok_or_else(singular)?;
        let k6 = rhs(
            r + C[5] * h,
            &axpy(
                &y,
                h,
                &[(A6[0], &k1), (A6[1], &k2), (A6[2], &k3), (A6[3], &k4), (A6[4], &k5)],
            ),
        )
        .ok_or_else(singular)?;
        let y_new = axpy(
            &y,
            h,
            &[(B[0], &k1), (B[2], &k3), (B[3], &k4), (B[4], &k5), (B[5], &k6)],
        );
        let r_new = if clipped { target } else { r + h };
        let k7 = rhs(r_new, &y_new).ok_or(SteklovError::SingularWarp { r: r_new })?;

        let mut err_sq = 0.0;
        for i in 0..D {
            let e = h * (E[0] * k1[i] + E[2] * k3[i] + E[3] * k4[i] + E[4] * k5[i] + E[5] * k6[i] + E[6] * k7[i]);
            let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
            err_sq += (e / sc).powi(2);
        }
        let err = (err_sq / D as f64).sqrt();
        if !err.is_finite() {
            traj.rejected += 1;
            h *= 0.2;
            last_rejected = true;
            continue;
        }

        if err <= 1.0 {
            traj.accepted += 1;
            r = r_new;
            y = y_new;
            k1 = k7;

            let big = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if big > RESCALE_HIGH || (big < RESCALE_LOW && big > 0.0) {
                y = y.map(|v| v / big);
                k1 = k1.map(|v| v / big);
                log_scale += big.ln();
            }

            let mut fac = 0.9 * err.max(1e-10).powf(-0.17) * err_old.powf(0.04);
            fac = fac.clamp(0.2, if last_rejected { 1.0 } else { 10.0 });
            err_old = err.max(1e-4);
            last_rejected = false;
            h *= fac;
            if clipped {
                h = h.max(natural);
                while out_idx < outputs.len() && outputs[out_idx] <= r {
                    record(&mut traj, r, &y, log_scale);
                    out_idx += 1;
                }
            }
        } else {
            traj.rejected += 1;
            h *= (0.9 * err.powf(-0.2)).max(0.2);
            last_rejected = true;
        }
    }

    traj.end_scaled = y;
    traj.log_scale = log_scale;
    Ok(traj)
}
