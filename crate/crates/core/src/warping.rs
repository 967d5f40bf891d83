//! Warping functions, problem geometry and curvature diagnostics.
//!
//! A warping function `h` must satisfy the smoothness conditions at the origin
//! (`h(0) = 0`, `h'(0) = 1`, all even derivatives vanishing) for the metric
//! `dr^2 + h^2 g_sphere` to close up smoothly into a ball. Those conditions
//! cannot be checked from samples, so only four analytic families are
//! accepted, each of which satisfies them by construction.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::quadrature::{self, QuadOptions};
use crate::{Result, SteklovError};

/// Number of samples of `(0, R]` used to validate positivity of `h`.
const VALIDATION_GRID: usize = 1000;

/// Parametric warping function family.
#[derive(Debug, Clone, PartialEq)]
pub enum WarpSpec {
    /// `h(r) = r`, the flat ball.
    Euclidean,
    /// `h(r) = sin(a r) / a`, a geodesic ball of the sphere of curvature `a^2`.
    SphereCap { a: f64 },
    /// `h(r) = sinh(a r) / a`, a geodesic ball of hyperbolic space.
    Hyperbolic { a: f64 },
    /// `h(r) = c1 r + c3 r^3 + c5 r^5 + ...` with `c1 = 1`.
    OddSeries { coeffs: Vec<f64> },
}

impl WarpSpec {
    pub fn sphere(a: f64) -> Self {
        WarpSpec::SphereCap { a }
    }

    pub fn hyperbolic(a: f64) -> Self {
        WarpSpec::Hyperbolic { a }
    }

    pub fn series(coeffs: impl Into<Vec<f64>>) -> Self {
        WarpSpec::OddSeries {
            coeffs: coeffs.into(),
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            WarpSpec::Euclidean => "euclidean",
            WarpSpec::SphereCap { .. } => "sphere",
            WarpSpec::Hyperbolic { .. } => "sinh",
            WarpSpec::OddSeries { .. } => "series",
        }
    }

    /// Spec of `r -> c h(r / c)`, the same shape blown up by a factor `c`.
    pub fn scaled(&self, c: f64) -> WarpSpec {
        match self {
            WarpSpec::Euclidean => WarpSpec::Euclidean,
            WarpSpec::SphereCap { a } => WarpSpec::SphereCap { a: a / c },
            WarpSpec::Hyperbolic { a } => WarpSpec::Hyperbolic { a: a / c },
            WarpSpec::OddSeries { coeffs } => WarpSpec::OddSeries {
                coeffs: coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, ck)| ck * c.powi(-2 * k as i32))
                    .collect(),
            },
        }
    }

    /// Flat key-value form, e.g. `family=sphere a=1`.
    pub fn to_config(&self) -> String {
        match self {
            WarpSpec::Euclidean => "family=euclidean".to_string(),
            WarpSpec::SphereCap { a } => format!("family=sphere a={a}"),
            WarpSpec::Hyperbolic { a } => format!("family=sinh a={a}"),
            WarpSpec::OddSeries { coeffs } => format!("family=series coeffs={}", join_floats(coeffs)),
        }
    }

    /// Compact form used on the command line, e.g. `sphere:1`.
    pub fn to_short(&self) -> String {
        match self {
            WarpSpec::Euclidean => "euclidean".to_string(),
            WarpSpec::SphereCap { a } => format!("sphere:{a}"),
            WarpSpec::Hyperbolic { a } => format!("sinh:{a}"),
            WarpSpec::OddSeries { coeffs } => format!("series:{}", join_floats(coeffs)),
        }
    }

    fn check_parameters(&self) -> Result<()> {
        match self {
            WarpSpec::Euclidean => Ok(()),
            WarpSpec::SphereCap { a } | WarpSpec::Hyperbolic { a } => {
                if a.is_finite() && *a > 0.0 {
                    Ok(())
                } else {
                    Err(SteklovError::InvalidWarp(format!(
                        "curvature scale must be positive and finite, got {a}"
                    )))
                }
            }
            WarpSpec::OddSeries { coeffs } => {
                let Some(&c1) = coeffs.first() else {
                    return Err(SteklovError::InvalidWarp("series needs at least c1".into()));
                };
                if coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(SteklovError::InvalidWarp("series coefficients must be finite".into()));
                }
                if (c1 - 1.0).abs() > 1e-12 {
                    return Err(SteklovError::InvalidWarp(format!(
                        "series must have c1 = 1 so that h'(0) = 1, got c1 = {c1}"
                    )));
                }
                Ok(())
            }
        }
    }
}

fn join_floats(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_float(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| SteklovError::InvalidWarp(format!("cannot parse {what} from '{s}'")))
}

fn parse_coeffs(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_float(p, "series coefficient"))
        .collect()
}

impl fmt::Display for WarpSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_config())
    }
}

impl Serialize for WarpSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_config())
    }
}

/// Accepts `euclidean`, `sphere:<a>`, `sinh:<a>`, `series:<c1,c3,...>` as well
/// as the key-value form `family=sphere a=1.0` (the `family=` key may be
/// omitted: `series coeffs=1,-0.1`).
impl FromStr for WarpSpec {
    type Err = SteklovError;

    fn from_str(s: &str) -> Result<Self> {
        let mut family: Option<String> = None;
        let mut inline: Option<String> = None;
        let mut a: Option<f64> = None;
        let mut coeffs: Option<Vec<f64>> = None;

        for token in s.split_whitespace() {
            match token.split_once('=') {
                Some((key, value)) => match key.to_ascii_lowercase().as_str() {
                    "family" => family = Some(value.to_ascii_lowercase()),
                    "a" => a = Some(parse_float(value, "curvature scale")?),
                    "coeffs" => coeffs = Some(parse_coeffs(value)?),
                    other => {
                        return Err(SteklovError::InvalidWarp(format!("unknown warp key '{other}'")))
                    }
                },
                None => {
                    if family.is_some() {
                        return Err(SteklovError::InvalidWarp(format!(
                            "unexpected token '{token}' in warp spec"
                        )));
                    }
                    match token.split_once(':') {
                        Some((name, param)) => {
                            family = Some(name.to_ascii_lowercase());
                            inline = Some(param.to_string());
                        }
                        None => family = Some(token.to_ascii_lowercase()),
                    }
                }
            }
        }

        let family = family.ok_or_else(|| SteklovError::InvalidWarp(format!("no family in '{s}'")))?;
        let scale = |a: Option<f64>, inline: Option<String>| -> Result<f64> {
            match (a, inline) {
                (Some(a), None) => Ok(a),
                (None, Some(p)) => parse_float(&p, "curvature scale"),
                (Some(_), Some(_)) => Err(SteklovError::InvalidWarp("curvature scale given twice".into())),
                (None, None) => Err(SteklovError::InvalidWarp(format!("family '{family}' needs a curvature scale a"))),
            }
        };
        let spec = match family.as_str() {
            "euclidean" | "flat" => {
                if a.is_some() || coeffs.is_some() || inline.is_some() {
                    return Err(SteklovError::InvalidWarp("euclidean takes no parameters".into()));
                }
                WarpSpec::Euclidean
            }
            "sphere" | "spherecap" | "sin" => WarpSpec::SphereCap { a: scale(a, inline)? },
            "sinh" | "hyperbolic" => WarpSpec::Hyperbolic { a: scale(a, inline)? },
            "series" | "oddseries" => {
                let coeffs = match (coeffs, inline) {
                    (Some(c), None) => c,
                    (None, Some(p)) => parse_coeffs(&p)?,
                    _ => return Err(SteklovError::InvalidWarp("series needs exactly one coefficient list".into())),
                };
                WarpSpec::OddSeries { coeffs }
            }
            other => return Err(SteklovError::InvalidWarp(format!("unknown warp family '{other}'"))),
        };
        spec.check_parameters()?;
        Ok(spec)
    }
}

/// Validated warping function on `[0, R]` with analytic derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct Warp {
    spec: WarpSpec,
    radius: f64,
}

impl Warp {
    pub fn new(spec: WarpSpec, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(SteklovError::InvalidWarp(format!("radius must be positive, got {radius}")));
        }
        spec.check_parameters()?;
        if let WarpSpec::SphereCap { a } = spec {
            if a * radius >= PI {
                return Err(SteklovError::InvalidWarp(format!(
                    "sphere cap needs a R < pi, got a R = {}",
                    a * radius
                )));
            }
        }
        let warp = Warp { spec, radius };
        for i in 1..=VALIDATION_GRID {
            let r = radius * i as f64 / VALIDATION_GRID as f64;
            let (h, dh, d2h) = (warp.h(r), warp.dh(r), warp.d2h(r));
            if !(h.is_finite() && dh.is_finite() && d2h.is_finite()) {
                return Err(SteklovError::InvalidWarp(format!("warp not finite at r = {r}")));
            }
            if h <= 0.0 {
                return Err(SteklovError::InvalidWarp(format!("h({r}) = {h} is not positive")));
            }
        }
        Ok(warp)
    }

    pub fn spec(&self) -> &WarpSpec {
        &self.spec
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn h(&self, r: f64) -> f64 {
        match &self.spec {
            WarpSpec::Euclidean => r,
            WarpSpec::SphereCap { a } => (a * r).sin() / a,
            WarpSpec::Hyperbolic { a } => (a * r).sinh() / a,
            WarpSpec::OddSeries { coeffs } => {
                let r2 = r * r;
                coeffs.iter().rev().fold(0.0, |acc, c| acc * r2 + c) * r
            }
        }
    }

    pub fn dh(&self, r: f64) -> f64 {
        match &self.spec {
            WarpSpec::Euclidean => 1.0,
            WarpSpec::SphereCap { a } => (a * r).cos(),
            WarpSpec::Hyperbolic { a } => (a * r).cosh(),
            WarpSpec::OddSeries { coeffs } => {
                let r2 = r * r;
                coeffs
                    .iter()
                    .enumerate()
                    .rev()
                    .fold(0.0, |acc, (k, c)| acc * r2 + (2 * k + 1) as f64 * c)
            }
        }
    }

    pub fn d2h(&self, r: f64) -> f64 {
        match &self.spec {
            WarpSpec::Euclidean => 0.0,
            WarpSpec::SphereCap { a } => -a * (a * r).sin(),
            WarpSpec::Hyperbolic { a } => a * (a * r).sinh(),
            WarpSpec::OddSeries { coeffs } => {
                let r2 = r * r;
                coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .rev()
                    .fold(0.0, |acc, (k, c)| acc * r2 + ((2 * k + 1) * (2 * k)) as f64 * c)
                    * r
            }
        }
    }

    /// `1 - h'(r)^2`, evaluated without cancellation near the origin.
    pub fn one_minus_dh_sq(&self, r: f64) -> f64 {
        match &self.spec {
            WarpSpec::Euclidean => 0.0,
            WarpSpec::SphereCap { a } => (a * r).sin().powi(2),
            WarpSpec::Hyperbolic { a } => -(a * r).sinh().powi(2),
            WarpSpec::OddSeries { coeffs } => {
                let r2 = r * r;
                // 1 - h' = -(3 c3 r^2 + 5 c5 r^4 + ...)
                let one_minus = -coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .rev()
                    .fold(0.0, |acc, (k, c)| acc * r2 + (2 * k + 1) as f64 * c)
                    * r2;
                one_minus * (2.0 - one_minus)
            }
        }
    }
}

/// A full problem instance: dimension, radius and warp.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    n: u32,
    warp: Warp,
}

impl Geometry {
    pub fn new(n: u32, radius: f64, spec: WarpSpec) -> Result<Self> {
        if n < 2 {
            return Err(SteklovError::InvalidArgument(format!("dimension must be at least 2, got {n}")));
        }
        Ok(Geometry {
            n,
            warp: Warp::new(spec, radius)?,
        })
    }

    pub fn euclidean(n: u32, radius: f64) -> Result<Self> {
        Geometry::new(n, radius, WarpSpec::Euclidean)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn radius(&self) -> f64 {
        self.warp.radius
    }

    pub fn warp(&self) -> &Warp {
        &self.warp
    }

    pub fn spec(&self) -> &WarpSpec {
        &self.warp.spec
    }

    /// Principal curvature `h'(R) / h(R)` of the boundary sphere.
    pub fn kappa(&self) -> f64 {
        let r = self.radius();
        self.warp.dh(r) / self.warp.h(r)
    }

    /// `h(r)^(n-1)`, the radial density of the volume element.
    pub fn density(&self, r: f64) -> f64 {
        self.warp.h(r).powi(self.n as i32 - 1)
    }

    /// The same geometry blown up by a factor `c`: radius `c R`, warp `c h(r / c)`.
    pub fn scaled(&self, c: f64) -> Result<Geometry> {
        Geometry::new(self.n, c * self.radius(), self.spec().scaled(c))
    }

    /// `sup |h(r) - r|` over a uniform grid of `(0, R]`.
    pub fn deviation_from_flat(&self, grid_points: usize) -> f64 {
        let radius = self.radius();
        (1..=grid_points)
            .map(|i| {
                let r = if i == grid_points { radius } else { radius * i as f64 / grid_points as f64 };
                (self.warp.h(r) - r).abs()
            })
            .fold(0.0, f64::max)
    }

    /// True when the warp agrees with `h(r) = r` to `1e-9 R` on the validation grid.
    pub fn is_flat(&self) -> bool {
        self.deviation_from_flat(VALIDATION_GRID) < 1e-9 * self.radius()
    }

    pub fn ricci_eigenvalues(&self, r: f64) -> Result<(f64, f64)> {
        ricci_eigenvalues(self, r)
    }
}

/// Radial and tangential eigenvalues of the Ricci tensor at radius `r`.
///
/// For `n = 2` both equal the Gaussian curvature `-h''/h`.
pub fn ricci_eigenvalues(geometry: &Geometry, r: f64) -> Result<(f64, f64)> {
    let radius = geometry.radius();
    if !(r > 0.0 && r <= radius) {
        return Err(SteklovError::InvalidArgument(format!("r = {r} outside (0, {radius}]")));
    }
    let warp = geometry.warp();
    let n = geometry.n() as f64;
    let h = warp.h(r);
    let curv = warp.d2h(r) / h;
    let radial = -(n - 1.0) * curv;
    if geometry.n() == 2 {
        return Ok((radial, radial));
    }
    let tangential = -(curv - (n - 2.0) * warp.one_minus_dh_sq(r) / (h * h));
    Ok((radial, tangential))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RicSign {
    NonNegative,
    NonPositive,
    Indefinite,
    Zero,
}

impl RicSign {
    /// Ric >= 0 holds (including the flat case).
    pub fn nonnegative(self) -> bool {
        matches!(self, RicSign::NonNegative | RicSign::Zero)
    }

    /// Ric <= 0 holds (including the flat case).
    pub fn nonpositive(self) -> bool {
        matches!(self, RicSign::NonPositive | RicSign::Zero)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub n: u32,
    #[serde(rename = "R")]
    pub radius: f64,
    pub warp: WarpSpec,
    pub ric_radial_range: (f64, f64),
    pub ric_tangential_range: (f64, f64),
    pub ric_sign: RicSign,
    pub boundary_convex: bool,
    /// `h'' <= 0` and `0 < h' <= 1` on the grid.
    pub concave_unit_slope: bool,
    pub kappa: f64,
    pub grid_points: usize,
    pub tolerance: f64,
}

/// Samples both Ricci eigenvalues on a uniform grid of `(0, R]` and classifies
/// their sign; also checks `h'' <= 0, 0 < h' <= 1` and boundary convexity.
pub fn curvature_classify(geometry: &Geometry, grid_points: usize) -> Result<CurvatureReport> {
    if grid_points < 100 {
        return Err(SteklovError::InvalidArgument(format!(
            "curvature grid needs at least 100 points, got {grid_points}"
        )));
    }
    let radius = geometry.radius();
    let warp = geometry.warp();
    let mut radial = (f64::INFINITY, f64::NEG_INFINITY);
    let mut tangential = (f64::INFINITY, f64::NEG_INFINITY);
    let mut concave_slope = true;
    for i in 1..=grid_points {
        let r = if i == grid_points { radius } else { radius * i as f64 / grid_points as f64 };
        let (rad, tan) = ricci_eigenvalues(geometry, r)?;
        radial = (radial.0.min(rad), radial.1.max(rad));
        tangential = (tangential.0.min(tan), tangential.1.max(tan));
        let (dh, d2h) = (warp.dh(r), warp.d2h(r));
        if !(d2h <= 1e-12 && dh > 0.0 && dh <= 1.0 + 1e-12) {
            concave_slope = false;
        }
    }
    let magnitude = [radial.0, radial.1, tangential.0, tangential.1]
        .iter()
        .fold(1.0f64, |acc, v| acc.max(v.abs()));
    let tolerance = 1e-12 * magnitude;
    let lo = radial.0.min(tangential.0);
    let hi = radial.1.max(tangential.1);
    let ric_sign = if lo >= -tolerance && hi <= tolerance {
        RicSign::Zero
    } else if lo >= -tolerance {
        RicSign::NonNegative
    } else if hi <= tolerance {
        RicSign::NonPositive
    } else {
        RicSign::Indefinite
    };
    Ok(CurvatureReport {
        n: geometry.n(),
        radius,
        warp: geometry.spec().clone(),
        ric_radial_range: radial,
        ric_tangential_range: tangential,
        ric_sign,
        boundary_convex: warp.dh(radius) > 0.0,
        concave_unit_slope: concave_slope,
        kappa: geometry.kappa(),
        grid_points,
        tolerance,
    })
}

/// `s(r) = integral from R/2 to r of h^(1-n)`, the coordinate in which the
/// radial Laplacian becomes `h^(2(1-n)) d^2/ds^2`.
pub fn s_coordinate(geometry: &Geometry, r: f64) -> Result<f64> {
    let radius = geometry.radius();
    if !(r > 0.0 && r <= radius) {
        return Err(SteklovError::InvalidArgument(format!("r = {r} outside (0, {radius}]")));
    }
    let exponent = 1 - geometry.n() as i32;
    let warp = geometry.warp();
    let est = quadrature::integrate(
        |t| warp.h(t).powi(exponent),
        0.5 * radius,
        r,
        QuadOptions::absolute(1e-12),
    )?;
    Ok(est.value)
}
