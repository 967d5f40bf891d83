//! Curvature-dependent eigenvalue bounds, their verification, and assembly of
//! the full spectrum with multiplicities.

use serde::Serialize;

use crate::harmonics;
use crate::radial::{self, Diagnostics, ShootingConfig};
use crate::warping::{curvature_classify, CurvatureReport, Geometry};
use crate::{Problem, Result};

const CLASSIFY_GRID: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    /// Lower bound under nonnegative Ricci curvature and convex boundary.
    LowerRicNonneg,
    /// Upper bound under nonpositive Ricci curvature.
    UpperRicNonpos,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Holds,
    EqualityCase,
    ViolationSuspected,
    /// No bound applies to this case.
    NotApplicable,
}

/// A bound value with its kind and a short tag naming the estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bound {
    pub value: f64,
    pub kind: BoundKind,
    pub tag: &'static str,
    pub applicability: String,
}

impl Bound {
    fn none(applicability: impl Into<String>) -> Self {
        Bound {
            value: f64::NAN,
            kind: BoundKind::None,
            tag: "none",
            applicability: applicability.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub problem: Problem,
    pub n: u32,
    pub m: u32,
    pub eigenvalue: f64,
    pub bound_value: f64,
    pub bound_kind: BoundKind,
    pub theorem_tag: &'static str,
    /// `eigenvalue - bound` for lower bounds, `bound - eigenvalue` for upper bounds.
    pub margin: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub applicability: String,
}

fn planar_xi(m: f64, h: f64, dh: f64) -> f64 {
    2.0 * m * m * (m + 1.0) * dh / h.powi(3)
}

fn lower_bound(problem: Problem, n: u32, m: u32, h: f64, dh: f64) -> Bound {
    let kappa = dh / h;
    let tau = harmonics::tau(m, n) as f64;
    let (mf, nf) = (m as f64, n as f64);
    let applies = "Ric >= 0 and convex boundary";
    let bound = |value: f64, tag: &'static str| Bound {
        value,
        kind: BoundKind::LowerRicNonneg,
        tag,
        applicability: applies.into(),
    };
    match (problem, n, m) {
        (Problem::Sigma, _, 0) | (Problem::Xi, _, 0) => Bound::none("trivial eigenvalue 0"),
        (Problem::Sigma, _, _) => bound(mf * kappa, "sigma-lower"),
        (Problem::Xi, 2, _) => bound(planar_xi(mf, h, dh), "xi-lower-planar"),
        (Problem::Xi, 3, 1) => Bound::none("case n = 3, m = 1 has no known bound"),
        (Problem::Xi, 3, _) => bound((4.0 * tau - 13.0) * tau / (2.0 * tau - 6.0) * dh / h.powi(3), "xi-lower-3d"),
        (Problem::Xi, _, _) => {
            let num = (4.0 * tau + nf * (nf - 4.0)) * tau;
            let den = 2.0 * tau + (nf - 1.0) * (nf - 4.0);
            bound(num / den * dh / h.powi(3), "xi-lower-highdim")
        }
        (Problem::Eta, _, 0) => bound(nf * kappa, "eta-lower-ground"),
        (Problem::Eta, 2, _) => bound(2.0 * (mf + 1.0) * kappa, "eta-lower-planar"),
        (Problem::Eta, 3, 1) => Bound::none("case n = 3, m = 1 has no known bound"),
        (Problem::Eta, 3, _) => bound((4.0 * tau - 13.0) / (tau - 3.0) * kappa, "eta-lower-3d"),
        (Problem::Eta, _, _) => {
            let num = (4.0 * tau + nf * (nf - 4.0)) * (nf - 1.0);
            let den = 2.0 * tau + (nf - 1.0) * (nf - 4.0);
            bound(num / den * kappa, "eta-lower-highdim")
        }
    }
}

fn upper_bound(problem: Problem, n: u32, m: u32, h: f64, dh: f64) -> Bound {
    let kappa = dh / h;
    let mf = m as f64;
    let bound = |value: f64, tag: &'static str| Bound {
        value,
        kind: BoundKind::UpperRicNonpos,
        tag,
        applicability: "Ric <= 0".into(),
    };
    match (problem, n, m) {
        (Problem::Sigma, _, 0) | (Problem::Xi, _, 0) => Bound::none("trivial eigenvalue 0"),
        (Problem::Sigma, _, _) => bound(mf * kappa, "sigma-upper"),
        (Problem::Xi, 2, _) => bound(planar_xi(mf, h, dh), "xi-upper-planar"),
        (Problem::Eta, 2, _) => bound(2.0 * (mf + 1.0) * kappa, "eta-upper-planar"),
        _ => Bound::none("no upper bound known for n >= 3 under Ric <= 0"),
    }
}

/// The bound predicted for `problem` in degree `m` from a curvature report.
pub fn bound_for(problem: Problem, geometry: &Geometry, report: &CurvatureReport, m: u32) -> Bound {
    let radius = geometry.radius();
    let (h, dh) = (geometry.warp().h(radius), geometry.warp().dh(radius));
    let n = geometry.n();
    if report.ric_sign.nonnegative() {
        if report.boundary_convex {
            lower_bound(problem, n, m, h, dh)
        } else {
            Bound::none("boundary not convex")
        }
    } else if report.ric_sign.nonpositive() {
        upper_bound(problem, n, m, h, dh)
    } else {
        Bound::none("curvature hypothesis unmet")
    }
}

/// `(value, kind, tag)` of the applicable bound.
pub fn theoretical_bound(problem: Problem, geometry: &Geometry, m: u32) -> Result<(f64, BoundKind, &'static str)> {
    let report = curvature_classify(geometry, CLASSIFY_GRID)?;
    let b = bound_for(problem, geometry, &report, m);
    Ok((b.value, b.kind, b.tag))
}

/// Classifies an eigenvalue against a bound with tolerance
/// `1e-6 max(|eigenvalue|, |bound|)`.
pub fn judge(eigenvalue: f64, bound: &Bound, flat: bool) -> (f64, f64, Verdict) {
    let tolerance = 1e-6 * eigenvalue.abs().max(bound.value.abs());
    let margin = match bound.kind {
        BoundKind::LowerRicNonneg => eigenvalue - bound.value,
        BoundKind::UpperRicNonpos => bound.value - eigenvalue,
        BoundKind::None => return (f64::NAN, tolerance, Verdict::NotApplicable),
    };
    let verdict = if margin.abs() <= tolerance {
        if flat {
            Verdict::EqualityCase
        } else {
            Verdict::ViolationSuspected
        }
    } else if margin > tolerance {
        Verdict::Holds
    } else {
        Verdict::ViolationSuspected
    };
    (margin, tolerance, verdict)
}

pub fn report_for(problem: Problem, geometry: &Geometry, report: &CurvatureReport, m: u32, eigenvalue: f64) -> BoundReport {
    let bound = bound_for(problem, geometry, report, m);
    let (margin, tolerance, verdict) = judge(eigenvalue, &bound, geometry.is_flat());
    BoundReport {
        problem,
        n: geometry.n(),
        m,
        eigenvalue,
        bound_value: bound.value,
        bound_kind: bound.kind,
        theorem_tag: bound.tag,
        margin,
        tolerance,
        verdict,
        applicability: bound.applicability,
    }
}

/// Computes the eigenvalue by shooting and checks it against the bound.
pub fn verify(problem: Problem, geometry: &Geometry, m: u32, cfg: &ShootingConfig) -> Result<BoundReport> {
    let report = curvature_classify(geometry, CLASSIFY_GRID)?;
    let eig = radial::eigenvalue(geometry, problem, m, cfg)?;
    Ok(report_for(problem, geometry, &report, m, eig.value))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub m: u32,
    pub eigenvalue: f64,
    pub multiplicity: u64,
    /// First and last positions of this eigenspace in the ordered spectrum.
    pub index_from: u64,
    pub index_to: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumTable {
    pub problem: Problem,
    pub rows: Vec<SpectrumRow>,
    /// Whether ascending per-degree values are known to give the true order.
    pub ordering_certified: bool,
    pub diagnostics: Vec<(u32, Diagnostics)>,
}

/// Per-degree eigenvalues for `m = 0..=m_max`, sorted ascending, with
/// cumulative index ranges.
pub fn assemble_spectrum(problem: Problem, geometry: &Geometry, m_max: u32, cfg: &ShootingConfig) -> Result<SpectrumTable> {
    let report = curvature_classify(geometry, CLASSIFY_GRID)?;
    let mut values = Vec::with_capacity(m_max as usize + 1);
    for m in 0..=m_max {
        values.push(radial::eigenvalue(geometry, problem, m, cfg)?);
    }
    values.sort_by(|a, b| a.value.total_cmp(&b.value).then(a.m.cmp(&b.m)));
    let mut next = 0u64;
    let mut rows = Vec::with_capacity(values.len());
    let mut diagnostics = Vec::with_capacity(values.len());
    for v in values {
        rows.push(SpectrumRow {
            m: v.m,
            eigenvalue: v.value,
            multiplicity: v.multiplicity,
            index_from: next,
            index_to: next + v.multiplicity - 1,
        });
        next += v.multiplicity;
        diagnostics.push((v.m, v.diagnostics));
    }
    let ordering_certified = match problem {
        Problem::Sigma => true,
        Problem::Xi | Problem::Eta => report.ric_sign.nonnegative(),
    };
    Ok(SpectrumTable {
        problem,
        rows,
        ordering_certified,
        diagnostics,
    })
}
