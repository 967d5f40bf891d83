mod common;

use common::rel_err;
use proptest::prelude::*;
use steklov::closedform;
use steklov::harmonics::{binomial, multiplicity, tau};
use steklov::oracle;
use steklov::radial::{self, eigen_solution, ShootingConfig};
use steklov::reilly;
use steklov::spectrum::{self, BoundKind};
use steklov::warping::{curvature_classify, s_coordinate};
use steklov::{Geometry, Problem, RicSign, Verdict, WarpSpec};

fn cfg() -> ShootingConfig {
    ShootingConfig::default()
}

/// Warps from all four families, sized so the radius stays inside the
/// admissible range.
fn any_geometry() -> impl Strategy<Value = Geometry> {
    let n = 2u32..=5;
    let radius = 0.4f64..1.6;
    let spec = prop_oneof![
        Just(WarpSpec::Euclidean),
        (0.1f64..1.0).prop_map(WarpSpec::sphere),
        (0.1f64..1.2).prop_map(WarpSpec::hyperbolic),
        (-0.3f64..0.3, 0.0f64..0.02).prop_map(|(c3, c5)| WarpSpec::series(vec![1.0, c3, c5])),
    ];
    (n, radius, spec).prop_map(|(n, r, s)| Geometry::new(n, r, s).expect("admissible geometry"))
}

/// Spherical caps: `Ric >= 0` with convex boundary whenever `a R < pi / 2`.
fn cap_geometry() -> impl Strategy<Value = Geometry> {
    (2u32..=5, 0.4f64..1.4, 0.1f64..1.0)
        .prop_map(|(n, r, a)| Geometry::new(n, r, WarpSpec::sphere(a)).expect("admissible cap"))
}

fn any_problem() -> impl Strategy<Value = Problem> {
    prop_oneof![Just(Problem::Sigma), Just(Problem::Xi), Just(Problem::Eta)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn second_derivative_matches_difference_of_first(g in any_geometry(), t in 0.01f64..1.0) {
        let w = g.warp();
        let r = t * g.radius();
        let step = 1e-5 * g.radius();
        let fd = (w.dh(r + step) - w.dh(r - step)) / (2.0 * step);
        let exact = w.d2h(r);
        prop_assert!((fd - exact).abs() <= 1e-6 * exact.abs().max(1e-3), "{fd} vs {exact}");
    }

    #[test]
    fn nonnegative_ricci_means_concave_unit_slope(g in any_geometry()) {
        let report = curvature_classify(&g, 400).unwrap();
        if report.ric_sign == RicSign::NonNegative && report.boundary_convex {
            for k in 1..=400 {
                let r = g.radius() * k as f64 / 400.0;
                let w = g.warp();
                prop_assert!(w.d2h(r) <= 1e-12);
                prop_assert!(w.dh(r) > 0.0 && w.dh(r) <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn s_coordinate_increases(g in any_geometry(), a in 0.01f64..1.0, b in 0.01f64..1.0) {
        prop_assume!((a - b).abs() > 1e-6);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let r = g.radius();
        prop_assert!(s_coordinate(&g, hi * r).unwrap() > s_coordinate(&g, lo * r).unwrap());
    }

    #[test]
    fn planar_flat_s_coordinate(radius in 0.3f64..3.0, t in 0.01f64..1.0, m in 1u32..6) {
        let g = Geometry::euclidean(2, radius).unwrap();
        let r = t * radius;
        let got = (m as f64 * s_coordinate(&g, r).unwrap()).exp();
        let want = (2.0 * r / radius).powi(m as i32);
        prop_assert!(rel_err(got, want) < 1e-10);
    }

    #[test]
    fn scaling_covariance(g in any_geometry(), problem in any_problem(), m in 1u32..5) {
        let c = 2.0;
        let big = g.scaled(c).unwrap();
        let a = radial::eigenvalue(&g, problem, m, &cfg()).unwrap().value;
        let b = radial::eigenvalue(&big, problem, m, &cfg()).unwrap().value;
        let power = if problem == Problem::Xi { 3 } else { 1 };
        prop_assert!(rel_err(b * c.powi(power), a) < 1e-8, "{a} vs {b}");
    }

    #[test]
    fn sigma_increases_with_degree(g in cap_geometry()) {
        let mut previous = radial::sigma_eigenvalue(&g, 0, &cfg()).unwrap().value;
        for m in 1..=6 {
            let next = radial::sigma_eigenvalue(&g, m, &cfg()).unwrap().value;
            prop_assert!(next > previous);
            previous = next;
        }
    }

    #[test]
    fn sigma_profile_is_positive_and_increasing(g in cap_geometry(), m in 1u32..6) {
        let sol = eigen_solution(&g, Problem::Sigma, m, &cfg()).unwrap();
        for (psi, dpsi) in sol.psi.iter().zip(&sol.dpsi).skip(1) {
            prop_assert!(*psi > 0.0 && *dpsi > 0.0);
        }
    }

    #[test]
    fn eigenvalues_have_expected_sign(g in any_geometry(), problem in any_problem(), m in 0u32..5) {
        let value = radial::eigenvalue(&g, problem, m, &cfg()).unwrap().value;
        match problem {
            Problem::Eta => prop_assert!(value > 0.0),
            _ => prop_assert!(value >= -1e-12),
        }
    }

    #[test]
    fn hessian_dominates_laplacian(g in any_geometry(), problem in any_problem(), m in 0u32..5) {
        let sol = eigen_solution(&g, problem, m, &cfg()).unwrap();
        let hess = reilly::hessian_sq_integral(&g, m, &sol).unwrap();
        let lap = reilly::laplacian_sq_integral(&g, m, &sol).unwrap();
        let scale = reilly::boundary_scale(&g, &sol);
        prop_assert!(hess >= lap / g.n() as f64 - 1e-10 * scale, "{hess} vs {lap}");
        prop_assert!(hess >= -1e-10 * scale && lap >= 0.0);
    }

    #[test]
    fn laplacian_is_the_auxiliary_profile(g in any_geometry(), m in 1u32..5, xi in any::<bool>()) {
        let problem = if xi { Problem::Xi } else { Problem::Eta };
        let sol = eigen_solution(&g, problem, m, &cfg()).unwrap();
        let lap = reilly::laplacian_sq_integral(&g, m, &sol).unwrap();
        let direct = reilly::delta_profile_sq_integral(&g, &sol).unwrap();
        prop_assert!(rel_err(lap, direct) < 1e-10, "{lap} vs {direct}");
    }

    #[test]
    fn reilly_residual_is_small(g in any_geometry(), problem in any_problem(), m in 0u32..5) {
        let sol = eigen_solution(&g, problem, m, &cfg()).unwrap();
        let b = reilly::reilly_residual(&g, problem, m, &sol).unwrap();
        prop_assert!(b.relative_residual() < 1e-6, "{b:?}");
    }

    #[test]
    fn planar_eta_xi_identity(a in 0.1f64..1.2, radius in 0.4f64..1.4, m in 1u32..7, sphere in any::<bool>()) {
        let spec = if sphere { WarpSpec::sphere(a) } else { WarpSpec::hyperbolic(a) };
        let g = Geometry::new(2, radius, spec).unwrap();
        let h = g.warp().h(radius);
        let xi = closedform::xi_n2(&g, m).unwrap();
        let eta = closedform::eta_n2(&g, m).unwrap();
        prop_assert!(rel_err(eta * (m * m) as f64, xi * h * h) < 1e-10);
    }

    #[test]
    fn planar_closed_forms_match_shooting(a in 0.1f64..1.2, radius in 0.4f64..1.4, m in 0u32..6, problem in any_problem()) {
        let g = Geometry::new(2, radius, WarpSpec::sphere(a)).unwrap();
        let reference = match problem {
            Problem::Sigma => closedform::sigma_n2(&g, m).unwrap(),
            Problem::Xi => closedform::xi_n2(&g, m).unwrap(),
            Problem::Eta => closedform::eta_n2(&g, m).unwrap(),
        };
        let shot = radial::eigenvalue(&g, problem, m, &cfg()).unwrap().value;
        prop_assert!(rel_err(shot, reference) < 1e-7, "{shot} vs {reference}");
    }

    #[test]
    fn planar_g_is_nonnegative_on_caps(a in 0.1f64..1.2, radius in 0.4f64..1.3, m in 1u32..7) {
        let g = Geometry::new(2, radius, WarpSpec::sphere(a)).unwrap();
        prop_assert!(closedform::g_min(&g, m).unwrap() >= -1e-10 * closedform::g_scale(&g));
    }

    #[test]
    fn bounds_hold_on_caps(g in cap_geometry(), problem in any_problem(), m in 0u32..7) {
        let rep = spectrum::verify(problem, &g, m, &cfg()).unwrap();
        if rep.bound_kind != BoundKind::None {
            prop_assert!(matches!(rep.verdict, Verdict::Holds | Verdict::EqualityCase), "{rep:?}");
        }
    }

    #[test]
    fn assembled_sigma_spectrum_is_ordered(g in cap_geometry()) {
        let table = spectrum::assemble_spectrum(Problem::Sigma, &g, 6, &cfg()).unwrap();
        prop_assert!(table.ordering_certified);
        let mut next_index = 0;
        for pair in table.rows.windows(2) {
            prop_assert!(pair[1].eigenvalue > pair[0].eigenvalue);
        }
        for row in &table.rows {
            prop_assert_eq!(row.index_from, next_index);
            prop_assert_eq!(row.index_to - row.index_from + 1, row.multiplicity);
            next_index = row.index_to + 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn finite_differences_bound_from_above(g in cap_geometry(), problem in any_problem(), m in 1u32..4) {
        let shot = radial::eigenvalue(&g, problem, m, &cfg()).unwrap().value;
        let est = oracle::fd_extrapolated(&g, problem, m, 200).unwrap();
        prop_assert!(est.fine >= shot - 5.0 * est.error, "{est:?} vs {shot}");
        prop_assert!(est.coarse >= shot - 5.0 * est.error, "{est:?} vs {shot}");
    }
}

#[test]
fn multiplicities_count_harmonic_polynomials() {
    for n in 2..=6u32 {
        for top in 1..=10u32 {
            let sum: u64 = (0..=top).map(|m| multiplicity(m, n)).sum();
            let (ni, ti) = (n as i64, top as i64);
            let expected = binomial(ni + ti - 1, ni - 1) + binomial(ni + ti - 2, ni - 1);
            assert_eq!(sum, expected, "n={n} M={top}");
        }
    }
}

#[test]
fn tau_increases_with_degree() {
    for n in 2..=6 {
        for m in 0..20 {
            assert!(tau(m + 1, n) > tau(m, n));
        }
    }
}
