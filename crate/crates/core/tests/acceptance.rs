//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{curved_pair, rel_err, ric_nonneg_grid, ric_nonpos_grid};
use steklov::closedform;
use steklov::oracle;
use steklov::radial::{self, eigen_solution, ShootingConfig};
use steklov::reilly;
use steklov::spectrum::{self, BoundKind};
use steklov::warping::curvature_classify;
use steklov::{Geometry, Problem, RicSign, Verdict, WarpSpec};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn cfg() -> ShootingConfig {
    ShootingConfig::default()
}

fn euclidean_closed_forms() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for n in 2..=5 {
        for radius in [0.5, 1.0, 2.0] {
            let g = Geometry::euclidean(n, radius).unwrap();
            for m in 0..=6 {
                for problem in Problem::ALL {
                    let exact = closedform::euclid(problem, n, radius, m);
                    let got = radial::eigenvalue(&g, problem, m, &cfg()).unwrap().value;
                    let e = rel_err(got, exact);
                    worst = worst.max(e);
                    if e >= 1e-8 {
                        failures.push(format!("{problem} n={n} R={radius} m={m}: {got} vs {exact}"));
                    }
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        failures.is_empty() && secs < 5.0,
        format!("worst rel err {worst:.2e} (tol 1e-8), {secs:.2} s (limit 5 s) {failures:?}"),
    )
}

fn planar_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for spec in [
        WarpSpec::sphere(0.5),
        WarpSpec::sphere(1.0),
        WarpSpec::hyperbolic(0.5),
        WarpSpec::hyperbolic(1.0),
    ] {
        let g = Geometry::new(2, 1.0, spec.clone()).unwrap();
        for m in 0..=5 {
            let pairs = [
                (Problem::Sigma, closedform::sigma_n2(&g, m).unwrap()),
                (Problem::Xi, closedform::xi_n2(&g, m).unwrap()),
                (Problem::Eta, closedform::eta_n2(&g, m).unwrap()),
            ];
            for (problem, reference) in pairs {
                let got = radial::eigenvalue(&g, problem, m, &cfg()).unwrap().value;
                let e = rel_err(got, reference);
                worst = worst.max(e);
                if e >= 1e-7 {
                    failures.push(format!("{problem} {spec} m={m}: {got} vs {reference}"));
                }
            }
        }
    }
    outcome(failures.is_empty(), format!("worst rel err {worst:.2e} (tol 1e-7) {failures:?}"))
}

fn fd_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for spec in curved_pair() {
        for n in 2..=4 {
            let g = Geometry::new(n, 1.0, spec.clone()).unwrap();
            for m in 1..=3 {
                for problem in Problem::ALL {
                    let shot = radial::eigenvalue(&g, problem, m, &cfg()).unwrap().value;
                    let fd = oracle::fd_extrapolated(&g, problem, m, 400).unwrap();
                    let e = rel_err(fd.extrapolated, shot);
                    worst = worst.max(e);
                    if e >= 1e-5 {
                        failures.push(format!("{problem} {spec} n={n} m={m}: {} vs {shot}", fd.extrapolated));
                    }
                }
            }
        }
    }
    outcome(failures.is_empty(), format!("worst rel err {worst:.2e} (tol 1e-5) {failures:?}"))
}

fn bound_suite() -> Outcome {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for inst in ric_nonneg_grid() {
        for n in 2..=5 {
            let g = Geometry::new(n, inst.radius, inst.spec.clone()).unwrap();
            let report = curvature_classify(&g, 1000).unwrap();
            if report.ric_sign != RicSign::NonNegative || !report.boundary_convex {
                failures.push(format!("{} R={} n={n} not Ric >= 0 and convex", inst.spec, inst.radius));
                continue;
            }
            for m in 0..=6 {
                for problem in Problem::ALL {
                    let eig = radial::eigenvalue(&g, problem, m, &cfg()).unwrap().value;
                    let rep = spectrum::report_for(problem, &g, &report, m, eig);
                    if rep.bound_kind == BoundKind::None {
                        continue;
                    }
                    checked += 1;
                    if !matches!(rep.verdict, Verdict::Holds | Verdict::EqualityCase) {
                        failures.push(format!("{problem} {} R={} n={n} m={m}: {rep:?}", inst.spec, inst.radius));
                    }
                }
            }
        }
    }
    for inst in ric_nonpos_grid() {
        for n in 2..=5 {
            let g = Geometry::new(n, inst.radius, inst.spec.clone()).unwrap();
            let report = curvature_classify(&g, 1000).unwrap();
            if report.ric_sign != RicSign::NonPositive {
                failures.push(format!("{} R={} n={n} not Ric <= 0", inst.spec, inst.radius));
                continue;
            }
            for m in 0..=6 {
                for problem in Problem::ALL {
                    let eig = radial::eigenvalue(&g, problem, m, &cfg()).unwrap().value;
                    let rep = spectrum::report_for(problem, &g, &report, m, eig);
                    if rep.bound_kind == BoundKind::None {
                        continue;
                    }
                    checked += 1;
                    if rep.verdict != Verdict::Holds {
                        failures.push(format!("{problem} {} R={} n={n} m={m}: {rep:?}", inst.spec, inst.radius));
                    }
                }
            }
        }
    }
    outcome(
        failures.is_empty() && checked > 0,
        format!("{checked} applicable bound checks, {} failures {failures:?}", failures.len()),
    )
}

fn equality_expected(problem: Problem, n: u32, m: u32) -> bool {
    match problem {
        Problem::Sigma => m >= 1,
        Problem::Xi | Problem::Eta => m >= 1 && (n == 2 || (n >= 4 && m == 1)),
    }
}

fn rigidity() -> Outcome {
    let mut failures = Vec::new();
    let mut min_margin = f64::INFINITY;
    for n in 2..=5 {
        let flat = Geometry::euclidean(n, 1.0).unwrap();
        for m in 1..=6 {
            for problem in Problem::ALL {
                let rep = spectrum::verify(problem, &flat, m, &cfg()).unwrap();
                let is_equality = rep.verdict == Verdict::EqualityCase;
                if is_equality != equality_expected(problem, n, m) {
                    failures.push(format!("flat {problem} n={n} m={m}: {:?}", rep.verdict));
                }
            }
        }
        let cap = Geometry::new(n, 1.0, WarpSpec::sphere(1.0)).unwrap();
        for m in 0..=6 {
            for problem in Problem::ALL {
                let rep = spectrum::verify(problem, &cap, m, &cfg()).unwrap();
                if rep.bound_kind == BoundKind::None {
                    continue;
                }
                let relative = rep.margin / rep.bound_value.abs();
                min_margin = min_margin.min(relative);
                if rep.verdict != Verdict::Holds || rep.margin <= 1e-3 * rep.bound_value.abs() {
                    failures.push(format!("cap {problem} n={n} m={m}: {rep:?}"));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("smallest relative cap margin {min_margin:.3e} (need > 1e-3) {failures:?}"),
    )
}

fn reilly_identity() -> Outcome {
    let mut worst_residual: f64 = 0.0;
    let mut worst_rayleigh: f64 = 0.0;
    let mut failures = Vec::new();
    let families = [
        WarpSpec::Euclidean,
        WarpSpec::sphere(1.0),
        WarpSpec::hyperbolic(1.0),
        WarpSpec::series(vec![1.0, -0.15, 0.01]),
    ];
    for spec in families {
        for n in 2..=5 {
            let g = Geometry::new(n, 1.0, spec.clone()).unwrap();
            for m in 0..=4 {
                for problem in Problem::ALL {
                    let sol = eigen_solution(&g, problem, m, &cfg()).unwrap();
                    let b = reilly::reilly_residual(&g, problem, m, &sol).unwrap();
                    let rel = b.relative_residual();
                    worst_residual = worst_residual.max(rel);
                    if rel >= 1e-6 {
                        failures.push(format!("residual {problem} {spec} n={n} m={m}: {b:?}"));
                    }
                    let shot = radial::eigenvalue(&g, problem, m, &cfg()).unwrap().value;
                    let rq = reilly::rayleigh_quotient(&g, problem, m, &sol).unwrap();
                    let e = if shot == 0.0 { rq.abs() } else { rel_err(rq, shot) };
                    worst_rayleigh = worst_rayleigh.max(e);
                    if e >= 1e-6 {
                        failures.push(format!("rayleigh {problem} {spec} n={n} m={m}: {rq} vs {shot}"));
                    }
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("worst relative residual {worst_residual:.2e}, worst Rayleigh rel err {worst_rayleigh:.2e} (tol 1e-6) {failures:?}"),
    )
}

fn g_sign() -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = f64::INFINITY;
    for inst in ric_nonneg_grid() {
        let g = Geometry::new(2, inst.radius, inst.spec.clone()).unwrap();
        let scale = closedform::g_scale(&g);
        for m in 1..=6 {
            let gmin = closedform::g_min(&g, m).unwrap();
            worst = worst.min(gmin / scale);
            if gmin < -1e-10 * scale {
                failures.push(format!("{} R={} m={m}: g_min {gmin}", inst.spec, inst.radius));
            }
        }
    }
    let mut flat_max: f64 = 0.0;
    for radius in [0.5, 1.0, 2.0] {
        let flat = Geometry::euclidean(2, radius).unwrap();
        for m in 1..=6 {
            flat_max = flat_max.max(closedform::g_min(&flat, m).unwrap().abs());
            for k in 1..=16 {
                let r = radius * k as f64 / 16.0;
                flat_max = flat_max.max(closedform::g_function(&flat, m, r).unwrap().abs());
            }
        }
    }
    if flat_max >= 1e-10 {
        failures.push(format!("flat |G| reaches {flat_max:e}"));
    }
    outcome(
        failures.is_empty(),
        format!("min g_min/scale {worst:.3e} (>= -1e-10), flat max |G| {flat_max:.2e} (< 1e-10) {failures:?}"),
    )
}

fn conjecture_form() -> Outcome {
    let mut failures = Vec::new();
    let mut min_gap = f64::INFINITY;
    for inst in ric_nonneg_grid() {
        for n in [2u32, 4, 5] {
            let g = Geometry::new(n, inst.radius, inst.spec.clone()).unwrap();
            let xi1 = radial::xi_eigenvalue(&g, 1, &cfg()).unwrap().value;
            let lambda1 = steklov::harmonics::boundary_eigenvalue(&g, 1);
            let nf = n as f64;
            let rhs = (nf + 2.0) / (nf - 1.0) * g.kappa() * lambda1;
            min_gap = min_gap.min(xi1 - rhs);
            if xi1 < rhs - 1e-8 {
                failures.push(format!("{} R={} n={n}: {xi1} < {rhs}", inst.spec, inst.radius));
            }
        }
    }
    outcome(failures.is_empty(), format!("smallest gap {min_gap:.3e} (>= -1e-8) {failures:?}"))
}

fn robustness() -> Outcome {
    let mut failures = Vec::new();
    let mut worst_delta: f64 = 0.0;
    let mut orders = (f64::INFINITY, f64::NEG_INFINITY);
    let mut geometries: Vec<Geometry> = Vec::new();
    for n in 2..=5 {
        geometries.push(Geometry::euclidean(n, 1.0).unwrap());
        for inst in ric_nonneg_grid().into_iter().chain(ric_nonpos_grid()) {
            geometries.push(Geometry::new(n, inst.radius, inst.spec).unwrap());
        }
    }
    for g in &geometries {
        for m in 0..=6 {
            for problem in Problem::ALL {
                let d = radial::eigenvalue(g, problem, m, &cfg()).unwrap().diagnostics.eps_convergence_delta;
                worst_delta = worst_delta.max(d);
                if d >= 1e-7 {
                    failures.push(format!("eps delta {problem} {} R={} n={} m={m}: {d:e}", g.spec(), g.radius(), g.n()));
                }
            }
        }
    }
    for spec in curved_pair() {
        for n in 2..=4 {
            let g = Geometry::new(n, 1.0, spec.clone()).unwrap();
            for m in 1..=3 {
                for problem in Problem::ALL {
                    let p = oracle::convergence_order(&g, problem, m, 200).unwrap();
                    orders = (orders.0.min(p), orders.1.max(p));
                    if !(1.7..=2.3).contains(&p) {
                        failures.push(format!("order {problem} {spec} n={n} m={m}: {p:.3}"));
                    }
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "worst eps-halving delta {worst_delta:.2e} (< 1e-7), FD order range [{:.3}, {:.3}] (within [1.7, 2.3]) {failures:?}",
            orders.0, orders.1
        ),
    )
}

type Check = fn() -> Outcome;

fn main() -> ExitCode {
    let criteria: [(&str, Check); 9] = [
        ("1 Euclidean closed forms", euclidean_closed_forms),
        ("2 planar closed-form oracle", planar_oracle),
        ("3 finite-difference oracle", fd_oracle),
        ("4 curvature bounds", bound_suite),
        ("5 equality and rigidity", rigidity),
        ("6 Reilly identity and Rayleigh quotients", reilly_identity),
        ("7 G-function sign", g_sign),
        ("8 first-degree xi against kappa lambda", conjecture_form),
        ("9 numerical robustness", robustness),
    ];
    let mut all = true;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        all &= result.pass;
        println!(
            "{} criterion {name}: {} [{:.2} s]",
            if result.pass { "PASS" } else { "FAIL" },
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
