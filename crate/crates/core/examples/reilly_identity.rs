// Terms of the Reilly formula for computed eigenfunctions.

use steklov::radial::{eigen_solution, ShootingConfig};
use steklov::reilly::{rayleigh_quotient, reilly_residual};
use steklov::{Geometry, Problem, WarpSpec};

pub fn main() {
    let cfg = ShootingConfig::default();
    let g = Geometry::new(4, 1.0, WarpSpec::hyperbolic(1.0)).expect("admissible warp");
    for problem in Problem::ALL {
        for m in 1..=3 {
            let sol = eigen_solution(&g, problem, m, &cfg).expect("eigenfunction");
            let b = reilly_residual(&g, problem, m, &sol).expect("Reilly terms");
            let rq = rayleigh_quotient(&g, problem, m, &sol).expect("quotient");
            println!(
                "{problem} m = {m}: hess {:.6e} lap {:.6e} ric {:.6e} bdry {:.6e} rel residual {:.1e} quotient {rq:.10}",
                b.hess_sq, b.lap_sq, b.ric_term, b.boundary_term, b.relative_residual()
            );
        }
    }
}
