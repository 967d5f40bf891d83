// Finite-difference minimisers with Richardson extrapolation against shooting.

use steklov::oracle::{convergence_order, fd_extrapolated};
use steklov::radial::{eigenvalue, ShootingConfig};
use steklov::{Geometry, Problem, WarpSpec};

pub fn main() {
    let g = Geometry::new(3, 1.0, WarpSpec::sphere(1.0)).expect("cap");
    for problem in Problem::ALL {
        let shot = eigenvalue(&g, problem, 2, &ShootingConfig::default()).expect("shooting").value;
        let est = fd_extrapolated(&g, problem, 2, 400).expect("fd");
        let order = convergence_order(&g, problem, 2, 200).expect("order");
        println!(
            "{problem} m = 2: shooting {shot:.10}, fd {:.10} +- {:.1e}, observed order {order:.3}",
            est.extrapolated, est.error
        );
    }
}
