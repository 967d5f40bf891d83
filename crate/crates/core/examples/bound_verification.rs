// Lower bounds on a positively curved cap, upper bounds on a hyperbolic ball.

use steklov::radial::ShootingConfig;
use steklov::spectrum::verify;
use steklov::{Geometry, Problem, WarpSpec};

pub fn main() {
    let cfg = ShootingConfig::default();
    for spec in [WarpSpec::Euclidean, WarpSpec::sphere(1.0), WarpSpec::hyperbolic(1.0)] {
        let g = Geometry::new(4, 1.0, spec.clone()).expect("admissible warp");
        for problem in Problem::ALL {
            let rep = verify(problem, &g, 1, &cfg).expect("report");
            println!(
                "{:<10} {:<5} eig {:>10.6} bound {:>10.6} [{}] {:?}",
                spec.to_short(), problem.as_str(), rep.eigenvalue, rep.bound_value, rep.theorem_tag, rep.verdict
            );
        }
    }
}
