// Both fourth-order problems across dimensions, with the origin-cutoff check.

use steklov::closedform;
use steklov::radial::{eigenvalue, ShootingConfig};
use steklov::{Geometry, Problem, WarpSpec};

pub fn main() {
    let cfg = ShootingConfig::default();
    for n in 2..=5 {
        let flat = Geometry::euclidean(n, 1.0).expect("flat ball");
        let cap = Geometry::new(n, 1.0, WarpSpec::sphere(1.0)).expect("cap");
        for problem in [Problem::Xi, Problem::Eta] {
            let exact = closedform::euclid(problem, n, 1.0, 2);
            let shot = eigenvalue(&flat, problem, 2, &cfg).expect("flat eigenvalue");
            let curved = eigenvalue(&cap, problem, 2, &cfg).expect("cap eigenvalue");
            println!(
                "n = {n} {problem} m = 2: flat {:.10} (exact {exact}), cap {:.10}, eps delta {:.1e}",
                shot.value, curved.value, curved.diagnostics.eps_convergence_delta
            );
        }
    }
}
