// Dirichlet-to-Neumann spectrum of a spherical cap with multiplicities.

use steklov::radial::ShootingConfig;
use steklov::spectrum::assemble_spectrum;
use steklov::{Geometry, Problem, WarpSpec};

pub fn main() {
    let g = Geometry::new(3, 1.0, WarpSpec::sphere(1.0)).expect("admissible cap");
    let table = assemble_spectrum(Problem::Sigma, &g, 6, &ShootingConfig::default()).expect("spectrum");
    println!("sigma on the cap sin(r), n = 3, R = 1 (ordered: {})", table.ordering_certified);
    for row in &table.rows {
        println!(
            "m = {}  sigma = {:.12}  multiplicity {:>2}  indices {}..={}",
            row.m, row.eigenvalue, row.multiplicity, row.index_from, row.index_to
        );
    }
}
