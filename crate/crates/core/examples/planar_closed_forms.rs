// Surface closed forms against shooting, and the sign of `G`.

use steklov::closedform;
use steklov::radial::{eigenvalue, ShootingConfig};
use steklov::{Geometry, Problem, WarpSpec};

pub fn main() {
    let cfg = ShootingConfig::default();
    for spec in [WarpSpec::sphere(0.5), WarpSpec::hyperbolic(0.5)] {
        let g = Geometry::new(2, 1.0, spec.clone()).expect("admissible warp");
        println!("{}", spec.to_short());
        for m in 1..=4 {
            let xi = closedform::xi_n2(&g, m).expect("closed form");
            let shot = eigenvalue(&g, Problem::Xi, m, &cfg).expect("shooting").value;
            let gmin = closedform::g_min(&g, m).expect("G scan");
            println!("  m = {m}: xi closed {xi:.12}, shot {shot:.12}, min G / scale {:.3e}", gmin / closedform::g_scale(&g));
        }
    }
}
