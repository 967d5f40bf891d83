// Curvature classification of each warp family.

use steklov::warping::curvature_classify;
use steklov::{Geometry, WarpSpec};

pub fn main() {
    let warps = [
        WarpSpec::Euclidean,
        WarpSpec::sphere(1.0),
        WarpSpec::hyperbolic(1.0),
        WarpSpec::series(vec![1.0, -0.1, 0.005]),
        WarpSpec::series(vec![1.0, 0.3, -0.2]),
    ];
    println!("{:<24} {:>12} {:>8} {:>10}", "warp", "Ric sign", "convex", "kappa");
    for spec in warps {
        let g = Geometry::new(3, 1.0, spec.clone()).expect("admissible warp");
        let report = curvature_classify(&g, 1000).expect("classification");
        println!(
            "{:<24} {:>12} {:>8} {:>10.6}",
            spec.to_short(),
            format!("{:?}", report.ric_sign),
            report.boundary_convex,
            report.kappa
        );
    }
}
