//! The two defining properties, probed numerically: the constant Neumann
//! flux -1/|∂Ω| on both spheres and the unit Dirac mass at the source.
//!
//! Run with `cargo run --release --example boundary_flux`.

use annulus_green::quadrature::sphere_directions;
use annulus_green::*;

fn main() {
    let dom = Annulus::new(3, 0.5).unwrap();
    let truncation = Truncation::default();
    let x = EvalPoint::new(&[0.2, 0.7, -0.1]).unwrap();
    let target = -1.0 / dom.boundary_measure();
    println!("target boundary flux -1/|∂Ω| = {target:.12}  (= -1/(5π))");

    println!("\n∂G/∂ν_y at sampled boundary points:");
    for (component, radius) in [("outer", 1.0), ("inner", 0.5)] {
        for dir in sphere_directions(3, 3, 42) {
            let y = EvalPoint::from_polar(radius, &dir).unwrap();
            let d = normal_derivative_in_y(&x, &y, &dom, &truncation).unwrap();
            println!(
                "  {component} sphere, angle {:.2} rad: {:+.12}  (residual {:.1e}, tail <= {:.1e})",
                x.direction().cos_angle(&dir).acos(),
                d.value,
                (d.value - target).abs(),
                d.tail_estimate
            );
        }
    }

    // Aggregate scan with per-component statistics, as a report.
    let report = boundary_scan(&x, &dom, 64, &truncation).unwrap();
    println!("\nboundary_scan report:");
    for check in &report.checks {
        println!(
            "  {:45} measured {:>10.2e}  [{}]",
            check.name,
            check.measured,
            match check.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Flagged => "flagged",
            }
        );
    }

    // Flux probe around the source: the Dirac mass.
    let spec = QuadratureSpec::default();
    let flux = flux_probe(&x, &dom, 1e-2, &spec, &truncation).unwrap();
    println!("\noutward flux of ∇_y G through ∂B(x, 0.01): {flux:.6}  (target -1)");
}
