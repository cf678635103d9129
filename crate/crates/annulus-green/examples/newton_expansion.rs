//! The zonal-harmonic expansion of the Newton kernel 1/|x-y|^{N-2}:
//! agreement with the direct kernel and the cost of convergence as the
//! radius ratio approaches 1.
//!
//! Run with `cargo run --release --example newton_expansion`.

use annulus_green::*;

fn main() {
    let truncation = Truncation::default();

    println!("series vs direct kernel, N = 3:");
    let x = EvalPoint::new(&[0.8, 0.1, 0.0]).unwrap();
    for &coords in &[[0.3, 0.0, 0.0], [0.0, 0.45, 0.2], [-0.5, 0.2, 0.3]] {
        let y = EvalPoint::new(&coords).unwrap();
        let direct = newton_kernel_direct(&x, &y, 3).unwrap();
        let series = newton_kernel_series(&x, &y, 3, &truncation).unwrap();
        println!(
            "  |y| = {:.3}  direct {direct:.12}  series {:.12}  rel err {:.1e}  ({} terms, tail <= {:.1e})",
            y.radius(),
            series.value,
            (series.value - direct).abs() / direct,
            series.terms_used,
            series.tail_estimate
        );
    }

    // Adaptive order grows like log(tol)/log(ratio) as the radii approach
    // each other.
    println!("\nterm count vs radius ratio (relative tolerance 1e-8):");
    let tr = Truncation::new(4000, 1e-8, true).unwrap();
    for ratio in [0.5, 0.8, 0.9, 0.95] {
        let y = EvalPoint::new(&[0.8 * ratio, 0.1 * ratio, 0.0]).unwrap();
        let series = newton_kernel_series(&x, &y, 3, &tr).unwrap();
        let predicted = (1e-8f64).ln() / ratio.ln();
        println!(
            "  ratio {ratio:4}  terms used {:4}  ~ log(tol)/log(ratio) = {predicted:.0}",
            series.terms_used
        );
    }

    // The radial derivative series has two branches; both match a finite
    // difference of the fundamental solution Γ.
    println!("\nradial derivative of Γ(y-x) in r = |y|, both branches:");
    let omega = surface_area(3).unwrap();
    let dir = [0.0, 0.6, 0.8];
    for r in [0.4f64, 0.95] {
        let y = EvalPoint::new(&dir.map(|c| c * r)).unwrap();
        let series = radial_derivative_series(&x, &y, 3, &truncation).unwrap();
        let h = 1e-5;
        let gamma = |radius: f64| {
            let yy = EvalPoint::new(&dir.map(|c| c * radius)).unwrap();
            newton_kernel_direct(&x, &yy, 3).unwrap() / omega
        };
        let fd = (gamma(r + h) - gamma(r - h)) / (2.0 * h);
        let branch = if r < x.radius() {
            "|y| < |x|"
        } else {
            "|x| < |y|"
        };
        println!(
            "  {branch}: series {:+.10}  finite difference {fd:+.10}",
            series.value
        );
    }
}
