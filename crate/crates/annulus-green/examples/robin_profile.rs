//! Radial profile of the Robin function τ(ρ) = H(x, x) and its blow-up
//! toward both boundary spheres.
//!
//! Run with `cargo run --release --example robin_profile`.

use annulus_green::*;

fn main() {
    let dom = Annulus::new(3, 0.5).unwrap();
    let truncation = Truncation::new(20_000, 1e-10, true).unwrap();
    let axis = UnitDirection::axis(3, 0);

    println!("τ(ρ) across the annulus (N = 3, a = 0.5):");
    for i in 1..20 {
        let rho = 0.5 + 0.5 * i as f64 / 20.0;
        let x = EvalPoint::from_polar(rho, &axis).unwrap();
        let tau = robin(&x, &dom, &truncation).unwrap();
        let bar = "#".repeat((tau.value.abs() * 30.0).min(60.0) as usize);
        println!("  ρ = {rho:.3}  τ = {:+.8}  {bar}", tau.value);
    }

    // Geometric approach to the outer sphere: |τ| diverges like the
    // image-charge potential ~ 1/(ω(N-2)(2(1-ρ))^{N-2}).
    println!("\napproach to the outer sphere:");
    for k in 0..8 {
        let rho = 1.0 - 0.2 * 0.5f64.powi(k);
        let x = EvalPoint::from_polar(rho, &axis).unwrap();
        let tau = robin(&x, &dom, &truncation).unwrap();
        let image = -1.0 / (dom.sphere_area() * 2.0 * (1.0 - rho));
        println!(
            "  1-ρ = {:8.2e}  τ = {:+12.4}  image-charge scale {image:+12.4}  ({} orders)",
            1.0 - rho,
            tau.value,
            tau.terms_used
        );
    }

    // On the spheres themselves the series diverges; the library reports a
    // typed error rather than an overflow.
    let on_boundary = EvalPoint::from_polar(1.0, &axis).unwrap();
    println!(
        "\nτ at ρ = 1: {:?}",
        robin(&on_boundary, &dom, &truncation).unwrap_err()
    );
}
