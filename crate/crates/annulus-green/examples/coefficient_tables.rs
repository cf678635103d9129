//! The series coefficients A_m(ρ), B_m(ρ) and the constant C_0, computed
//! from the closed forms and re-derived by solving the per-order boundary
//! system directly.
//!
//! Run with `cargo run --release --example coefficient_tables`.

use annulus_green::*;

fn main() {
    let dom = Annulus::new(3, 0.5).unwrap();
    let rho = 0.75;

    println!(
        "C_0 = {:.15}  (= 1/(20π) at N = 3, a = 1/2)",
        coeff_c0(&dom)
    );
    println!("\ncoefficients at ρ = {rho} with the Cramer cross-check:");
    println!(
        "{:>3} {:>22} {:>22} {:>12}",
        "m", "A_m", "B_m", "max rel diff"
    );
    for m in 1..=12 {
        let a = coeff_a(m, &dom, rho).unwrap();
        let b = coeff_b(m, &dom, rho).unwrap();
        let (ca, cb) = coeffs_via_cramer(m, &dom, rho).unwrap();
        let diff = ((a - ca).abs() / ca.abs()).max((b - cb).abs() / cb.abs());
        println!("{m:>3} {a:>22.15} {b:>22.15} {diff:>12.1e}");
    }

    // Large orders approach the a-independent limit -((m+N-2)/(m(2m+N-2))) ρ^m
    // as a^{2m+N-2} underflows harmlessly.
    println!("\nlarge-m asymptotics of A_m:");
    for m in [20usize, 40, 80] {
        let a = coeff_a(m, &dom, rho).unwrap();
        let mf = m as f64;
        let limit = -((mf + 1.0) / (mf * (2.0 * mf + 1.0))) * rho.powi(m as i32);
        println!("  m = {m:3}  A_m = {a:+.6e}  limit {limit:+.6e}");
    }

    // The full table in one call, as the CLI's coeffs subcommand emits it.
    let rows = coefficient_rows(&dom, 0.6, 4).unwrap();
    println!("\ncoefficient_rows(a = 0.5, ρ = 0.6, m <= 4):");
    for row in rows {
        println!("  m = {}  A = {:+.9}  B = {:+.9}", row.order, row.a, row.b);
    }
}
