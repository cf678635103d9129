//! Gegenbauer polynomials and zonal harmonics: the recurrence route, the
//! exact-rational generating-function oracle, and the explicit finite sum,
//! cross-checked against each other.
//!
//! Run with `cargo run --release --example gegenbauer_zonal`.

use annulus_green::harmonics::reference::gegenbauer_series;
use annulus_green::*;

fn main() {
    // C_m^λ(t) by recurrence vs the coefficients of (1-2rt+r²)^{-λ}.
    let (lambda, t) = (0.5, 0.3);
    let oracle = gegenbauer_series(lambda, t, 10);
    println!("C_m^({lambda})({t}): recurrence vs exact series expansion");
    for (m, reference) in oracle.iter().enumerate() {
        let value = gegenbauer(GegenbauerParams::new(m, lambda, t).unwrap());
        println!(
            "  m={m:2}  {value:+.15}  oracle {reference:+.15}  diff {:.1e}",
            (value - reference).abs()
        );
    }

    // Zonal harmonics on S²: addition-theorem route vs the explicit sum.
    let x = UnitDirection::new(&[0.6, 0.0, 0.8]).unwrap();
    let xi = UnitDirection::new(&[0.0, 1.0, 0.0]).unwrap();
    println!("\nZ_m(x', ξ) on the unit sphere of R³ (two routes):");
    for m in 0..=8 {
        let theorem = zonal(m, 3, &x, &xi).unwrap();
        let explicit = zonal_explicit(m, 3, x.components(), &xi).unwrap();
        println!("  m={m}  {theorem:+.12}  explicit {explicit:+.12}");
    }

    // The diagonal Z_m(ξ,ξ) is the amplitude bound used by truncation
    // control; in R³ it equals 2m+1.
    println!("\nZ_m(ξ,ξ) amplitudes: N=3 gives 2m+1, N=4 gives (m+1)²");
    for m in 0..=6 {
        println!(
            "  m={m}  N=3: {:5.1}   N=4: {:5.1}",
            zonal_diagonal(m, 3).unwrap(),
            zonal_diagonal(m, 4).unwrap()
        );
    }
}
