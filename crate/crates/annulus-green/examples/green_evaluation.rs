//! Evaluating the Neumann Green function of the annulus: the three parts
//! of G = Γ - H, the exchange defect against its closed-form prediction,
//! and behavior near the diagonal.
//!
//! Run with `cargo run --release --example green_evaluation`.

use annulus_green::*;

fn main() {
    let dom = Annulus::new(3, 0.5).unwrap();
    let truncation = Truncation::default();

    let x = EvalPoint::new(&[0.75, 0.0, 0.0]).unwrap();
    let y = EvalPoint::new(&[0.0, 0.6, 0.0]).unwrap();
    let g = green(&x, &y, &dom, &truncation).unwrap();
    println!("G(x, y) at x = (0.75, 0, 0), y = (0, 0.6, 0), N = 3, a = 0.5:");
    println!("  green         {:+.15}", g.green);
    println!("  singular part {:+.15}", g.singular_part);
    println!("  regular part  {:+.15}", g.regular_part);
    println!(
        "  tail <= {:.2e} ({} series orders)",
        g.tail_estimate, g.terms_used
    );

    // G is not symmetric: the C_0 |y|^{2-N} sector breaks the exchange, by
    // exactly C_0(|x|^{2-N} - |y|^{2-N}).
    let defect = symmetry_defect(&x, &y, &dom, &truncation).unwrap();
    println!("\nexchange defect G(x,y) - G(y,x):");
    println!("  measured  {:+.15}", defect.measured);
    println!("  predicted {:+.15}", defect.predicted);
    println!(
        "  |difference| {:.2e} within combined tails {:.2e}",
        (defect.measured - defect.predicted).abs(),
        defect.combined_tail
    );

    // Near the diagonal the kernel reproduces the free-space singularity:
    // G · ω(N-2)|x-y|^{N-2} -> 1.
    println!("\nnear-diagonal limit of G · ω(N-2)|x-y|^{{N-2}}:");
    for sep in [1e-1, 1e-2, 1e-3, 1e-4] {
        let y = EvalPoint::new(&[0.75, sep, 0.0]).unwrap();
        let g = green(&x, &y, &dom, &truncation).unwrap();
        let scaled = g.green * dom.sphere_area() * 1.0 * x.distance(&y);
        println!("  |x-y| = {sep:7.1e}  scaled G = {scaled:.10}");
    }

    // The mean of G(x, ·) over the annulus, measured two ways.
    let spec = QuadratureSpec::default();
    let mean = mean_over_y(&x, &dom, &spec, &truncation).unwrap();
    println!("\nmean of G(x, ·) over the annulus (the normalization the formula actually has):");
    println!("  radial Gauss-Legendre   {:+.12}", mean.product_rule);
    println!("  stratified Monte Carlo  {:+.12}", mean.stratified_mc);
    println!(
        "  full-field Monte Carlo  {:+.12} ± {:.1e}",
        mean.full_field_mc, mean.full_field_std_error
    );
    println!(
        "  renormalized G(x,y) = G - mean = {:+.12}",
        g.renormalized(mean.value())
    );
}
