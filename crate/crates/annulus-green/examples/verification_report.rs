//! Run the full verification suite — every invariant check, oracle and
//! probe — and print the machine-readable report.
//!
//! Run with `cargo run --release --example verification_report`.
//! Takes a couple of minutes: the Gegenbauer oracle grinds exact rational
//! arithmetic up to order 60 over the full parameter grid.

use annulus_green::*;

fn main() {
    let dom = Annulus::new(3, 0.5).unwrap();
    let budget = QuadratureSpec::default();
    let report = run_full_verification(&dom, &budget, &Truncation::default());

    for check in &report.checks {
        let status = match check.status {
            CheckStatus::Pass => "pass   ",
            CheckStatus::Fail => "FAIL   ",
            CheckStatus::Flagged => "flagged",
        };
        println!(
            "{status} {:45} measured {:>12.4e}  tolerance {:>9.2e}",
            check.name, check.measured, check.tolerance
        );
    }
    println!(
        "\n{} passed, {} failed, {} flagged (seed {})",
        report.passed, report.failed, report.flagged, report.seed
    );

    let path = "verification_report.json";
    std::fs::write(path, report.to_json()).expect("report written");
    println!("full report written to {path}");
}
