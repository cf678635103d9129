//! Export a planar slice of G(x, ·) as CSV for external plotting, the same
//! table the `scan` subcommand emits, plus a coarse ASCII rendering.
//!
//! Run with `cargo run --release --example field_slice`.

use annulus_green::*;

fn main() {
    let dom = Annulus::new(3, 0.5).unwrap();
    let truncation = Truncation::default();
    let x = EvalPoint::new(&[0.75, 0.0, 0.0]).unwrap();

    // Coarse view of the equatorial plane: the singularity at x, the
    // excluded hole, and the exterior.
    let n = 41;
    println!("G(x, ·) on the z = 0 plane (x marked at (0.75, 0)):");
    for j in (0..n).rev() {
        let v = -1.0 + 2.0 * j as f64 / (n - 1) as f64;
        let mut line = String::new();
        for i in 0..n {
            let u = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
            let r = (u * u + v * v).sqrt();
            let ch = if !dom.contains_radius(r) || r == 0.0 {
                ' '
            } else {
                let y = EvalPoint::new(&[u, v, 0.0]).unwrap();
                if y.distance(&x) < 0.04 {
                    '@'
                } else {
                    let g = green(&x, &y, &dom, &truncation).unwrap().green;
                    match g {
                        g if g > 0.2 => '#',
                        g if g > 0.05 => '+',
                        g if g > 0.0 => '.',
                        g if g > -0.05 => ':',
                        _ => '-',
                    }
                }
            };
            line.push(ch);
        }
        println!("  {line}");
    }

    // The CSV table itself, a few rows.
    println!("\nCSV rows as the scan subcommand writes them:");
    println!("y1,y2,y3,G,H,tail,flag");
    for &(u, v) in &[(0.9f64, 0.0f64), (0.74, 0.01), (0.0, -0.6), (0.3, 0.2)] {
        let coords = [u, v, 0.0];
        let r = (u * u + v * v).sqrt();
        if !dom.contains_radius(r) {
            println!("{u},{v},0,,,,outside");
            continue;
        }
        let y = EvalPoint::new(&coords).unwrap();
        if y.distance(&x) < 1e-3 {
            println!("{u},{v},0,,,,near-singular");
            continue;
        }
        let g = green(&x, &y, &dom, &truncation).unwrap();
        println!(
            "{u},{v},0,{},{},{},",
            g.green, g.regular_part, g.tail_estimate
        );
    }
}
