//! Numerical-range geometry: boundary polygon, half-plane search, sector test.
//!
//! The numerical range W(T) = { <Tx, x> : |x| = 1 } is a compact convex set.
//! This example samples its boundary by support directions, looks for a
//! rotation pulling it into a closed half-plane, and tests containment in a
//! symmetric sector around the positive real axis.
//!
//! ```sh
//! cargo run --example numerical_range
//! ```

use operator_lens::generators::catalog_entry;
use operator_lens::numrange::{boundary_points, halfplane_witness, sector_contains, SectorOutcome};
use operator_lens::tol::ToleranceContext;

fn main() {
    let ctx = ToleranceContext::default();
    for name in ["shear", "involution_like", "psd2"] {
        let m = catalog_entry(name).expect("catalog name").matrix;
        println!("== {name} ==");

        let boundary = boundary_points(&m, 12);
        let pts: Vec<String> = boundary
            .iter()
            .map(|z| format!("{:.3}{:+.3}i", z.re, z.im))
            .collect();
        println!("boundary samples: {}", pts.join("  "));

        match halfplane_witness(&m, &ctx) {
            Some(w) => println!(
                "half-plane: rotating by {:.4} rad makes Re >= {:.3e}",
                w.theta, w.min_eig
            ),
            None => println!("half-plane: no rotation makes the range one-sided"),
        }

        let quarter = std::f64::consts::FRAC_PI_4;
        match sector_contains(&m, quarter, &ctx).expect("sector check") {
            SectorOutcome::Certified(certificate) => println!(
                "sector pi/4: contained (margins {:.3e}, {:.3e})",
                certificate.min_eig_plus, certificate.min_eig_minus
            ),
            SectorOutcome::Refused { witnesses } => {
                let w = &witnesses[0];
                println!(
                    "sector pi/4: refused, direction at angle {:.4} has min eig {:.3e}",
                    w.angle, w.min_eig
                );
            }
        }
        println!();
    }
}
