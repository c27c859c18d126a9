//! The seven equivalent descriptions of a positive operator.
//!
//! For a matrix T these conditions are all equivalent:
//!
//! 1. T is positive semidefinite;
//! 2. T^2 is positive semidefinite and T is accretive;
//! 3. ascent(T) <= 1, T^2 is PSD, and some odd power is accretive;
//! 4. ascent(T) <= 1 and two coprime powers are PSD;
//! 5. every iterated square T^(2^n) is accretive;
//! 6. every power T^n is accretive;
//! 7. ascent(T) <= 1 and all powers from some point on are accretive.
//!
//! Exponent quantifiers are scanned up to a bound and then completed through
//! the positivity certificate, so agreement is exact rather than truncated.
//!
//! ```sh
//! cargo run --example equivalence_conditions
//! ```

use operator_lens::generators::catalog_entry;
use operator_lens::theorems::equivalence_suite;
use operator_lens::tol::ToleranceContext;

fn main() {
    let ctx = ToleranceContext::default();
    for name in ["psd2", "sixth_root_scalar", "shear"] {
        let m = catalog_entry(name).expect("catalog name").matrix;
        let report = equivalence_suite(&m, &ctx, 16, 1).expect("equivalence suite");
        println!("== {name} (dim {}) ==", report.dim);
        for c in &report.conditions {
            println!(
                "  {:<40} holds={:<5} residual={:.3e}",
                c.name, c.holds, c.residual
            );
        }
        println!(
            "  all seven agree: {}",
            if report.agreement { "yes" } else { "NO" }
        );
        println!();
    }
}
