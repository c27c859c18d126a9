//! Check the whole statement catalog against one matrix.
//!
//! Each statement is an implication about powers of an operator: hypotheses
//! are measured on the matrix, the conclusion is measured independently, and
//! the verdict records whether the observation is consistent with the
//! implication. A verdict is `fatal` only when every hypothesis was decided
//! exactly (no truncated exponent quantifier) and the conclusion still fails.
//!
//! ```sh
//! cargo run --example verify_theorems
//! ```

use operator_lens::generators::catalog_entry;
use operator_lens::theorems::{verify_theorem, TheoremParams, ALL_THEOREMS};
use operator_lens::tol::ToleranceContext;

fn main() {
    let ctx = ToleranceContext::default();
    let params = TheoremParams::default();

    for name in ["psd2", "jordan2"] {
        let m = catalog_entry(name).expect("catalog name").matrix;
        println!("== {name} ==");
        println!(
            "{:<16} {:<10} {:<12} {:<10} {}",
            "statement", "consistent", "conclusion", "vacuous", "failing hypotheses"
        );
        for id in ALL_THEOREMS {
            let v = verify_theorem(id, &m, &params, &ctx).expect("verdict");
            let vacuous = v.hypotheses.iter().any(|h| !h.holds);
            let failing: Vec<&str> = v
                .hypotheses
                .iter()
                .filter(|h| !h.holds)
                .map(|h| h.name.as_str())
                .collect();
            println!(
                "{:<16} {:<10} {:<12} {:<10} {}",
                v.theorem.to_string(),
                v.consistent,
                v.conclusion_holds,
                vacuous,
                failing.join(", ")
            );
        }
        println!();
    }
}
