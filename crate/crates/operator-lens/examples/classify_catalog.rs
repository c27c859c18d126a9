//! Classify every matrix in the built-in catalog and print a membership table.
//!
//! The catalog holds small hand-picked matrices that separate the operator
//! classes: a positive matrix, a scaled sixth root of the identity, a Jordan
//! block, a shear, and a block involution. Run with:
//!
//! ```sh
//! cargo run --example classify_catalog
//! ```

use operator_lens::classify::classify;
use operator_lens::generators::catalog;
use operator_lens::tol::ToleranceContext;

fn main() {
    let ctx = ToleranceContext::default();
    println!(
        "{:<18} {:>4} {:>9} {:>9} {:>7} {:>12} {:>10} {:>10} {:>10}",
        "matrix", "dim", "positive", "selfadj", "normal", "quasinormal", "hyponormal", "paranormal", "accretive"
    );
    for entry in catalog() {
        let report = classify(&entry.matrix, &ctx).expect("classification");
        let f = &report.flags;
        println!(
            "{:<18} {:>4} {:>9} {:>9} {:>7} {:>12} {:>10} {:>10} {:>10}",
            entry.name,
            report.dim,
            f.positive,
            f.self_adjoint,
            f.normal,
            f.quasinormal,
            f.hyponormal,
            f.paranormal,
            f.accretive,
        );
    }
    println!();
    for entry in catalog() {
        println!("{}: {}", entry.name, entry.description);
    }
}
