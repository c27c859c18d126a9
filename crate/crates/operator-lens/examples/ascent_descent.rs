//! Ascent, descent, and coprime-power normality.
//!
//! The ascent of T is the first n with ker T^n = ker T^(n+1); descent is the
//! analogue for ranges. At finite dimension both are finite and equal for
//! each matrix. Ascent at most one (ker T = ker T^2) is the injectivity-like
//! hypothesis under which normality of two coprime powers forces normality
//! of T itself; a single Jordan block shows the hypothesis cannot be
//! dropped.
//!
//! ```sh
//! cargo run --example ascent_descent
//! ```

use operator_lens::generators::catalog_entry;
use operator_lens::structure::{asc_le_1, bezout, indices, power_pair_normality};
use operator_lens::tol::ToleranceContext;

fn main() {
    let ctx = ToleranceContext::default();

    for name in ["psd2", "jordan2", "shear", "involution_like"] {
        let m = catalog_entry(name).expect("catalog name").matrix;
        let ix = indices(&m, &ctx).expect("structure indices");
        println!(
            "{:<16} ascent={} descent={} rank profile {:?} ascent<=1 {}",
            name,
            ix.ascent,
            ix.descent,
            ix.rank_profile,
            asc_le_1(&m, &ctx)
        );
    }

    println!();
    let pair = bezout(2, 3).expect("coprime pair");
    println!(
        "bezout(2, 3): {}*2 + {}*3 = 1, combined exponent n = {}",
        pair.k, pair.l, pair.n
    );

    println!();
    let jordan = catalog_entry("jordan2").expect("catalog").matrix;
    let report = power_pair_normality(&jordan, 2, 3, &ctx).expect("pair report");
    println!(
        "jordan2: T^2 normal residual {:.3e} (holds={}), T^3 normal residual {:.3e} (holds={})",
        report.factor_p.residual,
        report.factor_p.holds,
        report.factor_q.residual,
        report.factor_q.holds
    );
    println!(
        "jordan2: both powers normal yet T is not; its ascent is 2, so the \
         ascent hypothesis is doing real work"
    );
}
