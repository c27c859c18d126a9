//! Three classical operator inequalities, checked numerically.
//!
//! * Monotonicity of fractional powers: 0 <= B <= A implies B^p <= A^p for
//!   p in [0, 1] — and famously fails for p > 1.
//! * A mixed Schwarz inequality: |<Tx, y>|^2 <= <(T*T)^a x, x> <(TT*)^(1-a) y, y>.
//! * The commutation-transfer property of normal matrices: if TN = MT with
//!   M, N normal, then TN* = M*T.
//!
//! ```sh
//! cargo run --example operator_inequalities
//! ```

use operator_lens::generators::{generate, GenClass, GenSpec};
use operator_lens::matrix::{C64, ComplexMatrix};
use operator_lens::theorems::{check_fuglede_putnam, check_kato, check_lowner_heinz};
use operator_lens::tol::ToleranceContext;

fn main() {
    let ctx = ToleranceContext::default();

    // Fractional-power monotonicity: a diagonal pair with B <= A.
    let a = ComplexMatrix::from_real_rows(&[&[4.0, 0.0], &[0.0, 9.0]]);
    let b = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 4.0]]);
    for p in [0.25, 0.5, 1.0] {
        let ok = check_lowner_heinz(&a, &b, p, &ctx).expect("comparable pair");
        println!("B <= A implies B^{p} <= A^{p}: {ok}");
    }

    // The standard counterexample at p = 2: comparability is lost.
    let a2 = ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 1.0]]);
    let b2 = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
    let ok = check_lowner_heinz(&a2, &b2, 2.0, &ctx).expect("comparable pair");
    println!("squaring preserves the order for this pair: {ok} (expected false)");

    // Mixed Schwarz inequality on a generic matrix and vectors.
    let t = generate(&GenSpec {
        class: GenClass::Generic,
        dim: 4,
        seed: 11,
        scale: 1.0,
    })
    .expect("generator");
    let x: Vec<C64> = (0..4).map(|i| C64::new(1.0 / (i as f64 + 1.0), 0.3)).collect();
    let y: Vec<C64> = (0..4).map(|i| C64::new(0.2 * i as f64, -0.5)).collect();
    for alpha in [0.0, 0.3, 0.5, 1.0] {
        let ok = check_kato(&t, &x, &y, alpha, &ctx).expect("inequality check");
        println!("mixed Schwarz bound at alpha = {alpha}: {ok}");
    }

    // Commutation transfer through adjoints of normal matrices.
    let n = generate(&GenSpec {
        class: GenClass::Normal,
        dim: 4,
        seed: 3,
        scale: 1.0,
    })
    .expect("generator");
    let ok = check_fuglede_putnam(&ComplexMatrix::identity(4), &n, &n, &ctx)
        .expect("intertwining check");
    println!("TN = MT transfers to TN* = M*T: {ok}");
}
