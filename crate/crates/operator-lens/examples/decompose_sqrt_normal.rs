//! Canonical block form of a square root of a normal matrix.
//!
//! If T^2 is normal, then up to a unitary change of basis T splits as
//! `diag(A, [[B, C], [0, -B]])` where A is normal, B is normal and invertible
//! with spectrum in the open upper half-plane, C is positive semidefinite,
//! and C commutes with B*B. This example generates such a matrix from a
//! seeded family, recovers the block form, and verifies every invariant.
//!
//! ```sh
//! cargo run --example decompose_sqrt_normal
//! ```

use operator_lens::decompose::{sqrt_normal_decompose, verify_canonical_form};
use operator_lens::generators::{generate, GenClass, GenSpec};
use operator_lens::tol::ToleranceContext;

fn main() {
    let ctx = ToleranceContext::default();
    let spec = GenSpec {
        class: GenClass::SqrtOfNormal,
        dim: 7,
        seed: 20260823,
        scale: 1.0,
    };
    let t = generate(&spec).expect("generator");
    let dec = sqrt_normal_decompose(&t, &ctx).expect("decomposition");

    let (na, nb, _) = dec.dims;
    println!("input dimension        : {}", t.dim());
    println!("normal block A         : {na}x{na}");
    println!("paired blocks B, C     : {nb}x{nb} each");
    println!("reconstruction residual: {:.3e}", dec.residual);

    let report = verify_canonical_form(&t, &dec, &ctx);
    println!();
    println!("verification (all measured against tolerance {:.1e}):", report.tol);
    println!("  reconstruction residual : {:.3e}", report.reconstruction_residual);
    println!("  unitarity defect of U   : {:.3e}", report.unitarity_defect);
    println!("  A normality residual    : {:.3e}", report.a_normal_residual);
    println!("  B normality residual    : {:.3e}", report.b_normal_residual);
    println!("  C Hermitian defect      : {:.3e}", report.c_hermitian_defect);
    println!("  C minimal eigenvalue    : {:.3e}", report.c_min_eig);
    println!("  [C, B*B] commutator     : {:.3e}", report.bc_commutator);
    println!("  spec(B) in upper plane  : {}", report.b_spectrum_upper);
    println!("  valid                   : {}", report.valid);
}
