//! Seeded matrix families and what each one guarantees.
//!
//! Every family is deterministic in (dim, seed, scale). This example draws
//! one matrix per family and reports the measurements that the family is
//! supposed to control.
//!
//! ```sh
//! cargo run --example generate_matrices
//! ```

use operator_lens::classify::{accretive_check, normal_check, psd_check, self_adjoint_check};
use operator_lens::generators::{generate, GenClass, GenSpec};
use operator_lens::tol::ToleranceContext;

fn main() {
    let ctx = ToleranceContext::default();
    let families = [
        GenClass::Normal,
        GenClass::Psd,
        GenClass::SelfAdjoint,
        GenClass::Accretive,
        GenClass::SqrtOfNormal,
        GenClass::Nilpotent2,
        GenClass::Unitary,
        GenClass::Generic,
        GenClass::NearHypothesis { p: 2, q: 3 },
    ];
    println!(
        "{:<22} {:>8} {:>12} {:>12} {:>12} {:>12}",
        "family", "norm", "selfadj", "psd", "normal", "accretive"
    );
    for class in families {
        let spec = GenSpec {
            class,
            dim: 5,
            seed: 7,
            scale: 1.0,
        };
        let m = generate(&spec).expect("generator");
        println!(
            "{:<22} {:>8.3} {:>12.3e} {:>12.3e} {:>12.3e} {:>12.3e}",
            class.to_string(),
            m.spectral_norm(),
            self_adjoint_check(&m, &ctx).residual,
            psd_check(&m, &ctx).residual,
            normal_check(&m, &ctx).residual,
            accretive_check(&m, &ctx).residual,
        );
    }
    println!();
    println!("residuals are distances to the class; 0 means exact membership");
}
