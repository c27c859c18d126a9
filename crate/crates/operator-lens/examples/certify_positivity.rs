//! Produce positivity certificates through the iterated-square scan.
//!
//! A matrix is positive semidefinite exactly when the scan of real parts of
//! its dyadic powers T, T^2, T^4, ... stays nonnegative down to a computable
//! depth. The certificate returned here is one of three kinds:
//!
//! * `direct_psd`   — the matrix itself is Hermitian and nonnegative;
//! * `dyadic_sector`— every scanned stage was accretive and the numerical
//!   range fits inside the implied sector around the positive axis;
//! * `violation`    — some stage has a direction of strictly negative real
//!   part, reported with the stage index and the witnessing vector.
//!
//! ```sh
//! cargo run --example certify_positivity
//! ```

use operator_lens::generators::catalog_entry;
use operator_lens::theorems::{positivity_certificate, CertificateKind};
use operator_lens::tol::ToleranceContext;

fn main() {
    let ctx = ToleranceContext::default();
    for name in ["psd2", "shear", "sixth_root_scalar"] {
        let entry = catalog_entry(name).expect("catalog name");
        let cert = positivity_certificate(&entry.matrix, &ctx).expect("certificate");
        println!("{name}:");
        println!("  kind      = {:?}", cert.kind);
        println!("  checked_k = {} (scan depth n* = {})", cert.checked_k, cert.n_star);
        match cert.kind {
            CertificateKind::Violation => {
                println!(
                    "  violation at stage k = {} with min eigenvalue {:.6e}",
                    cert.violation_k.unwrap(),
                    cert.violation_min_eig.unwrap()
                );
                let dir = cert.violation_direction.as_ref().unwrap();
                let coords: Vec<String> = dir
                    .iter()
                    .map(|z| format!("{:.4}{:+.4}i", z.re, z.im))
                    .collect();
                println!("  witness direction: [{}]", coords.join(", "));
            }
            CertificateKind::DyadicSector => {
                let sector = cert.sector.as_ref().unwrap();
                println!(
                    "  numerical range inside sector of half-angle {:.3e} rad",
                    sector.half_angle
                );
            }
            CertificateKind::DirectPsd => {
                println!("  Hermitian with nonnegative spectrum, nothing further to scan");
            }
        }
        println!();
    }
}
