//! Numerical-range geometry: support values, boundary sampling, half-plane
//! witnesses and sector certificates.
//!
//! For a square matrix `T` the numerical range `W(T)` is the set of Rayleigh
//! quotients `<Tx, x>` over unit vectors `x`. Everything here reduces to
//! Hermitian eigenvalue problems for rotated real parts: the support value of
//! `W(T)` in direction `theta` is the top eigenvalue of `Re(e^{-i theta} T)`.

use serde::Serialize;

use crate::eig::{hermitian_eig_unchecked, HermitianEig};
use crate::error::{OpError, Result};
use crate::matrix::{inner, C64, ComplexMatrix};
use crate::tol::ToleranceContext;

fn rotated_real_part(m: &ComplexMatrix, theta: f64) -> ComplexMatrix {
    m.scale_c(C64::from_polar(1.0, theta)).real_part()
}

fn eig_of_rotation(m: &ComplexMatrix, theta: f64) -> HermitianEig {
    hermitian_eig_unchecked(&rotated_real_part(m, theta))
}

/// Support value of the numerical range in direction `theta`:
/// `max { Re(e^{-i theta} z) : z in W(m) }`.
pub fn support(m: &ComplexMatrix, theta: f64) -> f64 {
    let eig = eig_of_rotation(m, -theta);
    *eig.eigenvalues.last().expect("support of empty matrix")
}

/// `count` points on the boundary of the numerical range, obtained as
/// Rayleigh quotients of top eigenvectors of rotated real parts at equally
/// spaced directions.
pub fn boundary_points(m: &ComplexMatrix, count: usize) -> Vec<C64> {
    let n = m.dim();
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / count.max(1) as f64;
        let eig = eig_of_rotation(m, -theta);
        let v = eig.eigenvectors.col(n - 1);
        out.push(inner(&m.apply(&v), &v));
    }
    out
}

/// Evidence that some rotation of the matrix is accretive: an angle `theta`
/// with `Re(e^{i theta} m) >= -tau`, i.e. the numerical range fits in the
/// closed half-plane `{ z : Re(e^{i theta} z) >= 0 }` up to tolerance.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HalfPlaneWitness {
    pub theta: f64,
    pub min_eig: f64,
}

/// Scan all directions for a half-plane containing the numerical range.
///
/// Returns the rotation maximizing the smallest eigenvalue of the rotated
/// real part (grid scan plus golden-section refinement), or `None` when even
/// the best rotation dips below `-tau` — which happens exactly when `0` lies
/// in the interior of the numerical range.
pub fn halfplane_witness(m: &ComplexMatrix, ctx: &ToleranceContext) -> Option<HalfPlaneWitness> {
    let tau = ctx.tau(m.spectral_norm());
    let best = best_rotation(m, ctx);
    if best.min_eig >= -tau {
        Some(best)
    } else {
        None
    }
}

/// The rotation maximizing the smallest eigenvalue of `Re(e^{i theta} m)`,
/// returned unconditionally (the value may be negative). This is the inner
/// scan behind [`halfplane_witness`]; callers that need the achieved value
/// even on failure use it directly.
pub(crate) fn best_rotation(m: &ComplexMatrix, ctx: &ToleranceContext) -> HalfPlaneWitness {
    let g = |theta: f64| {
        let eig = eig_of_rotation(m, theta);
        eig.eigenvalues[0]
    };
    let grid = ctx.angle_grid.max(4);
    let mut best_theta = 0.0;
    let mut best_val = f64::NEG_INFINITY;
    for i in 0..grid {
        let theta = 2.0 * std::f64::consts::PI * i as f64 / grid as f64;
        let v = g(theta);
        if v > best_val {
            best_val = v;
            best_theta = theta;
        }
    }
    // golden-section maximization around the best grid point
    let step = 2.0 * std::f64::consts::PI / grid as f64;
    let mut lo = best_theta - step;
    let mut hi = best_theta + step;
    let phi = 0.5 * (3.0 - 5f64.sqrt());
    let mut x1 = lo + phi * (hi - lo);
    let mut x2 = hi - phi * (hi - lo);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    for _ in 0..ctx.max_refine {
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + phi * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = hi - phi * (hi - lo);
            f2 = g(x2);
        }
    }
    let (mut theta, mut val) = (best_theta, best_val);
    if f1 > val {
        theta = x1;
        val = f1;
    }
    if f2 > val {
        theta = x2;
        val = f2;
    }
    let theta = theta.rem_euclid(2.0 * std::f64::consts::PI);
    HalfPlaneWitness {
        theta,
        min_eig: val,
    }
}

/// Proof data that the numerical range lies in the closed sector of
/// half-angle `half_angle` around the positive real axis.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SectorCertificate {
    pub half_angle: f64,
    /// smallest eigenvalue of `Re(e^{+i (pi/2 - half_angle)} m)`
    pub min_eig_plus: f64,
    /// smallest eigenvalue of `Re(e^{-i (pi/2 - half_angle)} m)`
    pub min_eig_minus: f64,
    pub tol: f64,
}

/// A direction in which the sector containment fails: the rotated real part
/// has an eigenvalue below `-tau`, with the achieving unit vector.
#[derive(Debug, Clone, Serialize)]
pub struct SectorWitness {
    pub angle: f64,
    pub min_eig: f64,
    pub direction: Vec<C64>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SectorOutcome {
    Certified(SectorCertificate),
    Refused { witnesses: Vec<SectorWitness> },
}

impl SectorOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, SectorOutcome::Certified(_))
    }
}

/// Decide whether the numerical range is contained in the sector
/// `{ z : |arg z| <= half_angle }` for `half_angle` in `(0, pi/2]`.
///
/// Containment is equivalent to accretivity of the two rotations by
/// `phi = pi/2 - half_angle`: `Re(e^{+i phi} m) >= 0` and
/// `Re(e^{-i phi} m) >= 0`. Both eigenvalue bounds are checked against
/// `-tau`; on failure each offending direction is returned with its
/// minimizing unit vector.
pub fn sector_contains(
    m: &ComplexMatrix,
    half_angle: f64,
    ctx: &ToleranceContext,
) -> Result<SectorOutcome> {
    if !(half_angle > 0.0 && half_angle <= std::f64::consts::FRAC_PI_2 + 1e-15) {
        return Err(OpError::BadAngle(half_angle));
    }
    let tau = ctx.tau(m.spectral_norm());
    let phi = std::f64::consts::FRAC_PI_2 - half_angle;
    let mut mins = [0.0f64; 2];
    let mut witnesses = Vec::new();
    for (slot, sign) in [1.0f64, -1.0].iter().enumerate() {
        let angle = sign * phi;
        let eig = eig_of_rotation(m, angle);
        let lam = eig.eigenvalues[0];
        mins[slot] = lam;
        if lam < -tau {
            witnesses.push(SectorWitness {
                angle,
                min_eig: lam,
                direction: eig.eigenvectors.col(0),
            });
        }
    }
    if witnesses.is_empty() {
        Ok(SectorOutcome::Certified(SectorCertificate {
            half_angle,
            min_eig_plus: mins[0],
            min_eig_minus: mins[1],
            tol: tau,
        }))
    } else {
        Ok(SectorOutcome::Refused { witnesses })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn ctx() -> ToleranceContext {
        ToleranceContext::default()
    }

    fn jordan2() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])
    }

    #[test]
    fn jordan_cell_range_is_the_half_disk_boundary() {
        // W([[0,1],[0,0]]) is the closed disk of radius 1/2 at the origin:
        // support is 1/2 in every direction and the boundary sampler lands on
        // the circle of radius 1/2.
        let m = jordan2();
        for k in 0..16 {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 16.0;
            assert!((support(&m, theta) - 0.5).abs() < 1e-12, "theta {theta}");
        }
        for z in boundary_points(&m, 32) {
            assert!((z.norm() - 0.5).abs() < 1e-10);
        }
    }

    #[test]
    fn support_dominates_sampled_rayleigh_quotients() {
        // oracle: support(theta) must upper-bound Re(e^{-i theta} <Tx,x>)
        // for every unit x, and random sampling should come close
        let m = jordan2();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let theta = 1.1;
        let s = support(&m, theta);
        let rot = C64::from_polar(1.0, -theta);
        let mut best = f64::NEG_INFINITY;
        for _ in 0..4000 {
            let mut v = [C64::new(0.0, 0.0); 2];
            for entry in v.iter_mut() {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                *entry = C64::new(re, im);
            }
            let norm = crate::matrix::vec_norm(&v);
            for entry in v.iter_mut() {
                *entry /= norm;
            }
            let q = (rot * inner(&m.apply(&v), &v)).re;
            assert!(q <= s + 1e-12);
            best = best.max(q);
        }
        assert!(s - best < 0.1, "sampling far from support: {s} vs {best}");
    }

    #[test]
    fn segment_range_has_diagonal_halfplane_witness() {
        // diag(1, -i): range is the segment from 1 to -i; the best containing
        // half-plane is at theta = pi/4 with margin cos(pi/4)
        let m = ComplexMatrix::diagonal(&[C64::new(1.0, 0.0), C64::new(0.0, -1.0)]);
        let w = halfplane_witness(&m, &ctx()).expect("segment fits a half-plane");
        assert!((w.theta - std::f64::consts::FRAC_PI_4).abs() < 1e-6);
        assert!((w.min_eig - 0.5f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn range_with_interior_zero_has_no_halfplane_witness() {
        // [[1,1],[0,-1]] has numerical range an ellipse centered at 0 with
        // semi-minor axis 1/2, so zero is interior and every rotation has a
        // real part dipping to -1/2
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, -1.0]]);
        assert!(halfplane_witness(&m, &ctx()).is_none());
        for k in 0..8 {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 8.0;
            assert!(support(&m, theta) >= 0.5 - 1e-10);
        }
    }

    #[test]
    fn psd_matrix_witness_at_angle_zero() {
        let m = ComplexMatrix::diagonal(&[C64::new(1.0, 0.0), C64::new(3.0, 0.0)]);
        let w = halfplane_witness(&m, &ctx()).unwrap();
        // every theta in [-pi/2, pi/2] works; grid scan keeps the first best,
        // and min eig at the reported angle must match a direct computation
        let direct = hermitian_eig_unchecked(&rotated_real_part(&m, w.theta)).eigenvalues[0];
        assert!((w.min_eig - direct).abs() < 1e-12);
        assert!(w.min_eig >= 0.0);
    }

    #[test]
    fn sector_certificate_tight_at_the_right_half_angle() {
        // diag(1, e^{i pi/6}) sits exactly in the sector of half-angle pi/6
        let m = ComplexMatrix::diagonal(&[
            C64::new(1.0, 0.0),
            C64::from_polar(1.0, std::f64::consts::FRAC_PI_6),
        ]);
        let ok = sector_contains(&m, std::f64::consts::FRAC_PI_6, &ctx()).unwrap();
        match ok {
            SectorOutcome::Certified(cert) => {
                // the binding side grazes zero
                assert!(cert.min_eig_plus.abs() < 1e-12);
                assert!(cert.min_eig_minus > 0.0);
            }
            SectorOutcome::Refused { .. } => panic!("expected certificate"),
        }
        let narrow = sector_contains(&m, std::f64::consts::FRAC_PI_6 / 2.0, &ctx()).unwrap();
        match narrow {
            SectorOutcome::Refused { witnesses } => {
                assert_eq!(witnesses.len(), 1);
                let w = &witnesses[0];
                assert!(w.min_eig < 0.0);
                // the witness vector actually achieves the negative Rayleigh
                let q = inner(
                    &rotated_real_part(&m, w.angle).apply(&w.direction),
                    &w.direction,
                );
                assert!((q.re - w.min_eig).abs() < 1e-10);
            }
            SectorOutcome::Certified(_) => panic!("expected refusal"),
        }
    }

    #[test]
    fn half_angle_validation() {
        let m = jordan2();
        assert!(sector_contains(&m, 0.0, &ctx()).is_err());
        assert!(sector_contains(&m, -0.3, &ctx()).is_err());
        assert!(sector_contains(&m, 2.0, &ctx()).is_err());
        assert!(sector_contains(&m, std::f64::consts::FRAC_PI_2, &ctx()).is_ok());
    }
}
