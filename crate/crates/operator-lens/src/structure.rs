//! Rank chains, ascent/descent, and coprime-exponent arithmetic.
//!
//! The ascent of a matrix `T` is the first `k` with `ker T^k = ker T^{k+1}`;
//! at finite dimension this happens exactly when `rank T^k = rank T^{k+1}`,
//! and the same index also stabilizes the range chain, so ascent and descent
//! coincide here. Several positivity criteria hinge on `ascent <= 1`, which
//! separates honest square roots from nilpotent junk like `[[0,1],[0,0]]`.

use serde::Serialize;

use crate::error::{OpError, Result};
use crate::matrix::ComplexMatrix;
use crate::tol::ToleranceContext;

/// Numerical rank: singular values at or below `(atol + rtol) * sigma_max`
/// count as zero.
pub fn rank(m: &ComplexMatrix, ctx: &ToleranceContext) -> usize {
    rank_with_floor(m, ctx, 0.0)
}

/// Rank with an additional absolute cutoff. Powers of a matrix that are
/// exactly zero in theory come back as roundoff at scale
/// `dim * eps * ||T||^k`; callers that iterate powers pass that floor so the
/// garbage reads as rank zero instead of rank one.
pub(crate) fn rank_with_floor(m: &ComplexMatrix, ctx: &ToleranceContext, floor: f64) -> usize {
    let svd = crate::eig::svd(m);
    let smax = svd.sv.first().copied().unwrap_or(0.0);
    let cutoff = ((ctx.atol + ctx.rtol) * smax).max(floor);
    svd.sv.iter().filter(|&&s| s > cutoff).count()
}

/// The stabilized kernel/range chain of a matrix.
#[derive(Debug, Clone, Serialize)]
pub struct StructureIndices {
    /// first `k` with `ker T^k = ker T^{k+1}`
    pub ascent: usize,
    /// first `k` with `ran T^k = ran T^{k+1}`; equals `ascent` at finite dim
    pub descent: usize,
    /// `[rank T^0, rank T^1, ...]` up to and including the first repeat
    pub rank_profile: Vec<usize>,
}

/// Compute ascent, descent and the rank profile by iterating powers until
/// the rank repeats (guaranteed within `dim` steps).
pub fn indices(m: &ComplexMatrix, ctx: &ToleranceContext) -> Result<StructureIndices> {
    if !m.is_square() {
        return Err(OpError::DimensionMismatch(format!(
            "ascent needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_finite() {
        return Err(OpError::BadDomain("matrix has non-finite entries".into()));
    }
    let n = m.dim();
    let norm = m.spectral_norm();
    let eps = f64::EPSILON;
    let mut profile = vec![n]; // rank of T^0 = I
    let mut power = m.clone();
    let mut scale_k = norm; // ||T||^k alongside the k-th power
    let mut prev = n;
    let mut ascent = 0;
    for k in 1..=n + 1 {
        let floor = n as f64 * eps * scale_k;
        let r = rank_with_floor(&power, ctx, floor);
        profile.push(r);
        if r == prev {
            ascent = k - 1;
            break;
        }
        prev = r;
        power = &power * m;
        scale_k *= norm;
    }
    Ok(StructureIndices {
        ascent,
        descent: ascent,
        rank_profile: profile,
    })
}

/// Convenience: `ascent <= 1`, i.e. `ker T = ker T^2`.
pub fn asc_le_1(m: &ComplexMatrix, ctx: &ToleranceContext) -> bool {
    indices(m, ctx).map(|ix| ix.ascent <= 1).unwrap_or(false)
}

/// Coefficients tying a coprime pair `(p, q)` to a consecutive pair of
/// exponents: `k*p + l*q = 1` with `k` the minimal-magnitude inverse of `p`
/// modulo `q`, and `n = |k|*p + |l|*q`. Then both
/// `n = |k|*p + |l|*q` and `n + 1 = (|k|+k)*p + (|l|+l)*q` are nonnegative
/// combinations, so `T^n` and `T^{n+1}` are products of powers of `T^p` and
/// `T^q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BezoutPair {
    pub p: u64,
    pub q: u64,
    pub k: i64,
    pub l: i64,
    pub n: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Solve `k*p + l*q = 1` for coprime `1 <= p < q`, normalizing `k` into
/// `(-q/2, q/2]` (minimal magnitude, positive on the tie).
pub fn bezout(p: u64, q: u64) -> Result<BezoutPair> {
    if p == 0 || q == 0 {
        return Err(OpError::BadParams("exponents must be positive".into()));
    }
    if p >= q {
        return Err(OpError::BadParams(format!(
            "need p < q, got p = {p}, q = {q}"
        )));
    }
    if gcd(p, q) != 1 {
        return Err(OpError::NotCoprime { p, q });
    }
    // inverse of p modulo q by extended Euclid
    let (mut r0, mut r1) = (q as i128, p as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (s0, s1) = (s1, s0 - quot * s1);
    }
    debug_assert_eq!(r0, 1);
    let mut k = s0.rem_euclid(q as i128); // p * k == 1 (mod q), k in [0, q)
    if 2 * k > q as i128 {
        k -= q as i128;
    }
    let l = (1 - k * p as i128) / q as i128;
    let n = k.unsigned_abs() as u64 * p + l.unsigned_abs() as u64 * q;
    Ok(BezoutPair {
        p,
        q,
        k: k as i64,
        l: l as i64,
        n,
    })
}

/// Normality data for the powers `T^p`, `T^q` and the derived consecutive
/// pair `T^n`, `T^{n+1}`. All powers are taken of `T / ||T||` so that large
/// exponents stay representable; normality is scale-invariant.
#[derive(Debug, Clone, Serialize)]
pub struct PowerPairReport {
    pub pair: BezoutPair,
    pub factor_p: crate::classify::ClassCheck,
    pub factor_q: crate::classify::ClassCheck,
    pub power_n: crate::classify::ClassCheck,
    pub power_n1: crate::classify::ClassCheck,
}

pub fn power_pair_normality(
    m: &ComplexMatrix,
    p: u64,
    q: u64,
    ctx: &ToleranceContext,
) -> Result<PowerPairReport> {
    let pair = bezout(p, q)?;
    if pair.n + 1 > u32::MAX as u64 {
        return Err(OpError::BadParams(format!(
            "derived exponent {} too large",
            pair.n
        )));
    }
    if !m.is_square() {
        return Err(OpError::DimensionMismatch(format!(
            "{}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let s = m.spectral_norm();
    let hat = if s > 0.0 { m.scale(1.0 / s) } else { m.clone() };
    let chk = |k: u64| crate::classify::normal_check(&hat.pow(k as u32), ctx);
    Ok(PowerPairReport {
        factor_p: chk(p),
        factor_q: chk(q),
        power_n: chk(pair.n),
        power_n1: chk(pair.n + 1),
        pair,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::C64;

    fn ctx() -> ToleranceContext {
        ToleranceContext::default()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn bezout_frozen_examples() {
        let b = bezout(2, 3).unwrap();
        assert_eq!((b.k, b.l, b.n), (-1, 1, 5));
        let b = bezout(3, 5).unwrap();
        assert_eq!((b.k, b.l, b.n), (2, -1, 11));
        let b = bezout(1, 2).unwrap();
        assert_eq!((b.k, b.l, b.n), (1, 0, 1));
    }

    #[test]
    fn bezout_identity_and_normalization_over_small_pairs() {
        for q in 2..=12u64 {
            for p in 1..q {
                match bezout(p, q) {
                    Ok(b) => {
                        assert_eq!(b.k as i128 * p as i128 + b.l as i128 * q as i128, 1);
                        assert!(2 * b.k > -(q as i64) && 2 * b.k <= q as i64, "{p},{q}");
                        assert_eq!(b.n, b.k.unsigned_abs() * p + b.l.unsigned_abs() * q);
                        // both n and n+1 are nonnegative combinations
                        let kk = (b.k.unsigned_abs() as i64 + b.k) as u64;
                        let ll = (b.l.unsigned_abs() as i64 + b.l) as u64;
                        assert_eq!(b.n + 1, kk * p + ll * q);
                    }
                    Err(OpError::NotCoprime { .. }) => assert!(gcd(p, q) > 1),
                    Err(e) => panic!("unexpected {e}"),
                }
            }
        }
    }

    #[test]
    fn bezout_rejects_bad_inputs() {
        assert!(matches!(bezout(0, 3), Err(OpError::BadParams(_))));
        assert!(matches!(bezout(3, 3), Err(OpError::BadParams(_))));
        assert!(matches!(bezout(5, 3), Err(OpError::BadParams(_))));
        assert!(matches!(bezout(4, 6), Err(OpError::NotCoprime { p: 4, q: 6 })));
    }

    #[test]
    fn rank_basics_and_scale_invariance() {
        let m = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(rank(&m, &ctx()), 2);
        let j = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(rank(&j, &ctx()), 1);
        assert_eq!(rank(&j.scale(1e8), &ctx()), 1);
        assert_eq!(rank(&j.scale(1e-8), &ctx()), 1);
        assert_eq!(rank(&ComplexMatrix::zeros(2, 2), &ctx()), 0);
    }

    #[test]
    fn ascent_of_projection_is_one() {
        let m = ComplexMatrix::diagonal(&[c(0.0, 0.0), c(1.0, 0.0)]);
        let ix = indices(&m, &ctx()).unwrap();
        assert_eq!(ix.ascent, 1);
        assert_eq!(ix.rank_profile, vec![2, 1, 1]);
        assert!(asc_le_1(&m, &ctx()));
    }

    #[test]
    fn ascent_of_jordan_cell_is_two() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let ix = indices(&m, &ctx()).unwrap();
        assert_eq!(ix.ascent, 2);
        assert_eq!(ix.descent, 2);
        assert_eq!(ix.rank_profile, vec![2, 1, 0, 0]);
        assert!(!asc_le_1(&m, &ctx()));
    }

    #[test]
    fn ascent_of_invertible_is_zero() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, -1.0]]);
        let ix = indices(&m, &ctx()).unwrap();
        assert_eq!(ix.ascent, 0);
        assert_eq!(ix.rank_profile, vec![2, 2]);
    }

    #[test]
    fn rotated_nilpotent_still_reads_ascent_two() {
        // conjugate the Jordan cell by a rotation; T^2 is then roundoff,
        // not exact zero, and must still be treated as rank zero
        let (co, si) = (0.6f64, 0.8f64);
        let q = ComplexMatrix::from_real_rows(&[&[co, -si], &[si, co]]);
        let j = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let t = &(&q * &j) * &q.adjoint();
        let ix = indices(&t, &ctx()).unwrap();
        assert_eq!(ix.ascent, 2);
        assert_eq!(ix.rank_profile, vec![2, 1, 0, 0]);
    }

    #[test]
    fn power_pair_on_nilpotent_has_normal_powers_only() {
        let j = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let r = power_pair_normality(&j, 2, 3, &ctx()).unwrap();
        assert_eq!(r.pair.n, 5);
        // J^2 = 0 is normal, J itself is not: the factors hold while the
        // matrix stays non-normal, which is why ascent enters the theory
        assert!(r.factor_p.holds && r.factor_q.holds);
        assert!(r.power_n.holds && r.power_n1.holds);
        assert!(!crate::classify::is_normal(&j, &ctx()));
    }

    #[test]
    fn power_pair_on_scalar_rotation_all_normal() {
        let z = C64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        let m = ComplexMatrix::scalar(2, z);
        let r = power_pair_normality(&m, 3, 5, &ctx()).unwrap();
        assert!(r.factor_p.holds && r.factor_q.holds && r.power_n.holds && r.power_n1.holds);
        assert_eq!(r.pair.n, 11);
    }

    #[test]
    fn power_pair_on_shear_factors_fail() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]);
        let r = power_pair_normality(&m, 2, 3, &ctx()).unwrap();
        assert!(!r.factor_p.holds && !r.factor_q.holds);
    }
}
