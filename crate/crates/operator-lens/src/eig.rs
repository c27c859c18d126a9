//! Spectral primitives: Hermitian eigendecomposition, singular values,
//! matrix square roots and pseudo-inverses.
//!
//! Everything here is built on cyclic Jacobi iterations. At the dimensions
//! this crate targets (<= 16) Jacobi is accurate — small singular values come
//! out with high relative accuracy — and, just as important, fully
//! deterministic: the same input bytes always produce the same output bytes,
//! which the seeded-search and logging layers rely on.

use crate::error::{OpError, Result};
use crate::matrix::{inner, C64, ComplexMatrix};
use crate::tol::ToleranceContext;

/// Eigenvalues ascending; `eigenvectors` holds the matching orthonormal
/// eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

const MAX_SWEEPS: usize = 64;

/// One unitary 2x2 rotation zeroing a Hermitian off-diagonal entry.
///
/// For the block [[app, apq], [conj(apq), aqq]] (app, aqq real) the rotation
/// is U = [[c, s], [-s*conj(ph), c*conj(ph)]] with ph = apq/|apq|; columns
/// transform as
///   col_p' = c*col_p - s*conj(ph)*col_q
///   col_q' = s*col_p + c*conj(ph)*col_q
struct Rotation {
    c: f64,
    s: f64,
    ph: C64,
}

fn hermitian_rotation(app: f64, aqq: f64, apq: C64) -> Rotation {
    let r = apq.norm();
    let ph = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    Rotation { c, s: t * c, ph }
}

fn apply_to_cols(m: &mut ComplexMatrix, p: usize, q: usize, rot: &Rotation) {
    let phc = rot.ph.conj();
    for i in 0..m.rows() {
        let xp = m[(i, p)];
        let xq = m[(i, q)];
        m[(i, p)] = xp * rot.c - xq * phc * rot.s;
        m[(i, q)] = xp * rot.s + xq * phc * rot.c;
    }
}

fn apply_to_rows(m: &mut ComplexMatrix, p: usize, q: usize, rot: &Rotation) {
    for j in 0..m.cols() {
        let xp = m[(p, j)];
        let xq = m[(q, j)];
        m[(p, j)] = xp * rot.c - xq * rot.ph * rot.s;
        m[(q, j)] = xp * rot.s + xq * rot.ph * rot.c;
    }
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Jacobi eigendecomposition of an (assumed) Hermitian matrix.
pub(crate) fn hermitian_eig_unchecked(m: &ComplexMatrix) -> HermitianEig {
    let n = m.dim();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let fro = a.frobenius_norm();
    if n > 1 && fro > 0.0 {
        let stop = fro * 1e-15 * n as f64;
        let skip = fro * 1e-20;
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) <= stop {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    if apq.norm() <= skip {
                        continue;
                    }
                    let rot = hermitian_rotation(a[(p, p)].re, a[(q, q)].re, apq);
                    apply_to_cols(&mut a, p, q, &rot);
                    apply_to_rows(&mut a, p, q, &rot);
                    a[(p, q)] = C64::new(0.0, 0.0);
                    a[(q, p)] = C64::new(0.0, 0.0);
                    apply_to_cols(&mut v, p, q, &rot);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re).then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    HermitianEig {
        eigenvalues,
        eigenvectors,
    }
}

/// Hermitian eigendecomposition with the Hermitian precondition enforced:
/// the defect `||M - M*||_2` must be within tolerance, and the iteration runs
/// on the exactly Hermitian part.
pub fn hermitian_eig(m: &ComplexMatrix, ctx: &ToleranceContext) -> Result<HermitianEig> {
    if !m.is_finite() {
        return Err(OpError::BadDomain("matrix has non-finite entries".into()));
    }
    let defect = (m - &m.adjoint()).spectral_norm();
    let tol = ctx.tau(m.spectral_norm());
    if defect > tol {
        return Err(OpError::NotHermitian { defect, tol });
    }
    Ok(hermitian_eig_unchecked(&m.real_part()))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eig_hermitian(m: &ComplexMatrix, ctx: &ToleranceContext) -> Result<f64> {
    let eig = hermitian_eig(m, ctx)?;
    Ok(eig.eigenvalues.first().copied().unwrap_or(f64::INFINITY))
}

pub(crate) fn min_eig_unchecked(h: &ComplexMatrix) -> f64 {
    hermitian_eig_unchecked(h)
        .eigenvalues
        .first()
        .copied()
        .unwrap_or(f64::INFINITY)
}

impl ComplexMatrix {
    /// Spectral norm (largest singular value), computed from the Hermitian
    /// eigendecomposition of `M* M`.
    pub fn spectral_norm(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        let gram = (&self.adjoint() * self).real_part();
        let top = hermitian_eig_unchecked(&gram)
            .eigenvalues
            .last()
            .copied()
            .unwrap_or(0.0);
        top.max(0.0).sqrt()
    }
}

/// Full singular value decomposition `M = U diag(sv) V*`.
///
/// `sv` has `min(rows, cols)` entries, descending. `u` and `v` are square
/// unitary. Computed by one-sided Jacobi (Hestenes): columns of a working
/// copy are rotated pairwise until mutually orthogonal, which preserves the
/// high relative accuracy of small singular values.
#[derive(Debug, Clone)]
pub(crate) struct Svd {
    pub u: ComplexMatrix,
    pub sv: Vec<f64>,
    pub v: ComplexMatrix,
}

pub(crate) fn svd(m: &ComplexMatrix) -> Svd {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(cols);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols.saturating_sub(1) {
            for q in p + 1..cols {
                let colp = a.col(p);
                let colq = a.col(q);
                let gpp: f64 = colp.iter().map(|z| z.norm_sqr()).sum();
                let gqq: f64 = colq.iter().map(|z| z.norm_sqr()).sum();
                if gpp == 0.0 || gqq == 0.0 {
                    continue;
                }
                let gpq = inner(&colq, &colp); // sum conj(a_kp) a_kq
                if gpq.norm() <= 1e-15 * (gpp * gqq).sqrt() {
                    continue;
                }
                rotated = true;
                let rot = hermitian_rotation(gpp, gqq, gpq);
                apply_to_cols(&mut a, p, q, &rot);
                apply_to_cols(&mut v, p, q, &rot);
            }
        }
        if !rotated {
            break;
        }
    }

    // Column norms are the singular values; order descending.
    let mut order: Vec<usize> = (0..cols).collect();
    let norms: Vec<f64> = (0..cols)
        .map(|j| a.col(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));

    let k = rows.min(cols);
    let sv: Vec<f64> = order.iter().take(k).map(|&j| norms[j]).collect();
    let v_sorted = ComplexMatrix::from_fn(cols, cols, |i, j| v[(i, order[j])]);

    // Left vectors: normalized columns where the singular value is
    // meaningful, Gram-Schmidt completion elsewhere.
    let sigma_floor = sv.first().copied().unwrap_or(0.0) * 1e-290;
    let mut u_cols: Vec<Vec<C64>> = Vec::with_capacity(rows);
    for (idx, &j) in order.iter().take(k).enumerate() {
        if sv[idx] > sigma_floor && sv[idx] > 0.0 {
            let col = a.col(j);
            u_cols.push(col.iter().map(|z| z / sv[idx]).collect());
        }
    }
    let mut cand = 0;
    while u_cols.len() < rows {
        let mut e: Vec<C64> = vec![C64::new(0.0, 0.0); rows];
        e[cand % rows] = C64::new(1.0, 0.0);
        for existing in &u_cols {
            let c = inner(&e, existing);
            for i in 0..rows {
                e[i] -= existing[i] * c;
            }
        }
        let nrm = crate::matrix::vec_norm(&e);
        if nrm > 1e-3 {
            for z in &mut e {
                *z /= nrm;
            }
            u_cols.push(e);
        }
        cand += 1;
    }
    let u = ComplexMatrix::from_fn(rows, rows, |i, j| u_cols[j][i]);

    Svd { u, sv, v: v_sorted }
}

/// Orthonormal basis (as columns) of the numerical kernel: right singular
/// directions whose singular value is at most `rel_cutoff * max(sigma_max, 1)`.
///
/// Intended for matrices normalized to unit scale; the `max(.., 1)` keeps a
/// matrix that is entirely roundoff (morally zero) reading as full kernel.
pub(crate) fn nullspace(m: &ComplexMatrix, rel_cutoff: f64) -> ComplexMatrix {
    let dec = svd(m);
    let smax = dec.sv.first().copied().unwrap_or(0.0);
    let cutoff = smax.max(1.0) * rel_cutoff;
    let cols = m.cols();
    let keep: Vec<usize> = (0..cols)
        .filter(|&j| j >= dec.sv.len() || dec.sv[j] <= cutoff)
        .collect();
    ComplexMatrix::from_fn(cols, keep.len(), |i, j| dec.v[(i, keep[j])])
}

/// Moore-Penrose pseudo-inverse with singular values below
/// `atol + rtol * sigma_max` treated as zero.
pub fn pseudo_inverse(m: &ComplexMatrix, ctx: &ToleranceContext) -> ComplexMatrix {
    let dec = svd(m);
    let smax = dec.sv.first().copied().unwrap_or(0.0);
    let cutoff = ctx.tau(smax);
    let mut out = ComplexMatrix::zeros(m.cols(), m.rows());
    for (j, &s) in dec.sv.iter().enumerate() {
        if s > cutoff {
            let inv = 1.0 / s;
            for i in 0..m.cols() {
                for kk in 0..m.rows() {
                    out[(i, kk)] += dec.v[(i, j)] * dec.u[(kk, j)].conj() * inv;
                }
            }
        }
    }
    out
}

/// Hermitian PSD square root. Eigenvalues in `[-tau, 0)` are clamped to zero;
/// anything below `-tau` is a hard `NotPsd` error.
pub fn psd_sqrt(m: &ComplexMatrix, ctx: &ToleranceContext) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m, ctx)?;
    let tol = ctx.tau(m.spectral_norm());
    if let Some(&min) = eig.eigenvalues.first() {
        if min < -tol {
            return Err(OpError::NotPsd { min_eig: min, tol });
        }
    }
    let n = m.dim();
    let v = &eig.eigenvectors;
    let roots: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let mut r = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for (kk, &s) in roots.iter().enumerate() {
                acc += v[(i, kk)] * v[(j, kk)].conj() * s;
            }
            r[(i, j)] = acc;
        }
    }
    Ok(r.real_part())
}

/// Fractional power of a Hermitian PSD matrix (exponent `p >= 0`); used by
/// the operator-inequality checks. `0^0` is taken as `1` so that `M^0 = I`.
///
/// Eigenvalues within tolerance of zero are flattened to exactly zero before
/// exponentiation. Fractional powers have an unbounded derivative at the
/// origin, so without the cutoff an eigenvalue that is zero up to roundoff
/// (say `1e-15`) would contribute a phantom `1e-15^p` — orders of magnitude
/// above roundoff for small `p` — polluting comparisons between powers of
/// matrices that share a null direction.
pub fn psd_power(m: &ComplexMatrix, p: f64, ctx: &ToleranceContext) -> Result<ComplexMatrix> {
    if !(p >= 0.0 && p.is_finite()) {
        return Err(OpError::BadDomain(format!("exponent {p} (need p >= 0)")));
    }
    let eig = hermitian_eig(m, ctx)?;
    let tol = ctx.tau(m.spectral_norm());
    if let Some(&min) = eig.eigenvalues.first() {
        if min < -tol {
            return Err(OpError::NotPsd { min_eig: min, tol });
        }
    }
    let n = m.dim();
    let v = &eig.eigenvectors;
    let powers: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&l| {
            let l = if l <= tol { 0.0 } else { l };
            if l == 0.0 && p == 0.0 {
                1.0
            } else {
                l.powf(p)
            }
        })
        .collect();
    let mut r = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for (kk, &s) in powers.iter().enumerate() {
                acc += v[(i, kk)] * v[(j, kk)].conj() * s;
            }
            r[(i, j)] = acc;
        }
    }
    Ok(r.real_part())
}

/// Eigendecomposition of a normal matrix via its commuting Hermitian and
/// skew parts: eigenvectors of `Re M` are refined inside each eigenvalue
/// cluster by diagonalizing the restriction of `Im M`.
///
/// Precondition (caller-checked): `M` normal within tolerance. Returns
/// eigenvalues sorted by `(Re, Im)` ascending with matching orthonormal
/// columns.
pub(crate) fn normal_eig(m: &ComplexMatrix, ctx: &ToleranceContext) -> (Vec<C64>, ComplexMatrix) {
    let n = m.dim();
    let h = m.real_part();
    let k = m.imag_part();
    let he = hermitian_eig_unchecked(&h);
    let link = ctx.tau(m.spectral_norm());

    let mut values: Vec<C64> = Vec::with_capacity(n);
    let mut vectors: Vec<Vec<C64>> = Vec::with_capacity(n);

    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && he.eigenvalues[end] - he.eigenvalues[end - 1] <= link {
            end += 1;
        }
        let w = he.eigenvectors.block(0, n, start, end);
        let kr = (&(&w.adjoint() * &k) * &w).real_part();
        let sub = hermitian_eig_unchecked(&kr);
        let rotated = &w * &sub.eigenvectors;
        for j in 0..end - start {
            let col = rotated.col(j);
            let hx = h.apply(&col);
            let re = inner(&hx, &col).re;
            values.push(C64::new(re, sub.eigenvalues[j]));
            vectors.push(col);
        }
        start = end;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        values[i]
            .re
            .total_cmp(&values[j].re)
            .then(values[i].im.total_cmp(&values[j].im))
            .then(i.cmp(&j))
    });
    let sorted_values: Vec<C64> = order.iter().map(|&i| values[i]).collect();
    let cols = ComplexMatrix::from_fn(n, n, |i, j| vectors[order[j]][i]);
    (sorted_values, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn reconstruct(eig: &HermitianEig) -> ComplexMatrix {
        let n = eig.eigenvalues.len();
        let v = &eig.eigenvectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|kk| v[(i, kk)] * v[(j, kk)].conj() * eig.eigenvalues[kk])
                .sum()
        })
    }

    fn unitarity_defect(v: &ComplexMatrix) -> f64 {
        (&(&v.adjoint() * v) - &ComplexMatrix::identity(v.cols())).max_abs()
    }

    #[test]
    fn known_two_by_two_spectra() {
        let ctx = ToleranceContext::default();
        // [[0,1],[1,0]] has eigenvalues -1, 1
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let e = hermitian_eig(&m, &ctx).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
        // [[2, i],[-i, 2]] has eigenvalues 1, 3
        let m = ComplexMatrix::from_rows(&[vec![c(2.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -1.0), c(2.0, 0.0)]])
            .unwrap();
        let e = hermitian_eig(&m, &ctx).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-13);
        assert!((e.eigenvalues[1] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn eigenvalues_come_out_ascending() {
        let ctx = ToleranceContext::default();
        let m = ComplexMatrix::diagonal(&[c(3.0, 0.0), c(-1.0, 0.0), c(2.0, 0.0)]);
        let e = hermitian_eig(&m, &ctx).unwrap();
        assert_eq!(e.eigenvalues, vec![-1.0, 2.0, 3.0]);
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let ctx = ToleranceContext::default();
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(
            hermitian_eig(&m, &ctx),
            Err(OpError::NotHermitian { .. })
        ));
        assert!(min_eig_hermitian(&m, &ctx).is_err());
    }

    #[test]
    fn spectral_norm_matches_hand_values() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!((m.spectral_norm() - 1.0).abs() < 1e-14);
        let m = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-4.0, 0.0)]);
        assert!((m.spectral_norm() - 4.0).abs() < 1e-13);
        assert_eq!(ComplexMatrix::zeros(3, 3).spectral_norm(), 0.0);
    }

    #[test]
    fn svd_of_jordan_cell() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let dec = svd(&m);
        assert!((dec.sv[0] - 1.0).abs() < 1e-15);
        assert!(dec.sv[1].abs() < 1e-15);
        // u1 = e1, v1 = e2
        assert!((dec.u[(0, 0)].norm() - 1.0).abs() < 1e-14);
        assert!((dec.v[(1, 0)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn svd_reconstructs_rectangular_input() {
        let m = ComplexMatrix::from_fn(3, 5, |i, j| c(i as f64 - j as f64, (i * j) as f64 / 4.0));
        let dec = svd(&m);
        let mut rebuilt = ComplexMatrix::zeros(3, 5);
        for (j, &s) in dec.sv.iter().enumerate() {
            for r in 0..3 {
                for cc in 0..5 {
                    rebuilt[(r, cc)] += dec.u[(r, j)] * dec.v[(cc, j)].conj() * s;
                }
            }
        }
        assert!((&rebuilt - &m).max_abs() < 1e-12 * m.max_abs().max(1.0));
        assert!(unitarity_defect(&dec.u) < 1e-13);
        assert!(unitarity_defect(&dec.v) < 1e-13);
    }

    #[test]
    fn pseudo_inverse_of_singular_diagonal() {
        let ctx = ToleranceContext::default();
        let m = ComplexMatrix::diagonal(&[c(2.0, 0.0), c(0.0, 0.0)]);
        let p = pseudo_inverse(&m, &ctx);
        assert!((p[(0, 0)] - c(0.5, 0.0)).norm() < 1e-14);
        assert!(p[(1, 1)].norm() < 1e-14);
    }

    #[test]
    fn pseudo_inverse_satisfies_penrose_identities() {
        let ctx = ToleranceContext::default();
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.5), c(2.0, 0.0), c(-1.0, 1.0)],
            vec![c(0.0, 0.0), c(1.0, -1.0), c(3.0, 0.0)],
            vec![c(1.0, 0.5), c(3.0, -1.0), c(2.0, 1.0)],
        ])
        .unwrap();
        let p = pseudo_inverse(&m, &ctx);
        let tol = 10.0 * ctx.tau(m.spectral_norm());
        let mpm = &(&m * &p) * &m;
        let pmp = &(&p * &m) * &p;
        assert!((&mpm - &m).spectral_norm() <= tol);
        assert!((&pmp - &p).spectral_norm() <= tol);
        let mp = &m * &p;
        let pm = &p * &m;
        assert!((&mp - &mp.adjoint()).spectral_norm() <= tol);
        assert!((&pm - &pm.adjoint()).spectral_norm() <= tol);
    }

    #[test]
    fn psd_sqrt_of_diagonal_and_failure_case() {
        let ctx = ToleranceContext::default();
        let m = ComplexMatrix::diagonal(&[c(4.0, 0.0), c(9.0, 0.0)]);
        let r = psd_sqrt(&m, &ctx).unwrap();
        assert!((r[(0, 0)] - c(2.0, 0.0)).norm() < 1e-13);
        assert!((r[(1, 1)] - c(3.0, 0.0)).norm() < 1e-13);
        let bad = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(matches!(psd_sqrt(&bad, &ctx), Err(OpError::NotPsd { .. })));
    }

    #[test]
    fn psd_power_interpolates_endpoints() {
        let ctx = ToleranceContext::default();
        let m = ComplexMatrix::diagonal(&[c(4.0, 0.0), c(0.25, 0.0)]);
        let half = psd_power(&m, 0.5, &ctx).unwrap();
        assert!((half[(0, 0)] - c(2.0, 0.0)).norm() < 1e-13);
        assert!((half[(1, 1)] - c(0.5, 0.0)).norm() < 1e-13);
        let zero = psd_power(&m, 0.0, &ctx).unwrap();
        assert!((&zero - &ComplexMatrix::identity(2)).max_abs() < 1e-13);
        assert!(psd_power(&m, -1.0, &ctx).is_err());
    }

    #[test]
    fn normal_eig_recovers_constructed_spectrum() {
        let ctx = ToleranceContext::default();
        // hand-built normal matrix: unitary conjugation of a complex diagonal
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let q = ComplexMatrix::from_rows(&[vec![c(s, 0.0), c(s, 0.0)], vec![c(0.0, s), c(0.0, -s)]])
            .unwrap();
        let d = ComplexMatrix::diagonal(&[c(1.0, 2.0), c(-3.0, 0.5)]);
        let m = &(&q * &d) * &q.adjoint();
        let (vals, vecs) = normal_eig(&m, &ctx);
        assert!((vals[0] - c(-3.0, 0.5)).norm() < 1e-12);
        assert!((vals[1] - c(1.0, 2.0)).norm() < 1e-12);
        assert!(unitarity_defect(&vecs) < 1e-13);
        let rebuilt = ComplexMatrix::from_fn(2, 2, |i, j| {
            (0..2).map(|kk| vecs[(i, kk)] * vecs[(j, kk)].conj() * vals[kk]).sum()
        });
        assert!((&rebuilt - &m).max_abs() < 1e-12);
    }

    #[test]
    fn normal_eig_splits_clustered_hermitian_part() {
        let ctx = ToleranceContext::default();
        // Re part is the identity (fully clustered); Im part separates.
        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 1.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, -2.0)]])
            .unwrap();
        let (vals, _) = normal_eig(&m, &ctx);
        assert!((vals[0] - c(1.0, -2.0)).norm() < 1e-13);
        assert!((vals[1] - c(1.0, 1.0)).norm() < 1e-13);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn random_hermitian_eig_reconstructs(
            n in 1usize..6,
            raw in proptest::collection::vec(-3.0f64..3.0, 72),
        ) {
            let g = ComplexMatrix::from_fn(n, n, |i, j| c(raw[2 * (i * n + j)], raw[2 * (i * n + j) + 1]));
            let h = g.real_part();
            let eig = hermitian_eig_unchecked(&h);
            let back = reconstruct(&eig);
            prop_assert!((&back - &h).max_abs() <= 1e-12 * h.max_abs().max(1.0));
            prop_assert!(unitarity_defect(&eig.eigenvectors) < 1e-12);
            for w in eig.eigenvalues.windows(2) {
                prop_assert!(w[0] <= w[1]);
            }
        }

        #[test]
        fn random_svd_values_match_gram_spectrum(
            n in 1usize..5,
            raw in proptest::collection::vec(-2.0f64..2.0, 50),
        ) {
            let m = ComplexMatrix::from_fn(n, n, |i, j| c(raw[2 * (i * n + j)], raw[2 * (i * n + j) + 1]));
            let dec = svd(&m);
            let gram = (&m.adjoint() * &m).real_part();
            let eig = hermitian_eig_unchecked(&gram);
            for (j, &s) in dec.sv.iter().enumerate() {
                let lam = eig.eigenvalues[n - 1 - j].max(0.0).sqrt();
                prop_assert!((s - lam).abs() <= 1e-10 * (1.0 + lam));
            }
        }
    }
}
