//! Block partitions, block positivity, and the canonical form of square
//! roots of normal matrices.
//!
//! A matrix `T` whose square `N = T^2` is normal is unitarily equivalent to
//!
//! ```text
//!     [ A  0  0 ]
//!     [ 0  B  C ]
//!     [ 0  0 -B ]
//! ```
//!
//! with `A`, `B` normal and `C` Hermitian positive, `BC = CB`. The
//! decomposition routine recovers that form constructively: it diagonalizes
//! `N`, clusters its eigenvalues, and inside each cluster splits the action
//! of `T` into fixed directions (the `A` part) and coupled `+beta / -beta`
//! pairs (the `B`/`C` part), using principal angles between the two
//! eigenspaces of the involution `T / beta`.

use serde::Serialize;

use crate::classify::{is_psd, normal_check, psd_check};
use crate::eig::{
    hermitian_eig_unchecked, min_eig_unchecked, normal_eig, nullspace, pseudo_inverse, svd,
};
use crate::error::{OpError, Result};
use crate::matrix::{inner, vec_norm, C64, ComplexMatrix};
use crate::tol::ToleranceContext;

// ---------------------------------------------------------------------------
// 2x2 block partitions
// ---------------------------------------------------------------------------

/// The four blocks of a square matrix split after row/column `s`.
#[derive(Debug, Clone)]
pub struct Blocks {
    pub t11: ComplexMatrix,
    pub t12: ComplexMatrix,
    pub t21: ComplexMatrix,
    pub t22: ComplexMatrix,
}

/// Split a square matrix into 2x2 blocks with top-left size `s` (0 and `dim`
/// give empty complements, which downstream checks treat as vacuous).
pub fn split(m: &ComplexMatrix, s: usize) -> Result<Blocks> {
    if !m.is_square() {
        return Err(OpError::DimensionMismatch(format!(
            "{}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.dim();
    if s > n {
        return Err(OpError::BadPartition { s, dim: n });
    }
    Ok(Blocks {
        t11: m.block(0, s, 0, s),
        t12: m.block(0, s, s, n),
        t21: m.block(s, n, 0, s),
        t22: m.block(s, n, s, n),
    })
}

/// Inverse of [`split`]: paste four consistent blocks back together.
pub fn reassemble(b: &Blocks) -> Result<ComplexMatrix> {
    let s = b.t11.rows();
    let r = b.t22.rows();
    let shapes_ok = b.t11.cols() == s
        && b.t22.cols() == r
        && b.t12.rows() == s
        && b.t12.cols() == r
        && b.t21.rows() == r
        && b.t21.cols() == s;
    if !shapes_ok {
        return Err(OpError::DimensionMismatch(
            "block shapes are not consistent".into(),
        ));
    }
    let mut m = ComplexMatrix::zeros(s + r, s + r);
    m.paste(0, 0, &b.t11);
    m.paste(0, s, &b.t12);
    m.paste(s, 0, &b.t21);
    m.paste(s, s, &b.t22);
    Ok(m)
}

// ---------------------------------------------------------------------------
// blockwise positivity
// ---------------------------------------------------------------------------

/// Outcome of the four-condition blockwise positivity test at split `s`:
/// the corner must be PSD, the off-diagonal blocks adjoint to each other,
/// the range of the top-right block must sit inside the range of the square
/// root of the corner, and the residual complement must be PSD.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BlockPositivityReport {
    pub psd: bool,
    pub corner_psd: bool,
    pub adjoint_match: bool,
    pub adjoint_defect: f64,
    pub range_contained: bool,
    pub range_defect: f64,
    pub complement_psd: bool,
    pub complement_min_eig: f64,
    /// whether the blockwise verdict matches a direct PSD test of the whole
    /// matrix — the two routes are computed independently
    pub agrees_with_direct: bool,
    pub tol: f64,
}

/// Best-effort PSD square root: negative eigenvalues of the Hermitian part
/// are clamped to zero so the remaining conditions stay evaluable even when
/// the corner fails its own test.
fn clamped_sqrt(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.dim();
    if n == 0 {
        return ComplexMatrix::zeros(0, 0);
    }
    let eig = hermitian_eig_unchecked(&m.real_part());
    let v = &eig.eigenvectors;
    ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n)
            .map(|k| v[(i, k)] * v[(j, k)].conj() * eig.eigenvalues[k].max(0.0).sqrt())
            .sum()
    })
}

/// Decide positivity of a Hermitian matrix through its 2x2 block structure
/// at split `s`, and cross-check against the direct eigenvalue test.
pub fn block_positivity_check(
    m: &ComplexMatrix,
    s: usize,
    ctx: &ToleranceContext,
) -> Result<BlockPositivityReport> {
    let blocks = split(m, s)?;
    let tau = ctx.tau(m.spectral_norm());

    let corner_psd = blocks.t11.is_empty() || psd_check(&blocks.t11, ctx).holds;

    let adjoint_defect = (&blocks.t21 - &blocks.t12.adjoint()).spectral_norm();
    let adjoint_match = adjoint_defect <= tau;

    let root = clamped_sqrt(&blocks.t11);
    let root_pinv = pseudo_inverse(&root, ctx);
    let projector = &root * &root_pinv;
    let range_defect = (&blocks.t12 - &(&projector * &blocks.t12)).spectral_norm();
    let range_contained = range_defect <= tau;

    let x = &root_pinv * &blocks.t12;
    let complement = &blocks.t22 - &(&x.adjoint() * &x);
    let complement_min_eig = min_eig_unchecked(&complement.real_part());
    let complement_psd = blocks.t22.is_empty() || complement_min_eig >= -tau;

    let psd = corner_psd && adjoint_match && range_contained && complement_psd;
    let agrees_with_direct = psd == is_psd(m, ctx);

    Ok(BlockPositivityReport {
        psd,
        corner_psd,
        adjoint_match,
        adjoint_defect,
        range_contained,
        range_defect,
        complement_psd,
        complement_min_eig,
        agrees_with_direct,
        tol: tau,
    })
}

// ---------------------------------------------------------------------------
// canonical form of square roots of normal matrices
// ---------------------------------------------------------------------------

/// Unitary change of basis bringing a square root of a normal matrix to the
/// block form `diag(A, [[B, C], [0, -B]])` with all three small blocks
/// diagonal. `dims = (a, b, b)` is the sizes of the `A` block and of each
/// pair block; `a + 2b` equals the matrix dimension.
#[derive(Debug, Clone)]
pub struct CanonicalSqrtDecomposition {
    pub u: ComplexMatrix,
    pub dims: (usize, usize, usize),
    pub a_block: ComplexMatrix,
    pub b_block: ComplexMatrix,
    pub c_block: ComplexMatrix,
    /// `|| U* T U - diag(A, [[B, C], [0, -B]]) ||_2`
    pub residual: f64,
}

impl CanonicalSqrtDecomposition {
    /// The canonical block matrix `diag(A, [[B, C], [0, -B]])`.
    pub fn canonical(&self) -> ComplexMatrix {
        assemble_canonical(&self.a_block, &self.b_block, &self.c_block)
    }

    /// `U * canonical * U*`, which should reproduce the input.
    pub fn reconstruction(&self) -> ComplexMatrix {
        &(&self.u * &self.canonical()) * &self.u.adjoint()
    }
}

/// Build `diag(A, [[B, C], [0, -B]])` from the three small blocks
/// (`A` of size `a`, `B` and `C` of size `b`).
pub fn assemble_canonical(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
) -> ComplexMatrix {
    let na = a.dim();
    let nb = b.dim();
    assert_eq!(c.dim(), nb, "B and C blocks must share a size");
    let n = na + 2 * nb;
    let mut m = ComplexMatrix::zeros(n, n);
    m.paste(0, 0, a);
    m.paste(na, na, b);
    m.paste(na, na + nb, c);
    m.paste(na + nb, na + nb, &b.scale(-1.0));
    m
}

/// One assigned column-to-be of `U` in the `A` part: vector plus measured
/// diagonal entry.
struct ADir {
    vec: Vec<C64>,
    entry: C64,
}

/// One coupled pair: the `+beta` direction `p`, the partner `m`, and the
/// measured `B`/`C` entries.
struct PairDir {
    p: Vec<C64>,
    m: Vec<C64>,
    b: C64,
    c: f64,
}

fn rayleigh(t: &ComplexMatrix, v: &[C64]) -> C64 {
    inner(&t.apply(v), v)
}

/// Phase-fix `m` so that the measured coupling `<T m, p>` is real positive;
/// returns the fixed vector and the coupling magnitude.
fn fix_pair_phase(t: &ComplexMatrix, p: &[C64], m: &[C64]) -> (Vec<C64>, f64) {
    let coupling = inner(&t.apply(m), p);
    let mag = coupling.norm();
    let phase = if mag > 0.0 {
        coupling.conj() / mag
    } else {
        C64::new(1.0, 0.0)
    };
    (m.iter().map(|z| z * phase).collect(), mag)
}

/// Extend an orthonormal family inside a `dim`-dimensional coordinate space
/// by `want` further orthonormal vectors (Gram-Schmidt over the standard
/// basis, deterministic order).
fn orthonormal_complement(
    basis: &[Vec<C64>],
    dim: usize,
    want: usize,
) -> Result<Vec<Vec<C64>>> {
    let mut out: Vec<Vec<C64>> = Vec::with_capacity(want);
    let mut cand = 0;
    while out.len() < want && cand < 4 * dim.max(1) {
        let mut e = vec![C64::new(0.0, 0.0); dim];
        e[cand % dim] = C64::new(1.0, 0.0);
        for b in basis.iter().chain(out.iter()) {
            let c = inner(&e, b);
            for (ei, bi) in e.iter_mut().zip(b.iter()) {
                *ei -= bi * c;
            }
        }
        let nrm = vec_norm(&e);
        if nrm > 1e-3 {
            for z in &mut e {
                *z /= nrm;
            }
            out.push(e);
        }
        cand += 1;
    }
    if out.len() < want {
        return Err(OpError::IllConditioned(
            "could not complete an orthonormal basis inside a cluster".into(),
        ));
    }
    Ok(out)
}

/// Largest deviation of a family of vectors from orthonormality.
fn gram_defect(vecs: &[Vec<C64>]) -> f64 {
    let mut worst = 0.0f64;
    for (i, a) in vecs.iter().enumerate() {
        for (j, b) in vecs.iter().enumerate() {
            let g = inner(a, b);
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g - C64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// Compute the canonical decomposition of a matrix whose square is normal.
///
/// Fails with `SquareNotNormal` when `T^2` is not normal within tolerance,
/// and with `IllConditioned` when the eigenvalue clusters of `T^2` are too
/// close to separate reliably or a cluster does not split cleanly into the
/// canonical directions.
pub fn sqrt_normal_decompose(
    m: &ComplexMatrix,
    ctx: &ToleranceContext,
) -> Result<CanonicalSqrtDecomposition> {
    if !m.is_square() {
        return Err(OpError::DimensionMismatch(format!(
            "{}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_finite() {
        return Err(OpError::BadDomain("matrix has non-finite entries".into()));
    }
    let n = m.dim();
    let square = m * m;
    let nc = normal_check(&square, ctx);
    if !nc.holds {
        return Err(OpError::SquareNotNormal {
            residual: nc.residual,
            tol: nc.tol,
        });
    }
    let (mu, q) = normal_eig(&square, ctx);
    let tau_n = ctx.tau(square.spectral_norm());
    let tau_t = ctx.tau(m.spectral_norm());

    // Link-cluster the eigenvalues of the square (union-find over all pairs).
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            if (mu[i] - mu[j]).norm() <= tau_n {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    {
        let mut root_to_cluster: Vec<Option<usize>> = vec![None; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            match root_to_cluster[r] {
                Some(cix) => clusters[cix].push(i),
                None => {
                    root_to_cluster[r] = Some(clusters.len());
                    clusters.push(vec![i]);
                }
            }
        }
    }
    // refuse murky gaps: clusters must be separated by a clear margin
    for (ci, c1) in clusters.iter().enumerate() {
        for c2 in clusters.iter().skip(ci + 1) {
            for &i in c1 {
                for &j in c2 {
                    if (mu[i] - mu[j]).norm() < 10.0 * tau_n {
                        return Err(OpError::IllConditioned(format!(
                            "eigenvalue clusters of the square are separated by only {:.3e}",
                            (mu[i] - mu[j]).norm()
                        )));
                    }
                }
            }
        }
    }
    let centroid = |c: &[usize]| -> C64 {
        c.iter().map(|&i| mu[i]).sum::<C64>() / c.len() as f64
    };
    clusters.sort_by(|a, b| {
        let ca = centroid(a);
        let cb = centroid(b);
        ca.re.total_cmp(&cb.re).then(ca.im.total_cmp(&cb.im))
    });

    let mut a_dirs: Vec<ADir> = Vec::new();
    let mut pairs: Vec<PairDir> = Vec::new();

    for cluster in &clusters {
        let k = cluster.len();
        let w = ComplexMatrix::from_fn(n, k, |i, j| q[(i, cluster[j])]);
        let t_c = &(&w.adjoint() * m) * &w; // action of T inside the cluster
        let mu_c = centroid(cluster);

        if mu_c.norm() <= 10.0 * tau_n {
            // --- zero cluster: T restricted here squares to (numerically) 0.
            // Pairs come from singular directions with a genuinely nilpotent
            // coupling; everything weaker is an eigen-direction with a tiny
            // diagonal entry.
            let dec = svd(&t_c);
            let pair_cutoff = tau_t.max(10.0 * (10.0 * tau_n).sqrt());
            let mut chosen: Vec<Vec<C64>> = Vec::new();
            let mut local_pairs = 0;
            for (j, &s) in dec.sv.iter().enumerate() {
                if s > pair_cutoff {
                    let wj = dec.u.col(j);
                    let vj = dec.v.col(j);
                    let p: Vec<C64> = w.apply(&wj);
                    let md_raw: Vec<C64> = w.apply(&vj);
                    let (md, c) = fix_pair_phase(m, &p, &md_raw);
                    let b = rayleigh(m, &p);
                    chosen.push(wj);
                    chosen.push(vj);
                    pairs.push(PairDir { p, m: md, b, c });
                    local_pairs += 1;
                }
            }
            if gram_defect(&chosen) > 1e-6 {
                return Err(OpError::IllConditioned(
                    "zero cluster of the square does not split into clean nilpotent pairs".into(),
                ));
            }
            let leftover = orthonormal_complement(&chosen, k, k - 2 * local_pairs)?;
            for x in leftover {
                let a: Vec<C64> = w.apply(&x);
                let entry = rayleigh(m, &a);
                a_dirs.push(ADir { vec: a, entry });
            }
        } else {
            // --- nonzero cluster: beta is the square root of the cluster
            // value with argument in [0, pi); J = T_c / beta is an
            // involution, and its two eigenspaces meet at principal angles
            // that encode the couplings.
            let arg = mu_c.arg();
            let arg2pi = if arg < 0.0 {
                arg + 2.0 * std::f64::consts::PI
            } else {
                arg
            };
            let beta = C64::from_polar(mu_c.norm().sqrt(), 0.5 * arg2pi);
            let j_mat = t_c.scale_c(C64::new(1.0, 0.0) / beta);
            let id = ComplexMatrix::identity(k);
            let q_plus = nullspace(&(&j_mat - &id), 1e-7);
            let q_minus = nullspace(&(&j_mat + &id), 1e-7);
            let (rp, rm) = (q_plus.cols(), q_minus.cols());
            if rp + rm != k {
                return Err(OpError::IllConditioned(format!(
                    "involution eigenspaces have dimensions {rp} + {rm} != {k}"
                )));
            }
            let g = &q_plus.adjoint() * &q_minus;
            let dec = svd(&g);
            let nmin = rp.min(rm);
            let split_cutoff = tau_t / (2.0 * beta.norm());
            for i in 0..nmin {
                let sigma = dec.sv[i];
                if 1.0 - sigma * sigma < 1e-12 {
                    return Err(OpError::IllConditioned(
                        "involution eigenspaces are numerically tangent".into(),
                    ));
                }
                let xp: Vec<C64> = q_plus.apply(&dec.u.col(i));
                let xm: Vec<C64> = q_minus.apply(&dec.v.col(i));
                if sigma <= split_cutoff {
                    // negligible coupling: both directions are eigenvectors
                    let a1: Vec<C64> = w.apply(&xp);
                    let e1 = rayleigh(m, &a1);
                    // orthonormalize the partner against xp before mapping
                    let ov = inner(&xm, &xp);
                    let mut x2: Vec<C64> =
                        xm.iter().zip(xp.iter()).map(|(a, b)| a - b * ov).collect();
                    let nrm = vec_norm(&x2);
                    for z in &mut x2 {
                        *z /= nrm;
                    }
                    let a2: Vec<C64> = w.apply(&x2);
                    let e2 = rayleigh(m, &a2);
                    a_dirs.push(ADir { vec: a1, entry: e1 });
                    a_dirs.push(ADir { vec: a2, entry: e2 });
                } else {
                    let scale = 1.0 / (1.0 - sigma * sigma).sqrt();
                    let e2: Vec<C64> = xm
                        .iter()
                        .zip(xp.iter())
                        .map(|(a, b)| (a - b * sigma) * scale)
                        .collect();
                    let p: Vec<C64> = w.apply(&xp);
                    let md_raw: Vec<C64> = w.apply(&e2);
                    let (md, c) = fix_pair_phase(m, &p, &md_raw);
                    let b = rayleigh(m, &p);
                    pairs.push(PairDir { p, m: md, b, c });
                }
            }
            for i in nmin..rp {
                let a: Vec<C64> = w.apply(&q_plus.apply(&dec.u.col(i)));
                let entry = rayleigh(m, &a);
                a_dirs.push(ADir { vec: a, entry });
            }
            for i in nmin..rm {
                let a: Vec<C64> = w.apply(&q_minus.apply(&dec.v.col(i)));
                let entry = rayleigh(m, &a);
                a_dirs.push(ADir { vec: a, entry });
            }
        }
    }

    let a = a_dirs.len();
    let b = pairs.len();
    if a + 2 * b != n {
        return Err(OpError::IllConditioned(format!(
            "direction count {a} + 2*{b} does not cover dimension {n}"
        )));
    }
    let mut u = ComplexMatrix::zeros(n, n);
    for (j, d) in a_dirs.iter().enumerate() {
        u.set_col(j, &d.vec);
    }
    for (j, pr) in pairs.iter().enumerate() {
        u.set_col(a + j, &pr.p);
        u.set_col(a + b + j, &pr.m);
    }
    let a_block = ComplexMatrix::diagonal(&a_dirs.iter().map(|d| d.entry).collect::<Vec<_>>());
    let b_block = ComplexMatrix::diagonal(&pairs.iter().map(|p| p.b).collect::<Vec<_>>());
    let c_block = ComplexMatrix::diagonal(
        &pairs
            .iter()
            .map(|p| C64::new(p.c, 0.0))
            .collect::<Vec<_>>(),
    );
    let canonical = assemble_canonical(&a_block, &b_block, &c_block);
    let residual = (&(&(&u.adjoint() * m) * &u) - &canonical).spectral_norm();

    Ok(CanonicalSqrtDecomposition {
        u,
        dims: (a, b, b),
        a_block,
        b_block,
        c_block,
        residual,
    })
}

// ---------------------------------------------------------------------------
// canonical-form verification
// ---------------------------------------------------------------------------

/// Residuals and structural flags for a claimed canonical decomposition:
/// the change of basis must be unitary and reproduce the input, `A` and `B`
/// must be normal, `C` Hermitian PSD and commuting with `B`, and the
/// spectrum of `B` must sit in the closed upper half-plane.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CanonicalFormReport {
    pub reconstruction_residual: f64,
    pub unitarity_defect: f64,
    pub a_normal_residual: f64,
    pub b_normal_residual: f64,
    pub c_hermitian_defect: f64,
    pub c_min_eig: f64,
    pub bc_commutator: f64,
    pub b_spectrum_upper: bool,
    pub valid: bool,
    pub tol: f64,
}

pub fn verify_canonical_form(
    m: &ComplexMatrix,
    dec: &CanonicalSqrtDecomposition,
    ctx: &ToleranceContext,
) -> CanonicalFormReport {
    let n = m.dim();
    let id = ComplexMatrix::identity(n);
    let unitarity_defect = (&(&dec.u.adjoint() * &dec.u) - &id).spectral_norm();
    let reconstruction_residual =
        (&(&(&dec.u.adjoint() * m) * &dec.u) - &dec.canonical()).spectral_norm();
    let a_normal_residual = normal_check(&dec.a_block, ctx).residual;
    let b_normal_residual = normal_check(&dec.b_block, ctx).residual;
    let c_hermitian_defect = (&dec.c_block - &dec.c_block.adjoint()).spectral_norm();
    let c_min_eig = if dec.c_block.is_empty() {
        f64::INFINITY
    } else {
        min_eig_unchecked(&dec.c_block.real_part())
    };
    let bc = &dec.b_block * &dec.c_block;
    let cb = &dec.c_block * &dec.b_block;
    let bc_commutator = (&bc - &cb).spectral_norm();

    let b_tau = ctx.tau(dec.b_block.spectral_norm());
    let b_spectrum_upper = if dec.b_block.is_empty() {
        true
    } else {
        let (vals, _) = normal_eig(&dec.b_block, ctx);
        vals.iter().all(|z| z.im >= -b_tau)
    };

    let scale = m.spectral_norm();
    let check_tol = (1e-8 * scale.max(1.0)).max(ctx.relaxed(100.0).tau(scale));
    let valid = reconstruction_residual <= check_tol
        && unitarity_defect <= check_tol
        && a_normal_residual <= check_tol
        && b_normal_residual <= check_tol
        && c_hermitian_defect <= check_tol
        && c_min_eig >= -check_tol
        && bc_commutator <= check_tol
        && b_spectrum_upper;

    CanonicalFormReport {
        reconstruction_residual,
        unitarity_defect,
        a_normal_residual,
        b_normal_residual,
        c_hermitian_defect,
        c_min_eig,
        bc_commutator,
        b_spectrum_upper,
        valid,
        tol: check_tol,
    }
}

// ---------------------------------------------------------------------------
// blockwise triple products
// ---------------------------------------------------------------------------

/// For `T = diag(A, [[B, C], [0, -B]])`, compute `T T* T` and `T* T^2`
/// blockwise from the closed-form expressions in the small blocks (no
/// commutation between `B` and `C` is assumed). Quasinormality of the
/// canonical form is exactly the equality of the two results.
///
/// `C` must be Hermitian within tolerance; the off-diagonal coupling block
/// of `T T* T` is `B B* C + C^3 + C B* B`.
pub fn block_triple_products(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    ctx: &ToleranceContext,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !a.is_square() || !b.is_square() || !c.is_square() || b.dim() != c.dim() {
        return Err(OpError::DimensionMismatch(
            "blocks must be square with matching pair sizes".into(),
        ));
    }
    let c_defect = (c - &c.adjoint()).spectral_norm();
    let c_tol = ctx.tau(c.spectral_norm());
    if c_defect > c_tol {
        return Err(OpError::PreconditionViolated(format!(
            "coupling block must be Hermitian (defect {c_defect:.3e} > {c_tol:.3e})"
        )));
    }
    let na = a.dim();
    let nb = b.dim();
    let n = na + 2 * nb;
    let astar = a.adjoint();
    let bstar = b.adjoint();

    // T T* T blockwise
    let mut ttt = ComplexMatrix::zeros(n, n);
    ttt.paste(0, 0, &(&(a * &astar) * a));
    let bbs = b * &bstar; // B B*
    let cc = c * c; // C^2 (Hermitian C)
    ttt.paste(na, na, &(&(&bbs + &cc) * b));
    let coupling = &(&(&bbs * c) + &(&cc * c)) + &(&(c * &bstar) * b);
    ttt.paste(na, na + nb, &coupling);
    ttt.paste(na + nb, na, &(&(b * c) * b).scale(-1.0));
    ttt.paste(
        na + nb,
        na + nb,
        &(&(&(b * c) * c) + &(&bbs * b)).scale(-1.0),
    );

    // T* T^2 blockwise
    let mut tt2 = ComplexMatrix::zeros(n, n);
    tt2.paste(0, 0, &(&astar * &(a * a)));
    let b2 = b * b;
    let comm = &(b * c) - &(c * b); // BC - CB
    tt2.paste(na, na, &(&bstar * &b2));
    tt2.paste(na, na + nb, &(&bstar * &comm));
    tt2.paste(na + nb, na, &(c * &b2));
    tt2.paste(na + nb, na + nb, &(&(c * &comm) - &(&bstar * &b2)));

    Ok((ttt, tt2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> ToleranceContext {
        ToleranceContext::default()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(rows)
    }

    #[test]
    fn split_and_reassemble_round_trip() {
        let m = ComplexMatrix::from_fn(4, 4, |i, j| c(i as f64, j as f64));
        for s in 0..=4 {
            let blocks = split(&m, s).unwrap();
            assert_eq!(blocks.t11.rows(), s);
            assert_eq!(blocks.t22.rows(), 4 - s);
            let back = reassemble(&blocks).unwrap();
            assert_eq!(back, m);
        }
        assert!(matches!(
            split(&m, 5),
            Err(OpError::BadPartition { s: 5, dim: 4 })
        ));
    }

    #[test]
    fn block_positivity_matches_direct_on_hand_examples() {
        // rank-one PSD: all conditions pass
        let m = real(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let r = block_positivity_check(&m, 1, &ctx()).unwrap();
        assert!(r.psd && r.agrees_with_direct);

        // [[0,1],[1,0]]: the corner is PSD but its square root is zero, so
        // the off-diagonal block cannot sit in its range
        let m = real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let r = block_positivity_check(&m, 1, &ctx()).unwrap();
        assert!(r.corner_psd && r.adjoint_match);
        assert!(!r.range_contained && !r.psd);
        assert!((r.range_defect - 1.0).abs() < 1e-12);
        assert!(r.agrees_with_direct);

        // [[1,2],[2,1]]: range fine, complement 1 - 4 = -3 fails
        let m = real(&[&[1.0, 2.0], &[2.0, 1.0]]);
        let r = block_positivity_check(&m, 1, &ctx()).unwrap();
        assert!(r.corner_psd && r.range_contained);
        assert!(!r.complement_psd && (r.complement_min_eig + 3.0).abs() < 1e-12);
        assert!(r.agrees_with_direct);

        // non-Hermitian cross blocks
        let m = real(&[&[1.0, 1.0], &[0.0, 1.0]]);
        let r = block_positivity_check(&m, 1, &ctx()).unwrap();
        assert!(!r.adjoint_match && !r.psd && r.agrees_with_direct);
    }

    #[test]
    fn block_positivity_trivial_partitions_agree() {
        let m = real(&[&[2.0, 1.0], &[1.0, 2.0]]);
        for s in [0, 2] {
            let r = block_positivity_check(&m, s, &ctx()).unwrap();
            assert!(r.psd && r.agrees_with_direct, "s = {s}");
        }
    }

    #[test]
    fn nilpotent_cell_decomposes_exactly() {
        let m = real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let d = sqrt_normal_decompose(&m, &ctx()).unwrap();
        assert_eq!(d.dims, (0, 1, 1));
        assert!(d.residual < 1e-14);
        assert!((d.b_block[(0, 0)]).norm() < 1e-14);
        assert!((d.c_block[(0, 0)] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((&d.u - &ComplexMatrix::identity(2)).max_abs() < 1e-14);
    }

    #[test]
    fn involution_with_coupling_decomposes_exactly() {
        // [[1,1],[0,-1]] squares to the identity; the canonical pair carries
        // the full coupling strength c = 1
        let m = real(&[&[1.0, 1.0], &[0.0, -1.0]]);
        let d = sqrt_normal_decompose(&m, &ctx()).unwrap();
        assert_eq!(d.dims, (0, 1, 1));
        assert!(d.residual < 1e-12);
        assert!((d.b_block[(0, 0)] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((d.c_block[(0, 0)] - c(1.0, 0.0)).norm() < 1e-12);
        // U is the identity up to column phases
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((d.u[(i, j)].norm() - expect).abs() < 1e-12);
            }
        }
        let rep = verify_canonical_form(&m, &d, &ctx());
        assert!(rep.valid);
    }

    #[test]
    fn diagonal_matrices_are_pure_a_blocks() {
        let m = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let d = sqrt_normal_decompose(&m, &ctx()).unwrap();
        assert_eq!(d.dims, (2, 0, 0));
        assert!((d.a_block[(0, 0)] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((d.a_block[(1, 1)] - c(2.0, 0.0)).norm() < 1e-12);

        // +-1 diagonal squares to the identity: one cluster, no coupling,
        // both signs land in A
        let m = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let d = sqrt_normal_decompose(&m, &ctx()).unwrap();
        assert_eq!(d.dims, (2, 0, 0));
        let entries: Vec<f64> = (0..2).map(|i| d.a_block[(i, i)].re).collect();
        assert!(entries.contains(&1.0) && entries.contains(&-1.0));
        assert!(d.residual < 1e-12);
    }

    #[test]
    fn scalar_sixth_root_is_a_scaled_identity_a_block() {
        let z = C64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        let m = ComplexMatrix::scalar(2, z);
        let d = sqrt_normal_decompose(&m, &ctx()).unwrap();
        assert_eq!(d.dims, (2, 0, 0));
        for i in 0..2 {
            assert!((d.a_block[(i, i)] - z).norm() < 1e-12);
        }
        assert!(d.residual < 1e-12);
    }

    #[test]
    fn shear_square_is_not_normal() {
        let m = real(&[&[1.0, 1.0], &[0.0, 1.0]]);
        assert!(matches!(
            sqrt_normal_decompose(&m, &ctx()),
            Err(OpError::SquareNotNormal { .. })
        ));
    }

    #[test]
    fn conjugated_synthetic_form_is_recovered() {
        // build diag(3i, [[beta, 1/2], [0, -beta]]) with beta = e^{i pi/4},
        // hide it behind a unitary, and ask for it back
        let beta = C64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let a = ComplexMatrix::diagonal(&[c(0.0, 3.0)]);
        let b = ComplexMatrix::diagonal(&[beta]);
        let cc = ComplexMatrix::diagonal(&[c(0.5, 0.0)]);
        let t = assemble_canonical(&a, &b, &cc);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let qm = ComplexMatrix::from_rows(&[
            vec![c(s, 0.0), c(s, 0.0), c(0.0, 0.0)],
            vec![c(0.0, s), c(0.0, -s), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let hidden = &(&qm * &t) * &qm.adjoint();

        let d = sqrt_normal_decompose(&hidden, &ctx()).unwrap();
        assert_eq!(d.dims, (1, 1, 1));
        assert!((d.a_block[(0, 0)] - c(0.0, 3.0)).norm() < 1e-10);
        assert!((d.b_block[(0, 0)] - beta).norm() < 1e-10);
        assert!((d.c_block[(0, 0)] - c(0.5, 0.0)).norm() < 1e-10);
        assert!(d.residual < 1e-10);
        let rep = verify_canonical_form(&hidden, &d, &ctx());
        assert!(rep.valid, "{rep:?}");
        assert!(rep.b_spectrum_upper);
        let back = d.reconstruction();
        assert!((&back - &hidden).spectral_norm() < 1e-10);
    }

    #[test]
    fn triple_products_match_direct_multiplication_scalar_probe() {
        // all-ones scalar blocks: the coupling block of T T* T must be
        // 1 + 1 + 1 = 3, which pins the sign of the C B* B term
        let one = ComplexMatrix::scalar(1, c(1.0, 0.0));
        let (ttt, tt2) = block_triple_products(&one, &one, &one, &ctx()).unwrap();
        assert!((ttt[(1, 2)] - c(3.0, 0.0)).norm() < 1e-14);

        let t = assemble_canonical(&one, &one, &one);
        let direct_ttt = &(&t * &t.adjoint()) * &t;
        let direct_tt2 = &t.adjoint() * &t.pow(2);
        assert!((&ttt - &direct_ttt).max_abs() < 1e-13);
        assert!((&tt2 - &direct_tt2).max_abs() < 1e-13);
    }

    #[test]
    fn triple_products_match_direct_with_noncommuting_blocks() {
        // Hermitian C that does not commute with B: the closed forms must
        // still agree with direct multiplication
        let a = ComplexMatrix::diagonal(&[c(2.0, 1.0)]);
        let b = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let cc = real(&[&[1.0, 0.5], &[0.5, 1.0]]);
        let (ttt, tt2) = block_triple_products(&a, &b, &cc, &ctx()).unwrap();
        let t = assemble_canonical(&a, &b, &cc);
        let direct_ttt = &(&t * &t.adjoint()) * &t;
        let direct_tt2 = &t.adjoint() * &t.pow(2);
        assert!((&ttt - &direct_ttt).max_abs() < 1e-12);
        assert!((&tt2 - &direct_tt2).max_abs() < 1e-12);
        // and here the two products genuinely differ (not quasinormal)
        assert!((&ttt - &tt2).spectral_norm() > 0.1);
    }

    #[test]
    fn triple_products_reject_non_hermitian_coupling() {
        let a = ComplexMatrix::zeros(0, 0);
        let b = ComplexMatrix::diagonal(&[c(1.0, 0.0)]);
        let bad = ComplexMatrix::diagonal(&[c(0.0, 1.0)]);
        assert!(block_triple_products(&a, &b, &bad, &ctx()).is_err());
    }
}
