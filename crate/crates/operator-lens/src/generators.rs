//! Seeded families of structured test matrices, plus a small catalog of
//! hand-picked examples with machine-checkable facts.
//!
//! Every family is deterministic in its seed: the same [`GenSpec`] always
//! produces the bitwise-identical matrix.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::classify::{is_accretive, is_psd};
use crate::decompose::assemble_canonical;
use crate::error::{OpError, Result};
use crate::matrix::{C64, ComplexMatrix};
use crate::numrange::halfplane_witness;
use crate::structure::indices;
use crate::tol::ToleranceContext;

// ---------------------------------------------------------------------------
// Random building blocks
// ---------------------------------------------------------------------------

/// Dense matrix of independent standard complex Gaussians.
pub(crate) fn gaussian_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * inv_sqrt2, im * inv_sqrt2)
    })
}

/// Haar-like random unitary: Gram-Schmidt orthonormalization of a complex
/// Gaussian matrix, with defensive redraws for degenerate columns.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let mut u = ComplexMatrix::zeros(dim, dim);
    for j in 0..dim {
        loop {
            let mut v: Vec<C64> = (0..dim)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    C64::new(re, im)
                })
                .collect();
            for k in 0..j {
                let col = u.col(k);
                let proj = crate::matrix::inner(&v, &col);
                for i in 0..dim {
                    v[i] -= proj * col[i];
                }
            }
            let norm = crate::matrix::vec_norm(&v);
            if norm > 1e-6 {
                for z in v.iter_mut() {
                    *z /= C64::new(norm, 0.0);
                }
                u.set_col(j, &v);
                break;
            }
        }
    }
    u
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

/// The structured families on offer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GenClass {
    /// unitarily diagonalizable with random complex eigenvalues
    Normal,
    /// positive semidefinite, possibly singular
    Psd,
    /// Hermitian with eigenvalues of both signs
    SelfAdjoint,
    /// positive-semidefinite real part plus arbitrary skew part
    Accretive,
    /// a square root of a normal matrix in conjugated canonical block form
    SqrtOfNormal,
    /// strictly block upper triangular: the square is exactly zero
    Nilpotent2,
    /// scaled random unitary
    Unitary,
    /// dense complex Gaussian
    Generic,
    /// normal core tuned to the hypotheses of the open implication for the
    /// exponent pair `(p, q)`, plus small non-normal noise
    NearHypothesis { p: u64, q: u64 },
}

impl fmt::Display for GenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenClass::Normal => write!(f, "normal"),
            GenClass::Psd => write!(f, "psd"),
            GenClass::SelfAdjoint => write!(f, "self_adjoint"),
            GenClass::Accretive => write!(f, "accretive"),
            GenClass::SqrtOfNormal => write!(f, "sqrt_of_normal"),
            GenClass::Nilpotent2 => write!(f, "nilpotent2"),
            GenClass::Unitary => write!(f, "unitary"),
            GenClass::Generic => write!(f, "generic"),
            GenClass::NearHypothesis { p, q } => write!(f, "near_hypothesis:{p}:{q}"),
        }
    }
}

impl FromStr for GenClass {
    type Err = OpError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "normal" => GenClass::Normal,
            "psd" => GenClass::Psd,
            "self_adjoint" => GenClass::SelfAdjoint,
            "accretive" => GenClass::Accretive,
            "sqrt_of_normal" => GenClass::SqrtOfNormal,
            "nilpotent2" => GenClass::Nilpotent2,
            "unitary" => GenClass::Unitary,
            "generic" => GenClass::Generic,
            "near_hypothesis" => GenClass::NearHypothesis { p: 2, q: 3 },
            other => {
                if let Some(rest) = other.strip_prefix("near_hypothesis:") {
                    let mut it = rest.split(':');
                    let p = it
                        .next()
                        .and_then(|x| x.parse().ok())
                        .ok_or_else(|| OpError::BadSpec(format!("bad class `{other}`")))?;
                    let q = it
                        .next()
                        .and_then(|x| x.parse().ok())
                        .ok_or_else(|| OpError::BadSpec(format!("bad class `{other}`")))?;
                    if it.next().is_some() {
                        return Err(OpError::BadSpec(format!("bad class `{other}`")));
                    }
                    GenClass::NearHypothesis { p, q }
                } else {
                    return Err(OpError::BadSpec(format!(
                        "unknown class `{other}`; expected one of normal, psd, \
                         self_adjoint, accretive, sqrt_of_normal, nilpotent2, \
                         unitary, generic, near_hypothesis[:p:q]"
                    )));
                }
            }
        })
    }
}

/// A fully determined generation request.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GenSpec {
    pub class: GenClass,
    pub dim: usize,
    pub seed: u64,
    /// rough magnitude of the result (exact meaning varies per family)
    pub scale: f64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Produce the matrix described by `spec`. Deterministic in the seed.
pub fn generate(spec: &GenSpec) -> Result<ComplexMatrix> {
    if spec.dim == 0 || spec.dim > 16 {
        return Err(OpError::BadSpec(format!(
            "dimension must lie in 1..=16, got {}",
            spec.dim
        )));
    }
    if !spec.scale.is_finite() || spec.scale <= 0.0 {
        return Err(OpError::BadSpec(format!(
            "scale must be a positive finite number, got {}",
            spec.scale
        )));
    }
    if let GenClass::NearHypothesis { p, q } = spec.class {
        if p < 2 || q < 2 || p > 64 || q > 64 {
            return Err(OpError::BadSpec(format!(
                "exponents must lie in 2..=64, got ({p}, {q})"
            )));
        }
        if gcd(p, q) != 1 {
            return Err(OpError::NotCoprime { p, q });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.dim;
    let s = spec.scale;
    let m = match spec.class {
        GenClass::Normal => {
            let eigen: Vec<C64> = (0..n)
                .map(|_| {
                    let r = rng.random_range(0.2..1.0) * s;
                    let theta = rng.random_range(-PI..PI);
                    C64::from_polar(r, theta)
                })
                .collect();
            let u = random_unitary(n, &mut rng);
            &(&u * &ComplexMatrix::diagonal(&eigen)) * &u.adjoint()
        }
        GenClass::Psd => {
            let eigen: Vec<C64> = (0..n)
                .map(|_| {
                    if rng.random_range(0.0..1.0) < 0.2 {
                        C64::new(0.0, 0.0)
                    } else {
                        C64::new(rng.random_range(0.1..1.0) * s, 0.0)
                    }
                })
                .collect();
            let u = random_unitary(n, &mut rng);
            let raw = &(&u * &ComplexMatrix::diagonal(&eigen)) * &u.adjoint();
            // symmetrize away the conjugation roundoff
            raw.real_part()
        }
        GenClass::SelfAdjoint => {
            let eigen: Vec<C64> = (0..n)
                .map(|_| C64::new(rng.random_range(-1.0..1.0) * s, 0.0))
                .collect();
            let u = random_unitary(n, &mut rng);
            let raw = &(&u * &ComplexMatrix::diagonal(&eigen)) * &u.adjoint();
            raw.real_part()
        }
        GenClass::Accretive => {
            let h_eigen: Vec<C64> = (0..n)
                .map(|_| C64::new(rng.random_range(0.0..1.0) * s, 0.0))
                .collect();
            let u = random_unitary(n, &mut rng);
            let h = (&(&u * &ComplexMatrix::diagonal(&h_eigen)) * &u.adjoint()).real_part();
            let k = gaussian_matrix(n, n, &mut rng).real_part().scale(s * 0.7);
            // h + i*k: Hermitian real part h, Hermitian imaginary part k
            &h + &k.scale_c(C64::new(0.0, 1.0))
        }
        GenClass::SqrtOfNormal => {
            sqrt_of_normal(n, s, &mut rng)
        }
        GenClass::Nilpotent2 => {
            if n == 1 {
                ComplexMatrix::zeros(1, 1)
            } else {
                let d1 = rng.random_range(1..n);
                let x = gaussian_matrix(d1, n - d1, &mut rng).scale(s);
                let mut m = ComplexMatrix::zeros(n, n);
                m.paste(0, d1, &x);
                m
            }
        }
        GenClass::Unitary => random_unitary(n, &mut rng).scale(s),
        GenClass::Generic => gaussian_matrix(n, n, &mut rng).scale(s),
        GenClass::NearHypothesis { p: _, q } => {
            let eigen: Vec<C64> = (0..n)
                .map(|_| {
                    let r = rng.random_range(0.3..1.5) * s;
                    let sector: u64 = rng.random_range(0..q);
                    let phi = rng.random_range(-FRAC_PI_2..FRAC_PI_2);
                    C64::from_polar(r, (2.0 * PI * sector as f64 + phi) / q as f64)
                })
                .collect();
            let u = random_unitary(n, &mut rng);
            let core = &(&u * &ComplexMatrix::diagonal(&eigen)) * &u.adjoint();
            let eps = 10f64.powf(-rng.random_range(2.0..8.0));
            let noise = gaussian_matrix(n, n, &mut rng);
            let noise_norm = noise.spectral_norm();
            if noise_norm > 0.0 {
                &core + &noise.scale(eps * core.spectral_norm() / noise_norm)
            } else {
                core
            }
        }
    };
    Ok(m)
}

/// Assemble a square root of a normal matrix: conjugated canonical form
/// `diag(A, [[B, C], [0, -B]])` with diagonal blocks whose squared entries
/// are well separated.
fn sqrt_of_normal<R: Rng>(n: usize, s: f64, rng: &mut R) -> ComplexMatrix {
    let nb = if n >= 2 { rng.random_range(1..=n / 2) } else { 0 };
    let na = n - 2 * nb;
    // rejection-sample cluster values of the square until they separate
    let min_gap = 0.05 * s * s;
    let (a_vals, b_vals) = 'draw: loop {
        let a_vals: Vec<C64> = (0..na)
            .map(|_| {
                if rng.random_range(0.0..1.0) < 0.3 {
                    C64::new(0.0, 0.0)
                } else {
                    let r = rng.random_range(0.4..1.2) * s;
                    C64::from_polar(r, rng.random_range(-PI..PI))
                }
            })
            .collect();
        let b_vals: Vec<C64> = (0..nb)
            .map(|_| {
                let r = rng.random_range(0.5..1.2) * s;
                // upper half-plane with nonnegative real part
                C64::from_polar(r, rng.random_range(0.0..FRAC_PI_2))
            })
            .collect();
        let mut squares: Vec<C64> = a_vals.iter().map(|z| z * z).collect();
        squares.extend(b_vals.iter().map(|z| z * z));
        for i in 0..squares.len() {
            for j in (i + 1)..squares.len() {
                let d = (squares[i] - squares[j]).norm();
                // identical values share a cluster; close-but-distinct ones
                // would make the decomposition ill-conditioned
                if d > 1e-12 && d < min_gap {
                    continue 'draw;
                }
            }
        }
        break (a_vals, b_vals);
    };
    let c_vals: Vec<C64> = (0..nb)
        .map(|_| C64::new(rng.random_range(0.2..1.0) * s, 0.0))
        .collect();
    let canon = assemble_canonical(
        &ComplexMatrix::diagonal(&a_vals),
        &ComplexMatrix::diagonal(&b_vals),
        &ComplexMatrix::diagonal(&c_vals),
    );
    let q = random_unitary(n, rng);
    &(&q * &canon) * &q.adjoint()
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// A machine-checkable fact about a catalog matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "fact", content = "arg", rename_all = "snake_case")]
pub enum Fact {
    Psd,
    NotPsd,
    Normal,
    NotNormal,
    Accretive,
    /// `T^n` is positive semidefinite
    PowerPsd(u32),
    /// `T^n` is normal
    PowerNormal(u32),
    /// `Re T^n` is positive semidefinite
    RePowerPsd(u32),
    /// `Re T^n` has a genuinely negative eigenvalue
    RePowerNotPsd(u32),
    /// first power with stable kernel
    AscentIs(usize),
    /// zero lies in the interior of the numerical range (no half-plane fits)
    ZeroInteriorToRange,
}

/// Evaluate one fact against a matrix.
pub fn check_fact(m: &ComplexMatrix, fact: Fact, ctx: &ToleranceContext) -> Result<bool> {
    Ok(match fact {
        Fact::Psd => is_psd(m, ctx),
        Fact::NotPsd => !is_psd(m, ctx),
        Fact::Normal => crate::classify::is_normal(m, ctx),
        Fact::NotNormal => !crate::classify::is_normal(m, ctx),
        Fact::Accretive => is_accretive(m, ctx),
        Fact::PowerPsd(n) => is_psd(&m.pow(n), ctx),
        Fact::PowerNormal(n) => crate::classify::is_normal(&m.pow(n), ctx),
        Fact::RePowerPsd(n) => is_psd(&m.pow(n).real_part(), ctx),
        Fact::RePowerNotPsd(n) => !is_psd(&m.pow(n).real_part(), ctx),
        Fact::AscentIs(k) => indices(m, ctx)?.ascent == k,
        Fact::ZeroInteriorToRange => halfplane_witness(m, ctx).is_none(),
    })
}

/// One named example with its facts.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub matrix: ComplexMatrix,
    pub facts: Vec<Fact>,
}

/// The hand-picked example matrices.
///
/// * `sixth_root_scalar` — a scalar sixth root of the identity: its sixth
///   power is positive and its seventh power accretive, yet the matrix is
///   nowhere near positive. Positivity genuinely needs more than a single
///   positive power.
/// * `jordan2` — the nilpotent Jordan block: its square is normal (zero)
///   but the kernel grows, so the ascent hypotheses cannot be dropped.
/// * `shear` — accretive with an accretive square, but the fourth power
///   turns indefinite: accretivity is not preserved under powers.
/// * `involution_like` — a non-normal square root of the identity whose
///   numerical range surrounds zero: the half-plane hypothesis fails and
///   nothing else rescues normality.
/// * `psd2` — a plain positive diagonal matrix satisfying every
///   characterization at once.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "sixth_root_scalar",
            description: "scalar rotation by 60 degrees: T^6 = I, Re T^7 >= 0, yet T is not positive",
            matrix: ComplexMatrix::scalar(2, C64::from_polar(1.0, PI / 3.0)),
            facts: vec![
                Fact::PowerPsd(6),
                Fact::RePowerPsd(7),
                Fact::NotPsd,
                Fact::Normal,
            ],
        },
        CatalogEntry {
            name: "jordan2",
            description: "nilpotent Jordan block: T^2 = 0 is normal while the kernel grows",
            matrix: ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]),
            facts: vec![
                Fact::PowerNormal(2),
                Fact::NotNormal,
                Fact::AscentIs(2),
            ],
        },
        CatalogEntry {
            name: "shear",
            description: "unit shear: accretive with accretive square, but Re T^4 is indefinite",
            matrix: ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]),
            facts: vec![
                Fact::Accretive,
                Fact::RePowerPsd(2),
                Fact::RePowerNotPsd(4),
                Fact::NotNormal,
                Fact::AscentIs(0),
            ],
        },
        CatalogEntry {
            name: "involution_like",
            description: "non-normal square root of the identity; zero is interior to its numerical range",
            matrix: ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, -1.0]]),
            facts: vec![
                Fact::PowerNormal(2),
                Fact::NotNormal,
                Fact::ZeroInteriorToRange,
            ],
        },
        CatalogEntry {
            name: "psd2",
            description: "positive diagonal matrix satisfying every characterization",
            matrix: ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 2.0]]),
            facts: vec![Fact::Psd, Fact::Normal, Fact::Accretive, Fact::AscentIs(0)],
        },
    ]
}

/// Look up a catalog entry by name.
pub fn catalog_entry(name: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| OpError::BadSpec(format!("unknown catalog entry `{name}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{is_normal, is_self_adjoint, normal_check};
    use crate::decompose::sqrt_normal_decompose;

    fn ctx() -> ToleranceContext {
        ToleranceContext::default()
    }

    fn spec(class: GenClass, dim: usize, seed: u64) -> GenSpec {
        GenSpec {
            class,
            dim,
            seed,
            scale: 1.0,
        }
    }

    #[test]
    fn generation_is_deterministic() {
        for class in [
            GenClass::Normal,
            GenClass::Psd,
            GenClass::SqrtOfNormal,
            GenClass::Generic,
            GenClass::NearHypothesis { p: 2, q: 3 },
        ] {
            let a = generate(&spec(class, 5, 42)).unwrap();
            let b = generate(&spec(class, 5, 42)).unwrap();
            assert_eq!(a, b, "{class} not deterministic");
            let c = generate(&spec(class, 5, 43)).unwrap();
            assert_ne!(a, c, "{class} ignores its seed");
        }
    }

    #[test]
    fn families_have_their_defining_property() {
        for seed in [1u64, 2, 3, 4, 5] {
            for dim in [1usize, 2, 4, 7] {
                let m = generate(&spec(GenClass::Normal, dim, seed)).unwrap();
                assert!(is_normal(&m, &ctx()), "normal seed={seed} dim={dim}");

                let m = generate(&spec(GenClass::Psd, dim, seed)).unwrap();
                assert!(is_psd(&m, &ctx()), "psd seed={seed} dim={dim}");

                let m = generate(&spec(GenClass::SelfAdjoint, dim, seed)).unwrap();
                assert!(is_self_adjoint(&m, &ctx()), "sa seed={seed} dim={dim}");

                let m = generate(&spec(GenClass::Accretive, dim, seed)).unwrap();
                assert!(is_accretive(&m, &ctx()), "accr seed={seed} dim={dim}");

                let m = generate(&spec(GenClass::Nilpotent2, dim, seed)).unwrap();
                assert_eq!((&m * &m).max_abs(), 0.0, "nilp seed={seed} dim={dim}");

                let m = generate(&spec(GenClass::Unitary, dim, seed)).unwrap();
                let defect = (&(&m.adjoint() * &m) - &ComplexMatrix::identity(dim)).max_abs();
                assert!(defect < 1e-12, "unitary seed={seed} dim={dim}: {defect}");

                let m = generate(&spec(GenClass::SqrtOfNormal, dim, seed)).unwrap();
                assert!(
                    is_normal(&(&m * &m), &ctx()),
                    "square-of-root seed={seed} dim={dim}"
                );
            }
        }
    }

    #[test]
    fn sqrt_of_normal_draws_decompose_cleanly() {
        let mut nontrivial = 0;
        for seed in 10..30u64 {
            let dim = 2 + (seed as usize % 5);
            let m = generate(&spec(GenClass::SqrtOfNormal, dim, seed)).unwrap();
            let d = sqrt_normal_decompose(&m, &ctx()).unwrap();
            assert!(
                d.residual <= 1e-8 * m.spectral_norm().max(1.0),
                "seed={seed}: residual {}",
                d.residual
            );
            if d.dims.1 > 0 {
                nontrivial += 1;
                assert!(
                    !is_normal(&m, &ctx()),
                    "seed={seed}: matrix with coupled pairs should not be normal"
                );
            }
        }
        assert!(nontrivial >= 15, "only {nontrivial} draws had coupled pairs");
    }

    #[test]
    fn near_hypothesis_draws_sit_close_to_the_hypotheses() {
        for seed in [3u64, 9, 27] {
            let m = generate(&spec(GenClass::NearHypothesis { p: 2, q: 3 }, 4, seed)).unwrap();
            let norm = m.spectral_norm();
            let hat = m.scale(1.0 / norm);
            // the q-th power of the core is accretive by construction; noise
            // shifts it by at most the noise scale
            let q3 = hat.pow(3).real_part();
            let min = crate::eig::min_eig_hermitian(&q3, &ctx()).unwrap();
            assert!(min > -2e-2, "seed={seed}: min eig {min}");
            // the p-th power stays near-normal
            let res = normal_check(&hat.pow(2), &ctx()).residual;
            assert!(res < 5e-2, "seed={seed}: normality residual {res}");
        }
    }

    #[test]
    fn scale_controls_the_magnitude() {
        let base = generate(&GenSpec {
            class: GenClass::Generic,
            dim: 4,
            seed: 8,
            scale: 1.0,
        })
        .unwrap();
        let double = generate(&GenSpec {
            class: GenClass::Generic,
            dim: 4,
            seed: 8,
            scale: 2.0,
        })
        .unwrap();
        let ratio = double.spectral_norm() / base.spectral_norm();
        assert!((ratio - 2.0).abs() < 1e-12);
    }

    #[test]
    fn class_names_round_trip() {
        for class in [
            GenClass::Normal,
            GenClass::Psd,
            GenClass::SelfAdjoint,
            GenClass::Accretive,
            GenClass::SqrtOfNormal,
            GenClass::Nilpotent2,
            GenClass::Unitary,
            GenClass::Generic,
            GenClass::NearHypothesis { p: 3, q: 5 },
        ] {
            let s = class.to_string();
            assert_eq!(GenClass::from_str(&s).unwrap(), class);
        }
        assert_eq!(
            GenClass::from_str("near_hypothesis").unwrap(),
            GenClass::NearHypothesis { p: 2, q: 3 }
        );
        assert!(GenClass::from_str("diagonalish").is_err());
        assert!(GenClass::from_str("near_hypothesis:2").is_err());
        assert!(GenClass::from_str("near_hypothesis:2:3:4").is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            generate(&spec(GenClass::Normal, 0, 1)),
            Err(OpError::BadSpec(_))
        ));
        assert!(matches!(
            generate(&spec(GenClass::Normal, 17, 1)),
            Err(OpError::BadSpec(_))
        ));
        assert!(matches!(
            generate(&GenSpec {
                class: GenClass::Normal,
                dim: 3,
                seed: 1,
                scale: 0.0
            }),
            Err(OpError::BadSpec(_))
        ));
        assert!(matches!(
            generate(&spec(GenClass::NearHypothesis { p: 2, q: 4 }, 3, 1)),
            Err(OpError::NotCoprime { .. })
        ));
    }

    #[test]
    fn catalog_facts_all_check_out() {
        let entries = catalog();
        assert_eq!(entries.len(), 5);
        for entry in &entries {
            for &fact in &entry.facts {
                assert!(
                    check_fact(&entry.matrix, fact, &ctx()).unwrap(),
                    "{}: fact {:?} failed",
                    entry.name,
                    fact
                );
            }
        }
        assert_eq!(catalog_entry("shear").unwrap().name, "shear");
        assert!(catalog_entry("missing").is_err());
    }
}
