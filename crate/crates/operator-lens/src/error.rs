use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Refusals (`IllConditioned`, `SquareNotNormal`) are deliberate: the input is
/// outside the region where the answer would be trustworthy, so no answer is
/// given. `InternalInconsistency` means two routes that must agree did not —
/// a tolerance misconfiguration, never silently swallowed.
#[derive(Debug, Clone, Error)]
pub enum OpError {
    #[error("matrix is not Hermitian within tolerance (defect {defect:.3e}, tol {tol:.3e})")]
    NotHermitian { defect: f64, tol: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:.3e}, tol {tol:.3e})")]
    NotPsd { min_eig: f64, tol: f64 },

    #[error("exponents {p} and {q} are not coprime")]
    NotCoprime { p: u64, q: u64 },

    #[error("bad block split {s} for dimension {dim}")]
    BadPartition { s: usize, dim: usize },

    #[error("square of the input is not normal within tolerance (residual {residual:.3e}, tol {tol:.3e})")]
    SquareNotNormal { residual: f64, tol: f64 },

    #[error("decomposition refused, input too ill-conditioned: {0}")]
    IllConditioned(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("argument outside domain: {0}")]
    BadDomain(String),

    #[error("bad sector half-angle {0:.6} (need 0 < alpha <= pi/2)")]
    BadAngle(f64),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("bad generator spec: {0}")]
    BadSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, OpError>;
