//! operator-lens: a desk-scale toolkit for looking at complex matrices the
//! way operator theory does.
//!
//! The crate classifies square complex matrices into the standard operator
//! classes (positive, self-adjoint, normal, quasinormal, hyponormal,
//! paranormal, accretive), produces checkable certificates about numerical
//! ranges and dyadic power positivity, computes ascent/descent data, and puts
//! square roots of normal matrices into their canonical block form. A small
//! theorem-verification layer re-checks the implications between these
//! notions on concrete matrices and reports hypothesis-by-hypothesis
//! verdicts.
//!
//! Everything is deterministic: the linear algebra is Jacobi-based (no
//! platform BLAS), searches are grid-plus-refinement with fixed budgets, and
//! random matrices come from seeded, portable generators.
//!
//! Start with [`classify`](classify::classify) for one matrix, the
//! `examples/` directory for each capability end to end, or the `oplens`
//! binary for the same functionality over JSON matrix files.

pub mod classify;
pub mod decompose;
pub mod eig;
pub mod error;
pub mod generators;
pub mod io;
pub mod matrix;
pub mod numrange;
pub mod structure;
pub mod theorems;
pub mod tol;

pub mod cli;

pub use error::{OpError, Result};
pub use matrix::{C64, ComplexMatrix};
pub use tol::ToleranceContext;
