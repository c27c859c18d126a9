//! Command-line front end: thin argument parsing and report printing around
//! the library. All analysis happens in the library modules; this file only
//! wires inputs, tolerances, JSON envelopes and exit codes.
//!
//! Exit codes: `0` success / positive finding; `1` negative finding
//! (positivity violation, sector refusal, decomposition refusal,
//! inconsistent statement, fuzz candidates); `2` unusable input (parse or
//! parameter errors); `3` input dimension above the cap; `4` internal
//! inconsistency between redundant routes; `5` any other failure.

use std::io::Read;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::classify::classify;
use crate::decompose::{sqrt_normal_decompose, verify_canonical_form};
use crate::error::{OpError, Result};
use crate::generators::{catalog, catalog_entry, generate, GenClass, GenSpec};
use crate::io::{parse_matrix, serialize_matrix, MatrixFile};
use crate::matrix::ComplexMatrix;
use crate::numrange::{boundary_points, halfplane_witness, sector_contains, SectorOutcome};
use crate::theorems::{
    equivalence_suite, positivity_certificate, question_fuzzer, verify_theorem, CertificateKind,
    EquivalenceReport, TheoremId, TheoremParams, TheoremVerdict, ALL_THEOREMS,
};
use crate::tol::ToleranceContext;

/// Environment variable overriding the default absolute tolerance (the
/// `--tol` flag still wins over it).
pub const TOL_ENV_VAR: &str = "OPERATOR_LENS_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "oplens",
    version,
    about = "Classify matrices into operator classes, certify positivity through \
             iterated squares, decompose square roots of normal matrices, and \
             check a catalog of power-positivity statements."
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// absolute tolerance (overrides the OPERATOR_LENS_TOL environment variable)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// relative tolerance factor
    #[arg(long, global = true)]
    rtol: Option<f64>,
    /// angle-grid resolution for numerical-range scans
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// largest accepted input dimension
    #[arg(long, global = true, default_value_t = 16)]
    max_dim: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Class membership (self-adjoint, positive, normal, quasinormal, ...)
    Classify {
        /// path to a matrix JSON file, or `-` for stdin
        matrix: String,
    },
    /// Positivity certificate via the iterated-square scan
    Certify {
        matrix: String,
    },
    /// Canonical block decomposition of a square root of a normal matrix
    Decompose {
        matrix: String,
    },
    /// Check catalog statements against a matrix
    Verify {
        matrix: String,
        /// statement id (e.g. cor_3_1), or `all`
        #[arg(long, default_value = "all")]
        theorem: String,
        /// dyadic depth parameter
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// first exponent of the coprime pair
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// second exponent of the coprime pair
        #[arg(long, default_value_t = 3)]
        q: u64,
        /// start of the eventual-accretivity window
        #[arg(long, default_value_t = 1)]
        k0: u32,
        /// truncation bound for exponent quantifiers
        #[arg(long, default_value_t = 16)]
        kmax: u32,
    },
    /// Numerical-range boundary, half-plane search, optional sector check
    Nrange {
        matrix: String,
        /// number of boundary samples (at least 3)
        #[arg(long, default_value_t = 64)]
        points: usize,
        /// also check containment in the sector of this half-angle (radians)
        #[arg(long)]
        sector: Option<f64>,
    },
    /// Randomized search for counterexamples to the open implication
    Fuzz {
        /// first exponent (coprime with the second)
        p: u64,
        /// second exponent
        q: u64,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit a matrix from a seeded family or the example catalog
    Gen {
        /// family name (normal, psd, self_adjoint, accretive, sqrt_of_normal,
        /// nilpotent2, unitary, generic, near_hypothesis[:p:q])
        #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
        class: Option<String>,
        /// emit a named catalog example instead (sixth_root_scalar, jordan2,
        /// shear, involution_like, psd2); `list` prints the catalog
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
}

/// JSON envelope wrapped around every analysis result.
#[derive(Serialize)]
struct Report<T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    tolerance: ToleranceContext,
    result: T,
}

/// Write to stdout, tolerating a closed pipe (e.g. `oplens gen | head`)
/// instead of panicking.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn print_report<T: Serialize>(command: &'static str, ctx: &ToleranceContext, result: T) {
    let report = Report {
        tool: "oplens",
        version: env!("CARGO_PKG_VERSION"),
        command,
        tolerance: *ctx,
        result,
    };
    emit(&serde_json::to_string_pretty(&report).expect("report JSON"));
    emit("\n");
}

fn exit_code_for(err: &OpError) -> i32 {
    match err {
        OpError::Parse(_)
        | OpError::BadParams(_)
        | OpError::BadSpec(_)
        | OpError::BadDomain(_)
        | OpError::BadAngle(_)
        | OpError::BadPartition { .. }
        | OpError::NotCoprime { .. }
        | OpError::UnknownTheorem(_)
        | OpError::DimensionMismatch(_)
        | OpError::PreconditionViolated(_)
        | OpError::NotHermitian { .. }
        | OpError::NotPsd { .. } => 2,
        OpError::SquareNotNormal { .. } | OpError::IllConditioned(_) => 1,
        OpError::InternalInconsistency(_) => 4,
    }
}

fn build_context(opts: &GlobalOpts) -> Result<ToleranceContext> {
    let mut ctx = ToleranceContext::default();
    if let Ok(raw) = std::env::var(TOL_ENV_VAR) {
        let v: f64 = raw
            .trim()
            .parse()
            .map_err(|_| OpError::Parse(format!("{TOL_ENV_VAR}={raw:?} is not a number")))?;
        if !v.is_finite() || v <= 0.0 {
            return Err(OpError::Parse(format!(
                "{TOL_ENV_VAR} must be a positive finite number, got {raw:?}"
            )));
        }
        ctx.atol = v;
    }
    if let Some(t) = opts.tol {
        if !t.is_finite() || t <= 0.0 {
            return Err(OpError::BadParams(format!(
                "--tol must be a positive finite number, got {t}"
            )));
        }
        ctx.atol = t;
    }
    if let Some(r) = opts.rtol {
        if !r.is_finite() || r < 0.0 {
            return Err(OpError::BadParams(format!(
                "--rtol must be a nonnegative finite number, got {r}"
            )));
        }
        ctx.rtol = r;
    }
    if let Some(g) = opts.grid {
        if g < 4 {
            return Err(OpError::BadParams(format!(
                "--grid must be at least 4, got {g}"
            )));
        }
        ctx.angle_grid = g;
    }
    Ok(ctx)
}

fn read_matrix(path: &str) -> Result<ComplexMatrix> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| OpError::Parse(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| OpError::Parse(format!("reading {path}: {e}")))?
    };
    parse_matrix(&text)
}

#[derive(Serialize)]
struct DecomposeResult {
    dims: (usize, usize, usize),
    u: MatrixFile,
    a_block: MatrixFile,
    b_block: MatrixFile,
    c_block: MatrixFile,
    residual: f64,
    verification: crate::decompose::CanonicalFormReport,
}

#[derive(Serialize)]
struct VerifyResult {
    params: TheoremParams,
    verdicts: Vec<TheoremVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    equivalence: Option<EquivalenceReport>,
}

#[derive(Serialize)]
struct NrangeResult {
    boundary: Vec<[f64; 2]>,
    halfplane: Option<crate::numrange::HalfPlaneWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sector: Option<SectorOutcome>,
}

#[derive(Serialize)]
struct CatalogListing {
    name: &'static str,
    description: &'static str,
    dim: usize,
}

/// Parse arguments from the process environment and run. Returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let ctx = build_context(&cli.global)?;
    let max_dim = cli.global.max_dim;

    match cli.command {
        Command::Classify { matrix } => {
            let m = read_matrix(&matrix)?;
            if m.dim() > max_dim {
                eprintln!("error: input dimension {} exceeds --max-dim {max_dim}", m.dim());
                return Ok(3);
            }
            let report = classify(&m, &ctx)?;
            print_report("classify", &ctx, report);
            Ok(0)
        }
        Command::Certify { matrix } => {
            let m = read_matrix(&matrix)?;
            if m.dim() > max_dim {
                eprintln!("error: input dimension {} exceeds --max-dim {max_dim}", m.dim());
                return Ok(3);
            }
            let cert = positivity_certificate(&m, &ctx)?;
            let violation = cert.kind == CertificateKind::Violation;
            print_report("certify", &ctx, cert);
            Ok(if violation { 1 } else { 0 })
        }
        Command::Decompose { matrix } => {
            let m = read_matrix(&matrix)?;
            if m.dim() > max_dim {
                eprintln!("error: input dimension {} exceeds --max-dim {max_dim}", m.dim());
                return Ok(3);
            }
            let dec = sqrt_normal_decompose(&m, &ctx)?;
            let verification = verify_canonical_form(&m, &dec, &ctx);
            let result = DecomposeResult {
                dims: dec.dims,
                u: MatrixFile::from_matrix(&dec.u),
                a_block: MatrixFile::from_matrix(&dec.a_block),
                b_block: MatrixFile::from_matrix(&dec.b_block),
                c_block: MatrixFile::from_matrix(&dec.c_block),
                residual: dec.residual,
                verification,
            };
            let ok = result.verification.valid;
            print_report("decompose", &ctx, result);
            Ok(if ok { 0 } else { 4 })
        }
        Command::Verify {
            matrix,
            theorem,
            k,
            p,
            q,
            k0,
            kmax,
        } => {
            let m = read_matrix(&matrix)?;
            if m.dim() > max_dim {
                eprintln!("error: input dimension {} exceeds --max-dim {max_dim}", m.dim());
                return Ok(3);
            }
            let params = TheoremParams {
                k,
                p,
                q,
                k0,
                k_max: kmax,
            };
            let ids: Vec<TheoremId> = if theorem == "all" {
                ALL_THEOREMS.to_vec()
            } else {
                vec![TheoremId::from_str(&theorem)?]
            };
            let mut verdicts = Vec::with_capacity(ids.len());
            let mut equivalence = None;
            for id in &ids {
                verdicts.push(verify_theorem(*id, &m, &params, &ctx)?);
                if *id == TheoremId::Thm5_1 {
                    equivalence = Some(equivalence_suite(&m, &ctx, params.k_max.max(8), params.k0)?);
                }
            }
            let all_consistent = verdicts.iter().all(|v| v.consistent);
            print_report(
                "verify",
                &ctx,
                VerifyResult {
                    params,
                    verdicts,
                    equivalence,
                },
            );
            Ok(if all_consistent { 0 } else { 1 })
        }
        Command::Nrange {
            matrix,
            points,
            sector,
        } => {
            let m = read_matrix(&matrix)?;
            if m.dim() > max_dim {
                eprintln!("error: input dimension {} exceeds --max-dim {max_dim}", m.dim());
                return Ok(3);
            }
            if points < 3 {
                return Err(OpError::BadParams(format!(
                    "--points must be at least 3, got {points}"
                )));
            }
            let boundary: Vec<[f64; 2]> = boundary_points(&m, points)
                .into_iter()
                .map(|z| [z.re, z.im])
                .collect();
            let halfplane = halfplane_witness(&m, &ctx);
            let sector_outcome = match sector {
                Some(alpha) => Some(sector_contains(&m, alpha, &ctx)?),
                None => None,
            };
            let refused = matches!(sector_outcome, Some(SectorOutcome::Refused { .. }));
            print_report(
                "nrange",
                &ctx,
                NrangeResult {
                    boundary,
                    halfplane,
                    sector: sector_outcome,
                },
            );
            Ok(if refused { 1 } else { 0 })
        }
        Command::Fuzz {
            p,
            q,
            dim,
            trials,
            seed,
        } => {
            if dim > max_dim {
                eprintln!("error: --dim {dim} exceeds --max-dim {max_dim}");
                return Ok(3);
            }
            let report = question_fuzzer(p, q, dim, trials, seed, &ctx)?;
            emit(&report.log);
            Ok(if report.candidates.is_empty() { 0 } else { 1 })
        }
        Command::Gen {
            class,
            catalog: cat,
            dim,
            seed,
            scale,
        } => {
            if let Some(name) = cat {
                if name == "list" {
                    let listing: Vec<CatalogListing> = catalog()
                        .iter()
                        .map(|e| CatalogListing {
                            name: e.name,
                            description: e.description,
                            dim: e.matrix.dim(),
                        })
                        .collect();
                    emit(&serde_json::to_string_pretty(&listing).expect("catalog JSON"));
                    emit("\n");
                    return Ok(0);
                }
                let entry = catalog_entry(&name)?;
                emit(&serialize_matrix(&entry.matrix));
                emit("\n");
                return Ok(0);
            }
            let class = GenClass::from_str(class.as_deref().unwrap_or("generic"))?;
            let spec = GenSpec {
                class,
                dim,
                seed,
                scale,
            };
            let m = generate(&spec)?;
            emit(&serialize_matrix(&m));
            emit("\n");
            Ok(0)
        }
    }
}
