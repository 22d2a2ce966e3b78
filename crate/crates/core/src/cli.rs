//! Command-line orchestration: one function per subcommand, each producing a
//! document and an exit code.
//!
//! Exit codes: 0 when every requested check passed, 1 on input or validation
//! errors, 2 when a verification check failed.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use crate::construct::{build_representation_at_degree, DimensionVector, QuiverRepresentation};
use crate::exactmath::{Field, Scalar};
use crate::polysys::{parse_system, PolynomialSystem};
use crate::verify::{
    endomorphism_dim, grassmannian_points, variety_points, verify_with_representation,
    ProjectivePoint, VerificationReport,
};

/// Largest prime accepted on the command line.
pub const PRIME_CAP: u64 = 97;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Subcommand {
    Build,
    Points,
    Grass,
    Endo,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandInvocation {
    pub subcommand: Subcommand,
    pub input_path: PathBuf,
    pub primes: Vec<u64>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    /// Equalize to this degree instead of the maximal equation degree.
    pub degree: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub document: String,
    pub error: Option<String>,
}

impl Outcome {
    fn failure(message: impl Into<String>) -> Outcome {
        Outcome {
            exit_code: EXIT_INPUT,
            document: String::new(),
            error: Some(message.into()),
        }
    }
}

type CmdResult = Result<(String, bool), String>;

pub fn run(inv: &CommandInvocation) -> Outcome {
    let text = match std::fs::read_to_string(&inv.input_path) {
        Ok(t) => t,
        Err(e) => return Outcome::failure(format!("{}: {e}", inv.input_path.display())),
    };
    let system = match parse_system(&text) {
        Ok(s) => s,
        Err(e) => return Outcome::failure(format!("{}: {e}", inv.input_path.display())),
    };
    if let Err(e) = validate_primes(inv) {
        return Outcome::failure(e);
    }
    let result = match inv.subcommand {
        Subcommand::Build => cmd_build(&system, inv),
        Subcommand::Points => cmd_points(&system, inv),
        Subcommand::Grass => cmd_grass(&system, inv),
        Subcommand::Endo => cmd_endo(&system, inv),
        Subcommand::Verify => cmd_verify(&system, inv),
    };
    match result {
        Ok((document, passed)) => Outcome {
            exit_code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
            document,
            error: None,
        },
        Err(e) => Outcome::failure(e),
    }
}

fn validate_primes(inv: &CommandInvocation) -> Result<(), String> {
    let needs_field = matches!(
        inv.subcommand,
        Subcommand::Points | Subcommand::Grass | Subcommand::Verify
    );
    if needs_field && inv.primes.is_empty() {
        return Err("--primes is required for this subcommand".into());
    }
    for &p in &inv.primes {
        if p > PRIME_CAP || Field::prime(p).is_err() {
            return Err(format!("{p} is not a prime <= {PRIME_CAP}"));
        }
    }
    Ok(())
}

fn representation(
    s: &PolynomialSystem,
    inv: &CommandInvocation,
) -> Result<(QuiverRepresentation, DimensionVector), String> {
    let d = inv.degree.or(s.max_degree()).unwrap_or(1);
    build_representation_at_degree(s, d).map_err(|e| e.to_string())
}

fn residues(p: &ProjectivePoint) -> Vec<u64> {
    p.residues()
}

fn show_point(p: &ProjectivePoint) -> String {
    let parts: Vec<String> = p.coords().iter().map(Scalar::to_string).collect();
    format!("({})", parts.join(":"))
}

fn cmd_build(s: &PolynomialSystem, inv: &CommandInvocation) -> CmdResult {
    let (rep, e) = representation(s, inv)?;
    let doc = match inv.format {
        Format::Json => rep.to_json(&e) + "\n",
        Format::Text => {
            let mut out = String::new();
            let dims: Vec<String> = rep.dims().iter().map(|(v, d)| format!("{v}:{d}")).collect();
            let ev: Vec<String> = e.entries().iter().map(|(v, d)| format!("{v}:{d}")).collect();
            let _ = writeln!(out, "n={} d={}", rep.n(), rep.d());
            let _ = writeln!(out, "vertices {:?}", rep.quiver().vertices());
            let _ = writeln!(out, "dims {{{}}}", dims.join(", "));
            let _ = writeln!(out, "dimension_vector {{{}}}", ev.join(", "));
            for (a, m) in rep.arrows() {
                let _ = writeln!(out, "{} : {} -> {} ({}x{})", a.name, a.source, a.target, m.rows(), m.cols());
            }
            out
        }
    };
    Ok((doc, true))
}

#[derive(Serialize)]
struct PointList {
    q: u64,
    count: usize,
    points: Vec<Vec<u64>>,
}

fn cmd_points(s: &PolynomialSystem, inv: &CommandInvocation) -> CmdResult {
    let mut lists = Vec::new();
    for &q in &inv.primes {
        let points = variety_points(s, q).map_err(|e| e.to_string())?;
        lists.push((q, points));
    }
    let doc = match inv.format {
        Format::Json => {
            let docs: Vec<PointList> = lists
                .iter()
                .map(|(q, pts)| PointList {
                    q: *q,
                    count: pts.len(),
                    points: pts.iter().map(residues).collect(),
                })
                .collect();
            to_json(&docs)
        }
        Format::Text => {
            let mut out = String::new();
            for (q, pts) in &lists {
                let _ = writeln!(out, "q={q} count={}", pts.len());
                for p in pts {
                    let _ = writeln!(out, "  {}", show_point(p));
                }
            }
            out
        }
    };
    Ok((doc, true))
}

#[derive(Serialize)]
struct GrassDoc {
    u2: Vec<u64>,
    u3: Vec<u64>,
}

#[derive(Serialize)]
struct GrassList {
    q: u64,
    count: usize,
    points: Vec<GrassDoc>,
}

fn cmd_grass(s: &PolynomialSystem, inv: &CommandInvocation) -> CmdResult {
    let (rep, e) = representation(s, inv)?;
    let mut lists = Vec::new();
    for &q in &inv.primes {
        let points = grassmannian_points(&rep, &e, q).map_err(|e| e.to_string())?;
        lists.push((q, points));
    }
    let doc = match inv.format {
        Format::Json => {
            let docs: Vec<GrassList> = lists
                .iter()
                .map(|(q, pts)| GrassList {
                    q: *q,
                    count: pts.len(),
                    points: pts
                        .iter()
                        .map(|g| GrassDoc {
                            u2: residues(&g.u2),
                            u3: residues(&g.u3),
                        })
                        .collect(),
                })
                .collect();
            to_json(&docs)
        }
        Format::Text => {
            let mut out = String::new();
            for (q, pts) in &lists {
                let _ = writeln!(out, "q={q} count={}", pts.len());
                for g in pts {
                    let _ = writeln!(out, "  U2={} U3={}", show_point(&g.u2), show_point(&g.u3));
                }
            }
            out
        }
    };
    Ok((doc, true))
}

#[derive(Serialize)]
struct EndoDoc {
    field: String,
    endo_dim: usize,
}

fn cmd_endo(s: &PolynomialSystem, inv: &CommandInvocation) -> CmdResult {
    let (rep, _) = representation(s, inv)?;
    let fields: Vec<Field> = if inv.primes.is_empty() {
        vec![Field::Rational]
    } else {
        inv.primes.iter().map(|&p| Field::Prime(p)).collect()
    };
    let mut docs = Vec::new();
    for field in fields {
        let dim = endomorphism_dim(&rep, field).map_err(|e| e.to_string())?;
        docs.push(EndoDoc {
            field: field.to_string(),
            endo_dim: dim,
        });
    }
    let passed = docs.iter().all(|d| d.endo_dim == 1);
    let doc = match inv.format {
        Format::Json => to_json(&docs),
        Format::Text => docs
            .iter()
            .map(|d| format!("field={} endo={}\n", d.field, d.endo_dim))
            .collect(),
    };
    Ok((doc, passed))
}

fn cmd_verify(s: &PolynomialSystem, inv: &CommandInvocation) -> CmdResult {
    let (rep, e) = representation(s, inv)?;
    let mut reports = Vec::new();
    for &q in &inv.primes {
        reports.push(verify_with_representation(s, &rep, &e, q).map_err(|e| e.to_string())?);
    }
    let passed = reports.iter().all(VerificationReport::passed);
    Ok((emit_report(&reports, inv.format), passed))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

/// Renders reports: a JSON array, or one aligned line per prime followed by a
/// PASS/FAIL summary.
pub fn emit_report(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json => to_json(&reports),
        Format::Text => {
            if reports.is_empty() {
                return "no checks run\n".into();
            }
            let cells: Vec<[String; 5]> = reports
                .iter()
                .map(|r| {
                    [
                        format!("q={}", r.q),
                        format!("X={}", r.variety_count),
                        format!("Gr={}", r.grassmannian_count),
                        format!("bijection={}", if r.bijection_ok { "ok" } else { "FAIL" }),
                        format!("endo={}", r.endo_dim),
                    ]
                })
                .collect();
            let widths: Vec<usize> = (0..5)
                .map(|i| cells.iter().map(|c| c[i].len()).max().unwrap_or(0))
                .collect();
            let mut out = String::new();
            for (r, row) in reports.iter().zip(&cells) {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(cell, &w)| format!("{cell:<w$}"))
                    .collect();
                let _ = writeln!(out, "{}", line.join(" ").trim_end());
                for w in &r.warnings {
                    let _ = writeln!(out, "  warning: {w}");
                }
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if failed == 0 {
                let _ = writeln!(out, "PASS ({} of {} primes)", reports.len(), reports.len());
            } else {
                let _ = writeln!(out, "FAIL ({failed} of {} primes failed)", reports.len());
            }
            out
        }
    }
}
