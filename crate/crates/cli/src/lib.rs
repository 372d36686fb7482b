//! Command-line front end for `polykoebe`.
//!
//! Every command produces a [`Report`] which renders as human-readable text,
//! JSON (one object with `command`, `inputs`, `results`, `warnings`) or CSV.
//! Exit codes: `0` success, `1` an internal consistency check failed, `2`
//! malformed input, and for `univalence` `3` = not univalent, `4` =
//! inconclusive.

pub mod numfmt;
mod output;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use polykoebe::circle::{boundary_curve, default_grid, min_modulus, mu_functional, DEFAULT_TOL};
use polykoebe::cubic::{self, CubicPoint, GammaSegment};
use polykoebe::poly::{self, FamilyKind, RealPolynomial};
use polykoebe::univalence::{escalate_radius, Verdict, DEFAULT_RADII};

use numfmt::{parse_list, sig, CSV_DIGITS};
pub use output::*;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] polykoebe::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Suffridge,
    Pn,
}

impl From<Kind> for FamilyKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Suffridge => FamilyKind::Suffridge,
            Kind::Pn => FamilyKind::PN,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "polykoebe",
    version,
    about = "Univalent polynomials and the polynomial Koebe radius"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for randomized commands; echoed in the JSON inputs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

/// Polynomial coefficients.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct CoeffArgs {
    /// a_2,...,a_N (a_1 = 1 is implicit); decimals or fractions like 7/6.
    /// An empty list is the identity z.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// a_1,...,a_N including the leading a_1, which must equal 1.
    #[arg(long, allow_hyphen_values = true)]
    pub full_coeffs: Option<String>,
}

impl CoeffArgs {
    pub fn polynomial(&self) -> Result<RealPolynomial, CliError> {
        match (&self.coeffs, &self.full_coeffs) {
            (Some(tail), _) => Ok(RealPolynomial::from_tail(&parse_list(tail)?)?),
            (None, Some(full)) => {
                let values = parse_list(full)?;
                match values.first() {
                    None => Err(CliError::Usage("coefficient list is empty".into())),
                    Some(&a1) if a1 != 1.0 => {
                        Err(CliError::Usage(format!("a_1 must be 1, got {a1}")))
                    }
                    Some(_) => Ok(RealPolynomial::new(values)?),
                }
            }
            (None, None) => Err(CliError::Usage(
                "one of --coeffs or --full-coeffs is required".into(),
            )),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of q_N (Suffridge) or p_N.
    Family {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        degree: usize,
    },
    /// Minimum modulus on the unit circle.
    Minmod {
        #[command(flatten)]
        coeffs: CoeffArgs,
        /// Grid points on [0, pi]; defaults to max(4096, 8N).
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Minimum of Re p over the real crossings of p(T).
    Mu {
        #[command(flatten)]
        coeffs: CoeffArgs,
    },
    /// Queries on the real cubic univalence region.
    Cubic {
        #[command(subcommand)]
        action: CubicCommand,
    },
    /// Numerical univalence check.
    Univalence {
        #[command(flatten)]
        coeffs: CoeffArgs,
        /// Ascending radii in [0.9, 1).
        #[arg(long)]
        radii: Option<String>,
    },
    /// Conjectured Koebe radius and related quantities for N = 1..degree.
    RadiusTable {
        #[arg(long)]
        degree: usize,
    },
    /// Writes the boundary curve p(T) as CSV.
    Boundary {
        #[command(flatten)]
        coeffs: CoeffArgs,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum CubicCommand {
    /// Is z + a_2 z^2 + a_3 z^3 univalent? Pass --coeffs a2,a3.
    Membership {
        #[command(flatten)]
        coeffs: CoeffArgs,
    },
    /// Ranked sweep of m over the boundary curve.
    Scan {
        #[arg(long)]
        resolution: usize,
    },
    /// Segment infima and the extremal cubics.
    Extremal {
        #[arg(long, default_value_t = 10_000)]
        resolution: usize,
    },
}

/// Rendered output plus exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

/// Distance to the boundary curve under which a point counts as lying on it.
pub const ON_BOUNDARY: f64 = 1e-6;
/// Distance to the boundary curve within which an outside point is still
/// reported as a member (absorbs decimal transcription of boundary points).
pub const MEMBERSHIP_SLACK: f64 = 1e-8;
/// `m(p_N)` versus `|p_N(-1)|` discrepancy flagged by the radius table.
pub const RADIUS_TABLE_FLAG: f64 = 1e-8;

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let (report, exit_code) = match &cli.command {
        Command::Family { kind, degree } => (family(*kind, *degree)?, 0),
        Command::Minmod { coeffs, grid, tol } => (minmod(&coeffs.polynomial()?, *grid, *tol)?, 0),
        Command::Mu { coeffs } => {
            let p = coeffs.polynomial()?;
            let value = mu_functional(&p);
            (
                Report::new(
                    "mu",
                    json!({ "coeffs": p.coeffs() }),
                    Results::Mu(MuOutput { value }),
                ),
                0,
            )
        }
        Command::Cubic { action } => cubic_command(action)?,
        Command::Univalence { coeffs, radii } => {
            univalence(&coeffs.polynomial()?, radii.as_deref())?
        }
        Command::RadiusTable { degree } => (radius_table(*degree)?, 0),
        Command::Boundary {
            coeffs,
            samples,
            out,
        } => (boundary(&coeffs.polynomial()?, *samples, out)?, 0),
    };
    let mut report = report;
    if let (Some(seed), Some(obj)) = (cli.seed, report.inputs.as_object_mut()) {
        obj.insert("seed".into(), json!(seed));
    }
    let stdout = report.render(cli.format);
    Ok(Outcome { stdout, exit_code })
}

fn family(kind: Kind, degree: usize) -> Result<Report, CliError> {
    if degree == 0 {
        return Err(CliError::Usage("--degree must be at least 1".into()));
    }
    let p = poly::family(kind.into(), degree)?;
    let at_minus_one = p.eval_real(-1.0);
    let (closed, delta) = match kind {
        Kind::Suffridge => {
            let c = poly::suffridge_minus_one(degree)?;
            (Some(c), Some((c - at_minus_one).abs()))
        }
        Kind::Pn => (None, None),
    };
    let out = FamilyOutput {
        kind: kind.into(),
        degree,
        polynomial: p.to_string(),
        coefficients: p.coeffs().to_vec(),
        value_at_minus_one: at_minus_one,
        conjectured_radius: poly::conjectured_radius(degree)?,
        min_modulus: min_modulus(&p, default_grid(degree), DEFAULT_TOL)?.value,
        suffridge_closed_form: closed,
        closed_form_delta: delta,
    };
    Ok(Report::new(
        "family",
        json!({ "kind": kind.to_possible_value().map(|v| v.get_name().to_string()), "degree": degree }),
        Results::Family(out),
    ))
}

fn minmod(p: &RealPolynomial, grid: Option<usize>, tol: f64) -> Result<Report, CliError> {
    let grid = grid.unwrap_or_else(|| default_grid(p.degree()));
    let result = min_modulus(p, grid, tol)?;
    let cubic = (p.degree() == 3).then(|| {
        let q = CubicPoint::new(p.coeff(2), p.coeff(3));
        let closed_form = cubic::min_modulus_closed_form(q);
        CubicCheck {
            tag: cubic::classify_type(q),
            closed_form,
            delta: (closed_form - result.value).abs(),
        }
    });
    Ok(Report::new(
        "minmod",
        json!({ "coeffs": p.coeffs(), "grid": grid, "tol": tol }),
        Results::Minmod(MinmodOutput { result, cubic }),
    ))
}

fn cubic_command(action: &CubicCommand) -> Result<(Report, i32), CliError> {
    match action {
        CubicCommand::Membership { coeffs } => {
            let tail: Vec<f64> = match (&coeffs.coeffs, &coeffs.full_coeffs) {
                (Some(t), _) => parse_list(t)?,
                (None, Some(_)) => coeffs.polynomial()?.coeffs()[1..].to_vec(),
                _ => Vec::new(),
            };
            let [a2, a3] = tail[..] else {
                return Err(CliError::Usage(format!(
                    "membership needs exactly a2,a3; got {} values",
                    tail.len()
                )));
            };
            let q = CubicPoint::new(a2, a3);
            let in_region = cubic::in_univalence_region(q);
            let distance = cubic::boundary_distance(q);
            let out = MembershipOutput {
                a2,
                a3,
                member: in_region || distance <= MEMBERSHIP_SLACK,
                in_region,
                boundary_distance: distance,
                on_boundary: distance < ON_BOUNDARY,
                tag: cubic::classify_type(q),
                min_modulus: cubic::min_modulus_closed_form(q),
            };
            Ok((
                Report::new(
                    "cubic membership",
                    json!({ "a2": a2, "a3": a3 }),
                    Results::Membership(out),
                ),
                0,
            ))
        }
        CubicCommand::Scan { resolution } => {
            let scan = cubic::extremal_scan(*resolution)?;
            let mut report = Report::new(
                "cubic scan",
                json!({ "resolution": resolution }),
                Results::Scan(scan.entries),
            );
            report.warnings = scan.warnings;
            Ok((report, 0))
        }
        CubicCommand::Extremal { resolution } => {
            let scan = cubic::extremal_scan(*resolution)?;
            let infima: Vec<SegmentInfimum> =
                [GammaSegment::G1, GammaSegment::G2, GammaSegment::G3]
                    .into_iter()
                    .map(|seg| {
                        let (value, point) = cubic::gamma_infimum(seg);
                        let scanned = scan.segment_min(seg).map_or(f64::NAN, |e| e.m);
                        SegmentInfimum {
                            segment: seg,
                            value,
                            a2: point.a2,
                            a3: point.a3,
                            scanned,
                        }
                    })
                    .collect();
            // expected: G2 < G3 < G1
            let ordering_holds =
                infima[1].value < infima[2].value && infima[2].value < infima[0].value;
            let mut warnings = scan.warnings;
            if !ordering_holds {
                warnings.push("segment infima are not ordered G2 < G3 < G1".into());
            }
            let out = ExtremalOutput {
                infima,
                ordering_holds,
                entries: scan.entries,
            };
            let mut report = Report::new(
                "cubic extremal",
                json!({ "resolution": resolution }),
                Results::Extremal(out),
            );
            report.warnings = warnings;
            Ok((report, if ordering_holds { 0 } else { 1 }))
        }
    }
}

fn univalence(p: &RealPolynomial, radii: Option<&str>) -> Result<(Report, i32), CliError> {
    let radii = match radii {
        Some(list) => parse_list(list)?,
        None => DEFAULT_RADII.to_vec(),
    };
    let report = escalate_radius(p, &radii)?;
    let code = match report.verdict {
        Verdict::UnivalentOpenDisk => 0,
        Verdict::NotUnivalent => 3,
        Verdict::Inconclusive => 4,
    };
    Ok((
        Report::new(
            "univalence",
            json!({ "coeffs": p.coeffs(), "radii": radii }),
            Results::Univalence(report),
        ),
        code,
    ))
}

fn radius_table(max_degree: usize) -> Result<Report, CliError> {
    if max_degree == 0 {
        return Err(CliError::Usage("--degree must be at least 1".into()));
    }
    let mut warnings = Vec::new();
    let rows: Vec<RadiusRow> = (1..=max_degree)
        .map(|n| -> Result<RadiusRow, CliError> {
            let p = poly::pn_coeffs(n)?;
            let at_minus_one = p.eval_real(-1.0).abs();
            let m = min_modulus(&p, default_grid(n), DEFAULT_TOL)?.value;
            let flagged = (m - at_minus_one).abs() > RADIUS_TABLE_FLAG;
            Ok(RadiusRow {
                n,
                conjectured_radius: poly::conjectured_radius(n)?,
                p_minus_one_abs: at_minus_one,
                min_modulus: m,
                mu: mu_functional(&p),
                q_minus_one: poly::suffridge_minus_one(n)?,
                flagged,
            })
        })
        .collect::<Result<_, _>>()?;
    for r in rows.iter().filter(|r| r.flagged) {
        warnings.push(format!(
            "N = {}: m(p_N) = {} differs from |p_N(-1)| = {}",
            r.n, r.min_modulus, r.p_minus_one_abs
        ));
    }
    let mut report = Report::new(
        "radius-table",
        json!({ "max_degree": max_degree }),
        Results::RadiusTable(rows),
    );
    report.warnings = warnings;
    Ok(report)
}

/// CSV text for a boundary curve: header `theta,re,im`, LF line endings.
pub fn boundary_csv(p: &RealPolynomial, samples: usize) -> Result<String, CliError> {
    let points = boundary_curve(p, samples)?;
    let mut out = String::from("theta,re,im\n");
    for (k, w) in points.iter().enumerate() {
        let theta = std::f64::consts::TAU * k as f64 / samples as f64;
        let _ = writeln!(
            out,
            "{},{},{}",
            sig(theta, CSV_DIGITS),
            sig(w.re, CSV_DIGITS),
            sig(w.im, CSV_DIGITS)
        );
    }
    Ok(out)
}

fn boundary(p: &RealPolynomial, samples: usize, out: &PathBuf) -> Result<Report, CliError> {
    let csv = boundary_csv(p, samples)?;
    std::fs::write(out, csv).map_err(|source| CliError::Io {
        path: out.clone(),
        source,
    })?;
    Ok(Report::new(
        "boundary",
        json!({ "coeffs": p.coeffs(), "samples": samples }),
        Results::Boundary(BoundaryOutput {
            path: out.display().to_string(),
            rows: samples,
        }),
    ))
}
