//! Numerical univalence verification on the unit disk.
//!
//! The check runs in two stages:
//!
//! 1. **Critical points.** A univalent function has no critical point in the
//!    disk. The roots of `p'` are found with the Aberth–Ehrlich iteration; a
//!    root strictly inside the disk is turned into an explicit pair
//!    `z_1 != z_2` with `p(z_1) = p(z_2)` by local inversion around it.
//! 2. **Boundary curve.** If `p` is injective on the circle `|z| = r`, the
//!    argument principle makes it injective on `|z| < r`. The image of that
//!    circle is polygonalized and swept for self-intersections; a crossing is
//!    refined with Newton's method into a witness pair on the circle.
//!
//! A `NotUnivalent` verdict always carries a witness that re-evaluates to
//! `|p(z_1) - p(z_2)| <= 1e-10`. Anything the sweep cannot resolve (segments
//! closer than `1e-10`, or a crossing that does not refine) is reported as
//! `Inconclusive` rather than guessed. The result is numerical evidence, not
//! a certificate: a `UnivalentOpenDisk` verdict means no failure was found up
//! to the tested radius at the tested resolution.

mod roots;
mod sweep;

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use roots::{aberth_roots, monic_residual};
pub use sweep::{sweep_closed_polygon, Crossing, SweepResult};

use crate::poly::RealPolynomial;
use crate::{Error, Result};

/// Samples per unit of degree required on the boundary polygon.
pub const SAMPLES_PER_DEGREE: usize = 64;
/// Segment proximity below which the sweep refuses to decide.
pub const PROXIMITY_BAND: f64 = 1e-10;
/// Residual a witness pair must meet.
pub const WITNESS_RESIDUAL: f64 = 1e-10;
/// Minimum separation of a witness pair.
pub const WITNESS_SEPARATION: f64 = 1e-6;
/// Radii used by [`escalate_radius`] when the caller has no preference.
pub const DEFAULT_RADII: [f64; 3] = [0.99, 0.999, 0.9999];

const MIN_RADIUS: f64 = 0.9;
// critical points this close to the circle cannot host a witness pair
const CRITICAL_EDGE: f64 = 1e-5;
const TOP_COEFFICIENT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    UnivalentOpenDisk,
    NotUnivalent,
    Inconclusive,
}

impl Verdict {
    pub fn is_definitive(self) -> bool {
        !matches!(self, Verdict::Inconclusive)
    }
}

/// Which stage produced the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Evidence {
    /// A critical point inside the disk.
    CriticalPoint,
    /// The boundary image crosses itself.
    SelfIntersection,
    /// The boundary image is a simple curve.
    SimpleBoundary,
    /// Segments of the boundary image came within the proximity band.
    Proximity,
    /// A crossing was found but did not refine into a witness.
    Unrefined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnivalenceReport {
    pub verdict: Verdict,
    pub evidence: Evidence,
    /// `|c|` for every root `c` of `p'`, ascending.
    pub derivative_root_moduli: Vec<f64>,
    pub boundary_radius: f64,
    pub curve_samples: usize,
    /// Smallest distance between non-adjacent segments of the boundary image
    /// (zero when it crosses itself).
    pub injectivity_margin: f64,
    pub witness: Option<(Complex64, Complex64)>,
    /// `|a_N| > 1/N`, which already rules out univalence.
    pub top_coefficient_excess: bool,
}

/// Samples used by [`escalate_radius`] at radius `r`.
pub fn samples_for_radius(degree: usize, radius: f64) -> usize {
    (SAMPLES_PER_DEGREE as f64 * degree as f64 / (1.0 - radius).sqrt()).ceil() as usize
}

/// `p(z)` for coefficients `(a_1, ..., a_N)` of `z, ..., z^N`.
fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::default();
    for &a in coeffs.iter().rev() {
        acc = (acc + a) * z;
    }
    acc
}

fn eval_derivative(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::default();
    for (i, &a) in coeffs.iter().enumerate().rev() {
        acc = acc * z + a * (i + 1) as f64;
    }
    acc
}

/// Solves `p(z) = target` by Newton's method from `start`.
fn newton_solve(coeffs: &[Complex64], target: Complex64, start: Complex64) -> Option<Complex64> {
    let mut z = start;
    for _ in 0..100 {
        let f = eval(coeffs, z) - target;
        let df = eval_derivative(coeffs, z);
        let step = f / df;
        if !step.is_finite() {
            return None;
        }
        z -= step;
        if step.norm() <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    z.is_finite().then_some(z)
}

fn valid_witness(coeffs: &[Complex64], z1: Complex64, z2: Complex64) -> bool {
    z1.norm() < 1.0
        && z2.norm() < 1.0
        && (z1 - z2).norm() >= WITNESS_SEPARATION
        && (eval(coeffs, z1) - eval(coeffs, z2)).norm() <= WITNESS_RESIDUAL
}

/// Two distinct points near the critical point `c` with equal images.
///
/// Near a critical point of order `k`, `p(c + h) - p(c)` behaves like
/// `h^(k+1)`, so the preimages of `p(c + h)` sit near `c + h w` for the
/// `(k+1)`-th roots of unity `w`. Newton from those seeds finds them.
fn critical_witness(coeffs: &[Complex64], c: Complex64) -> Option<(Complex64, Complex64)> {
    let room = 1.0 - c.norm();
    let mut h = (0.25 * room).min(1e-3);
    while h >= 2.0 * WITNESS_SEPARATION {
        let z1 = c + Complex64::new(h, 0.0);
        let target = eval(coeffs, z1);
        for order in 2..=4usize {
            for j in 1..order {
                let seed = c + Complex64::from_polar(h, TAU * j as f64 / order as f64);
                if let Some(z2) = newton_solve(coeffs, target, seed) {
                    if valid_witness(coeffs, z1, z2) {
                        return Some((z1, z2));
                    }
                }
            }
        }
        h *= 0.25;
    }
    None
}

/// Newton on `F(t1, t2) = p(r e^{i t1}) - p(r e^{i t2})`, from a polygon
/// crossing.
fn refine_crossing(
    coeffs: &[Complex64],
    radius: f64,
    t1: f64,
    t2: f64,
) -> Option<(Complex64, Complex64)> {
    let (mut t1, mut t2) = (t1, t2);
    for _ in 0..60 {
        let z1 = Complex64::from_polar(radius, t1);
        let z2 = Complex64::from_polar(radius, t2);
        let f = eval(coeffs, z1) - eval(coeffs, z2);
        if f.norm() <= 1e-15 * eval(coeffs, z1).norm().max(1.0) {
            break;
        }
        let i = Complex64::i();
        let d1 = i * z1 * eval_derivative(coeffs, z1);
        let d2 = -i * z2 * eval_derivative(coeffs, z2);
        let det = d1.re * d2.im - d2.re * d1.im;
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let dt1 = -(f.re * d2.im - d2.re * f.im) / det;
        let dt2 = -(d1.re * f.im - f.re * d1.im) / det;
        t1 += dt1;
        t2 += dt2;
        if (dt1.abs() + dt2.abs()) < 1e-16 {
            break;
        }
    }
    let (z1, z2) = (
        Complex64::from_polar(radius, t1),
        Complex64::from_polar(radius, t2),
    );
    valid_witness(coeffs, z1, z2).then_some((z1, z2))
}

/// Verifies univalence of `p` on `|z| < radius` numerically.
pub fn check_univalent(
    p: &RealPolynomial,
    radius: f64,
    curve_samples: usize,
) -> Result<UnivalenceReport> {
    check_univalent_complex(&p.to_complex(), radius, curve_samples)
}

/// [`check_univalent`] for complex coefficients `(a_1, ..., a_N)`, `a_1 = 1`.
pub fn check_univalent_complex(
    coeffs: &[Complex64],
    radius: f64,
    curve_samples: usize,
) -> Result<UnivalenceReport> {
    let degree = coeffs.len();
    if degree == 0 {
        return Err(Error::EmptyCoefficients);
    }
    if coeffs[0] != Complex64::new(1.0, 0.0) {
        return Err(Error::NotNormalized(coeffs[0].re));
    }
    if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    if !(MIN_RADIUS..1.0).contains(&radius) {
        return Err(Error::BadRadius(radius));
    }
    let min_samples = SAMPLES_PER_DEGREE * degree;
    if curve_samples < min_samples {
        return Err(Error::TooFewSamples {
            got: curve_samples,
            min: min_samples,
        });
    }

    // a few ulps of slack so rounded extremal coefficients such as 1/2 still pass
    let top_coefficient_excess =
        coeffs[degree - 1].norm() > (1.0 + TOP_COEFFICIENT_SLACK) / degree as f64;

    // Stage 1: critical points.
    let derivative: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .map(|(i, &a)| a * (i + 1) as f64)
        .collect();
    let mut critical = aberth_roots(&derivative);
    critical.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    let derivative_root_moduli: Vec<f64> = critical.iter().map(|c| c.norm()).collect();

    let mut report = UnivalenceReport {
        verdict: Verdict::Inconclusive,
        evidence: Evidence::CriticalPoint,
        derivative_root_moduli,
        boundary_radius: radius,
        curve_samples,
        injectivity_margin: 0.0,
        witness: None,
        top_coefficient_excess,
    };

    let mut unresolved_critical = false;
    for &c in &critical {
        if c.norm() >= 1.0 - CRITICAL_EDGE {
            break;
        }
        match critical_witness(coeffs, c) {
            Some(w) => {
                report.verdict = Verdict::NotUnivalent;
                report.witness = Some(w);
                return Ok(report);
            }
            None if c.norm() < radius => unresolved_critical = true,
            None => {}
        }
    }
    if unresolved_critical {
        return Ok(report);
    }

    // Stage 2: the image of |z| = radius.
    let step = TAU / curve_samples as f64;
    let vertices: Vec<Complex64> = (0..curve_samples)
        .map(|k| eval(coeffs, Complex64::from_polar(radius, k as f64 * step)))
        .collect();
    let sweep = sweep_closed_polygon(&vertices);
    report.injectivity_margin = sweep.min_distance;

    if !sweep.crossings.is_empty() {
        report.evidence = Evidence::Unrefined;
        for c in &sweep.crossings {
            let t1 = (c.first as f64 + c.s) * step;
            let t2 = (c.second as f64 + c.u) * step;
            if let Some(w) = refine_crossing(coeffs, radius, t1, t2) {
                report.verdict = Verdict::NotUnivalent;
                report.evidence = Evidence::SelfIntersection;
                report.witness = Some(w);
                return Ok(report);
            }
        }
        return Ok(report);
    }
    if sweep.min_distance <= PROXIMITY_BAND {
        report.evidence = Evidence::Proximity;
        return Ok(report);
    }
    if top_coefficient_excess {
        // |a_N| > 1/N forbids univalence; without a witness from either stage
        // the sweep result cannot be trusted.
        report.evidence = Evidence::Unrefined;
        return Ok(report);
    }
    report.verdict = Verdict::UnivalentOpenDisk;
    report.evidence = Evidence::SimpleBoundary;
    Ok(report)
}

/// Runs [`check_univalent`] at each radius (ascending) with
/// [`samples_for_radius`] boundary samples.
///
/// A `NotUnivalent` verdict at any radius is returned immediately. Otherwise
/// the report at the largest radius with a definitive verdict is returned,
/// or the last report if none was definitive.
pub fn escalate_radius(p: &RealPolynomial, radii: &[f64]) -> Result<UnivalenceReport> {
    escalate_radius_complex(&p.to_complex(), radii)
}

pub fn escalate_radius_complex(coeffs: &[Complex64], radii: &[f64]) -> Result<UnivalenceReport> {
    if radii.is_empty()
        || radii
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
    {
        return Err(Error::BadRadii);
    }
    let mut best: Option<UnivalenceReport> = None;
    let mut last = None;
    for &r in radii {
        let report = check_univalent_complex(coeffs, r, samples_for_radius(coeffs.len(), r))?;
        match report.verdict {
            Verdict::NotUnivalent => return Ok(report),
            Verdict::UnivalentOpenDisk => best = Some(report),
            Verdict::Inconclusive => last = Some(report),
        }
    }
    Ok(best.or(last).expect("at least one radius was checked"))
}
