//! Exact theory for real cubics `p(z) = z + a_2 z^2 + a_3 z^3`.
//!
//! A cubic is identified with the point `(a_2, a_3)`. The set `V` of
//! univalent cubics is bounded by the closed curve `Gamma`, made of three
//! pieces in the half-plane `a_2 >= 0` and their mirror images:
//!
//! * `G1`: the segment of `2 a_2 - 3 a_3 = 1` from `(0, -1/3)` to `(4/5, 1/5)`,
//! * `G2`: the arc of the ellipse `a_2^2 = 4 a_3 (1 - a_3)` from `(4/5, 1/5)`
//!   to `(2 sqrt2 / 3, 1/3)`,
//! * `G3`: the segment of `a_3 = 1/3` from `(2 sqrt2 / 3, 1/3)` to `(0, 1/3)`.
//!
//! On the circle, `|p(x + iy)|^2 = Phi(x)` with `Phi` a quadratic in
//! `x = Re z`, which makes the minimum modulus available in closed form.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circle::min_modulus;
use crate::poly::RealPolynomial;
use crate::{Error, Result};

/// Slack used when testing membership of points that sit on `Gamma`.
pub const BOUNDARY_EPS: f64 = 1e-12;
/// Disagreement threshold between closed-form and numeric `m` in scans.
pub const SCAN_AGREEMENT: f64 = 1e-8;

const SCAN_GRID: usize = 256;
const SCAN_TOL: f64 = 1e-12;

fn sqrt2() -> f64 {
    std::f64::consts::SQRT_2
}

/// `2 sqrt(2) / 3`, the largest `|a_2|` in `V`.
pub fn a2_max() -> f64 {
    2.0 * sqrt2() / 3.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicPoint {
    pub a2: f64,
    pub a3: f64,
}

impl CubicPoint {
    pub const fn new(a2: f64, a3: f64) -> Self {
        Self { a2, a3 }
    }

    pub fn polynomial(&self) -> Result<RealPolynomial> {
        RealPolynomial::cubic(self.a2, self.a3)
    }

    pub fn reflect(&self) -> Self {
        Self::new(-self.a2, self.a3)
    }

    fn dist(&self, other: &CubicPoint) -> f64 {
        (self.a2 - other.a2).hypot(self.a3 - other.a3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GammaSegment {
    G1,
    G2,
    G3,
    G1R,
    G2R,
    G3R,
}

impl GammaSegment {
    pub const ALL: [GammaSegment; 6] = [
        Self::G1,
        Self::G2,
        Self::G3,
        Self::G1R,
        Self::G2R,
        Self::G3R,
    ];

    /// Closed parameter interval. `G1`/`G3` are parametrized by `|a_2|`,
    /// `G2` by `a_3`.
    pub fn param_range(self) -> (f64, f64) {
        match self {
            Self::G1 | Self::G1R => (0.0, 0.8),
            Self::G2 | Self::G2R => (0.2, 1.0 / 3.0),
            Self::G3 | Self::G3R => (0.0, a2_max()),
        }
    }

    pub fn is_reflected(self) -> bool {
        matches!(self, Self::G1R | Self::G2R | Self::G3R)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::G1 => "G1",
            Self::G2 => "G2",
            Self::G3 => "G3",
            Self::G1R => "G1R",
            Self::G2R => "G2R",
            Self::G3R => "G3R",
        }
    }

    fn unreflected(self) -> Self {
        match self {
            Self::G1R => Self::G1,
            Self::G2R => Self::G2,
            Self::G3R => Self::G3,
            s => s,
        }
    }
}

impl fmt::Display for GammaSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where on the circle a cubic attains its minimum modulus: at `z = +-1`
/// (Type I) or at a conjugate pair off the real axis (Type II).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeTag {
    TypeI,
    TypeII,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::TypeI => "I",
            Self::TypeII => "II",
        })
    }
}

/// Whether `z + a_2 z^2 + a_3 z^3` is univalent in the unit disk.
///
/// With `b = |a_2|`, the vertical section of `V` is
/// `[(2b - 1)/3, 1/3]` for `b <= 4/5` and `[(1 - sqrt(1 - b^2))/2, 1/3]`
/// (inside the ellipse, below `G3`) for `4/5 < b <= 2 sqrt2 / 3`.
pub fn in_univalence_region(q: CubicPoint) -> bool {
    let b = q.a2.abs();
    let a3 = q.a3;
    if !(b.is_finite() && a3.is_finite()) {
        return false;
    }
    if a3 > 1.0 / 3.0 + BOUNDARY_EPS
        || 2.0 * b - 3.0 * a3 > 1.0 + BOUNDARY_EPS
        || b > a2_max() + BOUNDARY_EPS
    {
        return false;
    }
    b <= 0.8 || b * b <= 4.0 * a3 * (1.0 - a3) + BOUNDARY_EPS
}

/// The critical point `x_0 = -a_2 (1 + a_3) / (4 a_3)` of `Phi`.
pub fn critical_x0(q: CubicPoint) -> Result<f64> {
    if q.a3 == 0.0 {
        return Err(Error::AffinePhi);
    }
    Ok(-q.a2 * (1.0 + q.a3) / (4.0 * q.a3))
}

/// `Phi(x) = 1 + a_2^2 + a_3^2 - 2 a_3 + 2 a_2 (1 + a_3) x + 4 a_3 x^2`, which
/// equals `|p(x + i sqrt(1 - x^2))|^2` for `x` in `[-1, 1]`.
pub fn phi_quadratic(q: CubicPoint, x: f64) -> f64 {
    let CubicPoint { a2, a3 } = q;
    1.0 + a2 * a2 + a3 * a3 - 2.0 * a3 + 2.0 * a2 * (1.0 + a3) * x + 4.0 * a3 * x * x
}

/// Type II iff `a_3 > 0` and `-1 < x_0 < 1`; the end cases `x_0 = +-1` and
/// `a_3 <= 0` are Type I.
pub fn classify_type(q: CubicPoint) -> TypeTag {
    if q.a3 > 0.0 {
        let x0 = -q.a2 * (1.0 + q.a3) / (4.0 * q.a3);
        if x0 > -1.0 && x0 < 1.0 {
            return TypeTag::TypeII;
        }
    }
    TypeTag::TypeI
}

/// Closed-form `m(p)`.
pub fn min_modulus_closed_form(q: CubicPoint) -> f64 {
    let CubicPoint { a2, a3 } = q;
    match classify_type(q) {
        TypeTag::TypeII => (1.0 - a3).abs() * (1.0 - a2 * a2 / (4.0 * a3)).max(0.0).sqrt(),
        TypeTag::TypeI => (1.0 - a2 + a3).abs().min((1.0 + a2 + a3).abs()),
    }
}

/// Point of `Gamma` at parameter `s` on `seg`.
pub fn gamma_point(seg: GammaSegment, s: f64) -> Result<CubicPoint> {
    let (lo, hi) = seg.param_range();
    if !(s >= lo && s <= hi) {
        return Err(Error::OutOfRange {
            seg: seg.name(),
            s,
            lo,
            hi,
        });
    }
    let p = match seg.unreflected() {
        GammaSegment::G1 => CubicPoint::new(s, (2.0 * s - 1.0) / 3.0),
        GammaSegment::G2 => CubicPoint::new(ellipse_a2(s), s),
        _ => CubicPoint::new(s, 1.0 / 3.0),
    };
    Ok(if seg.is_reflected() { p.reflect() } else { p })
}

fn ellipse_a2(t: f64) -> f64 {
    2.0 * (t * (1.0 - t)).sqrt()
}

/// `phi(t) = 1 - 2 sqrt(t(1-t)) + t`: `m` on the Type I part of `G2`.
pub fn arc_phi(t: f64) -> f64 {
    1.0 - ellipse_a2(t) + t
}

/// `psi(t) = sqrt(t) (1 - t)`: `m` on the Type II part of `G2`.
pub fn arc_psi(t: f64) -> f64 {
    t.sqrt() * (1.0 - t)
}

/// The minimizer `t_* = (1 - 1/sqrt5)/2` of `phi`.
pub fn t_star() -> f64 {
    0.5 * (1.0 - 1.0 / 5f64.sqrt())
}

/// The `a_3` coordinate where `G2` switches from Type I to Type II: the root
/// of `t^3 + t^2 + 3t - 1` in `(1/5, 1/3)`.
pub fn tilde_a3() -> f64 {
    let f = |t: f64| t * t * t + t * t + 3.0 * t - 1.0;
    let (mut lo, mut hi) = (0.2, 1.0 / 3.0);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    if f(lo).abs() < f(mid).abs() {
        lo
    } else {
        mid
    }
}

/// Companion coordinate `4 a_3 / (1 + a_3)` of [`tilde_a3`].
pub fn tilde_a2() -> f64 {
    let t = tilde_a3();
    4.0 * t / (1.0 + t)
}

/// Infimum of `m` over a segment and its unique minimizer.
pub fn gamma_infimum(seg: GammaSegment) -> (f64, CubicPoint) {
    let (value, point) = match seg.unreflected() {
        // m = (2 - a_2)/3 on G1, decreasing in a_2
        GammaSegment::G1 => ((2.0 - 0.8) / 3.0, CubicPoint::new(0.8, 0.2)),
        GammaSegment::G2 => {
            let t = t_star();
            (arc_phi(t), CubicPoint::new(ellipse_a2(t), t))
        }
        // m = sqrt(4 - 3 a_2^2)/3 on G3, decreasing in a_2
        _ => {
            let a2 = a2_max();
            (
                (4.0 - 3.0 * a2 * a2).sqrt() / 3.0,
                CubicPoint::new(a2, 1.0 / 3.0),
            )
        }
    };
    (
        value,
        if seg.is_reflected() {
            point.reflect()
        } else {
            point
        },
    )
}

fn segment_distance(p: CubicPoint, a: CubicPoint, b: CubicPoint) -> f64 {
    let (dx, dy) = (b.a2 - a.a2, b.a3 - a.a3);
    let len2 = dx * dx + dy * dy;
    let t = (((p.a2 - a.a2) * dx + (p.a3 - a.a3) * dy) / len2).clamp(0.0, 1.0);
    p.dist(&CubicPoint::new(a.a2 + t * dx, a.a3 + t * dy))
}

fn arc_distance(p: CubicPoint) -> f64 {
    let d = |t: f64| p.dist(&CubicPoint::new(ellipse_a2(t), t));
    let (lo, hi) = GammaSegment::G2.param_range();
    let n = 256;
    let step = (hi - lo) / n as f64;
    let best = (0..=n)
        .min_by(|&i, &j| d(lo + i as f64 * step).total_cmp(&d(lo + j as f64 * step)))
        .unwrap_or(0);
    let (mut a, mut b) = (
        (lo + (best as f64 - 1.0) * step).max(lo),
        (lo + (best as f64 + 1.0) * step).min(hi),
    );
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let c = b - inv_phi * (b - a);
        let e = a + inv_phi * (b - a);
        if d(c) <= d(e) {
            b = e;
        } else {
            a = c;
        }
    }
    d(0.5 * (a + b)).min(d(lo)).min(d(hi))
}

/// Euclidean distance from `q` to `Gamma`.
pub fn boundary_distance(q: CubicPoint) -> f64 {
    let mirrored = CubicPoint::new(q.a2.abs(), q.a3);
    let g1 = segment_distance(
        mirrored,
        CubicPoint::new(0.0, -1.0 / 3.0),
        CubicPoint::new(0.8, 0.2),
    );
    let g3 = segment_distance(
        mirrored,
        CubicPoint::new(0.0, 1.0 / 3.0),
        CubicPoint::new(a2_max(), 1.0 / 3.0),
    );
    // the a_2 < 0 half of Gamma is never closer to a point with a_2 >= 0
    g1.min(g3).min(arc_distance(mirrored))
}

/// One sampled point of the extremal scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub point: CubicPoint,
    /// Closed-form `m`.
    pub m: f64,
    /// `m` from the numeric circle search.
    pub m_numeric: f64,
    pub segment: GammaSegment,
    pub tag: TypeTag,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    /// Sorted ascending by `m`; reflections tie and the `a_2 > 0` one comes
    /// first.
    pub entries: Vec<ScanEntry>,
    /// One message per point where the two routes disagree by more than
    /// [`SCAN_AGREEMENT`].
    pub warnings: Vec<String>,
}

impl ScanReport {
    pub fn best(&self) -> &ScanEntry {
        &self.entries[0]
    }

    /// Smallest closed-form `m` seen on a segment.
    pub fn segment_min(&self, seg: GammaSegment) -> Option<&ScanEntry> {
        self.entries.iter().find(|e| e.segment == seg)
    }
}

fn scan_entry(seg: GammaSegment, s: f64) -> ScanEntry {
    let point = gamma_point(seg, s).expect("scan parameters lie in range");
    let poly = point.polynomial().expect("gamma points are finite");
    let m_numeric = min_modulus(&poly, SCAN_GRID, SCAN_TOL)
        .expect("scan grid is valid")
        .value;
    ScanEntry {
        point,
        m: min_modulus_closed_form(point),
        m_numeric,
        segment: seg,
        tag: classify_type(point),
    }
}

/// Sweeps every segment of `Gamma` at `resolution` equally spaced
/// parameters, evaluating `m` both in closed form and numerically.
///
/// The best grid point of each segment is then polished by golden-section
/// search on the closed form and the polished point is added to the list, so
/// the extremal points come out to parameter precision rather than grid
/// precision.
pub fn extremal_scan(resolution: usize) -> Result<ScanReport> {
    if resolution < 100 {
        return Err(Error::ResolutionTooSmall(resolution));
    }
    let per_segment: Vec<Vec<ScanEntry>> = GammaSegment::ALL
        .par_iter()
        .map(|&seg| {
            let (lo, hi) = seg.param_range();
            let step = (hi - lo) / (resolution - 1) as f64;
            let param = |k: usize| {
                if k + 1 == resolution {
                    hi
                } else {
                    lo + k as f64 * step
                }
            };
            let mut entries: Vec<ScanEntry> = (0..resolution)
                .into_par_iter()
                .map(|k| scan_entry(seg, param(k)))
                .collect();

            let k_best = (0..resolution)
                .min_by(|&i, &j| entries[i].m.total_cmp(&entries[j].m))
                .unwrap_or(0);
            let a = param(k_best.saturating_sub(1));
            let b = param((k_best + 1).min(resolution - 1));
            let f = |s: f64| {
                min_modulus_closed_form(gamma_point(seg, s).expect("bracket lies in range"))
            };
            let s = golden_min(&f, a, b);
            entries.push(scan_entry(seg, s));
            entries
        })
        .collect();

    let mut entries: Vec<ScanEntry> = per_segment.into_iter().flatten().collect();
    entries.sort_by(|x, y| x.m.total_cmp(&y.m).then(y.point.a2.total_cmp(&x.point.a2)));
    let warnings = entries
        .iter()
        .filter(|e| {
            let gap = (e.m - e.m_numeric).abs();
            gap.is_nan() || gap > SCAN_AGREEMENT
        })
        .map(|e| {
            format!(
                "closed form and numeric m disagree at ({:.12}, {:.12}) on {}: {:.3e}",
                e.point.a2,
                e.point.a3,
                e.segment,
                (e.m - e.m_numeric).abs()
            )
        })
        .collect();
    Ok(ScanReport { entries, warnings })
}

fn golden_min<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..100 {
        let c = b - inv_phi * (b - a);
        let d = a + inv_phi * (b - a);
        if f(c) <= f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let mid = 0.5 * (a + b);
    [a, mid, b]
        .into_iter()
        .min_by(|x, y| f(*x).total_cmp(&f(*y)))
        .unwrap_or(mid)
}
