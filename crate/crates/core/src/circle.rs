//! Behaviour of a polynomial on the unit circle `T`.
//!
//! The central quantity is the minimum modulus `m(p) = min |p(zeta)|` over
//! `zeta` in `T`; for univalent `p` it is the radius of the largest disk about
//! the origin covered by `p(D)`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chebyshev::cheb_u_table;
use crate::poly::RealPolynomial;
use crate::{Error, Result};

/// Minimum number of grid points per unit of degree.
pub const GRID_PER_DEGREE: usize = 8;
/// Default grid size when the caller does not pick one.
pub const DEFAULT_GRID: usize = 4096;
/// Default value tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

const GOLDEN_ITERS: usize = 60;
const CLUSTER_ARC: f64 = 1e-6;
const FLAT_VARIANCE: f64 = 1e-14;
const ROOT_SCAN_PER_DEGREE: usize = 64;
const BISECT_TOL: f64 = 1e-13;
const NOISE_FACTOR: f64 = 16.0;

/// Result of a minimum-modulus search on the unit circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinModResult {
    pub value: f64,
    /// Minimizing points on `T`. For real coefficients the points in the
    /// closed upper half-plane come first, then their conjugates.
    pub minimizers: Vec<Complex64>,
    pub refined: bool,
    /// Set when `|p|` is constant on `T` (the identity); `minimizers` is then
    /// empty because every point of the circle attains the minimum.
    pub whole_circle: bool,
}

/// Grid size used by default for a polynomial of the given degree.
pub fn default_grid(degree: usize) -> usize {
    DEFAULT_GRID.max(GRID_PER_DEGREE * degree)
}

/// `p(e^{i theta})` together with its first two `theta` derivatives.
struct OnCircle<'a> {
    coeffs: &'a [Complex64],
}

impl OnCircle<'_> {
    fn value(&self, theta: f64) -> Complex64 {
        let z = Complex64::from_polar(1.0, theta);
        let mut acc = Complex64::new(0.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            acc = (acc + a) * z;
        }
        acc
    }

    fn sq_modulus(&self, theta: f64) -> f64 {
        self.value(theta).norm_sqr()
    }

    /// `(f', f'')` for `f(theta) = |p(e^{i theta})|^2`.
    fn sq_modulus_derivs(&self, theta: f64) -> (f64, f64) {
        let z = Complex64::from_polar(1.0, theta);
        let (mut p, mut dp, mut ddp) = (
            Complex64::default(),
            Complex64::default(),
            Complex64::default(),
        );
        // coefficients are a_1..a_N for z^1..z^N; run Horner on z * (a_1 + a_2 z + ...)
        for &a in self.coeffs.iter().rev() {
            ddp = ddp * z + 2.0 * dp;
            dp = dp * z + p;
            p = p * z + a;
        }
        // q(z) = sum a_k z^{k-1}; p(z) = z q(z)
        let (q, dq, ddq) = (p, dp, ddp);
        let pv = z * q;
        let p1 = q + z * dq;
        let p2 = 2.0 * dq + z * ddq;
        let i = Complex64::i();
        let d1 = i * z * p1;
        let d2 = -(z * p1 + z * z * p2);
        let f1 = 2.0 * (pv.conj() * d1).re;
        let f2 = 2.0 * (d1.norm_sqr() + (pv.conj() * d2).re);
        (f1, f2)
    }
}

fn golden_section<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..GOLDEN_ITERS {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        c
    } else {
        d
    }
}

/// Refines a grid-local minimum inside `[lo, hi]`: golden section on `|p|^2`,
/// then a few guarded Newton steps on its derivative to pin the location
/// below the `sqrt(eps)` floor that a pure comparison search hits.
fn refine(curve: &OnCircle<'_>, lo: f64, hi: f64) -> (f64, f64) {
    let f = |t: f64| curve.sq_modulus(t);
    let mut theta = golden_section(&f, lo, hi);
    let (mut d1, mut d2) = curve.sq_modulus_derivs(theta);
    for _ in 0..8 {
        if d2 <= 0.0 || !d1.is_finite() {
            break;
        }
        let next = theta - d1 / d2;
        if next < lo || next > hi {
            break;
        }
        // values are flat to rounding here, so judge progress by the slope
        let (n1, n2) = curve.sq_modulus_derivs(next);
        if n1.abs() >= d1.abs() {
            break;
        }
        theta = next;
        (d1, d2) = (n1, n2);
    }
    (theta, f(theta))
}

/// Reduces an angle to `[0, 2pi)`.
fn wrap(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

fn arc_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

struct Candidate {
    theta: f64,
    sq: f64,
}

/// Core search. `half` restricts the grid to `[0, pi]` using the symmetry
/// `|p(conj z)| = |p(z)|` of real-coefficient polynomials.
fn search(coeffs: &[Complex64], grid_size: usize, tol: f64, half: bool) -> Result<MinModResult> {
    let degree = coeffs.len();
    let min_grid = GRID_PER_DEGREE * degree;
    if grid_size < min_grid {
        return Err(Error::GridTooSmall {
            got: grid_size,
            min: min_grid,
        });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::BadTolerance(tol));
    }
    let curve = OnCircle { coeffs };

    let span = if half { PI } else { TAU };
    let h = span / grid_size as f64;
    // half circle: indices 0..=G with even extension at both ends
    // full circle: indices 0..G, periodic
    let count = if half { grid_size + 1 } else { grid_size };
    let samples: Vec<f64> = (0..count).map(|i| curve.sq_modulus(i as f64 * h)).collect();

    let mean = samples.iter().sum::<f64>() / count as f64;
    let variance = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / count as f64;
    if variance < FLAT_VARIANCE {
        let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
        return Ok(MinModResult {
            value: min.sqrt(),
            minimizers: Vec::new(),
            refined: false,
            whole_circle: true,
        });
    }

    let neighbour = |i: isize| -> f64 {
        if half {
            let g = grid_size as isize;
            let j = if i < 0 {
                -i
            } else if i > g {
                2 * g - i
            } else {
                i
            };
            samples[j as usize]
        } else {
            samples[i.rem_euclid(count as isize) as usize]
        }
    };

    let mut candidates = Vec::new();
    for i in 0..count as isize {
        let s = samples[i as usize];
        if s <= neighbour(i - 1) && s <= neighbour(i + 1) {
            let centre = i as f64 * h;
            let (theta, sq) = refine(&curve, centre - h, centre + h);
            // keep the refined point only if it beats the raw grid value
            let (theta, sq) = if sq <= s { (theta, sq) } else { (centre, s) };
            candidates.push(Candidate {
                theta: fold(theta, half),
                sq,
            });
        }
    }

    let best = candidates
        .iter()
        .map(|c| c.sq.sqrt())
        .fold(f64::INFINITY, f64::min);
    let mut kept: Vec<Candidate> = candidates
        .into_iter()
        .filter(|c| c.sq.sqrt() <= best + tol)
        .collect();
    kept.sort_by(|a, b| a.sq.total_cmp(&b.sq).then(a.theta.total_cmp(&b.theta)));

    let mut clusters: Vec<Candidate> = Vec::new();
    for c in kept {
        if clusters
            .iter()
            .all(|k| arc_distance(k.theta, c.theta) > CLUSTER_ARC)
        {
            clusters.push(c);
        }
    }
    clusters.sort_by(|a, b| a.theta.total_cmp(&b.theta));

    let mut minimizers: Vec<Complex64> = Vec::new();
    if half {
        minimizers.extend(clusters.iter().map(|c| on_circle(c.theta)));
        for c in &clusters {
            if c.theta > CLUSTER_ARC && c.theta < PI - CLUSTER_ARC {
                minimizers.push(on_circle(c.theta).conj());
            }
        }
    } else {
        let (upper, lower): (Vec<_>, Vec<_>) = clusters
            .iter()
            .map(|c| on_circle(c.theta))
            .partition(|z| z.im >= 0.0);
        minimizers.extend(upper);
        minimizers.extend(lower);
    }

    let value = clusters
        .iter()
        .map(|c| c.sq)
        .fold(f64::INFINITY, f64::min)
        .sqrt();
    Ok(MinModResult {
        value,
        minimizers,
        refined: true,
        whole_circle: false,
    })
}

/// Unit-modulus point at angle `theta`, with the exact values at `0` and `pi`.
fn on_circle(theta: f64) -> Complex64 {
    if theta == 0.0 {
        Complex64::new(1.0, 0.0)
    } else if theta == PI {
        Complex64::new(-1.0, 0.0)
    } else {
        Complex64::from_polar(1.0, theta)
    }
}

fn fold(theta: f64, half: bool) -> f64 {
    let t = wrap(theta);
    if !half {
        return t;
    }
    let t = if t > PI { TAU - t } else { t };
    // snap the end points so z = +-1 come out exactly real
    if t < 1e-13 {
        0.0
    } else if PI - t < 1e-13 {
        PI
    } else {
        t
    }
}

/// `m(p) = min |p(zeta)|` over the unit circle.
///
/// The search samples `|p|^2` on `grid_size` points of `[0, pi]` (real
/// coefficients make `|p|` symmetric under conjugation) and refines every
/// grid-local minimum. Every refined minimum within `tol` of the best is
/// reported.
pub fn min_modulus(p: &RealPolynomial, grid_size: usize, tol: f64) -> Result<MinModResult> {
    search(&p.to_complex(), grid_size, tol, true)
}

/// [`min_modulus`] with [`default_grid`] and [`DEFAULT_TOL`].
pub fn min_modulus_default(p: &RealPolynomial) -> MinModResult {
    min_modulus(p, default_grid(p.degree()), DEFAULT_TOL).expect("default parameters are valid")
}

/// Full-circle variant for complex coefficients `(a_1, ..., a_N)`.
pub fn min_modulus_complex(
    coeffs: &[Complex64],
    grid_size: usize,
    tol: f64,
) -> Result<MinModResult> {
    search(coeffs, grid_size, tol, false)
}

/// `mu(p) = min { Re p(zeta) : zeta in T, Im p(zeta) = 0 }`, taken over the
/// points where the boundary image crosses the real axis.
///
/// With `z = e^{i theta}`, `Im p = sin(theta) Q(cos theta)` where
/// `Q(t) = sum a_k U_{k-1}(t)`. The crossings are `theta = 0, pi` plus the
/// sign changes of `Q` in `(-1, 1)`, located by a sign scan followed by
/// bisection. Zeros of even order are tangencies where the curve touches the
/// axis without crossing it, and are skipped: scan samples whose `Q` is below
/// the rounding bound of the sum carry no sign, so a touch never shows up as
/// a spurious pair of sign changes.
pub fn mu_functional(p: &RealPolynomial) -> f64 {
    let a = p.coeffs();
    let n = a.len();
    // (Q(t), rounding bound)
    let q = |t: f64| -> (f64, f64) {
        let u = cheb_u_table(n - 1, t);
        let (mut sum, mut mag) = (0.0, 0.0);
        for (ak, uk) in a.iter().zip(&u) {
            sum += ak * uk;
            mag += (ak * uk).abs();
        }
        (sum, NOISE_FACTOR * n as f64 * f64::EPSILON * mag)
    };
    let sign = |t: f64| -> i8 {
        let (v, noise) = q(t);
        if v > noise {
            1
        } else if v < -noise {
            -1
        } else {
            0
        }
    };
    let re_p = |t: f64| -> f64 {
        let theta = t.clamp(-1.0, 1.0).acos();
        a.iter()
            .enumerate()
            .map(|(k, ak)| ak * ((k + 1) as f64 * theta).cos())
            .sum()
    };

    let mut best = p.eval_real(1.0).min(p.eval_real(-1.0));
    if n == 1 {
        return best;
    }
    // Sample uniformly in theta, which clusters the t nodes toward +-1 where
    // the roots of Chebyshev-like Q crowd together.
    let m = ROOT_SCAN_PER_DEGREE * n;
    let ts: Vec<f64> = (1..m).map(|j| (PI * j as f64 / m as f64).cos()).collect();
    let signed: Vec<(f64, i8)> = ts
        .iter()
        .map(|&t| (t, sign(t)))
        .filter(|&(_, s)| s != 0)
        .collect();
    for w in signed.windows(2) {
        let ((hi, s_hi), (lo, s_lo)) = (w[0], w[1]);
        if s_hi == s_lo {
            continue;
        }
        // ts is decreasing, so the bracket is [lo, hi] in t
        let (mut lo, mut hi) = (lo, hi);
        while hi - lo > BISECT_TOL {
            let mid = 0.5 * (lo + hi);
            match sign(mid) {
                0 => {
                    lo = mid;
                    hi = mid;
                }
                s if s == s_lo => lo = mid,
                _ => hi = mid,
            }
        }
        best = best.min(re_p(0.5 * (lo + hi)));
    }
    best
}

/// Minimum number of points for [`boundary_curve`].
pub const MIN_CURVE_SAMPLES: usize = 4;

/// `p(e^{2 pi i k / samples})` for `k = 0..samples`.
pub fn boundary_curve(p: &RealPolynomial, samples: usize) -> Result<Vec<Complex64>> {
    if samples < MIN_CURVE_SAMPLES {
        return Err(Error::TooFewSamples {
            got: samples,
            min: MIN_CURVE_SAMPLES,
        });
    }
    Ok((0..samples)
        .map(|k| p.eval(unit_root(k, samples)))
        .collect())
}

/// `e^{2 pi i k / n}` with exact values at the quarter turns.
pub fn unit_root(k: usize, n: usize) -> Complex64 {
    let k = k % n;
    if (4 * k).is_multiple_of(n) {
        return match 4 * k / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, TAU * k as f64 / n as f64)
}
