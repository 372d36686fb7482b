//! Simultaneous root finding with the Aberth–Ehrlich iteration.

use num_complex::Complex64;

const MAX_ITERS: usize = 1000;

/// Evaluates `sum c_k z^k` and its derivative, coefficients low to high.
pub(crate) fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::default();
    let mut dp = Complex64::default();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Drops vanishing top coefficients.
fn trimmed(coeffs: &[Complex64]) -> &[Complex64] {
    let len = coeffs
        .iter()
        .rposition(|c| *c != Complex64::default())
        .map_or(0, |i| i + 1);
    &coeffs[..len]
}

/// All roots of `sum c_k z^k` (coefficients low to high), with multiplicity.
///
/// Starting points sit on a circle of 1.5 times the geometric-mean root
/// modulus `|c_0 / c_n|^(1/n)`, rotated off the real axis so conjugate pairs
/// separate.
pub fn aberth_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let coeffs = trimmed(coeffs);
    if coeffs.len() < 2 {
        return Vec::new();
    }
    // factor out roots at the origin
    let zeros = coeffs
        .iter()
        .position(|c| *c != Complex64::default())
        .unwrap_or(0);
    let lead = coeffs[coeffs.len() - 1];
    let monic: Vec<Complex64> = coeffs[zeros..].iter().map(|c| c / lead).collect();
    let n = monic.len() - 1;

    let mut roots = vec![Complex64::default(); zeros];
    if n == 0 {
        return roots;
    }
    if n == 1 {
        roots.push(-monic[0]);
        return roots;
    }

    let radius = 1.5 * monic[0].norm().powf(1.0 / n as f64);
    let radius = if radius.is_finite() && radius > 0.0 {
        radius
    } else {
        1.0
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();

    for _ in 0..MAX_ITERS {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(&monic, z[i]);
            if p == Complex64::default() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 4.0 * f64::EPSILON {
            break;
        }
    }

    // a couple of guarded Newton steps
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(&monic, *zi);
            let cand = *zi - p / dp;
            if cand.is_finite() && eval_with_derivative(&monic, cand).0.norm() < p.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }
    roots.extend(z);
    roots
}

/// `|q(z)|` for the monic normalization of `q`.
pub fn monic_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let coeffs = trimmed(coeffs);
    match coeffs.last() {
        Some(lead) => (eval_with_derivative(coeffs, z).0 / lead).norm(),
        None => 0.0,
    }
}
