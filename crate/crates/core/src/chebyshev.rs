//! Chebyshev polynomials of the second kind.
//!
//! `U_n` is evaluated with the forward three-term recurrence
//! `U_{n+1}(t) = 2t U_n(t) - U_{n-1}(t)`, which is valid for every real `t`
//! and stays well conditioned for the degrees used here (a few hundred).
//! The derivative follows from differentiating the same recurrence, so the
//! closed form with a `1 - t^2` denominator is never needed.

use std::f64::consts::PI;

/// Evaluates `U_n(t)`.
pub fn cheb_u(n: usize, t: f64) -> f64 {
    cheb_u_with_prime(n, t).0
}

/// Evaluates `U'_n(t)`.
pub fn cheb_u_prime(n: usize, t: f64) -> f64 {
    cheb_u_with_prime(n, t).1
}

/// Returns `(U_n(t), U'_n(t))` from the coupled value/derivative recurrence.
pub fn cheb_u_with_prime(n: usize, t: f64) -> (f64, f64) {
    // (U_{k-1}, U_k) and (U'_{k-1}, U'_k), starting at k = 0 with U_{-1} = 0.
    let (mut u_prev, mut u) = (0.0, 1.0);
    let (mut d_prev, mut d) = (0.0, 0.0);
    for _ in 0..n {
        let u_next = 2.0 * t * u - u_prev;
        let d_next = 2.0 * u + 2.0 * t * d - d_prev;
        u_prev = u;
        u = u_next;
        d_prev = d;
        d = d_next;
    }
    (u, d)
}

/// All values `U_0(t), ..., U_{n_max}(t)`.
pub fn cheb_u_table(n_max: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let (mut u_prev, mut u) = (0.0, 1.0);
    out.push(u);
    for _ in 0..n_max {
        let next = 2.0 * t * u - u_prev;
        u_prev = u;
        u = next;
        out.push(u);
    }
    out
}

/// The node parameter `c_N = cos(pi / (N + 2))`, the largest zero of
/// `U_{N+1}`.
///
/// `n` must be at least 1; `n = 0` is accepted and gives `cos(pi/2)`.
pub fn c_param(n: usize) -> f64 {
    (PI / (n as f64 + 2.0)).cos()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_values() {
        assert_eq!(cheb_u(0, 0.7), 1.0);
        assert!(cheb_u(2, 0.5).abs() < 1e-15);
        // U_3(t) = 8t^3 - 4t
        let t: f64 = 0.3;
        let explicit = 8.0 * t.powi(3) - 4.0 * t;
        assert!((cheb_u(3, t) - explicit).abs() < 1e-15);
        assert!((cheb_u(3, 0.3) + 0.984).abs() < 1e-14);
    }

    #[test]
    fn low_degree_derivatives() {
        assert_eq!(cheb_u_prime(0, 0.9), 0.0);
        assert_eq!(cheb_u_prime(1, -0.3), 2.0);
        assert!((cheb_u_prime(2, 0.5) - 4.0).abs() < 1e-15);
        // d/dt (8t^3 - 4t) = 24t^2 - 4
        assert!((cheb_u_prime(3, 1.0) - 20.0).abs() < 1e-13);
    }

    #[test]
    fn derivative_at_endpoints_is_finite() {
        // U'_n(1) = n(n+1)(n+2)/3
        for n in 0..40usize {
            let expected = (n * (n + 1) * (n + 2)) as f64 / 3.0;
            let got = cheb_u_prime(n, 1.0);
            assert!((got - expected).abs() <= 1e-12 * expected.max(1.0), "n={n}");
            let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
            assert!((cheb_u_prime(n, -1.0) - sign * expected).abs() <= 1e-12 * expected.max(1.0));
        }
    }

    #[test]
    fn c_param_values() {
        assert!((c_param(1) - 0.5).abs() < 1e-15);
        assert!((c_param(2) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let c3 = c_param(3);
        assert!((c3 - 0.809_016_994_374_947_4).abs() < 1e-15);
        assert!((1.0 / (4.0 * c3 * c3) - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn c_param_increasing_in_unit_interval() {
        let mut last = 0.0;
        for n in 1..1000 {
            let c = c_param(n);
            assert!(c > last && c < 1.0);
            last = c;
        }
    }

    #[test]
    fn c_param_is_root_of_next_u() {
        for n in 1..=50 {
            assert!(cheb_u(n + 1, c_param(n)).abs() < 1e-12, "N={n}");
        }
        // Past N = 50 the residual is dominated by the rounding of c_N itself
        // (|U'_{N+1}(c_N)| grows like N^3), so check the backward error:
        // c_N must be a root to within two ulps.
        for n in 51..=100 {
            let (u, du) = cheb_u_with_prime(n + 1, c_param(n));
            assert!(
                u.abs() <= (2.0 * f64::EPSILON * du.abs()).max(1e-12),
                "N={n}: {u:e}"
            );
        }
    }

    #[test]
    fn table_matches_pointwise() {
        let tab = cheb_u_table(30, -0.37);
        for (n, v) in tab.iter().enumerate() {
            assert_eq!(*v, cheb_u(n, -0.37));
        }
    }
}
