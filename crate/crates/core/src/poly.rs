//! Normalized real polynomials and the two extremal families.
//!
//! A [`RealPolynomial`] is `p(z) = z + a_2 z^2 + ... + a_N z^N`, stored as the
//! coefficient vector `(a_1, ..., a_N)` with `a_1 = 1`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chebyshev::{c_param, cheb_u_table, cheb_u_with_prime};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

/// Which of the two coefficient families a polynomial comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    /// Suffridge's `q_N`.
    Suffridge,
    /// The Chebyshev-derivative family `p_N`.
    PN,
}

impl RealPolynomial {
    /// Builds a polynomial from `(a_1, ..., a_N)`. `a_1` must be exactly 1.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        let first = *coeffs.first().ok_or(Error::EmptyCoefficients)?;
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        if first != 1.0 {
            return Err(Error::NotNormalized(first));
        }
        Ok(Self { coeffs })
    }

    /// Builds `z + a_2 z^2 + ...` from the tail `(a_2, ..., a_N)`.
    pub fn from_tail(tail: &[f64]) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(tail.len() + 1);
        coeffs.push(1.0);
        coeffs.extend_from_slice(tail);
        Self::new(coeffs)
    }

    /// The identity `p(z) = z`.
    pub fn identity() -> Self {
        Self { coeffs: vec![1.0] }
    }

    pub fn cubic(a2: f64, a3: f64) -> Result<Self> {
        Self::from_tail(&[a2, a3])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `(a_1, ..., a_N)`; index `k - 1` holds `a_k`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient `a_k` for `k >= 1`, zero past the degree.
    pub fn coeff(&self, k: usize) -> f64 {
        assert!(k >= 1, "coefficients are indexed from 1");
        self.coeffs.get(k - 1).copied().unwrap_or(0.0)
    }

    /// Horner evaluation of `sum a_k z^k`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            acc = (acc + a) * z;
        }
        acc
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &a| (acc + a) * x)
    }

    /// `p'(z)`.
    pub fn eval_derivative(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &a) in self.coeffs.iter().enumerate().rev() {
            acc = acc * z + a * (i + 1) as f64;
        }
        acc
    }

    /// `p^*(z) = -p(-z)`: `a_k` becomes `(-1)^(k+1) a_k`.
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| if i % 2 == 1 { -a } else { a })
            .collect();
        Self { coeffs }
    }

    /// Coefficients as complex numbers, `a_1` first.
    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|&a| Complex64::new(a, 0.0))
            .collect()
    }
}

impl TryFrom<Vec<f64>> for RealPolynomial {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<RealPolynomial> for Vec<f64> {
    fn from(p: RealPolynomial) -> Self {
        p.coeffs
    }
}

impl fmt::Display for RealPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z")?;
        for (i, &a) in self.coeffs.iter().enumerate().skip(1) {
            if a == 0.0 {
                continue;
            }
            let sign = if a < 0.0 { '-' } else { '+' };
            write!(f, " {sign} {:.12}z^{}", a.abs(), i + 1)?;
        }
        Ok(())
    }
}

/// Builds the requested family member of degree `n`.
pub fn family(kind: FamilyKind, n: usize) -> Result<RealPolynomial> {
    match kind {
        FamilyKind::Suffridge => suffridge_coeffs(n),
        FamilyKind::PN => pn_coeffs(n),
    }
}

/// Suffridge's polynomial `q_N` with coefficients
/// `A_{k,N} = (N-k+1)/N * sin(pi k/(N+1)) / sin(pi/(N+1))`.
pub fn suffridge_coeffs(n: usize) -> Result<RealPolynomial> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let nf = n as f64;
    let step = std::f64::consts::PI / (nf + 1.0);
    let denom = step.sin();
    let mut coeffs: Vec<f64> = (1..=n)
        .map(|k| {
            let kf = k as f64;
            // sin(pi k/(N+1)) = sin(pi (N+1-k)/(N+1)); the smaller angle makes A_{N,N} exact
            let j = k.min(n + 1 - k) as f64;
            (nf - kf + 1.0) / nf * (step * j).sin() / denom
        })
        .collect();
    coeffs[0] = 1.0;
    checked_family(coeffs)
}

/// The family `p_N` with coefficients
/// `B_{k,N} = U'_{N-k+1}(c_N) / U'_N(c_N) * U_{k-1}(c_N)`.
pub fn pn_coeffs(n: usize) -> Result<RealPolynomial> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let c = c_param(n);
    let u = cheb_u_table(n, c);
    let (_, top) = cheb_u_with_prime(n, c);
    if !top.is_finite() || top.abs() < f64::MIN_POSITIVE {
        return Err(Error::DerivativeUnderflow(n));
    }
    let mut coeffs: Vec<f64> = (1..=n)
        .map(|k| cheb_u_with_prime(n - k + 1, c).1 / top * u[k - 1])
        .collect();
    // The k = 1 ratio is U'_N/U'_N; pin it so a_1 is exactly 1.
    coeffs[0] = 1.0;
    checked_family(coeffs)
}

fn checked_family(coeffs: Vec<f64>) -> Result<RealPolynomial> {
    let n = coeffs.len();
    if coeffs[n - 1] == 0.0 {
        return Err(Error::DegenerateTop(n));
    }
    RealPolynomial::new(coeffs)
}

/// The Koebe function `z / (1 - z)^2`.
pub fn koebe_eval(z: Complex64) -> Result<Complex64> {
    let d = Complex64::new(1.0, 0.0) - z;
    if d == Complex64::new(0.0, 0.0) {
        return Err(Error::KoebePole);
    }
    Ok(z / (d * d))
}

/// Closed form `q_N(-1) = -(N+1)/(4N) * cos(pi/(2(N+1)))^(-2)`.
pub fn suffridge_minus_one(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let nf = n as f64;
    let c = (std::f64::consts::PI / (2.0 * (nf + 1.0))).cos();
    Ok(-(nf + 1.0) / (4.0 * nf) / (c * c))
}

/// The conjectured polynomial Koebe radius `1 / (4 c_N^2)`.
pub fn conjectured_radius(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let c_sq = match n + 2 {
        3 => 0.25,
        4 => 0.5,
        6 => 0.75,
        _ => c_param(n).powi(2),
    };
    Ok(1.0 / (4.0 * c_sq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_coeffs(p: &RealPolynomial, expected: &[f64], tol: f64) {
        assert_eq!(p.degree(), expected.len());
        for (i, (a, b)) in p.coeffs().iter().zip(expected).enumerate() {
            assert!((a - b).abs() <= tol, "a_{} = {a}, expected {b}", i + 1);
        }
    }

    #[test]
    fn suffridge_small_degrees() {
        assert_coeffs(&suffridge_coeffs(1).unwrap(), &[1.0], 0.0);
        assert_coeffs(&suffridge_coeffs(2).unwrap(), &[1.0, 0.5], 1e-15);
        let sqrt2 = 2f64.sqrt();
        assert_coeffs(
            &suffridge_coeffs(3).unwrap(),
            &[1.0, 2.0 * sqrt2 / 3.0, 1.0 / 3.0],
            1e-15,
        );
    }

    #[test]
    fn pn_small_degrees() {
        assert_coeffs(&pn_coeffs(1).unwrap(), &[1.0], 0.0);
        assert_coeffs(&pn_coeffs(2).unwrap(), &[1.0, 0.5], 1e-15);
        let r5 = 5f64.sqrt();
        assert_coeffs(
            &pn_coeffs(3).unwrap(),
            &[1.0, 2.0 / r5, 0.5 * (1.0 - 1.0 / r5)],
            1e-14,
        );
        assert_coeffs(
            &pn_coeffs(4).unwrap(),
            &[1.0, 7.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
            1e-13,
        );
    }

    #[test]
    fn zero_degree_rejected() {
        assert_eq!(suffridge_coeffs(0), Err(Error::ZeroDegree));
        assert_eq!(pn_coeffs(0), Err(Error::ZeroDegree));
        assert!(conjectured_radius(0).is_err());
        assert!(suffridge_minus_one(0).is_err());
    }

    #[test]
    fn construction_validates() {
        assert_eq!(RealPolynomial::new(vec![]), Err(Error::EmptyCoefficients));
        assert_eq!(
            RealPolynomial::new(vec![2.0, 1.0]),
            Err(Error::NotNormalized(2.0))
        );
        assert_eq!(
            RealPolynomial::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite(1))
        );
        // degenerate top coefficient is fine for general polynomials
        assert!(RealPolynomial::new(vec![1.0, 0.3, 0.0]).is_ok());
    }

    #[test]
    fn suffridge_extremes() {
        for n in 1..=500 {
            let q = suffridge_coeffs(n).unwrap();
            assert_eq!(q.coeff(1), 1.0);
            assert!((q.coeff(n) - 1.0 / n as f64).abs() <= 1e-12, "N={n}");
        }
    }

    #[test]
    fn suffridge_coefficients_increase_to_k() {
        for k in 1..=10usize {
            let mut last = f64::NEG_INFINITY;
            for n in k..=500 {
                let a = suffridge_coeffs(n).unwrap().coeff(k);
                assert!(a >= last - 1e-14, "k={k} N={n}");
                assert!(a <= k as f64 + 1e-12);
                last = a;
            }
        }
    }

    #[test]
    fn pn_leading_coefficient_is_one() {
        for n in 1..=500 {
            let p = pn_coeffs(n).unwrap();
            // recompute the k = 1 ratio without the pin
            let cn = c_param(n);
            let r = cheb_u_with_prime(n, cn).1 / cheb_u_with_prime(n, cn).1;
            assert!((r - 1.0).abs() < 1e-12);
            assert_eq!(p.coeff(1), 1.0);
        }
    }

    #[test]
    fn pn_at_minus_one_matches_radius() {
        for n in 1..=200 {
            let v = pn_coeffs(n).unwrap().eval_real(-1.0);
            let r = conjectured_radius(n).unwrap();
            assert!((v + r).abs() <= 1e-10, "N={n}: {v} vs {r}");
        }
    }

    #[test]
    fn eval_spot_values() {
        let p3 = pn_coeffs(3).unwrap();
        let r5 = 5f64.sqrt();
        let expected = -1.0 + 2.0 / r5 - 0.5 * (1.0 - 1.0 / r5);
        let got = p3.eval(c(-1.0, 0.0));
        assert!((got.re - expected).abs() < 1e-15 && got.im == 0.0);
        assert!((got.re.abs() - (3.0 - r5) / 2.0).abs() < 1e-15);
        assert!((got.re + 0.381_966_011_250_105_1).abs() < 1e-15);

        let z = c(0.3, -0.8);
        assert_eq!(RealPolynomial::identity().eval(z), z);

        let q3 = suffridge_coeffs(3).unwrap().eval(c(-1.0, 0.0)).re;
        assert!((q3 - suffridge_minus_one(3).unwrap()).abs() < 1e-15);
        assert!((q3 + 0.390_524_291_751_081_9).abs() < 1e-12);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = pn_coeffs(6).unwrap();
        let z = c(0.31, 0.52);
        let h = 1e-6;
        let fd = (p.eval(z + h) - p.eval(z - h)) / (2.0 * h);
        assert!((fd - p.eval_derivative(z)).norm() < 1e-8);
    }

    #[test]
    fn reflection_examples() {
        let p = RealPolynomial::new(vec![1.0, 0.8944, 0.2764]).unwrap();
        assert_eq!(p.reflect().coeffs(), &[1.0, -0.8944, 0.2764]);
        assert_eq!(
            RealPolynomial::identity().reflect(),
            RealPolynomial::identity()
        );
    }

    #[test]
    fn koebe_values() {
        assert_eq!(koebe_eval(c(-1.0, 0.0)).unwrap(), c(-0.25, 0.0));
        assert_eq!(koebe_eval(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(koebe_eval(c(0.5, 0.0)).unwrap(), c(2.0, 0.0));
        assert_eq!(koebe_eval(c(1.0, 0.0)), Err(Error::KoebePole));
    }

    #[test]
    fn suffridge_closed_form() {
        assert!((suffridge_minus_one(1).unwrap() + 1.0).abs() < 1e-15);
        // -(4/12) cos^{-2}(pi/8)
        let c8 = (std::f64::consts::PI / 8.0).cos();
        assert!((suffridge_minus_one(3).unwrap() + 1.0 / (3.0 * c8 * c8)).abs() < 1e-15);
        for n in 1..=200 {
            let direct = suffridge_coeffs(n).unwrap().eval_real(-1.0);
            assert!(
                (direct - suffridge_minus_one(n).unwrap()).abs() <= 1e-10,
                "N={n}"
            );
        }
        let mut last = f64::NEG_INFINITY;
        for n in 1..=10_000 {
            let v = suffridge_minus_one(n).unwrap();
            assert!(v > last && v < -0.25);
            last = v;
        }
        assert!((last + 0.25).abs() < 1e-4);
    }

    #[test]
    fn radius_small_degrees() {
        assert!((conjectured_radius(1).unwrap() - 1.0).abs() < 1e-15);
        assert!((conjectured_radius(2).unwrap() - 0.5).abs() < 1e-15);
        assert!((conjectured_radius(3).unwrap() - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn display_identity_and_cubic() {
        assert_eq!(RealPolynomial::identity().to_string(), "z");
        let p = RealPolynomial::cubic(-0.5, 0.25).unwrap();
        assert_eq!(p.to_string(), "z - 0.500000000000z^2 + 0.250000000000z^3");
    }

    fn arb_poly() -> impl Strategy<Value = RealPolynomial> {
        prop::collection::vec(-2.0f64..2.0, 0..12)
            .prop_map(|t| RealPolynomial::from_tail(&t).unwrap())
    }

    proptest! {
        #[test]
        fn reflect_is_involution(p in arb_poly()) {
            prop_assert_eq!(p.reflect().reflect(), p);
        }

        #[test]
        fn reflect_matches_definition(p in arb_poly(), theta in 0.0f64..std::f64::consts::TAU) {
            let z = Complex64::from_polar(1.0, theta);
            let lhs = p.reflect().eval(z);
            let rhs = -p.eval(-z);
            prop_assert!((lhs - rhs).norm() <= 1e-12);
        }

        #[test]
        fn serde_round_trip(p in arb_poly()) {
            let v: Vec<f64> = p.clone().into();
            prop_assert_eq!(RealPolynomial::try_from(v).unwrap(), p);
        }
    }
}
