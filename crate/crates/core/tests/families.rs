use polykoebe::circle::{min_modulus_default, mu_functional};
use polykoebe::poly::{conjectured_radius, family, suffridge_minus_one, FamilyKind};

/// Is `m(p_N)` attained at `-1`? Reported, not asserted: the answer is only
/// believed to be yes.
#[test]
fn pn_minimum_modulus_experiment() {
    let mut off = Vec::new();
    for n in 1..=100 {
        let p = family(FamilyKind::PN, n).unwrap();
        let at_minus_one = p.eval_real(-1.0).abs();
        let m = min_modulus_default(&p).value;
        assert!(m <= at_minus_one + 1e-12, "N={n}");
        if at_minus_one - m > 1e-8 {
            off.push((n, at_minus_one - m));
        }
    }
    println!("N <= 100 with m(p_N) below |p_N(-1)| by more than 1e-8: {off:?}");
}

#[test]
fn pn_and_suffridge_at_minus_one() {
    let mut prev = f64::NEG_INFINITY;
    for n in 1..=200 {
        let rho = conjectured_radius(n).unwrap();
        let p = family(FamilyKind::PN, n).unwrap();
        assert!((p.eval_real(-1.0) + rho).abs() <= 1e-10, "N={n}");
        assert!((mu_functional(&p) + rho).abs() <= 1e-9, "N={n}");

        let q = family(FamilyKind::Suffridge, n).unwrap();
        let closed = suffridge_minus_one(n).unwrap();
        assert!((q.eval_real(-1.0) - closed).abs() <= 1e-10, "N={n}");
        assert!(closed > prev && closed < -0.25, "N={n}");
        prev = closed;
    }
}
