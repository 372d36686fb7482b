use polykoebe::cubic::{
    a2_max, boundary_distance, classify_type, gamma_point, in_univalence_region, CubicPoint,
    GammaSegment, TypeTag,
};
use polykoebe::poly::{family, FamilyKind, RealPolynomial};
use polykoebe::univalence::{check_univalent, escalate_radius, Verdict, DEFAULT_RADII};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const JUNCTION_ZONE: f64 = 1e-4;
const OUTWARD_STEP: f64 = 1e-6;

fn junctions() -> Vec<CubicPoint> {
    let base = [
        CubicPoint::new(0.0, -1.0 / 3.0),
        CubicPoint::new(0.8, 0.2),
        CubicPoint::new(a2_max(), 1.0 / 3.0),
        CubicPoint::new(0.0, 1.0 / 3.0),
    ];
    base.iter().flat_map(|p| [*p, p.reflect()]).collect()
}

fn outward_normal(seg: GammaSegment, q: CubicPoint) -> (f64, f64) {
    let sign = if seg.is_reflected() { -1.0 } else { 1.0 };
    let (nx, ny) = match seg {
        GammaSegment::G1 | GammaSegment::G1R => (2.0 * sign, -3.0),
        GammaSegment::G2 | GammaSegment::G2R => (2.0 * q.a2, 8.0 * q.a3 - 4.0),
        GammaSegment::G3 | GammaSegment::G3R => (0.0, 1.0),
    };
    let len = nx.hypot(ny);
    (nx / len, ny / len)
}

#[test]
fn gamma_points_are_members_and_outward_steps_are_not() {
    let near_junction = |q: CubicPoint| {
        junctions()
            .iter()
            .any(|j| (j.a2 - q.a2).hypot(j.a3 - q.a3) < JUNCTION_ZONE)
    };
    let mut outward_checked = 0;
    for seg in GammaSegment::ALL {
        let (lo, hi) = seg.param_range();
        for k in 0..=2000 {
            let s = lo + (hi - lo) * k as f64 / 2000.0;
            let q = gamma_point(seg, s).unwrap();
            assert!(in_univalence_region(q), "{seg} s={s}");
            if near_junction(q) {
                continue;
            }
            let (nx, ny) = outward_normal(seg, q);
            let out = CubicPoint::new(q.a2 + OUTWARD_STEP * nx, q.a3 + OUTWARD_STEP * ny);
            assert!(
                !in_univalence_region(out),
                "{seg} s={s} outward point {out:?} still inside"
            );
            let inward = CubicPoint::new(q.a2 - OUTWARD_STEP * nx, q.a3 - OUTWARD_STEP * ny);
            assert!(
                in_univalence_region(inward),
                "{seg} s={s} inward point {inward:?} outside"
            );
            outward_checked += 1;
        }
    }
    assert!(outward_checked > 11_000);
}

/// Closed polygon tracing `Gamma` counter-clockwise.
fn gamma_polygon(per_piece: usize) -> Vec<(f64, f64)> {
    let mut right = Vec::new();
    for seg in [GammaSegment::G1, GammaSegment::G2] {
        let (lo, hi) = seg.param_range();
        for k in 0..per_piece {
            let q = gamma_point(seg, lo + (hi - lo) * k as f64 / per_piece as f64).unwrap();
            right.push((q.a2, q.a3));
        }
    }
    let (lo, hi) = GammaSegment::G3.param_range();
    for k in 0..per_piece {
        let q = gamma_point(
            GammaSegment::G3,
            hi - (hi - lo) * k as f64 / per_piece as f64,
        )
        .unwrap();
        right.push((q.a2, q.a3));
    }
    // mirror half traversed top to bottom
    let left: Vec<(f64, f64)> = right.iter().rev().map(|&(x, y)| (-x, y)).collect();
    right.extend(left);
    right
}

fn inside_polygon(poly: &[(f64, f64)], (x, y): (f64, f64)) -> bool {
    let mut inside = false;
    let n = poly.len();
    for i in 0..n {
        let (xi, yi) = poly[i];
        let (xj, yj) = poly[(i + n - 1) % n];
        if (yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi {
            inside = !inside;
        }
    }
    inside
}

#[test]
fn region_matches_polygonal_gamma() {
    let poly = gamma_polygon(100_000 / 6);
    assert!(poly.len() >= 99_990);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut compared = 0;
    while compared < 3000 {
        let q = CubicPoint::new(rng.gen_range(-1.0..1.0), rng.gen_range(-0.5..0.5));
        if boundary_distance(q) < 1e-6 {
            continue;
        }
        assert_eq!(
            in_univalence_region(q),
            inside_polygon(&poly, (q.a2, q.a3)),
            "{q:?}"
        );
        compared += 1;
    }
}

#[test]
fn verifier_matches_cubic_region() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut disagreements = Vec::new();
    let mut done = 0;
    while done < 2000 {
        let q = CubicPoint::new(rng.gen_range(-1.1..1.1), rng.gen_range(-0.5..0.5));
        if boundary_distance(q) < 1e-3 {
            continue;
        }
        let report = escalate_radius(&q.polynomial().unwrap(), &DEFAULT_RADII).unwrap();
        let expected = if in_univalence_region(q) {
            Verdict::UnivalentOpenDisk
        } else {
            Verdict::NotUnivalent
        };
        if report.verdict != expected {
            disagreements.push((q, report.verdict));
        }
        done += 1;
    }
    assert!(disagreements.is_empty(), "{disagreements:?}");
}

#[test]
fn verifier_matches_quadratic_criterion() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 500 {
        let a2: f64 = rng.gen_range(-1.0..1.0);
        if (a2.abs() - 0.5).abs() < 1e-3 {
            continue;
        }
        let p = RealPolynomial::from_tail(&[a2]).unwrap();
        let report = escalate_radius(&p, &DEFAULT_RADII).unwrap();
        let expected = if a2.abs() <= 0.5 {
            Verdict::UnivalentOpenDisk
        } else {
            Verdict::NotUnivalent
        };
        assert_eq!(report.verdict, expected, "a2 = {a2}");
        done += 1;
    }
}

#[test]
fn families_are_accepted() {
    for (kind, max) in [(FamilyKind::PN, 6), (FamilyKind::Suffridge, 10)] {
        for n in 1..=max {
            let p = family(kind, n).unwrap();
            let r = check_univalent(
                &p,
                0.999,
                polykoebe::univalence::samples_for_radius(n, 0.999),
            )
            .unwrap();
            assert_eq!(
                r.verdict,
                Verdict::UnivalentOpenDisk,
                "{kind:?} N={n}: {r:?}"
            );
        }
    }
}

#[test]
fn witnesses_are_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut seen = 0;
    while seen < 200 {
        let tail: Vec<f64> = (0..rng.gen_range(1..6))
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect();
        let p = RealPolynomial::from_tail(&tail).unwrap();
        let r = escalate_radius(&p, &DEFAULT_RADII).unwrap();
        if r.verdict != Verdict::NotUnivalent {
            continue;
        }
        let (z1, z2) = r.witness.expect("rejections carry a witness");
        assert!(z1.norm() < 1.0 && z2.norm() < 1.0, "{tail:?}");
        assert!((z1 - z2).norm() >= 1e-6, "{tail:?}");
        assert!((p.eval(z1) - p.eval(z2)).norm() <= 1e-10, "{tail:?}");
        seen += 1;
    }
}

#[test]
fn oversized_top_coefficient_is_never_accepted() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let n = rng.gen_range(2..7usize);
        let mut tail: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-0.3..0.3)).collect();
        let top = rng.gen_range(1.0 / n as f64 + 1e-3..1.0);
        *tail.last_mut().unwrap() = if rng.gen_bool(0.5) { top } else { -top };
        let r =
            escalate_radius(&RealPolynomial::from_tail(&tail).unwrap(), &DEFAULT_RADII).unwrap();
        assert!(r.top_coefficient_excess);
        assert_ne!(r.verdict, Verdict::UnivalentOpenDisk, "{tail:?}");
    }
}

#[test]
fn g1_type_and_g3_type() {
    for k in 1..100 {
        let s = 0.8 * k as f64 / 100.0;
        assert_eq!(
            classify_type(gamma_point(GammaSegment::G1, s).unwrap()),
            TypeTag::TypeI
        );
    }
}
