//! Self-intersection test for a closed polygon.
//!
//! Segments are bucketed into a uniform grid of cells after padding their
//! bounding boxes, so any two segments closer than the pad share a cell.
//! Only pairs sharing a cell are examined, using exact orientation
//! predicates for the crossing test.

use num_complex::Complex64;
use rayon::prelude::*;
use robust::{orient2d, Coord};

/// A proper crossing between segments `first` and `second`
/// (`first < second`), at fractions `s` and `u` along them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub first: usize,
    pub second: usize,
    pub s: f64,
    pub u: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub crossings: Vec<Crossing>,
    /// Smallest distance between two non-adjacent segments, capped at the
    /// cell pad (pairs further apart than the pad are never compared).
    pub min_distance: f64,
}

fn coord(z: Complex64) -> Coord<f64> {
    Coord { x: z.re, y: z.im }
}

fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

enum PairTest {
    Proper { s: f64, u: f64 },
    Apart(f64),
}

fn test_pair(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> PairTest {
    let o1 = orient2d(coord(a), coord(b), coord(c));
    let o2 = orient2d(coord(a), coord(b), coord(d));
    let o3 = orient2d(coord(c), coord(d), coord(a));
    let o4 = orient2d(coord(c), coord(d), coord(b));
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        let r = b - a;
        let q = d - c;
        let denom = r.re * q.im - r.im * q.re;
        let w = c - a;
        let s = (w.re * q.im - w.im * q.re) / denom;
        let u = (w.re * r.im - w.im * r.re) / denom;
        return PairTest::Proper { s, u };
    }
    let touching =
        (o1 == 0.0 || o2 == 0.0 || o3 == 0.0 || o4 == 0.0) && o1 * o2 <= 0.0 && o3 * o4 <= 0.0;
    if touching {
        return PairTest::Apart(0.0);
    }
    let dist = point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b));
    PairTest::Apart(dist)
}

/// Checks the closed polygon through `vertices` (the last vertex joins the
/// first) for self-intersections.
pub fn sweep_closed_polygon(vertices: &[Complex64]) -> SweepResult {
    let m = vertices.len();
    if m < 4 {
        return SweepResult {
            crossings: Vec::new(),
            min_distance: f64::INFINITY,
        };
    }
    let seg = |i: usize| (vertices[i], vertices[(i + 1) % m]);
    let mean_len = (0..m).map(|i| (seg(i).1 - seg(i).0).norm()).sum::<f64>() / m as f64;
    let cell = (2.0 * mean_len).max(f64::MIN_POSITIVE);
    let pad = 0.25 * cell;

    // padded cell range of every segment
    let ranges: Vec<[i64; 4]> = (0..m)
        .map(|i| {
            let (a, b) = seg(i);
            [
                ((a.re.min(b.re) - pad) / cell).floor() as i64,
                ((a.re.max(b.re) + pad) / cell).floor() as i64,
                ((a.im.min(b.im) - pad) / cell).floor() as i64,
                ((a.im.max(b.im) + pad) / cell).floor() as i64,
            ]
        })
        .collect();
    let mut entries: Vec<((i64, i64), u32)> = Vec::with_capacity(4 * m);
    for (i, r) in ranges.iter().enumerate() {
        for x in r[0]..=r[1] {
            for y in r[2]..=r[3] {
                entries.push(((x, y), i as u32));
            }
        }
    }
    entries.sort_unstable();
    let groups: Vec<&[((i64, i64), u32)]> = entries
        .chunk_by(|a, b| a.0 == b.0)
        .filter(|g| g.len() > 1)
        .collect();

    let adjacent = |i: usize, j: usize| {
        let d = i.abs_diff(j);
        d <= 1 || d == m - 1
    };

    let (crossings, min_distance) = groups
        .par_iter()
        .map(|group| {
            let (cx, cy) = group[0].0;
            let mut found = Vec::new();
            let mut nearest = pad;
            for (k, &(_, i)) in group.iter().enumerate() {
                for &(_, j) in &group[k + 1..] {
                    let (i, j) = (i.min(j) as usize, i.max(j) as usize);
                    if adjacent(i, j) {
                        continue;
                    }
                    // test each pair once: in the lowest cell both ranges share
                    let (ri, rj) = (ranges[i], ranges[j]);
                    if (cx, cy) != (ri[0].max(rj[0]), ri[2].max(rj[2])) {
                        continue;
                    }
                    let (a, b) = seg(i);
                    let (c, d) = seg(j);
                    let gap_x =
                        a.re.min(b.re).max(c.re.min(d.re)) - a.re.max(b.re).min(c.re.max(d.re));
                    let gap_y =
                        a.im.min(b.im).max(c.im.min(d.im)) - a.im.max(b.im).min(c.im.max(d.im));
                    if gap_x > pad || gap_y > pad {
                        continue;
                    }
                    match test_pair(a, b, c, d) {
                        PairTest::Proper { s, u } => {
                            nearest = 0.0;
                            found.push(Crossing {
                                first: i,
                                second: j,
                                s,
                                u,
                            });
                        }
                        PairTest::Apart(dist) => nearest = nearest.min(dist),
                    }
                }
            }
            (found, nearest)
        })
        .reduce(
            || (Vec::new(), pad),
            |(mut a, da), (b, db)| {
                a.extend(b);
                (a, da.min(db))
            },
        );
    let mut crossings = crossings;
    crossings.sort_by_key(|c| (c.first, c.second));
    SweepResult {
        crossings,
        min_distance,
    }
}
