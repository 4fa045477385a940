//! The longest line segment inside the terrain (the k = 2 case).
//!
//! Every maximal-length segment is blocked by terrain vertices, so it is the
//! prolongation of a segment connecting two chain vertices. We enumerate all
//! such pairs, prolong them, and take the longest chord. Pair enumeration
//! replaces the linear-time shortest-path-tree construction; the candidate
//! set is identical.

use std::cmp::Ordering;

use crate::geom::{Point, Segment};
use crate::terrain::Terrain;
use crate::tol::tol;

/// A maximal segment inside the region whose supporting line passes through
/// two chain vertices.
#[derive(Clone, Copy, Debug)]
pub struct Chord {
    /// Canonical: `seg.a` is the lexicographically smaller endpoint.
    pub seg: Segment,
    /// Chain indices of the two support vertices; for three or more collinear
    /// supports, the extreme pair along the chord.
    pub supports: (usize, usize),
    pub length: f64,
}

/// All maximal chords supported by a pair of mutually visible chain
/// vertices, deduplicated by endpoint coordinates.
pub fn candidate_chords(t: &Terrain) -> Vec<Chord> {
    let chain = t.chain();
    let n = chain.len();
    let mut chords: Vec<Chord> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if let Some(seg) = t.prolong_chord(chain[i], chain[j]) {
                let seg = seg.canonical();
                chords.push(Chord {
                    seg,
                    supports: (i, j),
                    length: seg.length(),
                });
            }
        }
    }
    dedup_chords(t, chords)
}

fn dedup_chords(t: &Terrain, mut chords: Vec<Chord>) -> Vec<Chord> {
    let eps = tol();
    chords.sort_by(|a, b| {
        a.seg
            .a
            .lex_cmp(&b.seg.a)
            .then_with(|| a.seg.b.lex_cmp(&b.seg.b))
    });
    let mut out: Vec<(Chord, Vec<usize>)> = Vec::new();
    for c in chords {
        match out.last_mut() {
            Some((prev, supports))
                if prev.seg.a.approx_eq(c.seg.a) && prev.seg.b.approx_eq(c.seg.b) =>
            {
                supports.push(c.supports.0);
                supports.push(c.supports.1);
            }
            _ => out.push((c, vec![c.supports.0, c.supports.1])),
        }
    }
    let chain = t.chain();
    out.into_iter()
        .map(|(mut c, supports)| {
            // Keep the extreme pair along the chord direction.
            let dir = Point::new(c.seg.b.x - c.seg.a.x, c.seg.b.y - c.seg.a.y);
            let key = |idx: usize| chain[idx].x * dir.x + chain[idx].y * dir.y;
            let lo = supports
                .iter()
                .copied()
                .min_by(|&a, &b| key(a).partial_cmp(&key(b)).unwrap_or(Ordering::Equal))
                .unwrap();
            let hi = supports
                .iter()
                .copied()
                .max_by(|&a, &b| key(a).partial_cmp(&key(b)).unwrap_or(Ordering::Equal))
                .unwrap();
            c.supports = if lo == hi { (lo, hi) } else { (lo.min(hi), lo.max(hi)) };
            debug_assert!(c.length > eps || c.seg.length() <= eps);
            c
        })
        .collect()
}

/// The longest candidate chord; ties broken by the lexicographically
/// smallest left endpoint.
pub fn compute_diameter(t: &Terrain) -> Chord {
    let chords = candidate_chords(t);
    // The base connects two chain vertices, so the list is never empty.
    let mut best = chords[0];
    for c in chords.into_iter().skip(1) {
        let diff = c.length - best.length;
        if diff > 1e-12 || (diff.abs() <= 1e-12 && c.seg.a.lex_cmp(&best.seg.a) == Ordering::Less)
        {
            best = c;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1() -> Terrain {
        Terrain::build(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 2.0),
            Point::new(2.0, 0.0),
        ])
        .unwrap()
    }

    fn t2() -> Terrain {
        Terrain::build(&[
            Point::new(0.0, 0.0),
            Point::new(0.5, 1.0),
            Point::new(1.5, 1.0),
            Point::new(2.0, 0.0),
        ])
        .unwrap()
    }

    fn t3() -> Terrain {
        Terrain::build(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 3.0),
            Point::new(2.0, 0.5),
            Point::new(3.0, 3.0),
            Point::new(4.0, 0.0),
        ])
        .unwrap()
    }

    fn has_chord(chords: &[Chord], a: Point, b: Point) -> bool {
        chords
            .iter()
            .any(|c| (c.seg.a.approx_eq(a) && c.seg.b.approx_eq(b)))
    }

    #[test]
    fn chords_of_a_triangle_include_its_sides() {
        let chords = candidate_chords(&t1());
        assert!(has_chord(&chords, Point::new(0.0, 0.0), Point::new(1.0, 2.0)));
        assert!(has_chord(&chords, Point::new(1.0, 2.0), Point::new(2.0, 0.0)));
        assert!(has_chord(&chords, Point::new(0.0, 0.0), Point::new(2.0, 0.0)));
    }

    #[test]
    fn valley_blocks_peak_to_peak() {
        let chords = candidate_chords(&t3());
        assert!(has_chord(&chords, Point::new(0.0, 0.0), Point::new(4.0, 0.0)));
        assert!(!has_chord(&chords, Point::new(1.0, 3.0), Point::new(3.0, 3.0)));
    }

    #[test]
    fn spike_has_three_chords() {
        let t = Terrain::build(&[
            Point::new(0.0, 0.0),
            Point::new(5.0, 0.1),
            Point::new(10.0, 0.0),
        ])
        .unwrap();
        assert_eq!(candidate_chords(&t).len(), 3);
    }

    #[test]
    fn diameter_golden_cases() {
        let d = compute_diameter(&t1());
        assert!((d.length - 5.0_f64.sqrt()).abs() < 1e-9);
        // Tie between the two slanted sides resolves to the left one.
        assert!(d.seg.a.approx_eq(Point::new(0.0, 0.0)));
        assert!(d.seg.b.approx_eq(Point::new(1.0, 2.0)));

        let d = compute_diameter(&t2());
        assert!((d.length - 2.0).abs() < 1e-9);

        let d = compute_diameter(&t3());
        assert!((d.length - 4.0).abs() < 1e-9);
    }

    #[test]
    fn diameter_is_maximal_and_supported() {
        let t = t3();
        let d = compute_diameter(&t);
        assert!(t.contains_segment(d.seg));
        // Supports lie on the chord's line.
        let chain = t.chain();
        for idx in [d.supports.0, d.supports.1] {
            let v = chain[idx];
            let area2 = crate::geom::cross(d.seg.a, d.seg.b, v).abs();
            assert!(area2 / d.length <= 1e-7, "support {idx} off the line");
        }
    }
}
