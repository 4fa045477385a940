//! Exact largest-perimeter inscribed triangle.
//!
//! There is always an optimal triangle with its base or one of its vertices
//! on the terrain base, so two candidate families cover the optimum:
//!
//! * base-on-base: either the apex lies on the chain and each leg passes
//!   through a chain vertex (found by scanning the apex along every chain
//!   edge for every support pair), or both legs are supported by two chain
//!   vertices each (found by pairing ascending and descending chords whose
//!   prolongations span from the base to the chain);
//! * vertex-on-base: the side opposite the base vertex is a maximal chord,
//!   and the base vertex takes its extreme feasible position per direction.

use std::cmp::Ordering;

use thiserror::Error;

use crate::diameter::candidate_chords;
use crate::geom::{base_intercept, cross, line_intersection, Point, Segment};
use crate::terrain::Terrain;
use crate::tol::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleCase {
    /// Two vertices on the base, apex on the chain.
    BaseOnBaseApexOnChain,
    /// Two vertices on the base, each leg supported by two chain vertices.
    BaseOnBaseSupportedLegs,
    /// Exactly one vertex on the base.
    VertexOnBase,
}

#[derive(Clone, Copy, Debug)]
pub struct CandidateTriangle {
    /// Counterclockwise, starting at the lexicographically smallest vertex.
    pub vertices: [Point; 3],
    pub case_tag: TriangleCase,
    pub perimeter: f64,
    /// Internal base angles (left, right); only for base-on-base cases.
    pub leg_angles: Option<(f64, f64)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TriangleError {
    #[error("no non-degenerate inscribed triangle found")]
    NoFeasibleTriangle,
}

/// Scan resolution for the apex parameter along a chain edge.
const APEX_SCAN_STEPS: usize = 10_000;

impl CandidateTriangle {
    fn build(t: &Terrain, a: Point, b: Point, c: Point) -> Option<CandidateTriangle> {
        let eps = tol();
        if cross(a, b, c).abs() / 2.0 <= eps {
            return None;
        }
        for (u, v) in [(a, b), (b, c), (c, a)] {
            if !t.contains_segment(Segment::new(u, v)) {
                return None;
            }
        }
        let mut verts = [a, b, c];
        if crate::geom::signed_area(&verts) < 0.0 {
            verts.swap(1, 2);
        }
        let start = (0..3)
            .min_by(|&i, &j| verts[i].lex_cmp(&verts[j]))
            .unwrap();
        verts.rotate_left(start);

        let on_base: Vec<Point> = verts.iter().copied().filter(|p| p.y.abs() <= eps).collect();
        let (case_tag, leg_angles) = match on_base.len() {
            2 => {
                let apex = *verts.iter().find(|p| p.y.abs() > eps).unwrap();
                let (bl, br) = if on_base[0].x <= on_base[1].x {
                    (on_base[0], on_base[1])
                } else {
                    (on_base[1], on_base[0])
                };
                let alpha = (apex.y).atan2(apex.x - bl.x);
                let beta = std::f64::consts::PI - (apex.y).atan2(apex.x - br.x);
                let tag = if (t.height_at(apex.x) - apex.y).abs() <= eps {
                    TriangleCase::BaseOnBaseApexOnChain
                } else {
                    TriangleCase::BaseOnBaseSupportedLegs
                };
                (tag, Some((alpha, beta)))
            }
            1 => (TriangleCase::VertexOnBase, None),
            _ => return None, // fully airborne or degenerate-flat: not a candidate shape
        };
        let perimeter = a.dist(b) + b.dist(c) + c.dist(a);
        Some(CandidateTriangle {
            vertices: verts,
            case_tag,
            perimeter,
            leg_angles,
        })
    }

    /// Vertices sorted lexicographically, for deterministic tie-breaks.
    fn sorted_vertices(&self) -> [Point; 3] {
        let mut v = self.vertices;
        v.sort_by(|a, b| a.lex_cmp(b));
        v
    }
}

fn tie_less(a: &CandidateTriangle, b: &CandidateTriangle) -> bool {
    let va = a.sorted_vertices();
    let vb = b.sorted_vertices();
    for i in 0..3 {
        match va[i].lex_cmp(&vb[i]) {
            Ordering::Less => return true,
            Ordering::Greater => return false,
            Ordering::Equal => {}
        }
    }
    false
}

/// Apex position, base intercepts and perimeter for a fixed support pair;
/// `None` when the configuration is infeasible.
fn eval_apex(t: &Terrain, apex: Point, p: Point, q: Point) -> Option<(f64, f64, f64)> {
    let eps = tol();
    if apex.y <= eps {
        return None;
    }
    if apex.y - p.y <= eps || apex.y - q.y <= eps {
        return None;
    }
    let xl = base_intercept(apex, p)?;
    let xr = base_intercept(apex, q)?;
    // The optimum has base angles at most pi/2, so the intercepts straddle
    // the apex; configurations violating this are never maximal.
    if xl > apex.x + eps || xr < apex.x - eps {
        return None;
    }
    if xl < t.x_min() - eps || xr > t.x_max() + eps || xr - xl <= eps {
        return None;
    }
    let bl = Point::new(xl, 0.0);
    let br = Point::new(xr, 0.0);
    if !t.contains_segment(Segment::new(bl, apex)) || !t.contains_segment(Segment::new(br, apex)) {
        return None;
    }
    Some(((xr - xl) + bl.dist(apex) + br.dist(apex), xl, xr))
}

/// Candidates with the triangle base on the terrain base.
pub fn base_case_candidates(t: &Terrain) -> Vec<CandidateTriangle> {
    let mut out = Vec::new();
    apex_on_chain_candidates(t, &mut out);
    supported_leg_candidates(t, &mut out);
    out
}

/// Family (i): apex on a chain edge, one support vertex per leg. For each
/// (edge, left support, right support) the perimeter along the edge is
/// evaluated on a dense parameter grid; feasibility boundaries are bisected
/// and interior maxima refined by golden section.
fn apex_on_chain_candidates(t: &Terrain, out: &mut Vec<CandidateTriangle>) {
    let eps = tol();
    let chain = t.chain();
    let n = chain.len();
    for e in 0..n - 1 {
        let ea = chain[e];
        let eb = chain[e + 1];
        let e_max_y = ea.y.max(eb.y);
        let e_min_x = ea.x;
        let e_max_x = eb.x;
        let apex_at = |s: f64| Point::new(ea.x + s * (eb.x - ea.x), ea.y + s * (eb.y - ea.y));
        for pi in 0..n {
            let p = chain[pi];
            if p.y + eps >= e_max_y || p.x > e_max_x + eps {
                continue;
            }
            for qi in 0..n {
                if qi == pi {
                    continue;
                }
                let q = chain[qi];
                if q.y + eps >= e_max_y || q.x < e_min_x - eps {
                    continue;
                }
                scan_edge(t, &apex_at, p, q, out);
            }
        }
    }
}

fn scan_edge(
    t: &Terrain,
    apex_at: &dyn Fn(f64) -> Point,
    p: Point,
    q: Point,
    out: &mut Vec<CandidateTriangle>,
) {
    let eval = |s: f64| eval_apex(t, apex_at(s), p, q).map(|(per, _, _)| per);
    let mut emit = |s: f64| {
        let apex = apex_at(s);
        if let Some((_, xl, xr)) = eval_apex(t, apex, p, q) {
            if let Some(c) =
                CandidateTriangle::build(t, Point::new(xl, 0.0), Point::new(xr, 0.0), apex)
            {
                out.push(c);
            }
        }
    };
    let step = 1.0 / APEX_SCAN_STEPS as f64;
    let mut prev: Option<f64> = None; // P at s - step
    let mut prev2: Option<f64> = None; // P at s - 2 step
    let mut prev_s = 0.0;
    for i in 0..=APEX_SCAN_STEPS {
        let s = i as f64 * step;
        let cur = eval(s);
        match (prev, cur) {
            (Some(_), None) => {
                // Feasible -> infeasible: bisect toward the boundary.
                let sb = bisect_boundary(&eval, prev_s, s, true);
                emit(sb);
            }
            (None, Some(_)) => {
                if i > 0 {
                    let sb = bisect_boundary(&eval, prev_s, s, false);
                    emit(sb);
                } else {
                    emit(s);
                }
            }
            _ => {}
        }
        if let (Some(a), Some(b), Some(c)) = (prev2, prev, cur) {
            if b >= a && b >= c {
                let sm = golden_max(&eval, prev_s - step, s);
                emit(sm);
            }
        }
        if i == 0 && cur.is_some() {
            emit(0.0);
        }
        if i == APEX_SCAN_STEPS && cur.is_some() {
            emit(1.0);
        }
        prev2 = prev;
        prev = cur;
        prev_s = s;
    }
}

/// Bisect a feasibility transition on [a, b]; returns the feasible side.
/// `feasible_low` says which end starts feasible.
fn bisect_boundary(eval: &dyn Fn(f64) -> Option<f64>, a: f64, b: f64, feasible_low: bool) -> f64 {
    let (mut lo, mut hi) = (a, b);
    let mut feasible_end = if feasible_low { a } else { b };
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        let mid_feasible = eval(mid).is_some();
        if mid_feasible {
            feasible_end = mid;
        }
        if mid_feasible == feasible_low {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    feasible_end
}

/// Golden-section maximum of a possibly-infeasible objective on [a, b].
fn golden_max(eval: &dyn Fn(f64) -> Option<f64>, a: f64, b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let score = |s: f64| eval(s).unwrap_or(f64::NEG_INFINITY);
    let (mut lo, mut hi) = (a.max(0.0), b.min(1.0));
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = score(x1);
    let mut f2 = score(x2);
    for _ in 0..80 {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = score(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = score(x2);
        }
        if hi - lo < 1e-10 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Family (ii): each leg supported by two chain vertices. Ascending chords
/// spanning base-to-chain pair with descending ones; the apex is their
/// intersection.
fn supported_leg_candidates(t: &Terrain, out: &mut Vec<CandidateTriangle>) {
    let eps = tol();
    let chords = candidate_chords(t);
    let on_chain = |p: Point| (t.height_at(p.x) - p.y).abs() <= eps;
    let mut left_legs = Vec::new();
    let mut right_legs = Vec::new();
    for c in &chords {
        let (a, b) = (c.seg.a, c.seg.b);
        if b.x - a.x <= eps {
            continue;
        }
        let slope = (b.y - a.y) / (b.x - a.x);
        if slope > eps && a.y.abs() <= eps && on_chain(b) {
            left_legs.push(c);
        } else if slope < -eps && b.y.abs() <= eps && on_chain(a) {
            right_legs.push(c);
        }
    }
    for l in &left_legs {
        for r in &right_legs {
            let apex = match line_intersection(l.seg.a, l.seg.b, r.seg.a, r.seg.b) {
                Some(p) => p,
                None => continue,
            };
            if apex.y <= eps {
                continue;
            }
            if apex.x < l.seg.a.x - eps
                || apex.x > l.seg.b.x + eps
                || apex.x < r.seg.a.x - eps
                || apex.x > r.seg.b.x + eps
            {
                continue;
            }
            let bl = l.seg.a;
            let br = r.seg.b;
            if br.x - bl.x <= eps {
                continue;
            }
            if let Some(c) = CandidateTriangle::build(t, bl, br, apex) {
                out.push(c);
            }
        }
    }
}

/// Candidates with exactly one vertex on the base: the opposite side is a
/// maximal chord, and the base vertex takes the extreme feasible position in
/// each direction. Extremes are realized where a side grazes a chain vertex,
/// at a base endpoint, or at the degeneracy boundary, so those intercepts
/// form the candidate set.
pub fn vertex_on_base_candidates(t: &Terrain) -> Vec<CandidateTriangle> {
    let eps = tol();
    let mut out = Vec::new();
    let chain = t.chain();
    for c in candidate_chords(t) {
        let (a, b) = (c.seg.a, c.seg.b);
        if c.seg.is_degenerate() || (a.y.abs() <= eps && b.y.abs() <= eps) {
            continue;
        }
        let mut xs: Vec<f64> = vec![t.x_min(), t.x_max()];
        for &endpoint in &[a, b] {
            for &w in chain {
                if let Some(x) = base_intercept(endpoint, w) {
                    if x.is_finite() {
                        xs.push(x.clamp(t.x_min(), t.x_max()));
                    }
                }
            }
        }
        if let Some(x) = base_intercept(a, b) {
            if x.is_finite() {
                xs.push(x.clamp(t.x_min(), t.x_max()));
            }
        }
        xs.sort_by(f64::total_cmp);
        xs.dedup_by(|u, v| (*u - *v).abs() < 1e-12);
        let feasible = |x: f64| {
            let p = Point::new(x, 0.0);
            cross(a, b, p).abs() / 2.0 > eps
                && t.contains_segment(Segment::new(a, p))
                && t.contains_segment(Segment::new(b, p))
        };
        let leftmost = xs.iter().copied().find(|&x| feasible(x));
        let rightmost = xs.iter().rev().copied().find(|&x| feasible(x));
        for x in [leftmost, rightmost].into_iter().flatten() {
            if let Some(cand) = CandidateTriangle::build(t, a, b, Point::new(x, 0.0)) {
                out.push(cand);
            }
        }
    }
    out
}

/// The largest-perimeter inscribed triangle; ties broken by the
/// lexicographically smallest sorted vertex list.
pub fn largest_perimeter_triangle(t: &Terrain) -> Result<CandidateTriangle, TriangleError> {
    let mut candidates = base_case_candidates(t);
    candidates.extend(vertex_on_base_candidates(t));
    let mut best: Option<CandidateTriangle> = None;
    for c in candidates {
        match &best {
            None => best = Some(c),
            Some(b) => {
                let diff = c.perimeter - b.perimeter;
                if diff > 1e-12 || (diff.abs() <= 1e-12 && tie_less(&c, b)) {
                    best = Some(c);
                }
            }
        }
    }
    best.ok_or(TriangleError::NoFeasibleTriangle)
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

    fn contains_triangle(cands: &[CandidateTriangle], verts: [Point; 3]) -> bool {
        cands.iter().any(|c| {
            verts.iter().all(|v| {
                c.vertices
                    .iter()
                    .any(|u| (u.x - v.x).abs() < 1e-7 && (u.y - v.y).abs() < 1e-7)
            })
        })
    }

    #[test]
    fn base_candidates_include_the_container_triangle() {
        let cands = base_case_candidates(&t1());
        assert!(contains_triangle(
            &cands,
            [Point::new(0.0, 0.0), Point::new(2.0, 0.0), Point::new(1.0, 2.0)]
        ));
    }

    #[test]
    fn vertex_on_base_recovers_container_triangle() {
        // The chord (0,0)-(1,2) slides its base vertex right to (2,0).
        let cands = vertex_on_base_candidates(&t1());
        assert!(contains_triangle(
            &cands,
            [Point::new(0.0, 0.0), Point::new(2.0, 0.0), Point::new(1.0, 2.0)]
        ));
    }

    #[test]
    fn vertex_on_base_top_edge_chord() {
        // Top edge chord of the trapezoid with the base vertex at a corner.
        let cands = vertex_on_base_candidates(&t2());
        assert!(contains_triangle(
            &cands,
            [Point::new(0.5, 1.0), Point::new(1.5, 1.0), Point::new(0.0, 0.0)]
        ));
        let expected = 1.0 + 1.25_f64.sqrt() + 3.25_f64.sqrt();
        let found = cands
            .iter()
            .filter(|c| c.case_tag == TriangleCase::VertexOnBase)
            .map(|c| c.perimeter)
            .fold(0.0_f64, f64::max);
        assert!(found >= expected - 1e-9, "{found} < {expected}");
    }

    #[test]
    fn exact_triangle_t1() {
        let best = largest_perimeter_triangle(&t1()).unwrap();
        let expected = 2.0 + 2.0 * 5.0_f64.sqrt();
        assert!((best.perimeter - expected).abs() < 1e-9);
        assert!(contains_triangle(
            &[best],
            [Point::new(0.0, 0.0), Point::new(2.0, 0.0), Point::new(1.0, 2.0)]
        ));
    }

    #[test]
    fn exact_triangle_t2() {
        // Largest perimeter triangle in the trapezoid: base corners plus a
        // top vertex, perimeter 2 + sqrt(1.25) + sqrt(3.25).
        let best = largest_perimeter_triangle(&t2()).unwrap();
        let expected = 2.0 + 1.25_f64.sqrt() + 3.25_f64.sqrt();
        assert!(
            (best.perimeter - expected).abs() < 1e-7,
            "{} vs {}",
            best.perimeter,
            expected
        );
        assert_eq!(best.case_tag, TriangleCase::BaseOnBaseApexOnChain);
    }

    #[test]
    fn exact_triangle_touches_base_and_stays_inside() {
        for t in [t1(), t2(), t3()] {
            let best = largest_perimeter_triangle(&t).unwrap();
            assert!(best.vertices.iter().any(|v| v.y.abs() <= 1e-9));
            for i in 0..3 {
                let s = Segment::new(best.vertices[i], best.vertices[(i + 1) % 3]);
                assert!(t.contains_segment(s));
            }
            if let Some((alpha, beta)) = best.leg_angles {
                assert!(alpha > 0.0 && alpha <= std::f64::consts::FRAC_PI_2 + 1e-7);
                assert!(beta > 0.0 && beta <= std::f64::consts::FRAC_PI_2 + 1e-7);
            }
        }
    }

    #[test]
    fn t3_candidates_blocked_by_reflex_vertex() {
        // Pushing the base vertex right from the chord through (1,3) and
        // (2,0.5) is blocked by the reflex vertex: the line through them
        // meets the base at x = 2.2.
        let cands = vertex_on_base_candidates(&t3());
        assert!(contains_triangle(
            &cands,
            [Point::new(1.0, 3.0), Point::new(2.2, 0.0), Point::new(0.0, 0.0)]
        ));
    }

    #[test]
    fn dominates_vertex_triples() {
        for t in [t1(), t2(), t3()] {
            let best = largest_perimeter_triangle(&t).unwrap();
            let chain = t.chain();
            for i in 0..chain.len() {
                for j in (i + 1)..chain.len() {
                    for k in (j + 1)..chain.len() {
                        let (a, b, c) = (chain[i], chain[j], chain[k]);
                        if t.visible(a, b) && t.visible(b, c) && t.visible(a, c) {
                            let p = a.dist(b) + b.dist(c) + c.dist(a);
                            assert!(
                                best.perimeter >= p - 1e-9,
                                "vertex triple beats result: {p} > {}",
                                best.perimeter
                            );
                        }
                    }
                }
            }
        }
    }
}
