//! Independent brute-force ground truth.
//!
//! The oracles never share candidate-generation code with the algorithms
//! they check: containment here is a from-scratch crossing-count test
//! against the closed polygon (chain followed by the base edge), not the
//! height-function comparison used by [`crate::terrain`].

use crate::geom::{polygon_area, polygon_perimeter, Point, Segment};
use crate::terrain::Terrain;
use crate::tol::tol;

/// Boundary samples at arc-length spacing `delta`, plus all chain vertices.
#[derive(Clone, Debug)]
pub struct SampleSet {
    pub points: Vec<Point>,
    pub delta: f64,
}

/// Sample the terrain boundary (chain and base). The spacing is widened to
/// `max(delta, boundary_length / max_points)` so subset enumeration stays
/// bounded; the effective spacing is recorded in the result.
pub fn boundary_samples(t: &Terrain, delta: f64, max_points: usize) -> SampleSet {
    assert!(delta > 0.0);
    let chain = t.chain();
    let mut boundary_len = t.x_max() - t.x_min();
    for w in chain.windows(2) {
        boundary_len += w[0].dist(w[1]);
    }
    let eff_delta = delta.max(boundary_len / max_points.max(4) as f64);

    let mut points = Vec::new();
    for w in chain.windows(2) {
        let len = w[0].dist(w[1]);
        let steps = (len / eff_delta).ceil().max(1.0) as usize;
        for s in 0..steps {
            let f = s as f64 / steps as f64;
            points.push(Point::new(
                w[0].x + f * (w[1].x - w[0].x),
                w[0].y + f * (w[1].y - w[0].y),
            ));
        }
    }
    // Base, right to left, skipping the shared corner samples.
    let base_len = t.x_max() - t.x_min();
    let steps = (base_len / eff_delta).ceil().max(1.0) as usize;
    for s in 0..steps {
        let f = s as f64 / steps as f64;
        points.push(Point::new(t.x_max() - f * base_len, 0.0));
    }
    SampleSet {
        points,
        delta: eff_delta,
    }
}

/// Even-odd crossing count with an explicit on-boundary test; the boundary
/// counts as inside.
pub fn point_inside(t: &Terrain, p: Point) -> bool {
    let poly = t.chain();
    let n = poly.len();
    let eps = tol();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if on_segment(a, b, p, eps) {
            return true;
        }
    }
    let mut inside = false;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x_int = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x_int {
                inside = !inside;
            }
        }
    }
    inside
}

fn on_segment(a: Point, b: Point, p: Point, eps: f64) -> bool {
    let cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    let len = a.dist(b);
    if len <= eps {
        return p.dist(a) <= eps;
    }
    if cross.abs() / len > eps {
        return false;
    }
    let dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
    dot >= -eps * len && dot <= len * len + eps * len
}

/// Segment containment by dense edge intersection: no proper crossing with
/// any polygon edge, and the midpoint of every gap between touch points is
/// inside.
pub fn segment_inside(t: &Terrain, a: Point, b: Point) -> bool {
    if !point_inside(t, a) || !point_inside(t, b) {
        return false;
    }
    let poly = t.chain();
    let n = poly.len();
    let eps = tol();
    let mut touches: Vec<f64> = vec![0.0, 1.0];
    for i in 0..n {
        let c = poly[i];
        let d = poly[(i + 1) % n];
        match seg_seg(a, b, c, d, eps) {
            SegHit::Proper => return false,
            SegHit::Touch(ts) => touches.extend(ts),
            SegHit::None => {}
        }
    }
    touches.sort_by(f64::total_cmp);
    touches.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    for w in touches.windows(2) {
        let m = 0.5 * (w[0] + w[1]);
        let p = Point::new(a.x + m * (b.x - a.x), a.y + m * (b.y - a.y));
        if !point_inside(t, p) {
            return false;
        }
    }
    true
}

enum SegHit {
    None,
    /// Parameters on (a, b) where it meets the edge without crossing through.
    Touch(Vec<f64>),
    Proper,
}

fn seg_seg(a: Point, b: Point, c: Point, d: Point, eps: f64) -> SegHit {
    let r = Point::new(b.x - a.x, b.y - a.y);
    let s = Point::new(d.x - c.x, d.y - c.y);
    let denom = r.x * s.y - r.y * s.x;
    let qp = Point::new(c.x - a.x, c.y - a.y);
    let cross_qp_r = qp.x * r.y - qp.y * r.x;
    let scale = r.x.abs().max(r.y.abs()).max(s.x.abs()).max(s.y.abs()).max(1.0);
    if denom.abs() <= eps * scale * scale {
        if cross_qp_r.abs() > eps * scale * scale {
            return SegHit::None; // parallel, not collinear
        }
        // Collinear: project the edge onto (a, b) and report the overlap ends.
        let rr = r.x * r.x + r.y * r.y;
        if rr <= eps * eps {
            return SegHit::None;
        }
        let t0 = (qp.x * r.x + qp.y * r.y) / rr;
        let t1 = t0 + (s.x * r.x + s.y * r.y) / rr;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        if hi < 0.0 || lo > 1.0 {
            return SegHit::None;
        }
        return SegHit::Touch(vec![lo.clamp(0.0, 1.0), hi.clamp(0.0, 1.0)]);
    }
    let t_ab = (qp.x * s.y - qp.y * s.x) / denom;
    let u_cd = cross_qp_r / denom;
    let tol_t = eps / scale.max(1.0);
    if t_ab < -tol_t || t_ab > 1.0 + tol_t || u_cd < -tol_t || u_cd > 1.0 + tol_t {
        return SegHit::None;
    }
    let interior_ab = t_ab > tol_t && t_ab < 1.0 - tol_t;
    let interior_cd = u_cd > tol_t && u_cd < 1.0 - tol_t;
    if interior_ab && interior_cd {
        // Crossing through an edge interior always exits the region.
        SegHit::Proper
    } else {
        SegHit::Touch(vec![t_ab.clamp(0.0, 1.0)])
    }
}

/// Longest sampled segment that lies inside the region.
pub fn oracle_diameter(t: &Terrain, delta: f64) -> f64 {
    oracle_diameter_with(t, delta, None)
}

/// Like [`oracle_diameter`] but locally refined: the candidate segment's
/// endpoints join the competition if the oracle's own containment test
/// confirms them.
pub fn oracle_diameter_refined(t: &Terrain, delta: f64, candidate: Segment) -> f64 {
    oracle_diameter_with(t, delta, Some(candidate))
}

fn oracle_diameter_with(t: &Terrain, delta: f64, candidate: Option<Segment>) -> f64 {
    let samples = boundary_samples(t, delta, 20_000);
    let pts = &samples.points;
    // The base is always a chord; start from it so the scan can prune.
    let mut best = t.x_max() - t.x_min();
    if let Some(c) = candidate {
        if segment_inside(t, c.a, c.b) {
            best = best.max(c.length());
        }
    }
    let mut best2 = best * best;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let d2 = pts[i].dist2(pts[j]);
            if d2 > best2 && segment_inside(t, pts[i], pts[j]) {
                best2 = d2;
                best = d2.sqrt();
            }
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMeasure {
    Perimeter,
    Area,
}

/// Best measure over all subsets of boundary samples of size 3..=k that are
/// in convex position with every vertex pair (hence every hull edge) inside.
/// A lower bound on the true optimum, converging as `delta -> 0`.
pub fn oracle_best_kgon(t: &Terrain, k: usize, delta: f64, measure: OracleMeasure) -> f64 {
    assert!(k >= 3);
    let max_points = match k {
        3 => 390,
        4 => 119,
        _ => 64,
    };
    let samples = boundary_samples(t, delta, max_points);
    let pts = &samples.points;
    let m = pts.len();
    // Pairwise visibility bitmask rows.
    let words = m.div_ceil(64);
    let mut vis = vec![0u64; m * words];
    for i in 0..m {
        for j in (i + 1)..m {
            if segment_inside(t, pts[i], pts[j]) {
                vis[i * words + j / 64] |= 1 << (j % 64);
                vis[j * words + i / 64] |= 1 << (i % 64);
            }
        }
    }
    let sees = |i: usize, j: usize| vis[i * words + j / 64] >> (j % 64) & 1 == 1;

    let mut best = 0.0_f64;
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    // Depth-first over index-increasing subsets; extend only with samples
    // visible from everything chosen so far.
    fn recurse(
        pts: &[Point],
        sees: &dyn Fn(usize, usize) -> bool,
        k: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        measure: OracleMeasure,
        best: &mut f64,
    ) {
        if chosen.len() >= 3 {
            let poly: Vec<Point> = chosen.iter().map(|&i| pts[i]).collect();
            if let Some(value) = convex_measure(&poly, measure) {
                if value > *best {
                    *best = value;
                }
            }
        }
        if chosen.len() == k {
            return;
        }
        for i in start..pts.len() {
            if chosen.iter().all(|&j| sees(j, i)) {
                chosen.push(i);
                recurse(pts, sees, k, i + 1, chosen, measure, best);
                chosen.pop();
            }
        }
    }
    recurse(pts, &sees, k, 0, &mut chosen, measure, &mut best);
    best
}

/// Measure of the point set if it is in strictly convex position (in some
/// order); `None` otherwise.
fn convex_measure(pts: &[Point], measure: OracleMeasure) -> Option<f64> {
    let hull = crate::geom::convex_hull(pts);
    if hull.len() != pts.len() {
        return None;
    }
    match measure {
        OracleMeasure::Perimeter => polygon_perimeter(&hull).ok(),
        OracleMeasure::Area => polygon_area(&hull).ok(),
    }
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

    #[test]
    fn independent_containment_agrees_on_basics() {
        let t = t3();
        assert!(point_inside(&t, Point::new(2.0, 0.25)));
        assert!(point_inside(&t, Point::new(2.0, 0.5))); // on the reflex vertex
        assert!(!point_inside(&t, Point::new(2.0, 0.75)));
        assert!(segment_inside(&t, Point::new(0.5, 0.1), Point::new(3.5, 0.1)));
        assert!(!segment_inside(&t, Point::new(0.5, 1.0), Point::new(3.5, 1.0)));
        assert!(segment_inside(&t, Point::new(0.0, 0.0), Point::new(4.0, 0.0)));
        // Grazing the reflex vertex.
        assert!(segment_inside(&t, Point::new(1.0, 3.0), Point::new(2.0, 0.5)));
    }

    #[test]
    fn oracle_diameter_golden() {
        assert!((oracle_diameter(&t1(), 0.01) - 5.0_f64.sqrt()).abs() <= 0.02);
        assert!((oracle_diameter(&t2(), 0.01) - 2.0).abs() <= 0.02);
        assert!((oracle_diameter(&t3(), 0.01) - 4.0).abs() <= 0.02);
    }

    #[test]
    fn oracle_kgon_hits_vertex_optimum_in_convex_terrain() {
        // Chain vertices are sampled exactly, so the triangle itself is found.
        let exact = 2.0 + 2.0 * 5.0_f64.sqrt();
        let v3 = oracle_best_kgon(&t1(), 3, 0.05, OracleMeasure::Perimeter);
        assert!((v3 - exact).abs() < 1e-9, "{v3} vs {exact}");
        // Containment monotonicity in a triangle: k = 4 adds nothing.
        let v4 = oracle_best_kgon(&t1(), 4, 0.05, OracleMeasure::Perimeter);
        assert!((v4 - v3).abs() < 1e-9);
    }

    #[test]
    fn samples_are_inside_and_dense() {
        let t = t3();
        let s = boundary_samples(&t, 0.05, 20_000);
        assert!(s.points.iter().all(|&p| point_inside(&t, p)));
        for v in t.chain() {
            assert!(s.points.iter().any(|p| p.dist(*v) < 1e-12));
        }
    }
}
