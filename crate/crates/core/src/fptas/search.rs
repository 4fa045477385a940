//! The (1-eps)-approximation driver: enumerate cell subsets and interval
//! tuples inside each big cell, prune by pairwise visibility and measure
//! upper bounds, and optimize vertex placement over interval endpoints.

use std::cmp::Ordering;
use std::collections::HashMap;

use thiserror::Error;

use crate::diameter::{compute_diameter, Chord};
use crate::fptas::grid::{build_grid, Grid};
use crate::fptas::intervals::{extract_intervals, tiny_subintervals, BoundaryInterval, IntervalSet};
use crate::fptas::visibility::visible_interval_pairs;
use crate::geom::{convex_hull, polygon_area, polygon_perimeter, Point, Segment};
use crate::terrain::Terrain;
use crate::tol::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Measure {
    Perimeter,
    Area,
}

#[derive(Clone, Copy, Debug)]
pub struct ApproxConfig {
    pub k: usize,
    pub epsilon: f64,
    pub measure: Measure,
    /// Tiny sub-interval length as a fraction of `epsilon * scale`.
    pub tiny_fraction: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum KgonError {
    #[error("k must be at least 3, got {k} (k = 2 is the diameter problem)")]
    InfeasibleK { k: usize },
    #[error("invalid epsilon {epsilon}; need 0 < epsilon < 1")]
    InvalidEpsilon { epsilon: f64 },
    #[error("invalid tiny_fraction {tiny_fraction}; need 0 < tiny_fraction <= 1/4")]
    InvalidTinyFraction { tiny_fraction: f64 },
    #[error("no inscribed convex polygon found")]
    NoPolygonFound,
}

impl ApproxConfig {
    pub fn new(k: usize, epsilon: f64, measure: Measure) -> Result<ApproxConfig, KgonError> {
        let cfg = ApproxConfig {
            k,
            epsilon,
            measure,
            tiny_fraction: 1.0 / (8.0 * k.max(1) as f64),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), KgonError> {
        if self.k < 3 {
            return Err(KgonError::InfeasibleK { k: self.k });
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(KgonError::InvalidEpsilon { epsilon: self.epsilon });
        }
        if !(self.tiny_fraction > 0.0 && self.tiny_fraction <= 0.25) {
            return Err(KgonError::InvalidTinyFraction {
                tiny_fraction: self.tiny_fraction,
            });
        }
        Ok(())
    }
}

/// An inscribed convex polygon: counterclockwise, starting at the
/// lexicographically smallest vertex, every edge inside the region.
#[derive(Clone, Debug)]
pub struct ConvexPolygon {
    pub vertices: Vec<Point>,
    pub measure_value: f64,
}

impl ConvexPolygon {
    fn from_hull(hull: Vec<Point>, measure: Measure) -> ConvexPolygon {
        let measure_value = measure_of(&hull, measure);
        ConvexPolygon {
            vertices: hull,
            measure_value,
        }
    }
}

fn measure_of(pts: &[Point], measure: Measure) -> f64 {
    match measure {
        Measure::Perimeter => polygon_perimeter(pts).unwrap_or(0.0),
        Measure::Area => polygon_area(pts).unwrap_or(0.0),
    }
}

fn lex_vertices_less(a: &[Point], b: &[Point]) -> bool {
    let mut va: Vec<Point> = a.to_vec();
    let mut vb: Vec<Point> = b.to_vec();
    va.sort_by(|p, q| p.lex_cmp(q));
    vb.sort_by(|p, q| p.lex_cmp(q));
    for (p, q) in va.iter().zip(vb.iter()) {
        match p.lex_cmp(q) {
            Ordering::Less => return true,
            Ordering::Greater => return false,
            Ordering::Equal => {}
        }
    }
    va.len() < vb.len()
}

fn better(candidate: &ConvexPolygon, incumbent: &Option<ConvexPolygon>) -> bool {
    match incumbent {
        None => true,
        Some(b) => {
            let diff = candidate.measure_value - b.measure_value;
            diff > 1e-12
                || (diff.abs() <= 1e-12 && lex_vertices_less(&candidate.vertices, &b.vertices))
        }
    }
}

/// Best convex polygon with 3..=k vertices chosen from the endpoints of the
/// given intervals (after tiny-subinterval reduction), at most one vertex
/// per endpoint and at most two per interval, every edge inside the region.
pub fn best_polygon_on_intervals(
    t: &Terrain,
    chosen: &[BoundaryInterval],
    cfg: &ApproxConfig,
) -> Option<ConvexPolygon> {
    let scale = 2.0 * compute_diameter(t).length;
    let delta = cfg.tiny_fraction * cfg.epsilon * scale;
    best_polygon_on_segments(
        t,
        &chosen.iter().map(|iv| iv.seg).collect::<Vec<_>>(),
        cfg.k,
        cfg.measure,
        delta,
        None,
    )
}

/// Endpoint candidates of one interval after tiny-subinterval reduction.
fn endpoint_candidates(seg: Segment, delta: f64) -> (Point, Point) {
    let tiny = tiny_subintervals(seg, delta);
    if tiny.len() == 1 {
        (tiny[0].a, tiny[0].b)
    } else {
        (tiny[0].a, tiny[1].b)
    }
}

fn best_polygon_on_segments(
    t: &Terrain,
    segs: &[Segment],
    k: usize,
    measure: Measure,
    delta: f64,
    prune_below: Option<f64>,
) -> Option<ConvexPolygon> {
    let eps = tol();
    let m = segs.len();
    let ends: Vec<(Point, Point)> = segs
        .iter()
        .map(|s| endpoint_candidates(*s, delta))
        .collect();
    if let Some(bound) = prune_below {
        let mut all: Vec<Point> = Vec::with_capacity(2 * m);
        for (a, b) in &ends {
            all.push(*a);
            all.push(*b);
        }
        let hull = convex_hull(&all);
        if hull.len() >= 3 && measure_of(&hull, measure) <= bound {
            return None;
        }
    }
    let mut best: Option<ConvexPolygon> = None;
    // Per-interval choice: 0 skip, 1 first endpoint, 2 second, 3 both.
    let mut choice = vec![0u8; m];
    loop {
        let mut pts: Vec<Point> = Vec::with_capacity(2 * m);
        for (i, &c) in choice.iter().enumerate() {
            match c {
                1 => pts.push(ends[i].0),
                2 => pts.push(ends[i].1),
                3 => {
                    pts.push(ends[i].0);
                    pts.push(ends[i].1);
                }
                _ => {}
            }
        }
        if pts.len() >= 3 && pts.len() <= k {
            let hull = convex_hull(&pts);
            if hull.len() == pts.len() {
                let inside = (0..hull.len()).all(|i| {
                    t.contains_segment(Segment::new(hull[i], hull[(i + 1) % hull.len()]))
                });
                if inside {
                    let area = polygon_area(&hull).unwrap_or(0.0);
                    if area > eps {
                        let cand = ConvexPolygon::from_hull(hull, measure);
                        if better(&cand, &best) {
                            best = Some(cand);
                        }
                    }
                }
            }
        }
        // Advance the base-4 counter.
        let mut i = 0;
        loop {
            if i == m {
                return best;
            }
            choice[i] += 1;
            if choice[i] < 4 {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Pairwise visibility matrices per side pair, computed lazily.
struct VisibilityCache<'a> {
    t: &'a Terrain,
    grid: &'a Grid,
    intervals: &'a IntervalSet,
    /// (side_a, side_b) with side_a <= side_b -> bit rows (a-interval ->
    /// mask of visible b-intervals).
    side_pairs: HashMap<(usize, usize), Vec<u64>>,
    cell_pairs: HashMap<(usize, usize), bool>,
}

impl<'a> VisibilityCache<'a> {
    fn new(t: &'a Terrain, grid: &'a Grid, intervals: &'a IntervalSet) -> Self {
        VisibilityCache {
            t,
            grid,
            intervals,
            side_pairs: HashMap::new(),
            cell_pairs: HashMap::new(),
        }
    }

    fn side_refs(&self, side: usize) -> Vec<&'a BoundaryInterval> {
        self.intervals.by_side[side]
            .iter()
            .map(|&id| &self.intervals.all[id])
            .collect()
    }

    fn side_pair_matrix(&mut self, sa: usize, sb: usize) -> &Vec<u64> {
        let key = (sa.min(sb), sa.max(sb));
        if !self.side_pairs.contains_key(&key) {
            let a = self.side_refs(key.0);
            let b = self.side_refs(key.1);
            let mut rows = vec![0u64; a.len()];
            debug_assert!(b.len() <= 64);
            let pairs = visible_interval_pairs(
                self.t,
                &self.grid.sides[key.0],
                &a,
                &self.grid.sides[key.1],
                &b,
            );
            for (i, j) in pairs {
                rows[i] |= 1 << j;
            }
            self.side_pairs.insert(key, rows);
        }
        &self.side_pairs[&key]
    }

    fn interval_pair_visible(&mut self, a: &BoundaryInterval, b: &BoundaryInterval) -> bool {
        if a.id == b.id {
            return true;
        }
        let (first, second, swapped) = if a.side <= b.side {
            (a, b, false)
        } else {
            (b, a, true)
        };
        let rows = self.side_pair_matrix(first.side, second.side);
        if first.side == second.side && swapped {
            // Same side: the matrix row/col layout is symmetric in intent;
            // look up with the roles restored.
            return rows
                .get(second.index_on_side)
                .is_some_and(|r| r >> first.index_on_side & 1 == 1)
                || rows
                    .get(first.index_on_side)
                    .is_some_and(|r| r >> second.index_on_side & 1 == 1);
        }
        rows[first.index_on_side] >> second.index_on_side & 1 == 1
    }

    fn cell_pair_visible(&mut self, ca: usize, cb: usize) -> bool {
        if ca == cb {
            return true;
        }
        let key = (ca.min(cb), ca.max(cb));
        if let Some(&v) = self.cell_pairs.get(&key) {
            return v;
        }
        let sides_a = self.grid.fine[key.0].sides;
        let sides_b = self.grid.fine[key.1].sides;
        let mut visible = false;
        'outer: for &sa in &sides_a {
            for &sb in &sides_b {
                let (lo, hi) = (sa.min(sb), sa.max(sb));
                let rows = self.side_pair_matrix(lo, hi);
                if rows.iter().any(|&r| r != 0) {
                    visible = true;
                    break 'outer;
                }
            }
        }
        self.cell_pairs.insert(key, visible);
        visible
    }
}

/// A feasible triangle with the diameter as a side. Its perimeter is at
/// least twice the diameter, and any inscribed polygon of at most k
/// vertices has perimeter at most k times the diameter, so this seeds the
/// search with a 2/k-approximation and gives the pruning a floor.
fn seed_polygon(t: &Terrain, diam: &Chord, measure: Measure) -> Option<ConvexPolygon> {
    let eps = tol();
    let (a, b) = (diam.seg.a, diam.seg.b);
    let mut candidates: Vec<Point> = t.chain().to_vec();
    let steps = 64;
    for i in 0..=steps {
        let x = t.x_min() + (t.x_max() - t.x_min()) * i as f64 / steps as f64;
        candidates.push(Point::new(x, 0.0));
    }
    // A few points straight below the chord's midpoint.
    let mid = diam.seg.at(0.5);
    for frac in [0.0, 0.25, 0.5, 0.75] {
        candidates.push(Point::new(mid.x, mid.y * frac));
    }
    let mut best: Option<ConvexPolygon> = None;
    for c in candidates {
        if crate::geom::cross(a, b, c).abs() / 2.0 <= eps {
            continue;
        }
        if !t.visible(a, c) || !t.visible(b, c) {
            continue;
        }
        let hull = convex_hull(&[a, b, c]);
        if hull.len() != 3 {
            continue;
        }
        let cand = ConvexPolygon::from_hull(hull, measure);
        if better(&cand, &best) {
            best = Some(cand);
        }
    }
    best
}

fn hull_bound(points: &[Point], measure: Measure) -> f64 {
    let hull = convex_hull(points);
    if hull.len() < 3 {
        return 0.0;
    }
    measure_of(&hull, measure)
}

struct Search<'a> {
    t: &'a Terrain,
    grid: &'a Grid,
    intervals: &'a IntervalSet,
    cache: VisibilityCache<'a>,
    measure: Measure,
    k: usize,
    delta: f64,
    best: Option<ConvexPolygon>,
}

impl<'a> Search<'a> {
    fn best_value(&self) -> f64 {
        self.best.as_ref().map_or(0.0, |b| b.measure_value)
    }

    /// Extend the cell subset; `cells` are the retained fine cells of one
    /// big cell, sorted.
    fn cell_subsets(&mut self, cells: &[usize], chosen: &mut Vec<usize>, start: usize, max: usize) {
        if chosen.len() >= 2 {
            self.interval_tuples(chosen.clone());
        }
        if chosen.len() == max {
            return;
        }
        for pos in start..cells.len() {
            let c = cells[pos];
            if !chosen.iter().all(|&p| self.cache.cell_pair_visible(p, c)) {
                continue;
            }
            // Upper bound with every remaining cell still available.
            if chosen.len() + 1 == max {
                let mut corners: Vec<Point> = Vec::new();
                for &cc in chosen.iter().chain(std::iter::once(&c)) {
                    corners.extend(self.grid.fine[cc].cell.corners());
                }
                if hull_bound(&corners, self.measure) <= self.best_value() {
                    continue;
                }
            }
            chosen.push(c);
            self.cell_subsets(cells, chosen, pos + 1, max);
            chosen.pop();
        }
    }

    /// Enumerate one interval per chosen cell, pairwise visible, and
    /// optimize endpoints for each surviving tuple.
    fn interval_tuples(&mut self, cells: Vec<usize>) {
        let per_cell: Vec<Vec<usize>> = cells
            .iter()
            .map(|&c| {
                let mut ids: Vec<usize> = self.grid.fine[c]
                    .sides
                    .iter()
                    .flat_map(|&s| self.intervals.by_side[s].iter().copied())
                    .collect();
                ids.sort_unstable();
                ids.dedup();
                ids
            })
            .collect();
        if per_cell.iter().any(|v| v.is_empty()) {
            return;
        }
        let mut tuple: Vec<usize> = Vec::with_capacity(cells.len());
        self.tuple_recurse(&per_cell, &mut tuple);
    }

    fn tuple_recurse(&mut self, per_cell: &[Vec<usize>], tuple: &mut Vec<usize>) {
        let depth = tuple.len();
        if depth == per_cell.len() {
            self.finish_tuple(tuple);
            return;
        }
        for &iv in &per_cell[depth] {
            if tuple.contains(&iv) {
                continue; // shared side already contributes this interval
            }
            let cand = self.intervals.all[iv];
            let mut ok = true;
            for &prev in tuple.iter() {
                let p = self.intervals.all[prev];
                if !self.cache.interval_pair_visible(&p, &cand) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            tuple.push(iv);
            // Prefix bound: committed interval endpoints plus the corners of
            // the cells still to come.
            if depth + 1 < per_cell.len() {
                let mut pts: Vec<Point> = Vec::new();
                for &id in tuple.iter() {
                    let s = self.intervals.all[id].seg;
                    pts.push(s.a);
                    pts.push(s.b);
                }
                for rest in &per_cell[depth + 1..] {
                    for &id in rest {
                        let s = self.intervals.all[id].seg;
                        pts.push(s.a);
                        pts.push(s.b);
                    }
                }
                if hull_bound(&pts, self.measure) <= self.best_value() {
                    tuple.pop();
                    continue;
                }
            }
            self.tuple_recurse(per_cell, tuple);
            tuple.pop();
        }
    }

    fn finish_tuple(&mut self, tuple: &[usize]) {
        let segs: Vec<Segment> = tuple.iter().map(|&id| self.intervals.all[id].seg).collect();
        let bound = self.best_value();
        if let Some(cand) = best_polygon_on_segments(
            self.t,
            &segs,
            self.k,
            self.measure,
            self.delta,
            Some(bound),
        ) {
            if better(&cand, &self.best) {
                self.best = Some(cand);
            }
        }
    }
}

/// The (1-eps)-approximation of the largest perimeter/area inscribed convex
/// polygon with at most `cfg.k` vertices.
///
/// The grid runs at half the requested epsilon so the tiny-subinterval
/// displacement is absorbed; for the area measure the factor is first
/// rerouted through `eps' = 1 - sqrt(1 - eps)` so the squared per-edge
/// factor still meets the requested bound.
pub fn approximate_largest_kgon(
    t: &Terrain,
    cfg: &ApproxConfig,
) -> Result<ConvexPolygon, KgonError> {
    cfg.validate()?;
    let diam = compute_diameter(t);
    let scale = 2.0 * diam.length;
    let eps_routed = match cfg.measure {
        Measure::Perimeter => cfg.epsilon,
        Measure::Area => 1.0 - (1.0 - cfg.epsilon).sqrt(),
    };
    let eps_grid = eps_routed / 2.0;
    let delta = cfg.tiny_fraction * eps_routed * scale;
    let grid = build_grid(t, cfg.k, eps_grid, scale);
    let intervals = extract_intervals(t, &grid);

    let mut search = Search {
        t,
        grid: &grid,
        intervals: &intervals,
        cache: VisibilityCache::new(t, &grid, &intervals),
        measure: cfg.measure,
        k: cfg.k,
        delta,
        best: seed_polygon(t, &diam, cfg.measure),
    };

    // Any big cell containing the whole terrain already sees every
    // candidate polygon; at this grid scale the first one always does.
    let (lo, hi) = t.bbox();
    let bigs: Vec<usize> = match grid.big.iter().position(|b| b.contains_bbox(lo, hi)) {
        Some(i) => vec![i],
        None => (0..grid.big.len()).collect(),
    };
    for big in bigs {
        let cells = grid.fine_cells_of_big(big);
        if cells.is_empty() {
            continue;
        }
        let max = cfg.k.min(cells.len());
        let mut chosen = Vec::with_capacity(max);
        search.cell_subsets(&cells, &mut chosen, 0, max);
    }
    search.best.ok_or(KgonError::NoPolygonFound)
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

    fn degenerate_interval(id: usize, p: Point) -> BoundaryInterval {
        BoundaryInterval {
            id,
            side: 0,
            index_on_side: 0,
            seg: Segment::new(p, p),
        }
    }

    #[test]
    fn config_validation() {
        assert!(ApproxConfig::new(3, 0.25, Measure::Perimeter).is_ok());
        assert!(matches!(
            ApproxConfig::new(2, 0.25, Measure::Perimeter),
            Err(KgonError::InfeasibleK { k: 2 })
        ));
        assert!(matches!(
            ApproxConfig::new(3, 1.5, Measure::Perimeter),
            Err(KgonError::InvalidEpsilon { .. })
        ));
    }

    #[test]
    fn point_intervals_recover_triangle() {
        let t = t1();
        let cfg = ApproxConfig::new(3, 0.25, Measure::Perimeter).unwrap();
        let chosen = [
            degenerate_interval(0, Point::new(0.0, 0.0)),
            degenerate_interval(1, Point::new(1.0, 2.0)),
            degenerate_interval(2, Point::new(2.0, 0.0)),
        ];
        let poly = best_polygon_on_intervals(&t, &chosen, &cfg).unwrap();
        assert_eq!(poly.vertices.len(), 3);
        let expected = 2.0 + 2.0 * 5.0_f64.sqrt();
        assert!((poly.measure_value - expected).abs() < 1e-9);
    }

    #[test]
    fn collinear_point_intervals_yield_none() {
        let t = t1();
        let cfg = ApproxConfig::new(3, 0.25, Measure::Perimeter).unwrap();
        let chosen = [
            degenerate_interval(0, Point::new(0.2, 0.0)),
            degenerate_interval(1, Point::new(1.0, 0.0)),
            degenerate_interval(2, Point::new(1.8, 0.0)),
        ];
        assert!(best_polygon_on_intervals(&t, &chosen, &cfg).is_none());
    }

    #[test]
    fn at_most_k_returns_triangle_when_fourth_point_is_interior() {
        let t = t1();
        let cfg = ApproxConfig::new(4, 0.25, Measure::Perimeter).unwrap();
        let chosen = [
            degenerate_interval(0, Point::new(0.0, 0.0)),
            degenerate_interval(1, Point::new(1.0, 2.0)),
            degenerate_interval(2, Point::new(2.0, 0.0)),
            degenerate_interval(3, Point::new(1.0, 0.5)), // inside the hull
        ];
        let poly = best_polygon_on_intervals(&t, &chosen, &cfg).unwrap();
        assert_eq!(poly.vertices.len(), 3);
    }

    #[test]
    fn approx_triangle_bounds_on_container() {
        let t = t1();
        let exact = 2.0 + 2.0 * 5.0_f64.sqrt();
        for k in [3, 4] {
            let cfg = ApproxConfig::new(k, 0.25, Measure::Perimeter).unwrap();
            let poly = approximate_largest_kgon(&t, &cfg).unwrap();
            assert!(
                poly.measure_value >= 0.75 * exact - 1e-9,
                "k={k}: {} < {}",
                poly.measure_value,
                0.75 * exact
            );
            assert!(poly.measure_value <= exact + 1e-9);
        }
    }

    #[test]
    fn returned_polygon_is_feasible() {
        for (t, k, measure) in [
            (t1(), 3, Measure::Perimeter),
            (t3(), 4, Measure::Area),
            (t3(), 5, Measure::Perimeter),
        ] {
            let cfg = ApproxConfig::new(k, 0.25, measure).unwrap();
            let poly = approximate_largest_kgon(&t, &cfg).unwrap();
            assert!(poly.vertices.len() >= 3 && poly.vertices.len() <= k);
            assert!(crate::geom::is_convex(&poly.vertices, false).unwrap());
            let n = poly.vertices.len();
            for i in 0..n {
                assert!(t.contains_segment(Segment::new(
                    poly.vertices[i],
                    poly.vertices[(i + 1) % n]
                )));
            }
            let recomputed = measure_of(&poly.vertices, measure);
            assert!((recomputed - poly.measure_value).abs() < 1e-9);
        }
    }

    #[test]
    fn monotone_in_k() {
        let t = t3();
        let mut last = 0.0;
        for k in [3, 4, 5] {
            let cfg = ApproxConfig::new(k, 0.25, Measure::Perimeter).unwrap();
            let poly = approximate_largest_kgon(&t, &cfg).unwrap();
            assert!(
                poly.measure_value >= last - 1e-9,
                "k={k} dropped: {} < {last}",
                poly.measure_value
            );
            last = poly.measure_value;
        }
    }
}
