//! Weak visibility between boundary intervals.
//!
//! For a source interval and a target cell side we compute the visibility
//! ranges: the maximal sub-segments of the target side visible from at
//! least one source point. The candidate breakpoints of the visible set are
//! the configurations where the sight line grazes chain vertices (from a
//! source endpoint through one vertex, or through two vertices), so testing
//! the gaps between those events decides the whole side exactly. Interval
//! pairs then follow from stabbing queries against the ordered, disjoint
//! intervals of the target side.

use crate::fptas::grid::SideGeom;
use crate::fptas::intervals::BoundaryInterval;
use crate::geom::{line_intersection_params, Point, Segment};
use crate::terrain::Terrain;
use crate::tol::tol;

/// A maximal visible sub-segment of a target side, as seen from some point
/// of the source interval.
#[derive(Clone, Debug)]
pub struct VisibilityRange {
    pub source: usize,
    pub target_side: usize,
    pub range: Segment,
}

/// Can any point of segment `s` see `q`? Candidate viewpoints are the
/// segment endpoints and the points where a sight line through `q` grazes a
/// chain vertex. Returns a witness viewpoint.
pub fn segment_sees_point(t: &Terrain, s: Segment, q: Point) -> Option<Point> {
    let eps = tol();
    let mut candidates = vec![0.0, 1.0];
    for &w in t.chain() {
        if q.dist(w) <= eps {
            continue;
        }
        if let Some((u, _)) = line_intersection_params(s.a, s.b, q, w) {
            if (-eps..=1.0 + eps).contains(&u) {
                candidates.push(u.clamp(0.0, 1.0));
            }
        }
    }
    for u in candidates {
        let p = s.at(u);
        if t.visible(p, q) {
            return Some(p);
        }
    }
    None
}

/// Critical parameters on the target side where the visible set from `s`
/// can start or stop.
fn critical_params(t: &Terrain, s: Segment, target: Segment) -> Vec<f64> {
    let eps = tol();
    let chain = t.chain();
    let mut vs = vec![0.0, 1.0];
    let mut push = |v: f64| {
        if (-eps..=1.0 + eps).contains(&v) {
            vs.push(v.clamp(0.0, 1.0));
        }
    };
    // Sight lines from a source endpoint through one vertex.
    for &endpoint in &[s.a, s.b] {
        for &w in chain {
            if endpoint.dist(w) <= eps {
                continue;
            }
            if let Some((_, v)) = line_intersection_params(endpoint, w, target.a, target.b) {
                push(v);
            }
        }
    }
    // Sight lines through two vertices that cross the source segment.
    for i in 0..chain.len() {
        for j in (i + 1)..chain.len() {
            let (w1, w2) = (chain[i], chain[j]);
            if let Some((_, u)) = line_intersection_params(w1, w2, s.a, s.b) {
                if !(-eps..=1.0 + eps).contains(&u) {
                    continue;
                }
                if let Some((_, v)) = line_intersection_params(w1, w2, target.a, target.b) {
                    push(v);
                }
            }
        }
    }
    vs.sort_by(f64::total_cmp);
    vs.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    vs
}

/// All maximal visible sub-segments of `target_side` as seen from the
/// source interval.
pub fn visibility_ranges(
    t: &Terrain,
    source: &BoundaryInterval,
    target_side: usize,
    target_seg: Segment,
) -> Vec<VisibilityRange> {
    let events = critical_params(t, source.seg, target_seg);
    let n = events.len();
    let event_vis: Vec<bool> = events
        .iter()
        .map(|&v| segment_sees_point(t, source.seg, target_seg.at(v)).is_some())
        .collect();
    let gap_vis: Vec<bool> = (0..n.saturating_sub(1))
        .map(|i| {
            let mid = 0.5 * (events[i] + events[i + 1]);
            segment_sees_point(t, source.seg, target_seg.at(mid)).is_some()
        })
        .collect();

    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        if i + 1 < n && gap_vis[i] {
            let start = i;
            let mut j = i;
            while j + 1 < n && gap_vis[j] {
                j += 1;
            }
            out.push(VisibilityRange {
                source: source.id,
                target_side,
                range: Segment::new(target_seg.at(events[start]), target_seg.at(events[j])),
            });
            i = j;
        } else if event_vis[i] && (i == 0 || !gap_vis[i - 1]) {
            // Isolated visible point (a grazing configuration).
            out.push(VisibilityRange {
                source: source.id,
                target_side,
                range: Segment::new(target_seg.at(events[i]), target_seg.at(events[i])),
            });
            i += 1;
        } else {
            i += 1;
        }
    }
    out
}

/// Stabbing index over one side's intervals. They are disjoint and ordered
/// along the side, so prefix/suffix binary searches answer "which intervals
/// with index in [lo, hi] meet the window [a, b]" in O(log n).
pub struct VisibilityIndex {
    starts: Vec<f64>,
    ends: Vec<f64>,
}

impl VisibilityIndex {
    pub fn build(side: &SideGeom, intervals: &[&BoundaryInterval]) -> VisibilityIndex {
        let starts: Vec<f64> = intervals.iter().map(|iv| side.coord_of(iv.seg.a)).collect();
        let ends: Vec<f64> = intervals.iter().map(|iv| side.coord_of(iv.seg.b)).collect();
        debug_assert!(starts.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(ends.windows(2).all(|w| w[0] <= w[1]));
        VisibilityIndex { starts, ends }
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    /// Indices in `[lo, hi]` whose interval intersects `[a, b]`, as an
    /// inclusive index range.
    pub fn query(&self, lo: usize, hi: usize, a: f64, b: f64) -> Option<(usize, usize)> {
        if self.starts.is_empty() || lo > hi {
            return None;
        }
        let eps = tol();
        // start <= b holds on a prefix, end >= a on a suffix.
        let prefix_end = self.starts.partition_point(|&s| s <= b + eps);
        let suffix_start = self.ends.partition_point(|&e| e < a - eps);
        if prefix_end == 0 {
            return None;
        }
        let lo2 = lo.max(suffix_start);
        let hi2 = hi.min(prefix_end - 1).min(self.starts.len() - 1);
        if lo2 <= hi2 {
            Some((lo2, hi2))
        } else {
            None
        }
    }
}

/// All pairs (i, j) such that some point of `a[i]` sees some point of
/// `b[j]`, computed from the visibility ranges of each source interval and
/// stabbing queries on the target side.
pub fn visible_interval_pairs(
    t: &Terrain,
    side_a: &SideGeom,
    a: &[&BoundaryInterval],
    side_b: &SideGeom,
    b: &[&BoundaryInterval],
) -> Vec<(usize, usize)> {
    let _ = side_a;
    let mut pairs = Vec::new();
    if a.is_empty() || b.is_empty() {
        return pairs;
    }
    let index = VisibilityIndex::build(side_b, b);
    for (i, iv) in a.iter().enumerate() {
        let mut hit = vec![false; b.len()];
        for r in visibility_ranges(t, iv, usize::MAX, side_b.seg) {
            let (ra, rb) = (side_b.coord_of(r.range.a), side_b.coord_of(r.range.b));
            let (ra, rb) = if ra <= rb { (ra, rb) } else { (rb, ra) };
            if let Some((lo, hi)) = index.query(0, b.len() - 1, ra, rb) {
                for flag in hit.iter_mut().take(hi + 1).skip(lo) {
                    *flag = true;
                }
            }
        }
        for (j, h) in hit.into_iter().enumerate() {
            if h {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fptas::grid::Axis;

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

    fn iv(id: usize, side: usize, index_on_side: usize, a: Point, b: Point) -> BoundaryInterval {
        BoundaryInterval {
            id,
            side,
            index_on_side,
            seg: Segment::new(a, b),
        }
    }

    #[test]
    fn index_single_interval() {
        let side = SideGeom {
            axis: Axis::Horizontal,
            seg: Segment::new(Point::new(0.0, 0.0), Point::new(1.0, 0.0)),
        };
        let a = iv(0, 0, 0, Point::new(0.2, 0.0), Point::new(0.8, 0.0));
        let idx = VisibilityIndex::build(&side, &[&a]);
        assert_eq!(idx.query(0, 0, 0.0, 1.0), Some((0, 0)));
        assert_eq!(idx.query(0, 0, 0.9, 1.0), None);
    }

    #[test]
    fn index_empty_side_misses() {
        let side = SideGeom {
            axis: Axis::Horizontal,
            seg: Segment::new(Point::new(0.0, 0.0), Point::new(1.0, 0.0)),
        };
        let idx = VisibilityIndex::build(&side, &[]);
        assert!(idx.is_empty());
        assert_eq!(idx.query(0, 0, 0.0, 1.0), None);
    }

    #[test]
    fn index_window_hits_middle_interval() {
        let side = SideGeom {
            axis: Axis::Horizontal,
            seg: Segment::new(Point::new(0.0, 0.0), Point::new(10.0, 0.0)),
        };
        let ivs: Vec<BoundaryInterval> = (0..5)
            .map(|i| {
                let x = 2.0 * i as f64;
                iv(i, 0, i, Point::new(x, 0.0), Point::new(x + 1.0, 0.0))
            })
            .collect();
        let refs: Vec<&BoundaryInterval> = ivs.iter().collect();
        let idx = VisibilityIndex::build(&side, &refs);
        // Indices 2..=4, window overlapping only interval 3 ([6, 7]).
        assert_eq!(idx.query(2, 4, 6.2, 6.8), Some((3, 3)));
        // Linear-scan oracle agreement over random windows.
        for w in 0..200 {
            let a = (w % 40) as f64 * 0.25;
            let b = a + ((w * 7) % 17) as f64 * 0.2;
            for lo in 0..5 {
                for hi in lo..5 {
                    let expect: Vec<usize> = (lo..=hi)
                        .filter(|&i| {
                            let s = refs[i].seg;
                            s.a.x <= b && s.b.x >= a
                        })
                        .collect();
                    let got = idx.query(lo, hi, a, b);
                    match got {
                        None => assert!(expect.is_empty(), "window [{a},{b}] idx [{lo},{hi}]"),
                        Some((l, h)) => assert_eq!(expect, (l..=h).collect::<Vec<_>>()),
                    }
                }
            }
        }
    }

    #[test]
    fn convex_terrain_sides_fully_visible() {
        let t = Terrain::build(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 2.0),
            Point::new(2.0, 0.0),
        ])
        .unwrap();
        let side_a = SideGeom {
            axis: Axis::Horizontal,
            seg: Segment::new(Point::new(0.0, 0.0), Point::new(2.0, 0.0)),
        };
        let side_b = SideGeom {
            axis: Axis::Horizontal,
            seg: Segment::new(Point::new(0.5, 1.0), Point::new(1.5, 1.0)),
        };
        let a = iv(0, 0, 0, Point::new(0.0, 0.0), Point::new(2.0, 0.0));
        let b = iv(1, 1, 0, Point::new(0.5, 1.0), Point::new(1.5, 1.0));
        let pairs = visible_interval_pairs(&t, &side_a, &[&a], &side_b, &[&b]);
        assert_eq!(pairs, vec![(0, 0)]);
    }

    #[test]
    fn valley_blocks_peak_to_peak_intervals() {
        let t = t3();
        let side_a = SideGeom {
            axis: Axis::Horizontal,
            seg: Segment::new(Point::new(0.8, 2.8), Point::new(1.1, 2.8)),
        };
        let side_b = SideGeom {
            axis: Axis::Horizontal,
            seg: Segment::new(Point::new(2.9, 2.8), Point::new(3.2, 2.8)),
        };
        // Clip to the region: chain height 2.8 on the left peak spans
        // x in [0.9333.., 1.08]; mirrored on the right peak.
        let a = iv(0, 0, 0, Point::new(0.94, 2.8), Point::new(1.08, 2.8));
        let b = iv(1, 1, 0, Point::new(2.92, 2.8), Point::new(3.06, 2.8));
        let pairs = visible_interval_pairs(&t, &side_a, &[&a], &side_b, &[&b]);
        assert!(pairs.is_empty());
    }

    #[test]
    fn adjacent_sides_sharing_a_corner_are_paired() {
        let t = t3();
        let side_a = SideGeom {
            axis: Axis::Horizontal,
            seg: Segment::new(Point::new(0.5, 0.0), Point::new(1.0, 0.0)),
        };
        let side_b = SideGeom {
            axis: Axis::Vertical,
            seg: Segment::new(Point::new(1.0, 0.0), Point::new(1.0, 0.5)),
        };
        let a = iv(0, 0, 0, Point::new(0.5, 0.0), Point::new(1.0, 0.0));
        let b = iv(1, 1, 0, Point::new(1.0, 0.0), Point::new(1.0, 0.5));
        let pairs = visible_interval_pairs(&t, &side_a, &[&a], &side_b, &[&b]);
        assert_eq!(pairs, vec![(0, 0)]);
    }

    #[test]
    fn ranges_are_visible_and_certified() {
        let t = t3();
        let source = iv(0, 0, 0, Point::new(0.94, 2.8), Point::new(1.08, 2.8));
        let target = Segment::new(Point::new(0.0, 0.0), Point::new(4.0, 0.0));
        let ranges = visibility_ranges(&t, &source, 7, target);
        assert!(!ranges.is_empty());
        for r in &ranges {
            for step in 0..=8 {
                let q = r.range.at(step as f64 / 8.0);
                assert!(
                    segment_sees_point(&t, source.seg, q).is_some(),
                    "unwitnessed point {:?} in {:?}",
                    q,
                    r.range
                );
            }
        }
        // The far-right base beyond the valley shadow is not visible from
        // high on the left peak; ranges must not reach x = 4 fully.
        let reach = ranges
            .iter()
            .map(|r| r.range.a.x.max(r.range.b.x))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(reach < 4.0 - 1e-9, "reach {reach}");
    }
}
