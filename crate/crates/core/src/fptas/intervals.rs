//! Boundary intervals: the maximal sub-segments of fine-cell sides that lie
//! inside the region. Polygon vertices are optimized over their endpoints.

use crate::fptas::grid::{Axis, Grid};
use crate::geom::{Point, Segment};
use crate::terrain::Terrain;
use crate::tol::tol;

#[derive(Clone, Copy, Debug)]
pub struct BoundaryInterval {
    pub id: usize,
    /// Side id in the grid's side table.
    pub side: usize,
    /// Position among the side's intervals, ordered along the side.
    pub index_on_side: usize,
    pub seg: Segment,
}

#[derive(Clone, Debug, Default)]
pub struct IntervalSet {
    pub all: Vec<BoundaryInterval>,
    /// Interval ids per side id.
    pub by_side: Vec<Vec<usize>>,
}

pub fn extract_intervals(t: &Terrain, grid: &Grid) -> IntervalSet {
    let mut set = IntervalSet {
        all: Vec::new(),
        by_side: vec![Vec::new(); grid.sides.len()],
    };
    for (side_id, side) in grid.sides.iter().enumerate() {
        let segs = match side.axis {
            Axis::Vertical => vertical_intervals(t, side.seg),
            Axis::Horizontal => horizontal_intervals(t, side.seg),
        };
        for (index_on_side, seg) in segs.into_iter().enumerate() {
            let id = set.all.len();
            set.all.push(BoundaryInterval {
                id,
                side: side_id,
                index_on_side,
                seg,
            });
            set.by_side[side_id].push(id);
        }
    }
    set
}

/// A vertical side meets the region in at most one interval, because the
/// region is vertically convex under the chain.
fn vertical_intervals(t: &Terrain, seg: Segment) -> Vec<Segment> {
    let eps = tol();
    let x = seg.a.x;
    if x < t.x_min() - eps || x > t.x_max() + eps {
        return Vec::new();
    }
    let xc = x.clamp(t.x_min(), t.x_max());
    let (ylo, yhi) = if seg.a.y <= seg.b.y {
        (seg.a.y, seg.b.y)
    } else {
        (seg.b.y, seg.a.y)
    };
    let lo = ylo.max(0.0);
    let hi = yhi.min(t.height_at(xc));
    if hi < lo - eps {
        return Vec::new();
    }
    let hi = hi.max(lo);
    vec![Segment::new(Point::new(xc, lo), Point::new(xc, hi))]
}

/// A horizontal side at height y meets the region where the chain stays at
/// or above y; walk the chain breakpoints and interpolate the crossings.
fn horizontal_intervals(t: &Terrain, seg: Segment) -> Vec<Segment> {
    let eps = tol();
    let y = seg.a.y;
    if y < -eps {
        return Vec::new();
    }
    let y = y.max(0.0);
    let (xlo, xhi) = if seg.a.x <= seg.b.x {
        (seg.a.x, seg.b.x)
    } else {
        (seg.b.x, seg.a.x)
    };
    let lo = xlo.max(t.x_min());
    let hi = xhi.min(t.x_max());
    if lo > hi + eps {
        return Vec::new();
    }
    let hi = hi.max(lo);
    // Breakpoints: clipped ends plus chain vertices strictly inside.
    let mut xs = vec![lo];
    let start = t.chain().partition_point(|p| p.x <= lo);
    for v in &t.chain()[start..] {
        if v.x >= hi {
            break;
        }
        xs.push(v.x);
    }
    xs.push(hi);

    let g = |x: f64| t.height_at(x) - y;
    let mut out: Vec<Segment> = Vec::new();
    let mut open: Option<f64> = None;
    let mut close = |open: &mut Option<f64>, end: f64, out: &mut Vec<Segment>| {
        if let Some(s) = open.take() {
            out.push(Segment::new(Point::new(s, y), Point::new(end, y)));
        }
    };
    for w in xs.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let (g0, g1) = (g(x0), g(x1));
        match (g0 >= 0.0, g1 >= 0.0) {
            (true, true) => {
                if open.is_none() {
                    open = Some(x0);
                }
            }
            (true, false) => {
                if open.is_none() {
                    open = Some(x0);
                }
                let xc = x0 + (x1 - x0) * (g0 / (g0 - g1)).clamp(0.0, 1.0);
                close(&mut open, xc, &mut out);
            }
            (false, true) => {
                let xc = x0 + (x1 - x0) * (g0 / (g0 - g1)).clamp(0.0, 1.0);
                open = Some(xc);
            }
            (false, false) => {}
        }
    }
    close(&mut open, hi, &mut out);
    out
}

/// Shrink an interval to sub-intervals that carry its endpoints. Intervals
/// no longer than `2 * delta` are already tiny and pass through unchanged.
pub fn tiny_subintervals(seg: Segment, delta: f64) -> Vec<Segment> {
    assert!(delta > 0.0);
    let len = seg.length();
    if len <= 2.0 * delta {
        return vec![seg];
    }
    let f = (delta.min(len / 2.0)) / len;
    vec![
        Segment::new(seg.at(0.0), seg.at(f)),
        Segment::new(seg.at(1.0 - f), seg.at(1.0)),
    ]
}
