//! The terrain model and the containment/visibility queries built on it.
//!
//! A terrain is an x-monotone chain above a horizontal base. After
//! construction the base sits at y = 0, so the closed region is exactly
//! `{ (x, y) : x_min <= x <= x_max, 0 <= y <= height_at(x) }` and every
//! containment test reduces to comparisons against the piecewise-linear
//! upper boundary.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{orientation, Point, Segment};
use crate::tol::tol;

#[derive(Debug, Error, PartialEq)]
pub enum TerrainError {
    #[error("terrain needs at least 3 vertices, got {got}")]
    TooFewVertices { got: usize },
    #[error("vertex {index} is not finite")]
    NonFinite { index: usize },
    #[error("x-coordinates must be strictly increasing (violated at index {index})")]
    NonMonotone { index: usize },
    #[error("first and last vertices must share a height (got {left} and {right})")]
    UnequalEndHeights { left: f64, right: f64 },
    #[error("terrain has no area (all vertices at base height)")]
    DegenerateArea,
    #[error("vertex {index} lies below the base")]
    BelowBase { index: usize },
    #[error("interior vertex {index} touches the base; the region pinches and is not simple")]
    PinchedBase { index: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexKind {
    Endpoint,
    Convex,
    Reflex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexClass {
    pub index: usize,
    pub kind: VertexKind,
}

/// A 1.5D terrain: the chain is the upper boundary, the base the segment
/// from the first to the last chain vertex (at y = 0 after normalization).
#[derive(Clone, Debug, PartialEq)]
pub struct Terrain {
    chain: Vec<Point>,
}

impl Terrain {
    /// Validate and normalize a vertex list into a terrain. The whole chain
    /// is translated so the base lies at y = 0.
    pub fn build(vertices: &[Point]) -> Result<Terrain, TerrainError> {
        let t = tol();
        if vertices.len() < 3 {
            return Err(TerrainError::TooFewVertices { got: vertices.len() });
        }
        for (i, p) in vertices.iter().enumerate() {
            if !p.is_finite() {
                return Err(TerrainError::NonFinite { index: i });
            }
        }
        for i in 1..vertices.len() {
            if vertices[i].x <= vertices[i - 1].x + t {
                return Err(TerrainError::NonMonotone { index: i });
            }
        }
        let y0 = vertices[0].y;
        let yn = vertices[vertices.len() - 1].y;
        if (y0 - yn).abs() > t {
            return Err(TerrainError::UnequalEndHeights { left: y0, right: yn });
        }
        let mut chain: Vec<Point> = vertices
            .iter()
            .map(|p| Point::new(p.x, p.y - y0))
            .collect();
        chain[0].y = 0.0;
        let last = chain.len() - 1;
        chain[last].y = 0.0;
        for (i, p) in chain.iter().enumerate() {
            if p.y < -t {
                return Err(TerrainError::BelowBase { index: i });
            }
        }
        for (i, p) in chain.iter().enumerate().take(last).skip(1) {
            if p.y <= t {
                return Err(TerrainError::PinchedBase { index: i });
            }
        }
        if chain.iter().all(|p| p.y <= t) {
            return Err(TerrainError::DegenerateArea);
        }
        Ok(Terrain { chain })
    }

    pub fn chain(&self) -> &[Point] {
        &self.chain
    }

    pub fn n(&self) -> usize {
        self.chain.len()
    }

    pub fn base(&self) -> Segment {
        Segment::new(
            Point::new(self.x_min(), 0.0),
            Point::new(self.x_max(), 0.0),
        )
    }

    pub fn x_min(&self) -> f64 {
        self.chain[0].x
    }

    pub fn x_max(&self) -> f64 {
        self.chain[self.chain.len() - 1].x
    }

    pub fn max_height(&self) -> f64 {
        self.chain.iter().fold(0.0, |m, p| m.max(p.y))
    }

    /// Axis-aligned bounding box as (min corner, max corner).
    pub fn bbox(&self) -> (Point, Point) {
        (
            Point::new(self.x_min(), 0.0),
            Point::new(self.x_max(), self.max_height()),
        )
    }

    /// Area of the closed region (trapezoid sum under the chain).
    pub fn area(&self) -> f64 {
        let mut sum = 0.0;
        for w in self.chain.windows(2) {
            sum += (w[1].x - w[0].x) * (w[0].y + w[1].y) / 2.0;
        }
        sum
    }

    /// Height of the chain above `x`, clamped to the terrain's x-range.
    pub fn height_at(&self, x: f64) -> f64 {
        if x <= self.x_min() {
            return self.chain[0].y;
        }
        if x >= self.x_max() {
            return self.chain[self.chain.len() - 1].y;
        }
        // First vertex with chain[i].x >= x; the edge (i-1, i) spans x.
        let i = self.chain.partition_point(|p| p.x < x);
        let a = self.chain[i - 1];
        let b = self.chain[i];
        a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x)
    }

    /// Maximum chain height over the x-interval `[a, b]` (clamped to the
    /// terrain's x-range). The maximum of a piecewise-linear function is
    /// attained at an interval endpoint or at a chain vertex inside it.
    pub fn max_height_on(&self, a: f64, b: f64) -> f64 {
        let lo = a.max(self.x_min());
        let hi = b.min(self.x_max());
        if lo > hi {
            return f64::NEG_INFINITY;
        }
        let mut m = self.height_at(lo).max(self.height_at(hi));
        let start = self.chain.partition_point(|p| p.x <= lo);
        for v in &self.chain[start..] {
            if v.x >= hi {
                break;
            }
            m = m.max(v.y);
        }
        m
    }

    /// Chain endpoints are `Endpoint`; an interior vertex is `Reflex` when
    /// the boundary turns into the region (a valley), `Convex` otherwise.
    pub fn classify_vertices(&self) -> Vec<VertexClass> {
        let n = self.chain.len();
        (0..n)
            .map(|i| {
                let kind = if i == 0 || i == n - 1 {
                    VertexKind::Endpoint
                } else if orientation(self.chain[i - 1], self.chain[i], self.chain[i + 1]) > 0 {
                    VertexKind::Reflex
                } else {
                    VertexKind::Convex
                };
                VertexClass { index: i, kind }
            })
            .collect()
    }

    pub fn reflex_vertices(&self) -> Vec<usize> {
        self.classify_vertices()
            .into_iter()
            .filter(|c| c.kind == VertexKind::Reflex)
            .map(|c| c.index)
            .collect()
    }

    /// Closed-region membership; the boundary counts as inside.
    pub fn contains_point(&self, p: Point) -> bool {
        let t = tol();
        if p.x < self.x_min() - t || p.x > self.x_max() + t {
            return false;
        }
        if p.y < -t {
            return false;
        }
        p.y <= self.height_at(p.x) + t
    }

    /// Whether the whole segment lies in the closed region.
    ///
    /// Both endpoints must be inside; between them the segment only needs to
    /// stay below the chain, which is piecewise linear, so it suffices to
    /// check the chain vertices whose x lies strictly inside the segment's
    /// span. Touching the chain (e.g. grazing a reflex vertex) counts as
    /// inside.
    pub fn contains_segment(&self, s: Segment) -> bool {
        if !self.contains_point(s.a) || !self.contains_point(s.b) {
            return false;
        }
        let t = tol();
        let (lo, hi) = if s.a.x <= s.b.x { (s.a, s.b) } else { (s.b, s.a) };
        if hi.x - lo.x <= t {
            return true; // vertical: covered by the endpoint checks
        }
        let slope = (hi.y - lo.y) / (hi.x - lo.x);
        let start = self.chain.partition_point(|p| p.x <= lo.x);
        for v in &self.chain[start..] {
            if v.x >= hi.x {
                break;
            }
            let seg_y = lo.y + (v.x - lo.x) * slope;
            if seg_y > v.y + t {
                return false;
            }
        }
        true
    }

    /// Two points see each other iff the segment between them is inside.
    pub fn visible(&self, p: Point, q: Point) -> bool {
        self.contains_segment(Segment::new(p, q))
    }

    /// The maximal sub-segment of the line through `u` and `v` that contains
    /// `u`-`v` and lies in the closed region; `None` if `u`-`v` itself exits.
    pub fn prolong_chord(&self, u: Point, v: Point) -> Option<Segment> {
        let t = tol();
        if u.dist(v) <= t {
            return None;
        }
        if !self.contains_segment(Segment::new(u, v)) {
            return None;
        }
        if (u.x - v.x).abs() <= t {
            // Vertical chord: spans from the base to the chain.
            let x = u.x;
            return Some(Segment::new(
                Point::new(x, 0.0),
                Point::new(x, self.height_at(x)),
            ));
        }
        let (lo, hi) = if u.x <= v.x { (u, v) } else { (v, u) };
        let slope = (hi.y - lo.y) / (hi.x - lo.x);
        let right = self.extend_along_line(hi, slope, true);
        let left = self.extend_along_line(lo, slope, false);
        Some(Segment::new(left, right))
    }

    /// Walk the chain breakpoints from `start` in the given direction and
    /// stop where the line `y(x) = start.y + slope * (x - start.x)` exits
    /// the region.
    fn extend_along_line(&self, start: Point, slope: f64, rightward: bool) -> Point {
        let t = tol();
        let y_at = |x: f64| start.y + slope * (x - start.x);
        // Domain limit from the x-range and from the base (y >= 0).
        let mut x_limit = if rightward { self.x_max() } else { self.x_min() };
        let falling = if rightward { slope < 0.0 } else { slope > 0.0 };
        if falling && slope.abs() > t {
            let x_zero = start.x + (0.0 - start.y) / slope;
            x_limit = if rightward {
                x_limit.min(x_zero)
            } else {
                x_limit.max(x_zero)
            };
        }
        let mut cur_x = start.x;
        let mut cur_g = self.height_at(cur_x) - start.y;
        debug_assert!(cur_g >= -t * 10.0);
        let mut crossing = |gx: f64, gg: f64, cx: f64, cg: f64| -> Point {
            // g is linear on [cx, gx] with g(cx) = cg >= -tol > gg; interpolate g = 0.
            let denom = cg - gg;
            let x = if denom.abs() <= f64::MIN_POSITIVE {
                cx
            } else {
                cx + (gx - cx) * (cg / denom).clamp(0.0, 1.0)
            };
            Point::new(x, y_at(x))
        };
        if rightward {
            let start_idx = self.chain.partition_point(|p| p.x <= cur_x);
            for v in &self.chain[start_idx..] {
                if v.x >= x_limit {
                    break;
                }
                let g = v.y - y_at(v.x);
                if g < -t {
                    return crossing(v.x, g, cur_x, cur_g);
                }
                cur_x = v.x;
                cur_g = g;
            }
            let g_end = self.height_at(x_limit) - y_at(x_limit);
            if g_end < -t {
                return crossing(x_limit, g_end, cur_x, cur_g);
            }
            Point::new(x_limit, y_at(x_limit))
        } else {
            let end_idx = self.chain.partition_point(|p| p.x < cur_x);
            for v in self.chain[..end_idx].iter().rev() {
                if v.x <= x_limit {
                    break;
                }
                let g = v.y - y_at(v.x);
                if g < -t {
                    return crossing(v.x, g, cur_x, cur_g);
                }
                cur_x = v.x;
                cur_g = g;
            }
            let g_end = self.height_at(x_limit) - y_at(x_limit);
            if g_end < -t {
                return crossing(x_limit, g_end, cur_x, cur_g);
            }
            Point::new(x_limit, y_at(x_limit))
        }
    }
}
