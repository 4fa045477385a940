//! Planar primitives: points, segments, orientation, polygon measures.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tol::{fuzzy_sign, tol};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(&self, other: Point) -> f64 {
        self.dist2(other).sqrt()
    }

    pub fn dist2(&self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    /// Lexicographic order on (x, y); total, for deterministic tie-breaks.
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then_with(|| self.y.total_cmp(&other.y))
    }

    pub fn approx_eq(&self, other: Point) -> bool {
        (self.x - other.x).abs() <= tol() && (self.y - other.y).abs() <= tol()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn is_degenerate(&self) -> bool {
        self.length() <= tol()
    }

    /// Point at parameter `t` in [0, 1] along the segment.
    pub fn at(&self, t: f64) -> Point {
        Point::new(
            self.a.x + t * (self.b.x - self.a.x),
            self.a.y + t * (self.b.y - self.a.y),
        )
    }

    /// Endpoints reordered so that `a` is the lexicographically smaller one.
    pub fn canonical(&self) -> Segment {
        if self.a.lex_cmp(&self.b) == Ordering::Greater {
            Segment::new(self.b, self.a)
        } else {
            *self
        }
    }
}

/// Raw cross product `(q - p) x (r - p)`.
#[inline]
pub fn cross(p: Point, q: Point, r: Point) -> f64 {
    (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
}

/// Orientation sign of the triple (p, q, r): +1 for counterclockwise,
/// -1 for clockwise, 0 for collinear within the tolerance.
#[inline]
pub fn orientation(p: Point, q: Point, r: Point) -> i32 {
    fuzzy_sign(cross(p, q, r))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("polygon needs at least 3 points, got {got}")]
    TooFewPoints { got: usize },
}

/// Sum of edge lengths of the closed cycle through `pts`.
pub fn polygon_perimeter(pts: &[Point]) -> Result<f64, GeomError> {
    if pts.len() < 3 {
        return Err(GeomError::TooFewPoints { got: pts.len() });
    }
    let mut sum = 0.0;
    for i in 0..pts.len() {
        sum += pts[i].dist(pts[(i + 1) % pts.len()]);
    }
    Ok(sum)
}

/// Absolute shoelace area of the closed cycle through `pts`.
pub fn polygon_area(pts: &[Point]) -> Result<f64, GeomError> {
    if pts.len() < 3 {
        return Err(GeomError::TooFewPoints { got: pts.len() });
    }
    Ok(signed_area(pts).abs())
}

pub fn signed_area(pts: &[Point]) -> f64 {
    let mut sum = 0.0;
    for i in 0..pts.len() {
        let p = pts[i];
        let q = pts[(i + 1) % pts.len()];
        sum += p.x * q.y - q.x * p.y;
    }
    sum / 2.0
}

/// Whether the cycle turns consistently in one direction. Collinear triples
/// are rejected unless `allow_collinear` is set.
pub fn is_convex(pts: &[Point], allow_collinear: bool) -> Result<bool, GeomError> {
    if pts.len() < 3 {
        return Err(GeomError::TooFewPoints { got: pts.len() });
    }
    let n = pts.len();
    let mut pos = false;
    let mut neg = false;
    let mut zero = false;
    for i in 0..n {
        match orientation(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]) {
            1 => pos = true,
            -1 => neg = true,
            _ => zero = true,
        }
    }
    if pos && neg {
        return Ok(false);
    }
    if zero && !allow_collinear {
        return Ok(false);
    }
    Ok(pos || neg)
}

/// Strict convex hull (no collinear points on hull edges), counterclockwise,
/// starting at the lexicographically smallest point. Duplicate input points
/// are merged. Returns fewer than 3 points for degenerate input.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= tol()
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= tol()
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Intersection of the infinite lines through (a1, a2) and (b1, b2).
/// `None` when the lines are parallel within the tolerance.
pub fn line_intersection(a1: Point, a2: Point, b1: Point, b2: Point) -> Option<Point> {
    let d1 = Point::new(a2.x - a1.x, a2.y - a1.y);
    let d2 = Point::new(b2.x - b1.x, b2.y - b1.y);
    let denom = d1.x * d2.y - d1.y * d2.x;
    if denom.abs() <= tol() {
        return None;
    }
    let t = ((b1.x - a1.x) * d2.y - (b1.y - a1.y) * d2.x) / denom;
    Some(Point::new(a1.x + t * d1.x, a1.y + t * d1.y))
}

/// Intersection of the lines through (a1, a2) and (b1, b2) as parameters:
/// `t` on the first line, `u` on the second (0 at the first point, 1 at the
/// second). `None` when the lines are parallel within the tolerance.
pub fn line_intersection_params(a1: Point, a2: Point, b1: Point, b2: Point) -> Option<(f64, f64)> {
    let d1 = Point::new(a2.x - a1.x, a2.y - a1.y);
    let d2 = Point::new(b2.x - b1.x, b2.y - b1.y);
    let denom = d1.x * d2.y - d1.y * d2.x;
    if denom.abs() <= tol() {
        return None;
    }
    let t = ((b1.x - a1.x) * d2.y - (b1.y - a1.y) * d2.x) / denom;
    let u = ((b1.x - a1.x) * d1.y - (b1.y - a1.y) * d1.x) / denom;
    Some((t, u))
}

/// x where the line through `p` and `q` crosses `y = 0`; `None` when the
/// line is horizontal within the tolerance.
pub fn base_intercept(p: Point, q: Point) -> Option<f64> {
    let dy = q.y - p.y;
    if dy.abs() <= tol() {
        return None;
    }
    Some(p.x + (0.0 - p.y) * (q.x - p.x) / dy)
}
