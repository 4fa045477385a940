//! Grid decomposition for the k-gon approximation.
//!
//! Four big cells of side `2k * scale`, anchored at the leftmost terrain
//! vertex on the base line and offset by half a big-cell side, cover the
//! terrain. Each big cell is subdivided into fine cells of side
//! `epsilon * scale`; only fine cells whose closed square intersects the
//! region are retained.

use crate::diameter::compute_diameter;
use crate::geom::{Point, Segment};
use crate::terrain::Terrain;
use crate::tol::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellLevel {
    Big,
    Fine,
}

#[derive(Clone, Copy, Debug)]
pub struct GridCell {
    /// Bottom-left corner.
    pub origin: Point,
    pub side: f64,
    pub level: CellLevel,
    /// Big-cell id for fine cells.
    pub parent: Option<usize>,
    /// Column/row within the parent (0 for big cells).
    pub ix: i64,
    pub iy: i64,
}

impl GridCell {
    pub fn max_corner(&self) -> Point {
        Point::new(self.origin.x + self.side, self.origin.y + self.side)
    }

    pub fn corners(&self) -> [Point; 4] {
        let m = self.max_corner();
        [
            self.origin,
            Point::new(m.x, self.origin.y),
            m,
            Point::new(self.origin.x, m.y),
        ]
    }

    pub fn contains_bbox(&self, lo: Point, hi: Point) -> bool {
        let eps = tol();
        let m = self.max_corner();
        self.origin.x <= lo.x + eps
            && self.origin.y <= lo.y + eps
            && m.x + eps >= hi.x
            && m.y + eps >= hi.y
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// One geometric fine-cell side; shared sides of adjacent cells appear once.
#[derive(Clone, Debug)]
pub struct SideGeom {
    pub axis: Axis,
    pub seg: Segment,
}

impl SideGeom {
    /// Coordinate along the side's own axis (x for horizontal, y for
    /// vertical sides).
    pub fn coord_of(&self, p: Point) -> f64 {
        match self.axis {
            Axis::Horizontal => p.x,
            Axis::Vertical => p.y,
        }
    }
}

/// A retained fine cell with its four side ids (S, E, N, W).
#[derive(Clone, Debug)]
pub struct FineCell {
    pub cell: GridCell,
    pub big_id: usize,
    pub sides: [usize; 4],
}

#[derive(Clone, Debug)]
pub struct Grid {
    pub k: usize,
    pub epsilon: f64,
    pub scale: f64,
    pub big: Vec<GridCell>,
    pub fine: Vec<FineCell>,
    pub sides: Vec<SideGeom>,
    pub fine_side: f64,
}

impl Grid {
    /// All cells, big ones first (the retained fine cells follow).
    pub fn cells(&self) -> Vec<GridCell> {
        let mut out = self.big.clone();
        out.extend(self.fine.iter().map(|f| f.cell));
        out
    }

    pub fn fine_cells_of_big(&self, big_id: usize) -> Vec<usize> {
        (0..self.fine.len())
            .filter(|&i| self.fine[i].big_id == big_id)
            .collect()
    }
}

/// Length scale for the grid: twice the diameter. Every side of an
/// inscribed convex polygon is at most the diameter, so this bounds the
/// extent of the optimum for both measures.
pub fn seed_scale(t: &Terrain, _k: usize) -> f64 {
    2.0 * compute_diameter(t).length
}

/// Whether the closed square intersects the closed region.
fn cell_intersects_region(t: &Terrain, origin: Point, side: f64) -> bool {
    let eps = tol();
    let lo_x = origin.x.max(t.x_min());
    let hi_x = (origin.x + side).min(t.x_max());
    if lo_x > hi_x + eps {
        return false;
    }
    if origin.y > t.max_height_on(lo_x, hi_x) + eps {
        return false;
    }
    origin.y + side >= -eps
}

pub fn build_grid(t: &Terrain, k: usize, epsilon: f64, scale: f64) -> Grid {
    assert!(scale > 0.0 && epsilon > 0.0);
    let big_side = 2.0 * k as f64 * scale;
    let half = k as f64 * scale;
    let x0 = t.x_min();
    let big: Vec<GridCell> = [
        Point::new(x0, 0.0),
        Point::new(x0 + half, 0.0),
        Point::new(x0, half),
        Point::new(x0 + half, half),
    ]
    .into_iter()
    .map(|origin| GridCell {
        origin,
        side: big_side,
        level: CellLevel::Big,
        parent: None,
        ix: 0,
        iy: 0,
    })
    .collect();

    let fine_side = epsilon * scale;
    let per_axis = (2.0 * k as f64 / epsilon).ceil() as i64;

    let mut sides: Vec<SideGeom> = Vec::new();
    let mut side_ids: std::collections::HashMap<(usize, Axis, i64, i64), usize> =
        std::collections::HashMap::new();
    let mut fine: Vec<FineCell> = Vec::new();

    for (big_id, bc) in big.iter().enumerate() {
        // Only scan the index window that can reach the terrain bbox.
        let (blo, bhi) = t.bbox();
        let ix_lo = (((blo.x - bc.origin.x) / fine_side).floor() as i64).max(0);
        let ix_hi = ((((bhi.x - bc.origin.x) / fine_side).ceil() as i64) + 1).min(per_axis);
        let iy_lo = (((blo.y - bc.origin.y) / fine_side).floor() as i64).max(0);
        let iy_hi = ((((bhi.y - bc.origin.y) / fine_side).ceil() as i64) + 1).min(per_axis);
        for iy in iy_lo..iy_hi {
            for ix in ix_lo..ix_hi {
                let origin = Point::new(
                    bc.origin.x + ix as f64 * fine_side,
                    bc.origin.y + iy as f64 * fine_side,
                );
                if !cell_intersects_region(t, origin, fine_side) {
                    continue;
                }
                let mut side_of = |axis: Axis, line: i64, span: i64| -> usize {
                    *side_ids
                        .entry((big_id, axis, line, span))
                        .or_insert_with(|| {
                            let seg = match axis {
                                Axis::Horizontal => Segment::new(
                                    Point::new(
                                        bc.origin.x + span as f64 * fine_side,
                                        bc.origin.y + line as f64 * fine_side,
                                    ),
                                    Point::new(
                                        bc.origin.x + (span + 1) as f64 * fine_side,
                                        bc.origin.y + line as f64 * fine_side,
                                    ),
                                ),
                                Axis::Vertical => Segment::new(
                                    Point::new(
                                        bc.origin.x + line as f64 * fine_side,
                                        bc.origin.y + span as f64 * fine_side,
                                    ),
                                    Point::new(
                                        bc.origin.x + line as f64 * fine_side,
                                        bc.origin.y + (span + 1) as f64 * fine_side,
                                    ),
                                ),
                            };
                            sides.push(SideGeom { axis, seg });
                            sides.len() - 1
                        })
                };
                let s = side_of(Axis::Horizontal, iy, ix);
                let e = side_of(Axis::Vertical, ix + 1, iy);
                let n = side_of(Axis::Horizontal, iy + 1, ix);
                let w = side_of(Axis::Vertical, ix, iy);
                fine.push(FineCell {
                    cell: GridCell {
                        origin,
                        side: fine_side,
                        level: CellLevel::Fine,
                        parent: Some(big_id),
                        ix,
                        iy,
                    },
                    big_id,
                    sides: [s, e, n, w],
                });
            }
        }
    }

    Grid {
        k,
        epsilon,
        scale,
        big,
        fine,
        sides,
        fine_side,
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
    fn seed_scale_from_diameter() {
        assert!((seed_scale(&t1(), 3) - 2.0 * 5.0_f64.sqrt()).abs() < 1e-9);
        assert!((seed_scale(&t3(), 3) - 8.0).abs() < 1e-9);
    }

    #[test]
    fn big_cells_cover_terrain() {
        let t = t3();
        let g = build_grid(&t, 3, 0.1, 8.0);
        assert_eq!(g.big.len(), 4);
        assert!((g.big[0].side - 48.0).abs() < 1e-12);
        let (lo, hi) = t.bbox();
        assert!(g.big[0].contains_bbox(lo, hi));
        for v in t.chain() {
            assert!(g
                .big
                .iter()
                .any(|c| c.contains_bbox(*v, *v)));
        }
    }

    #[test]
    fn retained_fine_cells_are_few_and_touch_region() {
        let t = t1();
        let scale = 2.0 * 5.0_f64.sqrt();
        let g = build_grid(&t, 3, 0.5, scale);
        assert!((g.fine_side - 5.0_f64.sqrt()).abs() < 1e-9);
        assert!(!g.fine.is_empty());
        assert!(g.fine.len() <= 9, "got {}", g.fine.len());
        for f in &g.fine {
            assert!(cell_intersects_region(&t, f.cell.origin, f.cell.side));
        }
    }

    #[test]
    fn shared_sides_are_deduplicated() {
        let t = t3();
        let g = build_grid(&t, 3, 0.05, 8.0);
        let bottom_row: Vec<&FineCell> = g
            .fine
            .iter()
            .filter(|f| f.big_id == 0 && f.cell.iy == 0)
            .collect();
        // Adjacent cells in a row share their vertical side id.
        for w in bottom_row.windows(2) {
            if w[1].cell.ix == w[0].cell.ix + 1 {
                assert_eq!(w[0].sides[1], w[1].sides[3]);
            }
        }
    }
}
