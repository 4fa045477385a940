//! The (1-eps)-approximation for largest perimeter/area convex polygons of
//! at most k vertices: grid decomposition, boundary intervals, pairwise
//! visibility, and endpoint optimization.

pub mod grid;
pub mod intervals;
pub mod search;
pub mod visibility;

pub use grid::{build_grid, seed_scale, Axis, CellLevel, FineCell, Grid, GridCell, SideGeom};
pub use intervals::{extract_intervals, tiny_subintervals, BoundaryInterval, IntervalSet};
pub use search::{
    approximate_largest_kgon, best_polygon_on_intervals, ApproxConfig, ConvexPolygon, KgonError,
    Measure,
};
pub use visibility::{
    segment_sees_point, visibility_ranges, visible_interval_pairs, VisibilityIndex,
    VisibilityRange,
};
