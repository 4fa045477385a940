//! Largest inscribed segments, triangles and convex polygons in 1.5D terrains.
//!
//! A 1.5D terrain is an x-monotone polygonal chain; the region of interest is
//! the closed area between the chain and the horizontal base segment joining
//! its endpoints. This crate computes
//!
//! * the diameter of the terrain (the longest segment inside the region),
//! * the exact largest-perimeter inscribed triangle, and
//! * a (1-eps)-approximation of the largest perimeter/area convex polygon of
//!   at most `k` vertices, via a grid decomposition with visibility intervals.
//!
//! Everything is validated against independent brute-force oracles in
//! [`oracle`], which share no candidate-generation code with the algorithms.

pub mod cli;
pub mod diameter;
pub mod fptas;
pub mod gen;
pub mod geom;
pub mod io;
pub mod oracle;
pub mod terrain;
pub mod tol;
pub mod triangle;

pub use diameter::{candidate_chords, compute_diameter, Chord};
pub use fptas::{approximate_largest_kgon, ApproxConfig, ConvexPolygon, KgonError, Measure};
pub use geom::{orientation, polygon_area, polygon_perimeter, Point, Segment};
pub use terrain::{Terrain, TerrainError, VertexClass, VertexKind};
pub use triangle::{largest_perimeter_triangle, CandidateTriangle, TriangleCase};
