//! Exact geometry for Venn diagrams drawn with convex polygons.
//!
//! Coordinates are arbitrary-precision rationals throughout, so every
//! predicate is decided exactly. The arrangement of a family of polygons is
//! built as a half-edge structure, classified (independent family, Venn,
//! simple), and audited against the corner-counting bounds on the number of
//! polygon corners needed.

pub mod arrangement;
pub mod bounds;
pub mod classify;
pub mod fixtures;
pub mod format;
pub mod geometry;
pub mod render;
pub mod report;
pub mod search;
pub mod server;
pub mod transform;

pub use arrangement::{Arrangement, ArrangementError, PolygonFamily, SignVector};
pub use classify::{verify, VennReport};
pub use geometry::{ConvexPolygon, Point, Rat};
