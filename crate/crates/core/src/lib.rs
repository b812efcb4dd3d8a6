//! Exact counting of triangulations, perfect matchings and spanning cycles
//! on small planar point sets, together with the upper-bound machinery that
//! relates them.
//!
//! Point sets are capped at [`MAX_POINTS`] points so that every graph fits in
//! a 128-bit edge mask.

pub mod bounds;
pub mod budget;
pub mod corpus;
pub mod counting;
pub mod edges;
pub mod error;
pub mod gen;
pub mod geom;
pub mod kasteleyn;
pub mod plane_graph;
pub mod tri_engine;
pub mod verify;

pub use budget::Budget;
pub use edges::{Edge, EdgeSet, MAX_POINTS};
pub use error::{Error, Result};
pub use geom::{Point, PointSet};
pub use plane_graph::PlaneGraph;
pub use tri_engine::Triangulation;
