//! Integer lattice transformations that shrink the enclosing box of a point
//! set, and FFT kernel convolution on the transformed lattice.
//!
//! The pipeline: [`lattice_geometry::convex_hull`] builds an exact hull,
//! [`lattice_geometry::antipodal_cones`] partitions projection directions by
//! antipodal vertex pair, [`transform_search::optimize_transform`] subdivides
//! each cone with the lattice-point tools of [`integer_points`] and picks the
//! integer matrix whose rows give the smallest node box, and
//! [`convolution::simulate`] runs a process-convolution simulation on the
//! transformed lattice.

pub mod convolution;
pub mod error;
pub mod fixtures;
pub mod hermite;
pub mod integer_points;
pub mod lattice_geometry;
pub mod point;
pub mod transform_search;

pub use error::{Error, Result};
pub use point::{IntMatrix, IntPoint};
