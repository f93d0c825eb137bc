//! Executable versions of two recognition reductions: rank-3 matroid
//! realizability to intersection graphs of lines in 3-space, and
//! great-pseudocircle circularizability to circle orders.
//!
//! The crate builds the reduction instances, computes the forward
//! realization maps, checks candidate realizations with exact rational
//! arithmetic, and searches small instances numerically, accepting a
//! witness only after exact verification.
//!
//! Geometry is generic over [`geometry::Field`]; the aliases below fix the
//! exact rational instantiation used throughout the reductions and
//! verifiers, plus `f64` variants for quick approximate work.

pub mod arrangements;
pub mod geometry;
pub mod io;
pub mod model;
pub mod rational;
pub mod reductions;
pub mod render;
pub mod search;
pub mod verifiers;

/// Arbitrary-precision rational, the exact scalar.
pub type Rat = num_rational::BigRational;

pub type Point2 = geometry::Point2<Rat>;
pub type Point3 = geometry::Point3<Rat>;
pub type Line2 = geometry::Line2<Rat>;
pub type Line3 = geometry::Line3<Rat>;
pub type Disk = geometry::Disk<Rat>;
pub type QuadPoint = geometry::QuadPoint<Rat>;

pub type Point2f = geometry::Point2<f64>;
pub type Point3f = geometry::Point3<f64>;
pub type Line3f = geometry::Line3<f64>;
pub type Diskf = geometry::Disk<f64>;

pub use model::{Graph, Poset, Rank3Matroid, SignVector, ValidationReport, WiringDiagram};
