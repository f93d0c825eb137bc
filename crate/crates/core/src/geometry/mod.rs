//! Geometric primitives and predicates over an ordered field. With
//! [`crate::Rat`] every predicate is exact; with `f64` the same code gives
//! the usual floating-point approximation.

mod disk;
mod duality;
mod line3;
mod point;
mod quad;
mod scalar;

pub use disk::{
    circle_intersection_points, circle_pair_relation, disk_contains, krupp_test, CirclePair, Disk,
    GeometryError,
};
pub use duality::{dual_line_to_point, dual_point_to_line, Line2};
pub use line3::{lines3_relation, orient3, Line3, LineRelation};
pub use point::{cross3, dot3, orient2, Point2, Point3};
pub use quad::{quadpoint_in_disk, sign_of_quadratic, Location, QuadPoint};
pub use scalar::Field;
