use serde::{Deserialize, Serialize};

use super::{cross3, dot3, Field, GeometryError, Point3};
use crate::Rat;

/// Line `base + t * dir` in 3-space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound(
    serialize = "Point3<T>: Serialize",
    deserialize = "Point3<T>: Deserialize<'de>"
))]
pub struct Line3<T = Rat> {
    pub base: Point3<T>,
    pub dir: Point3<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineRelation<T = Rat> {
    Identical,
    Parallel,
    Intersecting(Point3<T>),
    Skew,
}

impl<T> LineRelation<T> {
    pub fn is_intersecting(&self) -> bool {
        matches!(self, LineRelation::Intersecting(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            LineRelation::Identical => "identical",
            LineRelation::Parallel => "parallel",
            LineRelation::Intersecting(_) => "intersecting",
            LineRelation::Skew => "skew",
        }
    }
}

impl<T: Field> Line3<T> {
    pub fn new(base: Point3<T>, dir: Point3<T>) -> Result<Self, GeometryError> {
        if dir.is_zero() {
            return Err(GeometryError::ZeroDirection);
        }
        Ok(Line3 { base, dir })
    }

    pub fn through(p: &Point3<T>, q: &Point3<T>) -> Result<Self, GeometryError> {
        Self::new(p.clone(), q - p)
    }

    pub fn at(&self, t: &T) -> Point3<T> {
        &self.base + &(&self.dir * t)
    }

    pub fn contains(&self, p: &Point3<T>) -> bool {
        cross3(&(p - &self.base), &self.dir).is_zero()
    }

    /// Direction scaled so its first nonzero coordinate is 1, base moved
    /// along the line so that coordinate of the base is 0.
    pub fn canonical(&self) -> Line3<T> {
        let dir = &self.dir;
        let k = dir
            .coords()
            .iter()
            .position(|c| !c.is_zero())
            .expect("direction is nonzero");
        let lead = dir.coords()[k].clone();
        let dir = &self.dir * &(T::one() / lead);
        let shift = self.base.coords()[k].clone();
        let base = &self.base - &(&dir * &shift);
        Line3 { base, dir }
    }
}

/// Determinant of the 3x3 matrix with rows `a`, `b`, `c`.
pub fn orient3<T: Field>(a: &Point3<T>, b: &Point3<T>, c: &Point3<T>) -> T {
    dot3(a, &cross3(b, c))
}

/// Classifies two lines as identical, parallel, intersecting (with the
/// common point) or skew.
pub fn lines3_relation<T: Field>(l1: &Line3<T>, l2: &Line3<T>) -> LineRelation<T> {
    let w = &l2.base - &l1.base;
    let c = cross3(&l1.dir, &l2.dir);
    if c.is_zero() {
        return if cross3(&w, &l1.dir).is_zero() {
            LineRelation::Identical
        } else {
            LineRelation::Parallel
        };
    }
    if !dot3(&w, &c).is_zero() {
        return LineRelation::Skew;
    }
    // base1 + s dir1 = base2 + t dir2  =>  s = ((w x dir2) . c) / |c|^2
    let s = dot3(&cross3(&w, &l2.dir), &c) / dot3(&c, &c);
    LineRelation::Intersecting(l1.at(&s))
}
