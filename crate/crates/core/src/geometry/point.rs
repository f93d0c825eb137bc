use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use super::Field;
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2<T = Rat> {
    pub x: T,
    pub y: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point3<T = Rat> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Field> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }

    pub fn dist2(&self, other: &Self) -> T {
        let dx = self.x.clone() - other.x.clone();
        let dy = self.y.clone() - other.y.clone();
        dx.clone() * dx + dy.clone() * dy
    }
}

impl<T: Field> Point3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Point3 { x, y, z }
    }

    pub fn zero() -> Self {
        Point3::new(T::zero(), T::zero(), T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn coords(&self) -> [&T; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn scale(&self, k: &T) -> Self {
        Point3::new(
            self.x.clone() * k.clone(),
            self.y.clone() * k.clone(),
            self.z.clone() * k.clone(),
        )
    }
}

impl<T: Field> Add for &Point3<T> {
    type Output = Point3<T>;
    fn add(self, o: &Point3<T>) -> Point3<T> {
        Point3::new(
            self.x.clone() + o.x.clone(),
            self.y.clone() + o.y.clone(),
            self.z.clone() + o.z.clone(),
        )
    }
}

impl<T: Field> Sub for &Point3<T> {
    type Output = Point3<T>;
    fn sub(self, o: &Point3<T>) -> Point3<T> {
        Point3::new(
            self.x.clone() - o.x.clone(),
            self.y.clone() - o.y.clone(),
            self.z.clone() - o.z.clone(),
        )
    }
}

impl<T: Field> Mul<&T> for &Point3<T> {
    type Output = Point3<T>;
    fn mul(self, k: &T) -> Point3<T> {
        self.scale(k)
    }
}

pub fn cross3<T: Field>(a: &Point3<T>, b: &Point3<T>) -> Point3<T> {
    Point3::new(
        a.y.clone() * b.z.clone() - a.z.clone() * b.y.clone(),
        a.z.clone() * b.x.clone() - a.x.clone() * b.z.clone(),
        a.x.clone() * b.y.clone() - a.y.clone() * b.x.clone(),
    )
}

pub fn dot3<T: Field>(a: &Point3<T>, b: &Point3<T>) -> T {
    a.x.clone() * b.x.clone() + a.y.clone() * b.y.clone() + a.z.clone() * b.z.clone()
}

/// Twice the signed area of `abc`; zero iff collinear.
pub fn orient2<T: Field>(a: &Point2<T>, b: &Point2<T>, c: &Point2<T>) -> T {
    (b.x.clone() - a.x.clone()) * (c.y.clone() - a.y.clone())
        - (b.y.clone() - a.y.clone()) * (c.x.clone() - a.x.clone())
}

// JSON: rationals as "p/q" strings.

impl Serialize for Point2<Rat> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::rational::serde_rat_vec::serialize(&[self.x.clone(), self.y.clone()], s)
    }
}

impl<'de> Deserialize<'de> for Point2<Rat> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = crate::rational::serde_rat_vec::deserialize(d)?;
        match <[Rat; 2]>::try_from(v) {
            Ok([x, y]) => Ok(Point2 { x, y }),
            Err(v) => Err(serde::de::Error::invalid_length(v.len(), &"2 coordinates")),
        }
    }
}

impl Serialize for Point3<Rat> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::rational::serde_rat_vec::serialize(
            &[self.x.clone(), self.y.clone(), self.z.clone()],
            s,
        )
    }
}

impl<'de> Deserialize<'de> for Point3<Rat> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = crate::rational::serde_rat_vec::deserialize(d)?;
        match <[Rat; 3]>::try_from(v) {
            Ok([x, y, z]) => Ok(Point3 { x, y, z }),
            Err(v) => Err(serde::de::Error::invalid_length(v.len(), &"3 coordinates")),
        }
    }
}
