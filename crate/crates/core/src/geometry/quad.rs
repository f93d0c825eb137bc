use std::cmp::Ordering;

use super::{Disk, Field, Point2};
use crate::Rat;

/// Point whose coordinates are `a + b * sqrt(d)` for one shared `d >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadPoint<T = Rat> {
    pub x: (T, T),
    pub y: (T, T),
    pub d: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Inside,
    OnBoundary,
    Outside,
}

impl<T: Field> QuadPoint<T> {
    pub fn rational(p: &Point2<T>) -> Self {
        QuadPoint {
            x: (p.x.clone(), T::zero()),
            y: (p.y.clone(), T::zero()),
            d: T::zero(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_zero() || (self.x.1.is_zero() && self.y.1.is_zero())
    }

    /// Floating value of each coordinate.
    pub fn approx(&self) -> (f64, f64)
    where
        T: num_traits::ToPrimitive,
    {
        let f = |v: &T| v.to_f64().unwrap_or(f64::NAN);
        let s = f(&self.d).sqrt();
        (
            f(&self.x.0) + f(&self.x.1) * s,
            f(&self.y.0) + f(&self.y.1) * s,
        )
    }
}

/// Exact sign of `a + b * sqrt(d)` for `d >= 0`.
pub fn sign_of_quadratic<T: Field>(a: &T, b: &T, d: &T) -> Ordering {
    let zero = T::zero();
    let sa = a.partial_cmp(&zero).expect("ordered field");
    if b.is_zero() || d.is_zero() {
        return sa;
    }
    let sb = b.partial_cmp(&zero).expect("ordered field");
    if sa == sb || sa == Ordering::Equal {
        return sb;
    }
    // opposite signs: compare a^2 with b^2 d
    let lhs = a.clone() * a.clone();
    let rhs = b.clone() * b.clone() * d.clone();
    match lhs.partial_cmp(&rhs).expect("ordered field") {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Exact position of `p` relative to the closed disk `c`, from the sign of
/// `r^2 - |p - center|^2`.
pub fn quadpoint_in_disk<T: Field>(p: &QuadPoint<T>, c: &Disk<T>) -> Location {
    let ax = p.x.0.clone() - c.cx.clone();
    let ay = p.y.0.clone() - c.cy.clone();
    let (bx, by) = (p.x.1.clone(), p.y.1.clone());
    let rational = c.r.clone() * c.r.clone()
        - ax.clone() * ax.clone()
        - ay.clone() * ay.clone()
        - p.d.clone() * (bx.clone() * bx.clone() + by.clone() * by.clone());
    let irrational = -(T::one() + T::one()) * (ax * bx + ay * by);
    match sign_of_quadratic(&rational, &irrational, &p.d) {
        Ordering::Greater => Location::Inside,
        Ordering::Equal => Location::OnBoundary,
        Ordering::Less => Location::Outside,
    }
}
