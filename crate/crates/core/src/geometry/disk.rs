use serde::{Deserialize, Serialize};

use super::{quadpoint_in_disk, Field, Location, Point2, QuadPoint};
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("vertical lines have no dual point")]
    DualityDomain,
    #[error("line direction must be nonzero")]
    ZeroDirection,
    #[error("disk radius must be positive")]
    NonPositiveRadius,
    #[error("circles do not cross in two points ({0:?})")]
    NotCrossing(CirclePair),
}

/// Closed disk with center `(cx, cy)` and radius `r > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Disk<T = Rat> {
    pub cx: T,
    pub cy: T,
    pub r: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CirclePair {
    DisjointOutside,
    ExternallyTangent,
    CrossingAtTwoPoints,
    InternallyTangent,
    ProperlyNested,
    Identical,
}

impl<T: Field> Disk<T> {
    pub fn new(cx: T, cy: T, r: T) -> Result<Self, GeometryError> {
        if !r.is_positive() {
            return Err(GeometryError::NonPositiveRadius);
        }
        Ok(Disk { cx, cy, r })
    }

    pub fn center(&self) -> Point2<T> {
        Point2::new(self.cx.clone(), self.cy.clone())
    }

    /// Squared center distance to `other`.
    pub fn center_dist2(&self, other: &Self) -> T {
        self.center().dist2(&other.center())
    }

    /// Closed-disk membership.
    pub fn contains_point(&self, p: &Point2<T>) -> bool {
        self.center().dist2(p) <= self.r.clone() * self.r.clone()
    }

    /// Strict interior membership.
    pub fn contains_point_strictly(&self, p: &Point2<T>) -> bool {
        self.center().dist2(p) < self.r.clone() * self.r.clone()
    }
}

/// Closed containment `inner ⊆ outer`; tangency and equality count.
pub fn disk_contains<T: Field>(outer: &Disk<T>, inner: &Disk<T>) -> bool {
    if outer.r < inner.r {
        return false;
    }
    let gap = outer.r.clone() - inner.r.clone();
    outer.center_dist2(inner) <= gap.clone() * gap
}

pub fn circle_pair_relation<T: Field>(c1: &Disk<T>, c2: &Disk<T>) -> CirclePair {
    let d = c1.center_dist2(c2);
    if d.is_zero() && c1.r == c2.r {
        return CirclePair::Identical;
    }
    let sum = c1.r.clone() + c2.r.clone();
    let diff = c1.r.clone() - c2.r.clone();
    let (sum2, diff2) = (sum.clone() * sum, diff.clone() * diff);
    if d > sum2 {
        CirclePair::DisjointOutside
    } else if d == sum2 {
        CirclePair::ExternallyTangent
    } else if d > diff2 {
        CirclePair::CrossingAtTwoPoints
    } else if d == diff2 {
        CirclePair::InternallyTangent
    } else {
        CirclePair::ProperlyNested
    }
}

/// Both crossing points of two circles, as `m ± sqrt(d) * u` with `m` the
/// midpoint of the common chord and `u` perpendicular to the center line,
/// scaled so its first nonzero coordinate has absolute value 1.
pub fn circle_intersection_points<T: Field>(
    c1: &Disk<T>,
    c2: &Disk<T>,
) -> Result<(QuadPoint<T>, QuadPoint<T>), GeometryError> {
    let rel = circle_pair_relation(c1, c2);
    if rel != CirclePair::CrossingAtTwoPoints {
        return Err(GeometryError::NotCrossing(rel));
    }
    let two = T::one() + T::one();
    let wx = c2.cx.clone() - c1.cx.clone();
    let wy = c2.cy.clone() - c1.cy.clone();
    let dd = wx.clone() * wx.clone() + wy.clone() * wy.clone();
    let r1s = c1.r.clone() * c1.r.clone();
    let r2s = c2.r.clone() * c2.r.clone();
    // fraction of the center segment at which the chord sits
    let a = (dd.clone() + r1s.clone() - r2s) / (two * dd.clone());
    let mx = c1.cx.clone() + a.clone() * wx.clone();
    let my = c1.cy.clone() + a.clone() * wy.clone();
    let h2 = r1s - a.clone() * a * dd.clone();
    let (ux, uy) = (-wy.clone(), wx.clone());
    let lead = if ux.is_zero() { uy.abs() } else { ux.abs() };
    let (ux, uy) = (ux / lead.clone(), uy / lead.clone());
    let d = h2 / dd * lead.clone() * lead;
    let plus = QuadPoint {
        x: (mx.clone(), ux.clone()),
        y: (my.clone(), uy.clone()),
        d: d.clone(),
    };
    let minus = QuadPoint {
        x: (mx, -ux),
        y: (my, -uy),
        d,
    };
    Ok((plus, minus))
}

/// Three circles pairwise crossing in six distinct points whose open
/// interiors share a point.
///
/// If the closed triple intersection has nonempty interior, its boundary
/// either has a corner (a pairwise crossing point inside the third disk) or
/// is a whole circle (whose center then lies in all three disks). With the
/// six crossings distinct, closed membership of these candidates implies a
/// common open point.
pub fn krupp_test<T: Field>(c1: &Disk<T>, c2: &Disk<T>, c3: &Disk<T>) -> bool {
    let disks = [c1, c2, c3];
    let mut witness = false;
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let Ok((p, q)) = circle_intersection_points(disks[i], disks[j]) else {
            return false;
        };
        for pt in [&p, &q] {
            match quadpoint_in_disk(pt, disks[k]) {
                Location::OnBoundary => return false,
                Location::Inside => witness = true,
                Location::Outside => {}
            }
        }
    }
    witness
        || (0..3).any(|i| {
            let c = disks[i].center();
            (0..3)
                .filter(|&j| j != i)
                .all(|j| disks[j].contains_point(&c))
        })
}

#[derive(Serialize, Deserialize)]
struct DiskDoc {
    #[serde(with = "crate::rational::serde_rat")]
    cx: Rat,
    #[serde(with = "crate::rational::serde_rat")]
    cy: Rat,
    #[serde(with = "crate::rational::serde_rat")]
    r: Rat,
}

impl Serialize for Disk<Rat> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DiskDoc {
            cx: self.cx.clone(),
            cy: self.cy.clone(),
            r: self.r.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Disk<Rat> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = DiskDoc::deserialize(d)?;
        Disk::new(doc.cx, doc.cy, doc.r).map_err(serde::de::Error::custom)
    }
}
