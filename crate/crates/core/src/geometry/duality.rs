use super::{Field, GeometryError, Point2};
use crate::Rat;

/// Line in the plane. Non-vertical lines are always stored as
/// `y = slope * x + intercept`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Line2<T = Rat> {
    NonVertical { slope: T, intercept: T },
    Vertical { x: T },
}

impl<T: Field> Line2<T> {
    /// Line through two distinct points.
    pub fn through(p: &Point2<T>, q: &Point2<T>) -> Option<Self> {
        if p == q {
            return None;
        }
        if p.x == q.x {
            return Some(Line2::Vertical { x: p.x.clone() });
        }
        let slope = (q.y.clone() - p.y.clone()) / (q.x.clone() - p.x.clone());
        let intercept = p.y.clone() - slope.clone() * p.x.clone();
        Some(Line2::NonVertical { slope, intercept })
    }

    pub fn contains(&self, p: &Point2<T>) -> bool {
        match self {
            Line2::NonVertical { slope, intercept } => {
                p.y == slope.clone() * p.x.clone() + intercept.clone()
            }
            Line2::Vertical { x } => &p.x == x,
        }
    }

    pub fn eval(&self, x: &T) -> Option<T> {
        match self {
            Line2::NonVertical { slope, intercept } => {
                Some(slope.clone() * x.clone() + intercept.clone())
            }
            Line2::Vertical { .. } => None,
        }
    }

    /// Unique common point, if the lines are not parallel.
    pub fn meet(&self, other: &Self) -> Option<Point2<T>> {
        use Line2::*;
        match (self, other) {
            (
                NonVertical {
                    slope: s1,
                    intercept: t1,
                },
                NonVertical {
                    slope: s2,
                    intercept: t2,
                },
            ) => {
                if s1 == s2 {
                    return None;
                }
                let x = (t2.clone() - t1.clone()) / (s1.clone() - s2.clone());
                let y = s1.clone() * x.clone() + t1.clone();
                Some(Point2::new(x, y))
            }
            (Vertical { x }, l @ NonVertical { .. }) | (l @ NonVertical { .. }, Vertical { x }) => {
                Some(Point2::new(x.clone(), l.eval(x)?))
            }
            (Vertical { .. }, Vertical { .. }) => None,
        }
    }
}

/// `(a, b)` maps to the line `y = a x - b`.
pub fn dual_point_to_line<T: Field>(p: &Point2<T>) -> Line2<T> {
    Line2::NonVertical {
        slope: p.x.clone(),
        intercept: -p.y.clone(),
    }
}

/// Inverse of [`dual_point_to_line`]: `y = s x + t` maps to `(s, -t)`.
pub fn dual_line_to_point<T: Field>(l: &Line2<T>) -> Result<Point2<T>, GeometryError> {
    match l {
        Line2::NonVertical { slope, intercept } => {
            Ok(Point2::new(slope.clone(), -intercept.clone()))
        }
        Line2::Vertical { .. } => Err(GeometryError::DualityDomain),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(x: i64, y: i64) -> Point2 {
        Point2::new(int(x), int(y))
    }

    #[test]
    fn origin_duals_to_x_axis() {
        assert_eq!(
            dual_point_to_line(&p(0, 0)),
            Line2::NonVertical {
                slope: int(0),
                intercept: int(0)
            }
        );
    }

    #[test]
    fn involution_on_unit_point() {
        let l = dual_point_to_line(&p(1, 1));
        assert_eq!(
            l,
            Line2::NonVertical {
                slope: int(1),
                intercept: int(-1)
            }
        );
        assert_eq!(dual_line_to_point(&l).unwrap(), p(1, 1));
    }

    #[test]
    fn vertical_line_has_no_dual() {
        let l: Line2 = Line2::Vertical { x: rat(1, 2) };
        assert_eq!(dual_line_to_point(&l), Err(GeometryError::DualityDomain));
    }

    #[test]
    fn concurrent_duals_of_collinear_points() {
        // (0,0), (1,0), (2,0) lie on y = 0, whose dual point is (0, 0).
        let duals: Vec<_> = [p(0, 0), p(1, 0), p(2, 0)]
            .iter()
            .map(dual_point_to_line)
            .collect();
        for l in &duals {
            assert!(l.contains(&p(0, 0)));
        }
        assert_eq!(duals[0].meet(&duals[1]), Some(p(0, 0)));
    }

    #[test]
    fn meet_and_through() {
        let l = Line2::through(&p(0, 0), &p(2, 2)).unwrap();
        let v = Line2::through(&p(1, 0), &p(1, 5)).unwrap();
        assert_eq!(v, Line2::Vertical { x: int(1) });
        assert_eq!(l.meet(&v), Some(p(1, 1)));
        assert!(Line2::<Rat>::through(&p(1, 1), &p(1, 1)).is_none());
    }
}
