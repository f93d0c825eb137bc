use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::geometry::{cross3, dot3, orient3, Point3};
use crate::model::Rank3Matroid;
use crate::rational::int;
use crate::verifiers::verify_matroid_realization;
use crate::{Point2, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoordinatizationError {
    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),
    #[error("need at least 4 elements, got {0}")]
    TooSmall(usize),
    #[error("no four elements in general position")]
    NoBasis,
    #[error("{0:?} is not an admissible basis")]
    BadBasis([usize; 4]),
}

/// One forced placement: `element` is the meet of the lines spanned by the
/// placed elements of two flats. Homogeneous coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub element: usize,
    pub flats: [usize; 2],
    pub point: Point3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Conflict {
    /// The two support lines coincide.
    CoincidentSupport {
        element: usize,
        flats: [usize; 2],
    },
    /// Forced point equals an already placed one.
    Coincident {
        i: usize,
        j: usize,
    },
    SpuriousCollinearity {
        triple: [usize; 3],
    },
    MissingCollinearity {
        triple: [usize; 3],
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Coordinatization {
    Realizable {
        basis: [usize; 4],
        points: Vec<Point2>,
        trace: Vec<Placement>,
    },
    /// Every placement in `trace` was forced; `conflict` follows from them.
    Unrealizable {
        basis: [usize; 4],
        trace: Vec<Placement>,
        conflict: Conflict,
    },
    /// No further placement is forced.
    Undecided {
        basis: [usize; 4],
        trace: Vec<Placement>,
        placed: Vec<usize>,
    },
}

impl Coordinatization {
    pub fn name(&self) -> &'static str {
        match self {
            Coordinatization::Realizable { .. } => "realizable",
            Coordinatization::Unrealizable { .. } => "unrealizable",
            Coordinatization::Undecided { .. } => "undecided",
        }
    }
}

/// 4-subsets, in lexicographic order, no three of which share a flat.
pub fn admissible_bases(m: &Rank3Matroid) -> Vec<[usize; 4]> {
    let n = m.n;
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if m.in_common_flat(&[a, b, c]) {
                    continue;
                }
                for d in c + 1..n {
                    let q = [a, b, c, d];
                    let ok = (0..4).all(|skip| {
                        let t: Vec<usize> = (0..4).filter(|&k| k != skip).map(|k| q[k]).collect();
                        !m.in_common_flat(&t)
                    });
                    if ok {
                        out.push(q);
                    }
                }
            }
        }
    }
    out
}

/// Exact greedy coordinatization from the first admissible basis.
pub fn constructible_coordinatization(
    m: &Rank3Matroid,
) -> Result<Coordinatization, CoordinatizationError> {
    check_input(m)?;
    let basis = *admissible_bases(m)
        .first()
        .ok_or(CoordinatizationError::NoBasis)?;
    coordinatize_with_basis(m, basis)
}

fn check_input(m: &Rank3Matroid) -> Result<(), CoordinatizationError> {
    let rep = m.validate();
    if !rep.is_valid() {
        return Err(CoordinatizationError::InvalidMatroid(rep.to_string()));
    }
    if m.n < 4 {
        return Err(CoordinatizationError::TooSmall(m.n));
    }
    Ok(())
}

/// Fixes `basis` at the projective frame (0,0), (1,0), (0,1), (1,1) and
/// places forced elements as exact meets of support lines. Works in the
/// projective plane, so parallel support lines simply meet at infinity; a
/// realizable result is moved back to affine coordinates by a projective map.
pub fn coordinatize_with_basis(
    m: &Rank3Matroid,
    basis: [usize; 4],
) -> Result<Coordinatization, CoordinatizationError> {
    check_input(m)?;
    if basis.iter().any(|&e| e >= m.n)
        || !admissible_bases(m).contains(&{
            let mut b = basis;
            b.sort_unstable();
            b
        })
    {
        return Err(CoordinatizationError::BadBasis(basis));
    }
    let frame = [(0, 0), (1, 0), (0, 1), (1, 1)];
    let mut pts: Vec<Option<Point3>> = vec![None; m.n];
    for (k, &e) in basis.iter().enumerate() {
        let (x, y) = frame[k];
        pts[e] = Some(Point3::new(int(x), int(y), Rat::one()));
    }
    let mut trace = Vec::new();
    loop {
        if pts.iter().all(Option::is_some) {
            break;
        }
        let Some((e, f1, f2)) = next_forced(m, &pts) else {
            let placed = (0..m.n).filter(|&i| pts[i].is_some()).collect();
            return Ok(Coordinatization::Undecided {
                basis,
                trace,
                placed,
            });
        };
        let l1 = support_line(m, &pts, f1);
        let l2 = support_line(m, &pts, f2);
        let p = cross3(&l1, &l2);
        if p.is_zero() {
            return Ok(Coordinatization::Unrealizable {
                basis,
                trace,
                conflict: Conflict::CoincidentSupport {
                    element: e,
                    flats: [f1, f2],
                },
            });
        }
        trace.push(Placement {
            element: e,
            flats: [f1, f2],
            point: p.clone(),
        });
        if let Some(conflict) = check_new(m, &pts, e, &p) {
            return Ok(Coordinatization::Unrealizable {
                basis,
                trace,
                conflict,
            });
        }
        pts[e] = Some(p);
    }
    let hom: Vec<Point3> = pts.into_iter().map(Option::unwrap).collect();
    let points = to_affine(&hom);
    let report = verify_matroid_realization(m, &points);
    assert!(
        report.passed,
        "consistent projective placement failed affine verification: {:?}",
        report.violations
    );
    Ok(Coordinatization::Realizable {
        basis,
        points,
        trace,
    })
}

/// Lowest unplaced element on two flats that each have two placed members.
fn next_forced(m: &Rank3Matroid, pts: &[Option<Point3>]) -> Option<(usize, usize, usize)> {
    (0..m.n).filter(|&e| pts[e].is_none()).find_map(|e| {
        let mut spanned = m
            .flats_through(e)
            .filter(|&f| m.flats[f].iter().filter(|&&i| pts[i].is_some()).count() >= 2);
        let f1 = spanned.next()?;
        let f2 = spanned.next()?;
        Some((e, f1, f2))
    })
}

fn support_line(m: &Rank3Matroid, pts: &[Option<Point3>], f: usize) -> Point3 {
    let mut placed = m.flats[f].iter().filter_map(|&i| pts[i].as_ref());
    let a = placed.next().expect("two placed");
    let b = placed.next().expect("two placed");
    cross3(a, b)
}

fn check_new(m: &Rank3Matroid, pts: &[Option<Point3>], e: usize, p: &Point3) -> Option<Conflict> {
    let placed: Vec<(usize, &Point3)> = (0..m.n)
        .filter_map(|i| pts[i].as_ref().map(|q| (i, q)))
        .collect();
    for &(i, q) in &placed {
        if cross3(p, q).is_zero() {
            return Some(Conflict::Coincident { i, j: e });
        }
    }
    for (a, &(i, qi)) in placed.iter().enumerate() {
        for &(j, qj) in &placed[a + 1..] {
            let collinear = orient3(qi, qj, p).is_zero();
            let mut triple = [i, j, e];
            triple.sort_unstable();
            match (collinear, m.in_common_flat(&triple)) {
                (true, false) => return Some(Conflict::SpuriousCollinearity { triple }),
                (false, true) => return Some(Conflict::MissingCollinearity { triple }),
                _ => {}
            }
        }
    }
    None
}

/// Sends a line missing every point to infinity: `(x, y, w) ↦ (x, y) / (a x + b y + w)`.
fn to_affine(hom: &[Point3]) -> Vec<Point2> {
    let side = hom.len() as i64 + 2;
    for a in 0..side {
        for b in 0..side {
            let l = Point3::new(int(a), int(b), Rat::one());
            let dots: Vec<Rat> = hom.iter().map(|p| dot3(&l, p)).collect();
            if dots.iter().all(|d| !d.is_zero()) {
                return hom
                    .iter()
                    .zip(dots)
                    .map(|(p, w)| Point2::new(&p.x / &w, &p.y / &w))
                    .collect();
            }
        }
    }
    unreachable!("a grid of (n+2)^2 lines cannot all meet n points")
}
