//! Exact certificate checks: does a geometric object realize a
//! combinatorial one? Every check reports all violations, ordered by index.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geometry::{
    cross3, disk_contains, dot3, lines3_relation, orient2, Disk, Field, Line3, LineRelation,
    Point2, Point3,
};
use crate::model::{Graph, Poset, Rank3Matroid};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report<V> {
    pub passed: bool,
    pub violations: Vec<V>,
}

impl<V> Report<V> {
    fn from_violations(violations: Vec<V>) -> Self {
        Report {
            passed: violations.is_empty(),
            violations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatroidViolation {
    PointCount {
        expected: usize,
        got: usize,
    },
    DuplicatePoints {
        i: usize,
        j: usize,
    },
    /// Collinear triple not contained in any flat.
    SpuriousCollinearity {
        triple: [usize; 3],
    },
    /// Triple inside a flat but not collinear.
    MissingCollinearity {
        triple: [usize; 3],
    },
}

/// Points realize the matroid iff they are distinct and a triple is
/// collinear exactly when some flat contains it.
pub fn verify_matroid_realization<T: Field>(
    m: &Rank3Matroid,
    pts: &[Point2<T>],
) -> Report<MatroidViolation> {
    if pts.len() != m.n {
        return Report::from_violations(vec![MatroidViolation::PointCount {
            expected: m.n,
            got: pts.len(),
        }]);
    }
    let mut out = Vec::new();
    for i in 0..m.n {
        for j in i + 1..m.n {
            if pts[i] == pts[j] {
                out.push(MatroidViolation::DuplicatePoints { i, j });
            }
        }
    }
    for i in 0..m.n {
        for j in i + 1..m.n {
            for k in j + 1..m.n {
                let collinear = orient2(&pts[i], &pts[j], &pts[k]).is_zero();
                let in_flat = m.in_common_flat(&[i, j, k]);
                let triple = [i, j, k];
                match (collinear, in_flat) {
                    (true, false) => out.push(MatroidViolation::SpuriousCollinearity { triple }),
                    (false, true) => out.push(MatroidViolation::MissingCollinearity { triple }),
                    _ => {}
                }
            }
        }
    }
    Report::from_violations(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LineViolation {
    LineCount {
        expected: usize,
        got: usize,
    },
    /// Distinct vertices mapped to the same line.
    IdenticalLines {
        u: usize,
        v: usize,
    },
    /// Edge whose lines do not meet.
    MissingIntersection {
        u: usize,
        v: usize,
        relation: String,
    },
    /// Non-edge whose lines meet.
    UnexpectedIntersection {
        u: usize,
        v: usize,
    },
}

/// Lines realize the graph iff they are pairwise distinct and two lines
/// meet exactly when their vertices are adjacent.
pub fn verify_line_realization<T: Field>(g: &Graph, lines: &[Line3<T>]) -> Report<LineViolation> {
    if lines.len() != g.n() {
        return Report::from_violations(vec![LineViolation::LineCount {
            expected: g.n(),
            got: lines.len(),
        }]);
    }
    let mut out = Vec::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let rel = lines3_relation(&lines[u], &lines[v]);
            let edge = g.has_edge(u, v);
            match rel {
                LineRelation::Identical => out.push(LineViolation::IdenticalLines { u, v }),
                LineRelation::Intersecting(_) if !edge => {
                    out.push(LineViolation::UnexpectedIntersection { u, v })
                }
                LineRelation::Parallel | LineRelation::Skew if edge => {
                    out.push(LineViolation::MissingIntersection {
                        u,
                        v,
                        relation: rel.name().to_string(),
                    })
                }
                _ => {}
            }
        }
    }
    Report::from_violations(out)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("poset element {0:?} has no disk")]
    MissingElement(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleOrderViolation {
    /// Candidate smaller element.
    pub lower: String,
    /// Candidate larger element.
    pub upper: String,
    /// Whether `lower < upper` holds in the poset.
    pub related: bool,
    /// Whether the disk of `lower` lies in the disk of `upper`.
    pub contained: bool,
}

/// Disks realize the poset iff for every ordered pair of distinct elements
/// `y < x` holds exactly when disk(y) ⊆ disk(x).
pub fn verify_circle_order<T: Field>(
    p: &Poset,
    disks: &BTreeMap<String, Disk<T>>,
) -> Result<Report<CircleOrderViolation>, VerifyError> {
    let mapped = p
        .elements()
        .iter()
        .map(|e| {
            disks
                .get(e)
                .ok_or_else(|| VerifyError::MissingElement(e.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for y in 0..p.len() {
        for x in 0..p.len() {
            if x == y {
                continue;
            }
            let related = p.less(y, x);
            let contained = disk_contains(mapped[x], mapped[y]);
            if related != contained {
                out.push(CircleOrderViolation {
                    lower: p.elements()[y].clone(),
                    upper: p.elements()[x].clone(),
                    related,
                    contained,
                });
            }
        }
    }
    Ok(Report::from_violations(out))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliqueShape<T> {
    /// All lines pass through one point.
    CommonPoint(Point3<T>),
    /// All lines lie in one plane and are not concurrent.
    Coplanar,
    /// Pairwise intersecting but neither concurrent nor coplanar.
    Mixed,
    /// Some pair fails to intersect in a single point.
    Invalid,
}

/// Shape of a pairwise-intersecting family of lines: concurrent or coplanar.
pub fn verify_clique_realization<T: Field>(lines: &[Line3<T>]) -> CliqueShape<T> {
    let mut meet = Vec::new();
    for u in 0..lines.len() {
        for v in u + 1..lines.len() {
            match lines3_relation(&lines[u], &lines[v]) {
                LineRelation::Intersecting(p) => meet.push(p),
                _ => return CliqueShape::Invalid,
            }
        }
    }
    if let Some(first) = meet.first() {
        if meet.iter().all(|p| p == first) {
            return CliqueShape::CommonPoint(first.clone());
        }
    } else {
        return CliqueShape::Coplanar;
    }
    let normal = cross3(&lines[0].dir, &lines[1].dir);
    let offset = dot3(&normal, &lines[0].base);
    let in_plane =
        |l: &Line3<T>| dot3(&normal, &l.dir).is_zero() && dot3(&normal, &l.base) == offset;
    if lines.iter().all(in_plane) {
        CliqueShape::Coplanar
    } else {
        CliqueShape::Mixed
    }
}
