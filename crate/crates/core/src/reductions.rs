//! The two reductions and their forward realization maps.
//!
//! * matroid → graph: two `n`-cliques `A`, `B` joined by all `a_i b_j` with
//!   `i != j` (the complete graph on `2n` vertices minus a perfect matching),
//!   plus one vertex `v_C` per rank-2 flat `C`, adjacent to `a_i` for `i ∈ C`.
//!   A planar realization of the matroid lifts to lines: dual lines for `A`,
//!   parallel offsets for `B`, and transversals through the flat points for
//!   the `v_C`.
//! * wiring diagram → poset: one element per pseudocircle and one per cell
//!   label, ordered by "the cell lies inside the circle". A circle
//!   realization lifts by placing a small disk in every cell.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangements::{
    align_labels, circle_cell_labels, matching_permutation, tope_inside, topes_from_wiring,
    unbounded_tope, validate_great_circle_realization, ArrangementError, Eps, FaceSet,
};
use crate::geometry::{dual_point_to_line, lines3_relation, LineRelation};
use crate::model::{Graph, Poset, Rank3Matroid, SignVector, ValidationReport, WiringDiagram};
use crate::rational::{int, rat};
use crate::verifiers::{
    verify_line_realization, verify_matroid_realization, LineViolation, MatroidViolation,
};
use crate::{Disk, Line2, Line3, Point2, Point3, Rat};

/// Number of genericity candidates tried before giving up.
pub const MAX_CANDIDATES: usize = 10_000;
/// Largest exponent `k` tried for a cell-disk radius `2^-k`.
pub const MAX_RADIUS_EXP: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("invalid matroid: {0}")]
    MatroidInvalid(ValidationReport),
    #[error("the gadget needs n > 3 elements, got {0}")]
    NTooSmall(usize),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error("points do not realize the matroid: {0:?}")]
    RealizationInvalid(Vec<MatroidViolation>),
    #[error("no generic choice found among {MAX_CANDIDATES} candidates for {0}")]
    GenericityExhausted(String),
    #[error("constructed lines fail verification: {0:?}")]
    LinesRejected(Vec<LineViolation>),
    #[error("circles are not a great-circle arrangement: {0}")]
    ValidationFailed(ValidationReport),
    #[error("no radius 2^-k with k <= {MAX_RADIUS_EXP} fits cell {0}")]
    RadiusSearchExhausted(SignVector),
    #[error("circle labels do not match the topes of the wiring diagram")]
    LabelMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum VertexRole {
    A { index: usize },
    B { index: usize },
    Flat { flat: usize, elements: Vec<usize> },
}

/// Output of [`matroid_to_graph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineReduction {
    pub matroid: Rank3Matroid,
    pub graph: Graph,
    pub roles: Vec<VertexRole>,
}

impl LineReduction {
    pub fn a(&self, i: usize) -> usize {
        i
    }

    pub fn b(&self, i: usize) -> usize {
        self.matroid.n + i
    }

    pub fn flat_vertex(&self, k: usize) -> usize {
        2 * self.matroid.n + k
    }
}

/// Vertices `0..n` are `a_i`, `n..2n` are `b_i`, then one vertex per flat in
/// the matroid's flat order.
pub fn matroid_to_graph(m: &Rank3Matroid) -> Result<LineReduction, ReductionError> {
    let report = m.validate();
    if !report.is_valid() {
        return Err(ReductionError::MatroidInvalid(report));
    }
    let n = m.n;
    if n <= 3 {
        return Err(ReductionError::NTooSmall(n));
    }
    let mut edges = Vec::new();
    let mut roles = Vec::with_capacity(2 * n + m.flats.len());
    let mut labels = Vec::with_capacity(2 * n + m.flats.len());
    for i in 0..n {
        roles.push(VertexRole::A { index: i });
        labels.push(format!("a{i}"));
    }
    for i in 0..n {
        roles.push(VertexRole::B { index: i });
        labels.push(format!("b{i}"));
    }
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
            edges.push((n + i, n + j));
            edges.push((i, n + j));
            edges.push((j, n + i));
        }
    }
    for (k, flat) in m.flats.iter().enumerate() {
        let v = 2 * n + k;
        roles.push(VertexRole::Flat {
            flat: k,
            elements: flat.clone(),
        });
        labels.push(format!("v{k}"));
        edges.extend(flat.iter().map(|&i| (i, v)));
    }
    let graph = Graph::new(2 * n + m.flats.len(), edges, Some(labels))
        .expect("reduction graph is simple by construction");
    Ok(LineReduction {
        matroid: m.clone(),
        graph,
        roles,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum ElementRole {
    Circle { index: usize },
    Cell { label: SignVector },
}

/// Output of [`arrangement_to_poset`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleReduction {
    pub wiring: WiringDiagram,
    pub poset: Poset,
    pub roles: Vec<ElementRole>,
    pub unbounded: SignVector,
}

pub fn circle_name(i: usize) -> String {
    format!("c{i}")
}

pub fn cell_name(label: &SignVector) -> String {
    format!("f{label}")
}

/// Elements `c_0..c_{n-1}` then `f_σ` for every tope `σ`; `f_σ < c_i` iff the
/// cell `σ` lies inside pseudocircle `i`. The relation points from the
/// contained disk to the containing one.
pub fn arrangement_to_poset(w: &WiringDiagram) -> Result<CircleReduction, ReductionError> {
    let topes = topes_from_wiring(w)?;
    let n = w.n;
    let tau = unbounded_tope(n);
    let mut elements: Vec<String> = (0..n).map(circle_name).collect();
    let mut roles: Vec<ElementRole> = (0..n).map(|index| ElementRole::Circle { index }).collect();
    let mut relations = Vec::new();
    for t in topes.iter() {
        let f = elements.len();
        elements.push(cell_name(t));
        roles.push(ElementRole::Cell { label: t.clone() });
        for i in 0..n {
            if tope_inside(t, &tau, i) {
                relations.push((f, i));
            }
        }
    }
    let poset = Poset::from_indices(elements, relations).expect("height-2 relation is a poset");
    Ok(CircleReduction {
        wiring: w.clone(),
        poset,
        roles,
        unbounded: tau,
    })
}

/// Line realization of the reduction graph plus the planar data it was
/// built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRealization {
    /// Indexed like the vertices of [`matroid_to_graph`].
    pub lines: Vec<Line3>,
    /// Shear `x ↦ x + λy` applied before dualizing.
    #[serde(with = "crate::rational::serde_rat")]
    pub shear: Rat,
    pub sheared_points: Vec<Point2>,
    /// Intercept offsets of the `b` lines relative to their `a` partners.
    #[serde(with = "crate::rational::serde_rat_vec")]
    pub b_offsets: Vec<Rat>,
    /// Common point of the dual lines of each flat, in the plane `z = 0`.
    pub flat_points: Vec<Point2>,
    /// `x` component of each transversal direction `(α, 1, 1)`.
    #[serde(with = "crate::rational::serde_rat_vec")]
    pub transversal_slopes: Vec<Rat>,
}

impl LineRealization {
    /// Planar lines (`a` lines then `b` lines) as `y = s x + t`.
    pub fn planar_lines(&self) -> Vec<Line2> {
        let a: Vec<Line2> = self.sheared_points.iter().map(dual_point_to_line).collect();
        let b = a.iter().zip(&self.b_offsets).map(|(l, t)| match l {
            Line2::NonVertical { slope, intercept } => Line2::NonVertical {
                slope: slope.clone(),
                intercept: intercept.clone() + t.clone(),
            },
            Line2::Vertical { .. } => unreachable!("duals are never vertical"),
        });
        a.iter().cloned().chain(b).collect()
    }
}

/// Deterministic candidate sequence `0, 1, 1/2, 1/3, ...`.
pub fn genericity_candidates() -> impl Iterator<Item = Rat> {
    std::iter::once(Rat::zero())
        .chain((1..).map(|k| rat(1, k)))
        .take(MAX_CANDIDATES)
}

fn lift(l: &Line2) -> Line3 {
    match l {
        Line2::NonVertical { slope, intercept } => Line3 {
            base: Point3::new(Rat::zero(), intercept.clone(), Rat::zero()),
            dir: Point3::new(Rat::one(), slope.clone(), Rat::zero()),
        },
        Line2::Vertical { .. } => unreachable!("duals are never vertical"),
    }
}

/// Maps a planar realization of `m` to a line realization of
/// `matroid_to_graph(m)`. Generic choices are taken from
/// [`genericity_candidates`] and accepted only after an exact incidence
/// check; the result is verified before it is returned.
pub fn realize_lines_from_points(
    m: &Rank3Matroid,
    pts: &[Point2],
) -> Result<LineRealization, ReductionError> {
    let reduction = matroid_to_graph(m)?;
    let check = verify_matroid_realization(m, pts);
    if !check.passed {
        return Err(ReductionError::RealizationInvalid(check.violations));
    }
    let n = m.n;

    // distinct x-coordinates, so that no two dual lines are parallel
    let shear = genericity_candidates()
        .find(|lam| {
            let mut xs: Vec<Rat> = pts
                .iter()
                .map(|p| p.x.clone() + lam.clone() * p.y.clone())
                .collect();
            xs.sort();
            xs.windows(2).all(|w| w[0] != w[1])
        })
        .ok_or_else(|| ReductionError::GenericityExhausted("shear".into()))?;
    let sheared: Vec<Point2> = pts
        .iter()
        .map(|p| Point2::new(p.x.clone() + shear.clone() * p.y.clone(), p.y.clone()))
        .collect();
    let a_lines: Vec<Line2> = sheared.iter().map(dual_point_to_line).collect();

    let flat_points: Vec<Point2> = m
        .flats
        .iter()
        .map(|f| {
            let q = a_lines[f[0]].meet(&a_lines[f[1]]).expect("distinct slopes");
            debug_assert!(f.iter().all(|&i| a_lines[i].contains(&q)));
            q
        })
        .collect();

    // crossings of placed planar lines; b lines must avoid all of them
    let mut placed: Vec<Line2> = a_lines.clone();
    let mut crossings: Vec<Point2> = flat_points.clone();
    let mut b_offsets = Vec::with_capacity(n);
    let mut b_lines = Vec::with_capacity(n);
    for j in 0..n {
        let Line2::NonVertical { slope, intercept } = &a_lines[j] else {
            unreachable!("duals are never vertical")
        };
        let (t, line) = genericity_candidates()
            .filter(|t| !t.is_zero())
            .map(|t| {
                let l = Line2::NonVertical {
                    slope: slope.clone(),
                    intercept: intercept.clone() + t.clone(),
                };
                (t, l)
            })
            .find(|(_, l)| !crossings.iter().any(|q| l.contains(q)))
            .ok_or_else(|| ReductionError::GenericityExhausted(format!("offset of b{j}")))?;
        for other in &placed {
            if let Some(q) = line.meet(other) {
                crossings.push(q);
            }
        }
        placed.push(line.clone());
        b_lines.push(line);
        b_offsets.push(t);
    }

    let mut lines: Vec<Line3> = a_lines.iter().chain(&b_lines).map(lift).collect();
    let mut transversal_slopes = Vec::with_capacity(m.flats.len());
    for (k, (flat, q)) in m.flats.iter().zip(&flat_points).enumerate() {
        let base = Point3::new(q.x.clone(), q.y.clone(), Rat::zero());
        let (alpha, line) = genericity_candidates()
            .map(|alpha| {
                let dir = Point3::new(alpha.clone(), Rat::one(), Rat::one());
                (
                    alpha,
                    Line3 {
                        base: base.clone(),
                        dir,
                    },
                )
            })
            .find(|(_, l)| {
                lines.iter().enumerate().all(|(v, other)| {
                    let must_meet = v < n && flat.contains(&v);
                    let rel = lines3_relation(l, other);
                    match rel {
                        LineRelation::Identical => false,
                        LineRelation::Intersecting(_) => must_meet,
                        _ => !must_meet,
                    }
                })
            })
            .ok_or_else(|| ReductionError::GenericityExhausted(format!("transversal v{k}")))?;
        lines.push(line);
        transversal_slopes.push(alpha);
    }

    let report = verify_line_realization(&reduction.graph, &lines);
    if !report.passed {
        return Err(ReductionError::LinesRejected(report.violations));
    }
    Ok(LineRealization {
        lines,
        shear,
        sheared_points: sheared,
        b_offsets,
        flat_points,
        transversal_slopes,
    })
}

/// One disk per realized cell label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDisk {
    /// Geometric label, `+` = inside.
    pub label: SignVector,
    pub disk: Disk,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskRealization {
    pub cells: Vec<CellDisk>,
    pub labels: FaceSet,
    pub far_label: SignVector,
}

/// Places a disk `2^-k` (smallest `k`) around the witness point of every
/// cell label, strictly inside the circles the label is inside and strictly
/// disjoint from the others.
pub fn realize_disks_from_circles(circles: &[Disk]) -> Result<DiskRealization, ReductionError> {
    let report = validate_great_circle_realization(circles);
    if !report.is_valid() {
        return Err(ReductionError::ValidationFailed(report));
    }
    let labeling = circle_cell_labels(circles, Eps::Auto)?;
    let mut cells = Vec::with_capacity(labeling.labels.len());
    for (label, center) in &labeling.witnesses {
        let mut radius = Rat::one();
        let mut found = None;
        for _ in 0..=MAX_RADIUS_EXP {
            let fits = circles.iter().enumerate().all(|(i, c)| {
                let d2 = c.center().dist2(center);
                if label.is_positive(i) {
                    let gap = c.r.clone() - radius.clone();
                    radius < c.r && d2 < gap.clone() * gap
                } else {
                    let sum = c.r.clone() + radius.clone();
                    d2 > sum.clone() * sum
                }
            });
            if fits {
                found = Some(radius.clone());
                break;
            }
            radius /= int(2);
        }
        let r = found.ok_or_else(|| ReductionError::RadiusSearchExhausted(label.clone()))?;
        cells.push(CellDisk {
            label: label.clone(),
            disk: Disk {
                cx: center.x.clone(),
                cy: center.y.clone(),
                r,
            },
        });
    }
    Ok(DiskRealization {
        cells,
        labels: labeling.labels,
        far_label: labeling.far_label,
    })
}

/// Disk map for the reduction poset: circle `c_k` gets the geometric circle
/// matched to pseudocircle `k`, cell `f_σ` the cell disk with the aligned
/// label `σ`. Fails if no relabeling of the circles matches the topes.
pub fn assemble_circle_order(
    reduction: &CircleReduction,
    circles: &[Disk],
    cells: &DiskRealization,
) -> Result<BTreeMap<String, Disk>, ReductionError> {
    let n = reduction.wiring.n;
    if circles.len() != n {
        return Err(ReductionError::LabelMismatch);
    }
    let aligned = align_labels(&cells.labels, &cells.far_label, &reduction.unbounded);
    let topes = topes_from_wiring(&reduction.wiring)?;
    let perm = matching_permutation(&aligned, &topes).ok_or(ReductionError::LabelMismatch)?;
    let mut map = BTreeMap::new();
    for (k, &c) in perm.iter().enumerate() {
        map.insert(circle_name(k), circles[c].clone());
    }
    let single = FaceSet::new(n);
    for cell in &cells.cells {
        let mut one = single.clone();
        one.insert(cell.label.clone());
        let label = align_labels(&one, &cells.far_label, &reduction.unbounded)
            .vectors
            .into_iter()
            .next()
            .expect("one label")
            .permuted(&perm);
        map.insert(cell_name(&label), cell.disk.clone());
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::poset_is_bipartite;
    use crate::verifiers::verify_circle_order;

    pub(crate) fn figure_one() -> Rank3Matroid {
        Rank3Matroid::from_one_indexed(
            5,
            &[&[1, 2], &[2, 3], &[3, 4], &[1, 4], &[1, 3, 5], &[2, 4, 5]],
        )
    }

    pub(crate) fn square_center() -> Vec<Point2> {
        vec![
            Point2::new(int(0), int(0)),
            Point2::new(int(1), int(0)),
            Point2::new(int(1), int(1)),
            Point2::new(int(0), int(1)),
            Point2::new(rat(1, 2), rat(1, 2)),
        ]
    }

    fn generic_square() -> (Rank3Matroid, Vec<Point2>) {
        let m = Rank3Matroid::from_long_flats(4, vec![]);
        (m, square_center()[..4].to_vec())
    }

    fn krupp() -> Vec<Disk> {
        vec![
            Disk::new(int(0), int(0), int(1)).unwrap(),
            Disk::new(int(1), int(0), int(1)).unwrap(),
            Disk::new(rat(1, 2), int(1), int(1)).unwrap(),
        ]
    }

    #[test]
    fn figure_one_graph_sizes() {
        let r = matroid_to_graph(&figure_one()).unwrap();
        assert_eq!(r.graph.n(), 16);
        assert_eq!(r.graph.edge_count(), 54);
    }

    #[test]
    fn generic_four_point_graph_sizes() {
        let r = matroid_to_graph(&generic_square().0).unwrap();
        assert_eq!(r.graph.n(), 14);
        assert_eq!(r.graph.edge_count(), 36);
    }

    #[test]
    fn small_matroid_rejected() {
        let m = Rank3Matroid::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_eq!(
            matroid_to_graph(&m).unwrap_err(),
            ReductionError::NTooSmall(3)
        );
        let bad = Rank3Matroid::new(4, vec![vec![0, 1]]);
        assert!(matches!(
            matroid_to_graph(&bad),
            Err(ReductionError::MatroidInvalid(_))
        ));
    }

    #[test]
    fn degrees_follow_roles() {
        let m = figure_one();
        let r = matroid_to_graph(&m).unwrap();
        let n = m.n;
        for i in 0..n {
            let flats = m.flats_through(i).count();
            assert_eq!(r.graph.degree(r.a(i)), 2 * n - 2 + flats);
            assert_eq!(r.graph.degree(r.b(i)), 2 * n - 2);
            assert!(!r.graph.has_edge(r.a(i), r.b(i)));
        }
        for (k, f) in m.flats.iter().enumerate() {
            assert_eq!(r.graph.degree(r.flat_vertex(k)), f.len());
        }
    }

    #[test]
    fn poset_of_one_line() {
        let r = arrangement_to_poset(&WiringDiagram::new(1, vec![])).unwrap();
        assert_eq!(r.poset.elements(), &["c0", "f-", "f+"]);
        assert_eq!(r.poset.relation_count(), 1);
        assert!(r.poset.less(1, 0));
    }

    #[test]
    fn poset_of_braid() {
        let r = arrangement_to_poset(&WiringDiagram::new(3, vec![0, 1, 0])).unwrap();
        assert_eq!(r.poset.len(), 11);
        assert_eq!(r.poset.relation_count(), 12);
        assert!(poset_is_bipartite(&r.poset));
        let r4 = arrangement_to_poset(&WiringDiagram::cyclic(4)).unwrap();
        assert_eq!(r4.poset.len(), 18);
    }

    #[test]
    fn figure_one_lines_verify() {
        let m = figure_one();
        let lines = realize_lines_from_points(&m, &square_center()).unwrap();
        assert_eq!(lines.lines.len(), 16);
        let g = matroid_to_graph(&m).unwrap().graph;
        assert!(verify_line_realization(&g, &lines.lines).passed);
        // square corners share x-coordinates, so the identity shear is rejected
        assert_ne!(lines.shear, Rat::zero());
    }

    #[test]
    fn generic_square_lines_verify() {
        let (m, pts) = generic_square();
        let lines = realize_lines_from_points(&m, &pts).unwrap();
        assert_eq!(lines.lines.len(), 14);
    }

    #[test]
    fn spurious_collinearity_rejected() {
        let (m, mut pts) = generic_square();
        pts[3] = Point2::new(int(2), int(0));
        assert!(matches!(
            realize_lines_from_points(&m, &pts),
            Err(ReductionError::RealizationInvalid(_))
        ));
    }

    #[test]
    fn braid_round_trip() {
        let red = arrangement_to_poset(&WiringDiagram::new(3, vec![0, 1, 0])).unwrap();
        let cells = realize_disks_from_circles(&krupp()).unwrap();
        assert_eq!(cells.cells.len(), 8);
        let map = assemble_circle_order(&red, &krupp(), &cells).unwrap();
        let report = verify_circle_order(&red.poset, &map).unwrap();
        assert!(report.passed, "{:?}", report.violations);
    }

    #[test]
    fn single_circle_cells() {
        let c = vec![Disk::new(int(0), int(0), int(1)).unwrap()];
        let cells = realize_disks_from_circles(&c).unwrap();
        assert_eq!(cells.cells.len(), 2);
        let inside: Vec<bool> = cells.cells.iter().map(|c| c.label.is_positive(0)).collect();
        assert!(inside.contains(&true) && inside.contains(&false));
    }

    #[test]
    fn tangent_pair_rejected() {
        let c = vec![
            Disk::new(int(0), int(0), int(1)).unwrap(),
            Disk::new(int(2), int(0), int(1)).unwrap(),
        ];
        assert!(matches!(
            realize_disks_from_circles(&c),
            Err(ReductionError::ValidationFailed(_))
        ));
    }
}
