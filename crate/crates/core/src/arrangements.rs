//! Sign-vector combinatorics of arrangements: faces of a wiring diagram,
//! topes of the associated great-pseudocircle arrangement, and cell labels
//! of concrete circle arrangements.
//!
//! Orientation: in a wiring diagram, `+` in coordinate `i` means "above wire
//! `i`", so the top face of the first slice is the all-`+` tope. This tope is
//! the unbounded cell; a cell label `σ` lies inside pseudocircle `i` iff
//! `σ_i` differs from it. Geometric cell labels use `+` for "inside".

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::geometry::{
    circle_intersection_points, circle_pair_relation, krupp_test, CirclePair, Disk as DiskT,
};
use crate::model::{SignVector, ValidationReport, WiringDiagram};
use crate::rational::{int, rat, sqrt_approx};
use crate::{Disk, Point2, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("invalid wiring diagram: {0}")]
    InvalidWiring(ValidationReport),
    #[error("circles {0} and {1} are tangent")]
    Tangency(usize, usize),
    #[error("circles {0} and {1} coincide")]
    DuplicateCircle(usize, usize),
    #[error("cell labels did not stabilize after {0} halvings of eps")]
    LabelsUnstable(usize),
}

/// Deduplicated set of sign vectors of length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSet {
    pub n: usize,
    pub vectors: BTreeSet<SignVector>,
}

impl FaceSet {
    pub fn new(n: usize) -> Self {
        FaceSet {
            n,
            vectors: BTreeSet::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn contains(&self, v: &SignVector) -> bool {
        self.vectors.contains(v)
    }

    pub fn insert(&mut self, v: SignVector) {
        debug_assert_eq!(v.len(), self.n);
        self.vectors.insert(v);
    }

    pub fn iter(&self) -> impl Iterator<Item = &SignVector> {
        self.vectors.iter()
    }

    pub fn negated(&self) -> FaceSet {
        FaceSet {
            n: self.n,
            vectors: self.vectors.iter().map(|v| -v).collect(),
        }
    }

    pub fn permuted(&self, perm: &[usize]) -> FaceSet {
        FaceSet {
            n: self.n,
            vectors: self.vectors.iter().map(|v| v.permuted(perm)).collect(),
        }
    }
}

fn checked(w: &WiringDiagram) -> Result<(), ArrangementError> {
    let report = w.validate();
    if report.is_valid() {
        Ok(())
    } else {
        Err(ArrangementError::InvalidWiring(report))
    }
}

/// Sign vectors of the faces of the affine arrangement, read off every
/// vertical gap of every slice.
pub fn wiring_faces(w: &WiringDiagram) -> Result<FaceSet, ArrangementError> {
    checked(w)?;
    let n = w.n;
    let mut faces = FaceSet::new(n);
    for perm in w.slices() {
        let mut track_of = vec![0usize; n];
        for (track, &wire) in perm.iter().enumerate() {
            track_of[wire] = track;
        }
        for gap in 0..=n {
            faces.insert(SignVector::new((0..n).map(|i| track_of[i] < gap).collect()));
        }
    }
    Ok(faces)
}

/// Faces together with their antipodes: the cells of the great-pseudocircle
/// arrangement that realizes two copies of the wiring diagram.
pub fn topes_from_wiring(w: &WiringDiagram) -> Result<FaceSet, ArrangementError> {
    let faces = wiring_faces(w)?;
    let mut topes = faces.clone();
    for v in faces.iter() {
        topes.insert(-v);
    }
    Ok(topes)
}

/// The tope taken as the unbounded cell: the top face of the first slice.
pub fn unbounded_tope(n: usize) -> SignVector {
    SignVector::all(n, true)
}

/// Maximum number of distinct cell labels of `n` circles: `n(n-1) + 2`.
pub fn max_labels(n: usize) -> usize {
    n * n.saturating_sub(1) + 2
}

/// Inside/outside relation implied by a tope: true iff the cell is inside
/// pseudocircle `i`.
pub fn tope_inside(tope: &SignVector, tau_inf: &SignVector, i: usize) -> bool {
    tope.is_positive(i) != tau_inf.is_positive(i)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Eps {
    Fixed(Rat),
    Auto,
}

/// Result of [`circle_cell_labels`].
#[derive(Debug, Clone)]
pub struct CellLabeling {
    pub labels: FaceSet,
    /// First candidate point that produced each label.
    pub witnesses: BTreeMap<SignVector, Point2>,
    /// Label of the far point (the unbounded cell).
    pub far_label: SignVector,
    pub eps: Rat,
}

const AUTO_START_EXP: u32 = 4;
const AUTO_MAX_ROUNDS: usize = 48;

/// Labels of the cells of a circle arrangement (`+` = inside), from exact
/// inside/outside tests at rational candidate points placed `eps` away from
/// every crossing and from the top of every circle. With [`Eps::Auto`],
/// `eps` starts at 1/16 and is halved until the label set is unchanged for
/// two consecutive rounds and has at most [`max_labels`] elements; this
/// stopping rule is a heuristic.
pub fn circle_cell_labels(circles: &[Disk], eps: Eps) -> Result<CellLabeling, ArrangementError> {
    for i in 0..circles.len() {
        for j in i + 1..circles.len() {
            match circle_pair_relation(&circles[i], &circles[j]) {
                CirclePair::ExternallyTangent | CirclePair::InternallyTangent => {
                    return Err(ArrangementError::Tangency(i, j))
                }
                CirclePair::Identical => return Err(ArrangementError::DuplicateCircle(i, j)),
                _ => {}
            }
        }
    }
    match eps {
        Eps::Fixed(e) => Ok(labels_at(circles, &e, precision_bits(&e))),
        Eps::Auto => {
            let mut e = rat(1, 1 << AUTO_START_EXP);
            let mut history: Vec<CellLabeling> = Vec::new();
            for _ in 0..AUTO_MAX_ROUNDS {
                let current = labels_at(circles, &e, precision_bits(&e));
                let stable = history.len() >= 2
                    && history[history.len() - 1].labels == current.labels
                    && history[history.len() - 2].labels == current.labels;
                if stable && current.labels.len() <= max_labels(circles.len()) {
                    return Ok(current);
                }
                history.push(current);
                e /= int(2);
            }
            Err(ArrangementError::LabelsUnstable(AUTO_MAX_ROUNDS))
        }
    }
}

fn precision_bits(eps: &Rat) -> u32 {
    // eps >= 2^-k  =>  approximation error 2^-(2k+24) is far below eps^2
    let mut k = 0u32;
    let mut e = eps.clone();
    while e < Rat::one() && k < 4096 {
        e *= int(2);
        k += 1;
    }
    2 * k + 24
}

fn label_of(circles: &[Disk], p: &Point2) -> Option<SignVector> {
    let mut signs = Vec::with_capacity(circles.len());
    for c in circles {
        let v = c.r.clone() * c.r.clone() - c.center().dist2(p);
        if v.is_zero() {
            return None;
        }
        signs.push(v.is_positive());
    }
    Some(SignVector::new(signs))
}

fn far_point(circles: &[Disk]) -> Point2 {
    let x = circles
        .iter()
        .map(|c| c.cx.abs() + c.cy.abs() + c.r.clone())
        .fold(Rat::zero(), |a, b| if b > a { b } else { a });
    Point2::new(x + int(1), Rat::zero())
}

fn candidate_points(circles: &[Disk], eps: &Rat, bits: u32) -> Vec<Point2> {
    let mut out = Vec::new();
    for i in 0..circles.len() {
        for j in i + 1..circles.len() {
            let (a, b) = (&circles[i], &circles[j]);
            let Ok((p, q)) = circle_intersection_points(a, b) else {
                continue;
            };
            let s = sqrt_approx(&p.d, bits);
            for qp in [p, q] {
                let x = qp.x.0.clone() + qp.x.1.clone() * s.clone();
                let y = qp.y.0.clone() + qp.y.1.clone() * s.clone();
                // approximately unit outward normals of both circles
                let n1 = (
                    (x.clone() - a.cx.clone()) / a.r.clone(),
                    (y.clone() - a.cy.clone()) / a.r.clone(),
                );
                let n2 = (
                    (x.clone() - b.cx.clone()) / b.r.clone(),
                    (y.clone() - b.cy.clone()) / b.r.clone(),
                );
                for s1 in [1i64, -1] {
                    for s2 in [1i64, -1] {
                        let (k1, k2) = (eps.clone() * int(s1), eps.clone() * int(s2));
                        out.push(Point2::new(
                            x.clone() + k1.clone() * n1.0.clone() + k2.clone() * n2.0.clone(),
                            y.clone() + k1 * n1.1.clone() + k2 * n2.1.clone(),
                        ));
                    }
                }
            }
        }
    }
    for c in circles {
        out.push(Point2::new(
            c.cx.clone(),
            c.cy.clone() + c.r.clone() + eps.clone(),
        ));
        out.push(Point2::new(
            c.cx.clone(),
            c.cy.clone() + c.r.clone() - eps.clone(),
        ));
    }
    out.extend(circles.iter().map(DiskT::center));
    out.push(far_point(circles));
    out
}

fn labels_at(circles: &[Disk], eps: &Rat, bits: u32) -> CellLabeling {
    let far = far_point(circles);
    let far_label = label_of(circles, &far).expect("far point is outside every circle");
    let mut labels = FaceSet::new(circles.len());
    let mut witnesses = BTreeMap::new();
    for p in candidate_points(circles, eps, bits) {
        if let Some(l) = label_of(circles, &p) {
            witnesses.entry(l.clone()).or_insert(p);
            labels.insert(l);
        }
    }
    CellLabeling {
        labels,
        witnesses,
        far_label,
        eps: eps.clone(),
    }
}

/// Rewrites geometric labels into the tope orientation: coordinates where
/// the far label and `tau_inf` disagree are flipped.
pub fn align_labels(labels: &FaceSet, far_label: &SignVector, tau_inf: &SignVector) -> FaceSet {
    let flip: Vec<bool> = (0..labels.n)
        .map(|i| far_label.is_positive(i) != tau_inf.is_positive(i))
        .collect();
    FaceSet {
        n: labels.n,
        vectors: labels
            .iter()
            .map(|v| SignVector::new((0..v.len()).map(|i| v.is_positive(i) != flip[i]).collect()))
            .collect(),
    }
}

/// A permutation `perm` (pseudocircle `k` of `topes` is circle `perm[k]`)
/// with `labels.permuted(perm) == topes`, if any. Brute force; meant for
/// small `n`.
pub fn matching_permutation(labels: &FaceSet, topes: &FaceSet) -> Option<Vec<usize>> {
    if labels.n != topes.n || labels.len() != topes.len() {
        return None;
    }
    let mut perm: Vec<usize> = (0..labels.n).collect();
    loop {
        if &labels.permuted(&perm) == topes {
            return Some(perm);
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every pair of circles must cross and every triple must form a Krupp.
pub fn validate_great_circle_realization(circles: &[Disk]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = circles.len();
    for i in 0..n {
        for j in i + 1..n {
            let rel = circle_pair_relation(&circles[i], &circles[j]);
            if rel != CirclePair::CrossingAtTwoPoints {
                report.push(format!("circles {i} and {j} do not cross ({rel:?})"));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !krupp_test(&circles[i], &circles[j], &circles[k]) {
                    report.push(format!("circles {{{i},{j},{k}}} do not form a Krupp"));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk(x: Rat, y: Rat, r: Rat) -> Disk {
        Disk::new(x, y, r).unwrap()
    }

    pub(crate) fn krupp_triple() -> Vec<Disk> {
        vec![
            disk(int(0), int(0), int(1)),
            disk(int(1), int(0), int(1)),
            disk(rat(1, 2), int(1), int(1)),
        ]
    }

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn faces_of_small_diagrams() {
        let one = wiring_faces(&WiringDiagram::new(1, vec![])).unwrap();
        assert_eq!(one.vectors, [sv("+"), sv("-")].into_iter().collect());
        assert_eq!(
            wiring_faces(&WiringDiagram::new(2, vec![0])).unwrap().len(),
            4
        );
        assert_eq!(
            wiring_faces(&WiringDiagram::new(3, vec![0, 1, 0]))
                .unwrap()
                .len(),
            7
        );
    }

    #[test]
    fn braid_faces_by_hand() {
        // slice 0: wires 0,1,2 bottom to top; gaps give ---, +--, ++-, +++
        // slice 1 (1,0,2): -+-; slice 2 (1,2,0): -++; slice 3 (2,1,0): --+
        let expected: BTreeSet<SignVector> = ["---", "+--", "++-", "+++", "-+-", "-++", "--+"]
            .into_iter()
            .map(sv)
            .collect();
        let faces = wiring_faces(&WiringDiagram::new(3, vec![0, 1, 0])).unwrap();
        assert_eq!(faces.vectors, expected);
    }

    #[test]
    fn topes_of_braid_are_the_whole_cube() {
        let t = topes_from_wiring(&WiringDiagram::new(3, vec![0, 1, 0])).unwrap();
        assert_eq!(t.len(), 8);
        assert_eq!(
            topes_from_wiring(&WiringDiagram::new(1, vec![]))
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            topes_from_wiring(&WiringDiagram::cyclic(4)).unwrap().len(),
            14
        );
    }

    #[test]
    fn invalid_wiring_is_an_error() {
        assert!(matches!(
            wiring_faces(&WiringDiagram::new(3, vec![0, 0, 1])),
            Err(ArrangementError::InvalidWiring(_))
        ));
    }

    #[test]
    fn max_labels_values() {
        assert_eq!(max_labels(1), 2);
        assert_eq!(max_labels(3), 8);
        assert_eq!(max_labels(6), 32);
    }

    #[test]
    fn single_circle_labels() {
        let l = circle_cell_labels(&[disk(int(0), int(0), int(1))], Eps::Auto).unwrap();
        assert_eq!(l.labels.vectors, [sv("+"), sv("-")].into_iter().collect());
        assert_eq!(l.far_label, sv("-"));
    }

    #[test]
    fn krupp_realizes_all_labels() {
        let l = circle_cell_labels(&krupp_triple(), Eps::Auto).unwrap();
        assert_eq!(l.labels.len(), 8);
        let topes = topes_from_wiring(&WiringDiagram::new(3, vec![0, 1, 0])).unwrap();
        let aligned = align_labels(&l.labels, &l.far_label, &unbounded_tope(3));
        assert_eq!(aligned, topes);
    }

    #[test]
    fn nested_pair_has_three_labels() {
        let c = [disk(int(0), int(0), int(3)), disk(int(0), int(0), int(1))];
        let l = circle_cell_labels(&c, Eps::Auto).unwrap();
        assert_eq!(
            l.labels.vectors,
            ["--", "+-", "++"].into_iter().map(sv).collect()
        );
        assert!(l.labels.len() < max_labels(2));
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let tangent = [disk(int(0), int(0), int(1)), disk(int(2), int(0), int(1))];
        assert_eq!(
            circle_cell_labels(&tangent, Eps::Auto).unwrap_err(),
            ArrangementError::Tangency(0, 1)
        );
        let internal = [disk(int(0), int(0), int(2)), disk(int(1), int(0), int(1))];
        assert_eq!(
            circle_cell_labels(&internal, Eps::Auto).unwrap_err(),
            ArrangementError::Tangency(0, 1)
        );
        let dup = [disk(int(0), int(0), int(1)), disk(int(0), int(0), int(1))];
        assert_eq!(
            circle_cell_labels(&dup, Eps::Auto).unwrap_err(),
            ArrangementError::DuplicateCircle(0, 1)
        );
    }

    #[test]
    fn great_circle_validation() {
        assert!(validate_great_circle_realization(&krupp_triple()).is_valid());
        let mut bad = krupp_triple();
        bad[2] = disk(int(10), int(0), int(1));
        let r = validate_great_circle_realization(&bad);
        assert!(r.issues.iter().any(|s| s.contains("{0,1,2}")));
    }

    #[test]
    fn permutations_are_enumerated() {
        let mut p = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}
