//! Shared fixtures and reference implementations for the integration
//! suites. Oracles here avoid the library's own predicates.
#![allow(dead_code)]

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use realcert::rational::{int, rat, to_f64};
use realcert::search::{value_and_gradient, Penalty};
use realcert::{Disk, Graph, Line3, Point2, Point3, Rank3Matroid, Rat, WiringDiagram};

pub fn square5_matroid() -> Rank3Matroid {
    Rank3Matroid::from_one_indexed(
        5,
        &[&[1, 2], &[2, 3], &[3, 4], &[1, 4], &[1, 3, 5], &[2, 4, 5]],
    )
}

pub fn square5_points() -> Vec<Point2> {
    vec![
        Point2::new(int(0), int(0)),
        Point2::new(int(1), int(0)),
        Point2::new(int(1), int(1)),
        Point2::new(int(0), int(1)),
        Point2::new(rat(1, 2), rat(1, 2)),
    ]
}

pub fn fano() -> Rank3Matroid {
    Rank3Matroid::from_one_indexed(
        7,
        &[
            &[1, 2, 3],
            &[1, 4, 5],
            &[1, 6, 7],
            &[2, 4, 6],
            &[2, 5, 7],
            &[3, 4, 7],
            &[3, 5, 6],
        ],
    )
}

/// Fano with the line {3,5,6} (1-indexed) broken into pairs.
pub fn non_fano() -> Rank3Matroid {
    let long: Vec<Vec<usize>> = [
        [1, 2, 3],
        [1, 4, 5],
        [1, 6, 7],
        [2, 4, 6],
        [2, 5, 7],
        [3, 4, 7],
    ]
    .iter()
    .map(|f| f.iter().map(|e| e - 1).collect())
    .collect();
    Rank3Matroid::from_long_flats(7, long)
}

pub fn braid() -> WiringDiagram {
    WiringDiagram::new(3, vec![0, 1, 0])
}

pub fn krupp_circles() -> Vec<Disk> {
    vec![
        Disk::new(int(0), int(0), int(1)).unwrap(),
        Disk::new(int(1), int(0), int(1)).unwrap(),
        Disk::new(rat(1, 2), int(1), int(1)).unwrap(),
    ]
}

pub fn k4_minus_edge() -> Graph {
    Graph::complete(4).without_edge(2, 3)
}

// ---------------------------------------------------------------- wiring

/// All reduced words of the reversal permutation on `n` wires: at every
/// step swap any adjacent pair that is still in its original order.
pub fn all_wirings(n: usize) -> Vec<WiringDiagram> {
    fn go(perm: &mut Vec<usize>, word: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
        if word.len() == total {
            out.push(word.clone());
            return;
        }
        for k in 0..perm.len().saturating_sub(1) {
            if perm[k] < perm[k + 1] {
                perm.swap(k, k + 1);
                word.push(k);
                go(perm, word, total, out);
                word.pop();
                perm.swap(k, k + 1);
            }
        }
    }
    let mut out = Vec::new();
    let total = n * n.saturating_sub(1) / 2;
    go(&mut (0..n).collect(), &mut Vec::new(), total, &mut out);
    out.into_iter().map(|w| WiringDiagram::new(n, w)).collect()
}

/// Uniform choice among available swaps at each step (not uniform over words).
pub fn random_wiring(n: usize, rng: &mut ChaCha8Rng) -> WiringDiagram {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut word = Vec::new();
    loop {
        let open: Vec<usize> = (0..n.saturating_sub(1))
            .filter(|&k| perm[k] < perm[k + 1])
            .collect();
        if open.is_empty() {
            break;
        }
        let k = open[rng.gen_range(0..open.len())];
        perm.swap(k, k + 1);
        word.push(k);
    }
    WiringDiagram::new(n, word)
}

// -------------------------------------------------------------- algebra

/// Row-echelon rank over the rationals.
pub fn rank(mut m: Vec<Vec<Rat>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in 0..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Solves a square system exactly; `None` if singular.
pub fn solve(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in 0..n {
                    let v = &a[c][j] * &f;
                    a[i][j] -= v;
                }
                let v = &b[c] * &f;
                b[i] -= v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn coords(p: &Point3) -> [Rat; 3] {
    [p.x.clone(), p.y.clone(), p.z.clone()]
}

/// Relation of two 3D lines from the ranks of `[d1 | -d2]` and
/// `[d1 | -d2 | b2 - b1]`, with the meet point from a parametric solve.
pub fn lines3_oracle(l1: &Line3, l2: &Line3) -> (&'static str, Option<Point3>) {
    let (d1, d2) = (coords(&l1.dir), coords(&l2.dir));
    let (b1, b2) = (coords(&l1.base), coords(&l2.base));
    let rhs: Vec<Rat> = (0..3).map(|i| &b2[i] - &b1[i]).collect();
    let a: Vec<Vec<Rat>> = (0..3)
        .map(|i| vec![d1[i].clone(), -d2[i].clone()])
        .collect();
    let aug: Vec<Vec<Rat>> = (0..3)
        .map(|i| vec![d1[i].clone(), -d2[i].clone(), rhs[i].clone()])
        .collect();
    match (rank(a.clone()), rank(aug)) {
        (1, 1) => ("identical", None),
        (1, _) => ("parallel", None),
        (2, 3) => ("skew", None),
        (2, 2) => {
            // pick two independent rows
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let sub = vec![a[i].clone(), a[j].clone()];
                if let Some(st) = solve(sub, vec![rhs[i].clone(), rhs[j].clone()]) {
                    let p = Point3::new(
                        &b1[0] + &d1[0] * &st[0],
                        &b1[1] + &d1[1] * &st[0],
                        &b1[2] + &d1[2] * &st[0],
                    );
                    return ("intersecting", Some(p));
                }
            }
            unreachable!("rank 2 has an invertible 2x2 minor")
        }
        other => panic!("impossible ranks {other:?}"),
    }
}

/// Homogeneous 3x3 map sending the frame `from` (4 points, general
/// position) to the frame `to`.
pub fn projective_map(from: &[Point2], to: &[Point2]) -> [[Rat; 3]; 3] {
    fn frame(p: &[Point2]) -> Vec<Vec<Rat>> {
        let h = |q: &Point2| [q.x.clone(), q.y.clone(), Rat::one()];
        let cols: Vec<[Rat; 3]> = p.iter().take(3).map(h).collect();
        let a: Vec<Vec<Rat>> = (0..3)
            .map(|i| (0..3).map(|j| cols[j][i].clone()).collect())
            .collect();
        let lam = solve(a, h(&p[3]).to_vec()).expect("general position");
        (0..3)
            .map(|i| (0..3).map(|j| &cols[j][i] * &lam[j]).collect())
            .collect()
    }
    let a = frame(from);
    let b = frame(to);
    // H = B A^{-1}, column by column of the identity
    let mut inv = vec![vec![Rat::zero(); 3]; 3];
    for k in 0..3 {
        let e: Vec<Rat> = (0..3)
            .map(|i| if i == k { Rat::one() } else { Rat::zero() })
            .collect();
        let col = solve(a.clone(), e).expect("invertible");
        for i in 0..3 {
            inv[i][k] = col[i].clone();
        }
    }
    let mut h: [[Rat; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            h[i][j] = (0..3).fold(Rat::zero(), |s, k| s + &b[i][k] * &inv[k][j]);
        }
    }
    h
}

pub fn apply_map(h: &[[Rat; 3]; 3], p: &Point2) -> Option<Point2> {
    let v = [p.x.clone(), p.y.clone(), Rat::one()];
    let img: Vec<Rat> = (0..3)
        .map(|i| (0..3).fold(Rat::zero(), |s, k| s + &h[i][k] * &v[k]))
        .collect();
    if img[2].is_zero() {
        return None;
    }
    Some(Point2::new(&img[0] / &img[2], &img[1] / &img[2]))
}

// ---------------------------------------------------------------- random

pub fn random_rat(rng: &mut ChaCha8Rng, range: i64, max_den: i64) -> Rat {
    rat(rng.gen_range(-range..=range), rng.gen_range(1..=max_den))
}

pub fn random_point3(rng: &mut ChaCha8Rng) -> Point3 {
    Point3::new(
        random_rat(rng, 20, 6),
        random_rat(rng, 20, 6),
        random_rat(rng, 20, 6),
    )
}

fn nonzero_point3(rng: &mut ChaCha8Rng) -> Point3 {
    loop {
        let p = random_point3(rng);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random pair of lines, biased so every relation class occurs.
pub fn random_line_pair(rng: &mut ChaCha8Rng) -> (Line3, Line3) {
    let l1 = Line3::new(random_point3(rng), nonzero_point3(rng)).unwrap();
    let k = random_rat(rng, 5, 3);
    let k = if k.is_zero() { int(2) } else { k };
    let l2 = match rng.gen_range(0..4) {
        0 => {
            let p = l1.at(&random_rat(rng, 5, 4));
            Line3::new(p, nonzero_point3(rng)).unwrap()
        }
        1 => Line3::new(random_point3(rng), l1.dir.scale(&k)).unwrap(),
        2 => Line3::new(l1.at(&random_rat(rng, 5, 4)), l1.dir.scale(&k)).unwrap(),
        _ => Line3::new(random_point3(rng), nonzero_point3(rng)).unwrap(),
    };
    (l1, l2)
}

// ----------------------------------------------------------------- krupp

type F3 = (f64, f64, f64);

fn f3(d: &Disk) -> F3 {
    (to_f64(&d.cx), to_f64(&d.cy), to_f64(&d.r))
}

fn float_crossings(a: F3, b: F3) -> Option<[(f64, f64); 2]> {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let d = (dx * dx + dy * dy).sqrt();
    if d >= a.2 + b.2 || d <= (a.2 - b.2).abs() {
        return None;
    }
    let along = (d * d + a.2 * a.2 - b.2 * b.2) / (2.0 * d);
    let h = (a.2 * a.2 - along * along).sqrt();
    let (ux, uy) = (dx / d, dy / d);
    let (mx, my) = (a.0 + along * ux, a.1 + along * uy);
    Some([(mx - h * uy, my + h * ux), (mx + h * uy, my - h * ux)])
}

/// Float separation of every feature the Krupp answer depends on, and the
/// grid's deepest common-interior point depth (positive = inside all).
pub fn krupp_features(c: &[Disk; 3], step: f64) -> (f64, f64) {
    let d: Vec<F3> = c.iter().map(f3).collect();
    let mut sep = f64::INFINITY;
    let mut pts = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let (a, b) = (d[i], d[j]);
        let dist = ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
        sep = sep
            .min((dist - (a.2 + b.2)).abs())
            .min((dist - (a.2 - b.2).abs()).abs());
        if let Some(p) = float_crossings(a, b) {
            pts.extend(p);
            let k = 3 - i - j;
            for q in p {
                let r = ((q.0 - d[k].0).powi(2) + (q.1 - d[k].1).powi(2)).sqrt();
                sep = sep.min((r - d[k].2).abs());
            }
        }
    }
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            sep = sep.min(((pts[a].0 - pts[b].0).powi(2) + (pts[a].1 - pts[b].1).powi(2)).sqrt());
        }
    }
    (sep, grid_depth(&d, step))
}

fn grid_depth(d: &[F3], step: f64) -> f64 {
    let x0 = d.iter().map(|c| c.0 - c.2).fold(f64::MIN, f64::max);
    let x1 = d.iter().map(|c| c.0 + c.2).fold(f64::MAX, f64::min);
    let y0 = d.iter().map(|c| c.1 - c.2).fold(f64::MIN, f64::max);
    let y1 = d.iter().map(|c| c.1 + c.2).fold(f64::MAX, f64::min);
    if x0 > x1 || y0 > y1 {
        return -1.0;
    }
    let mut best = f64::MIN;
    let nx = ((x1 - x0) / step).ceil() as usize;
    let ny = ((y1 - y0) / step).ceil() as usize;
    for i in 0..=nx {
        let x = x0 + i as f64 * step;
        for j in 0..=ny {
            let y = y0 + j as f64 * step;
            let depth = d
                .iter()
                .map(|c| c.2 - ((x - c.0).powi(2) + (y - c.1).powi(2)).sqrt())
                .fold(f64::MAX, f64::min);
            best = best.max(depth);
        }
    }
    best
}

/// Float brute force: all pairs cross and some grid point lies strictly
/// inside all three disks.
pub fn krupp_grid(c: &[Disk; 3], step: f64) -> bool {
    let d: Vec<F3> = c.iter().map(f3).collect();
    let crossing = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .all(|&(i, j)| float_crossings(d[i], d[j]).is_some());
    crossing && grid_depth(&d, step) > 0.0
}

pub fn random_disk(rng: &mut ChaCha8Rng) -> Disk {
    let c = |rng: &mut ChaCha8Rng| rat(rng.gen_range(-100..=100), 100);
    Disk::new(c(rng), c(rng), rat(rng.gen_range(20..=150), 100)).unwrap()
}

// ------------------------------------------------------------- gradients

/// Norm-wise relative error of the analytic gradient against central
/// differences.
pub fn gradient_error<P: Penalty>(p: &P, x: &[f64]) -> f64 {
    let (_, g) = value_and_gradient(p, x);
    let mut y = x.to_vec();
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..x.len() {
        let h = 1e-6 * x[i].abs().max(1.0);
        y[i] = x[i] + h;
        let fp = value_and_gradient(p, &y).0;
        y[i] = x[i] - h;
        let fm = value_and_gradient(p, &y).0;
        y[i] = x[i];
        let fd = (fp - fm) / (2.0 * h);
        num += (g[i] - fd).powi(2);
        den += fd * fd;
    }
    if den < 1e-18 {
        num.sqrt()
    } else {
        (num / den).sqrt()
    }
}
