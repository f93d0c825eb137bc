use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{relu, run_search, Penalty, Rounded, SearchOutcome, SearchParams};
use crate::geometry::{lines3_relation, LineRelation};
use crate::model::Graph;
use crate::rational::{round_to_rat, to_f64};
use crate::verifiers::verify_line_realization;
use crate::{Line3, Point3};

/// Below this `|d_u × d_v|` the distance formula is dropped for the pair.
const SINGULAR: f64 = 1e-6;
/// Float distance under which a transversal point snaps to an exact meet.
const SNAP: f64 = 1e-4;

type V3 = [f64; 3];

fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn axpy(k: f64, a: V3, b: V3) -> V3 {
    [b[0] + k * a[0], b[1] + k * a[1], b[2] + k * a[2]]
}

fn add_into(g: &mut [f64], at: usize, k: f64, v: V3) {
    for i in 0..3 {
        g[at + i] += k * v[i];
    }
}

/// Intersection penalty over `(p, d)` per vertex, six floats each.
pub struct LinePenalty {
    n: usize,
    margin: f64,
    edge: Vec<Vec<bool>>,
}

impl LinePenalty {
    pub fn new(g: &Graph, margin: f64) -> Self {
        let n = g.n();
        let mut edge = vec![vec![false; n]; n];
        for (u, v) in g.edges() {
            edge[u][v] = true;
            edge[v][u] = true;
        }
        LinePenalty { n, margin, edge }
    }

    fn line(x: &[f64], u: usize) -> (V3, V3) {
        let o = 6 * u;
        ([x[o], x[o + 1], x[o + 2]], [x[o + 3], x[o + 4], x[o + 5]])
    }

    fn pair(&self, x: &[f64], grad: &mut [f64], u: usize, v: usize) -> f64 {
        let (pu, du) = Self::line(x, u);
        let (pv, dv) = Self::line(x, v);
        let c = cross(du, dv);
        let cn2 = dot(c, c);
        let cn = cn2.sqrt();
        let mut f = 0.0;
        // gradient of a scalar in c pushed back to the directions
        let push_c = |grad: &mut [f64], a: V3| {
            add_into(grad, 6 * u + 3, 1.0, cross(dv, a));
            add_into(grad, 6 * v + 3, 1.0, cross(a, du));
        };
        let aux = relu(self.margin - cn);
        if aux > 0.0 {
            f += aux * aux;
            if cn > 0.0 {
                let k = -2.0 * aux / cn;
                push_c(grad, [k * c[0], k * c[1], k * c[2]]);
            }
        }
        if cn < SINGULAR {
            return f;
        }
        let w = sub(pu, pv);
        let gg = dot(c, w);
        let dist2 = gg * gg / cn2;
        // d(dist2) = 2g/|c|^2 (c·dw + w·dc) - 2g^2/|c|^4 c·dc
        let (outer, dw, dc) = if self.edge[u][v] {
            (dist2, 1.0, 1.0)
        } else {
            let dist = dist2.sqrt();
            let h = relu(self.margin - dist);
            if h <= 0.0 || dist == 0.0 {
                return f + h * h;
            }
            // d(h^2) = -2h d(dist) = -h/dist d(dist2)
            let k = -h / dist;
            (h * h, k, k)
        };
        f += outer;
        let a = 2.0 * gg / cn2;
        let b = 2.0 * gg * gg / (cn2 * cn2);
        add_into(grad, 6 * u, dw * a, c);
        add_into(grad, 6 * v, -dw * a, c);
        let gc = [
            dc * (a * w[0] - b * c[0]),
            dc * (a * w[1] - b * c[1]),
            dc * (a * w[2] - b * c[2]),
        ];
        push_c(grad, gc);
        f
    }

    pub fn float_lines(&self, x: &[f64]) -> Vec<(V3, V3)> {
        (0..self.n).map(|u| Self::line(x, u)).collect()
    }
}

impl Penalty for LinePenalty {
    fn dim(&self) -> usize {
        6 * self.n
    }

    fn init(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (0..6 * self.n).map(|_| rng.gen_range(-1.0..1.0)).collect()
    }

    fn eval(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        let mut f = 0.0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                f += self.pair(x, grad, u, v);
            }
        }
        f
    }

    fn project(&self, x: &mut [f64]) {
        for u in 0..self.n {
            let o = 6 * u + 3;
            let norm = (x[o] * x[o] + x[o + 1] * x[o + 1] + x[o + 2] * x[o + 2]).sqrt();
            if norm < 1e-12 {
                x[o..o + 3].copy_from_slice(&[1.0, 0.0, 0.0]);
            } else {
                x[o..o + 3].iter_mut().for_each(|e| *e /= norm);
            }
        }
    }
}

/// Penalty of explicit float lines `(base, dir)`.
pub fn line_penalty(g: &Graph, lines: &[(V3, V3)], margin: f64) -> f64 {
    let pen = LinePenalty::new(g, margin);
    let x: Vec<f64> = lines
        .iter()
        .flat_map(|(p, d)| p.iter().chain(d.iter()).copied().collect::<Vec<_>>())
        .collect();
    super::value_and_gradient(&pen, &x).0
}

fn approx(p: &Point3) -> V3 {
    [to_f64(&p.x), to_f64(&p.y), to_f64(&p.z)]
}

fn round3(v: V3, bound: u64) -> Point3 {
    Point3::new(
        round_to_rat(v[0], bound),
        round_to_rat(v[1], bound),
        round_to_rat(v[2], bound),
    )
}

fn dist3(a: V3, b: V3) -> f64 {
    let d = sub(a, b);
    dot(d, d).sqrt()
}

/// Rounds float lines to rationals and re-imposes the graph's incidences
/// exactly. Lines are fixed in vertex order; each new line is anchored at
/// rational points on its already fixed neighbours, snapping to an existing
/// exact meet point when the float transversal passes within tolerance of
/// one. Two anchors determine the line; with one the rounded float
/// direction is kept. `None` if an anchor cannot be formed.
pub fn repair_lines(g: &Graph, float: &[(V3, V3)], bound: u64) -> Option<Vec<Line3>> {
    let mut done: Vec<Line3> = Vec::with_capacity(float.len());
    // exact meet points lying on each fixed line
    let mut meets: Vec<Vec<Point3>> = Vec::with_capacity(float.len());
    for (u, &(pu, du)) in float.iter().enumerate() {
        let mut anchors: Vec<Point3> = Vec::new();
        for v in g.neighbors(u).into_iter().filter(|&v| v < u) {
            let lv = &done[v];
            let (bv, dv) = (approx(&lv.base), approx(&lv.dir));
            // closest point on line v to the float line u
            let w0 = sub(pu, bv);
            let (a, b, c) = (dot(du, du), dot(du, dv), dot(dv, dv));
            let (d, e) = (dot(du, w0), dot(dv, w0));
            let den = a * c - b * b;
            if den.abs() < 1e-12 * a * c {
                return None;
            }
            let t = (a * e - b * d) / den;
            let q = axpy(t, dv, bv);
            let snapped = meets[v]
                .iter()
                .find(|m| dist3(approx(m), q) < SNAP)
                .cloned();
            let point = snapped.unwrap_or_else(|| lv.at(&round_to_rat(t, bound)));
            if !anchors.contains(&point) {
                anchors.push(point);
            }
        }
        let line = match anchors.as_slice() {
            [] => Line3::new(round3(pu, bound), round3(du, bound)).ok()?,
            [p] => Line3::new(p.clone(), round3(du, bound)).ok()?,
            [p, q, ..] => Line3::through(p, q).ok()?,
        };
        let mut mine = Vec::new();
        for (v, lv) in done.iter().enumerate() {
            if let LineRelation::Intersecting(x) = lines3_relation(&line, lv) {
                if !meets[v].contains(&x) {
                    meets[v].push(x.clone());
                }
                if !mine.contains(&x) {
                    mine.push(x);
                }
            }
        }
        meets.push(mine);
        done.push(line);
    }
    Some(done)
}

/// Searches for lines in 3-space whose intersection graph is `g`.
pub fn search_line_realization(g: &Graph, params: &SearchParams) -> SearchOutcome<Vec<Line3>> {
    let pen = LinePenalty::new(g, params.margin);
    run_search(&pen, params, |x, bound| {
        match repair_lines(g, &pen.float_lines(x), bound) {
            Some(lines) if verify_line_realization(g, &lines).passed => Rounded::Verified(lines),
            Some(lines) => Rounded::Rejected(lines),
            None => Rounded::Failed,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::super::testutil::{gradient_error, random_point};
    use super::super::{restart_rng, SearchStatus};
    use super::*;

    #[test]
    fn gradient_matches_finite_differences() {
        let g = Graph::cycle(5);
        // large margin so both hinge kinds are active
        let pen = LinePenalty::new(&g, 0.8);
        let mut rng = restart_rng(3, 0);
        for _ in 0..20 {
            let x = random_point(&mut rng, pen.dim(), 1.0);
            let err = gradient_error(&pen, &x);
            assert!(err < 1e-5, "err {err}");
        }
    }

    #[test]
    fn concurrent_axes_have_zero_edge_penalty() {
        let g = Graph::complete(3);
        let axes = [
            ([0.0, 0.0, 0.0], [1.0, 0.0, 0.0]),
            ([0.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
            ([0.0, 0.0, 0.0], [0.0, 0.0, 1.0]),
        ];
        assert_eq!(line_penalty(&g, &axes, 1e-2), 0.0);
        let skew = Graph::new(3, vec![], None).unwrap();
        assert!(line_penalty(&skew, &axes, 1e-2) > 0.0);
    }

    #[test]
    fn repair_restores_concurrency() {
        let g = Graph::complete(3);
        let eps = 1e-7;
        let lines = [
            ([0.0, 0.0, 0.0], [1.0, 0.0, 0.0]),
            ([eps, 0.3, -eps], [0.1, 1.0, 0.0]),
            ([-eps, eps, 0.7], [0.2, 0.1, 1.0]),
        ];
        let exact = repair_lines(&g, &lines, 1_000_000).unwrap();
        assert!(verify_line_realization(&g, &exact).passed);
    }

    #[test]
    fn finds_triangle_and_k4_minus_edge() {
        let params = SearchParams {
            restarts: 8,
            ..SearchParams::default()
        };
        for g in [Graph::complete(3), Graph::complete(4).without_edge(2, 3)] {
            let out = search_line_realization(&g, &params);
            assert_eq!(out.status, SearchStatus::FoundVerified, "{:?}", out.trace);
            assert!(verify_line_realization(&g, &out.witness.unwrap()).passed);
        }
    }
}
