use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{run_search, Penalty, Rounded, SearchOutcome, SearchParams};
use crate::model::Poset;
use crate::rational::round_to_rat;
use crate::verifiers::verify_circle_order;
use crate::Disk;

/// Containment penalty over `(cx, cy, s)` per element with radius `exp(s)`.
pub struct CircleOrderPenalty {
    n: usize,
    margin: f64,
    /// `(y, x)` with `y < x`.
    below: Vec<(usize, usize)>,
    /// Ordered incomparable pairs `(y, x)`: disk y must not fit in disk x.
    apart: Vec<(usize, usize)>,
}

impl CircleOrderPenalty {
    pub fn new(p: &Poset, margin: f64) -> Self {
        let mut below = Vec::new();
        let mut apart = Vec::new();
        for y in 0..p.len() {
            for x in 0..p.len() {
                if x == y {
                    continue;
                }
                if p.less(y, x) {
                    below.push((y, x));
                } else if !p.comparable(y, x) {
                    apart.push((y, x));
                }
            }
        }
        CircleOrderPenalty {
            n: p.len(),
            margin,
            below,
            apart,
        }
    }

    /// Float disks of a parameter vector.
    pub fn disks(&self, x: &[f64]) -> Vec<(f64, f64, f64)> {
        (0..self.n)
            .map(|i| (x[3 * i], x[3 * i + 1], x[3 * i + 2].exp()))
            .collect()
    }

    /// Parameter vector of explicit float disks.
    pub fn params_of(disks: &[(f64, f64, f64)]) -> Vec<f64> {
        disks
            .iter()
            .flat_map(|&(cx, cy, r)| [cx, cy, r.ln()])
            .collect()
    }

    /// Adds `coef * d(h)` for `h = sgn_d * D + (r_x - r_y)` style terms.
    fn term(&self, x: &[f64], grad: &mut [f64], y: usize, xi: usize, contain: bool) -> f64 {
        let (cx, cy, sx) = (x[3 * xi], x[3 * xi + 1], x[3 * xi + 2]);
        let (dx_, dy_, sy) = (x[3 * y], x[3 * y + 1], x[3 * y + 2]);
        let (rx, ry) = (sx.exp(), sy.exp());
        let (ux, uy) = (cx - dx_, cy - dy_);
        let d = (ux * ux + uy * uy).sqrt();
        // contain: D - (rx - ry) + m ; apart: (rx - ry) - D + m
        let sign = if contain { 1.0 } else { -1.0 };
        let h = sign * (d - (rx - ry)) + self.margin;
        if h <= 0.0 {
            return 0.0;
        }
        let c = 2.0 * h * sign;
        if d > 0.0 {
            grad[3 * xi] += c * ux / d;
            grad[3 * xi + 1] += c * uy / d;
            grad[3 * y] -= c * ux / d;
            grad[3 * y + 1] -= c * uy / d;
        }
        grad[3 * xi + 2] -= c * rx;
        grad[3 * y + 2] += c * ry;
        h * h
    }
}

impl Penalty for CircleOrderPenalty {
    fn dim(&self) -> usize {
        3 * self.n
    }

    fn init(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (0..self.n)
            .flat_map(|_| {
                [
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-1.5..0.5),
                ]
            })
            .collect()
    }

    fn eval(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        let mut f = 0.0;
        for &(y, xi) in &self.below {
            f += self.term(x, grad, y, xi, true);
        }
        for &(y, xi) in &self.apart {
            f += self.term(x, grad, y, xi, false);
        }
        f
    }
}

/// Penalty of explicit float disks, in poset element order.
pub fn circle_order_penalty(p: &Poset, disks: &[(f64, f64, f64)], margin: f64) -> f64 {
    let pen = CircleOrderPenalty::new(p, margin);
    super::value_and_gradient(&pen, &CircleOrderPenalty::params_of(disks)).0
}

/// Searches for disks realizing `p` under containment.
pub fn search_circle_order(
    p: &Poset,
    params: &SearchParams,
) -> SearchOutcome<BTreeMap<String, Disk>> {
    let pen = CircleOrderPenalty::new(p, params.margin);
    run_search(&pen, params, |x, bound| {
        let mut out = BTreeMap::new();
        for (i, (cx, cy, r)) in pen.disks(x).into_iter().enumerate() {
            let disk = Disk::new(
                round_to_rat(cx, bound),
                round_to_rat(cy, bound),
                round_to_rat(r, bound),
            );
            match disk {
                Ok(d) => {
                    out.insert(p.elements()[i].clone(), d);
                }
                Err(_) => return Rounded::Failed,
            }
        }
        match verify_circle_order(p, &out) {
            Ok(rep) if rep.passed => Rounded::Verified(out),
            _ => Rounded::Rejected(out),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::super::testutil::{gradient_error, random_point};
    use super::super::{restart_rng, SearchStatus};
    use super::*;
    use crate::reductions::arrangement_to_poset;
    use crate::WiringDiagram;

    fn chain2() -> Poset {
        Poset::new(vec!["a".into(), "b".into()], &[("a", "b")]).unwrap()
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let red = arrangement_to_poset(&WiringDiagram::new(3, vec![0, 1, 0])).unwrap();
        let pen = CircleOrderPenalty::new(&red.poset, 0.3);
        let mut rng = restart_rng(11, 0);
        for _ in 0..20 {
            let x = random_point(&mut rng, pen.dim(), 1.5);
            assert!(gradient_error(&pen, &x) < 1e-5);
        }
    }

    #[test]
    fn nested_disks_have_zero_penalty() {
        let p = chain2();
        assert_eq!(
            circle_order_penalty(&p, &[(0.0, 0.0, 1.0), (0.0, 0.0, 2.0)], 0.1),
            0.0
        );
        assert!(circle_order_penalty(&p, &[(0.0, 0.0, 2.0), (0.0, 0.0, 1.0)], 0.1) > 0.0);
    }

    #[test]
    fn two_chain_and_antichain_verified() {
        let params = SearchParams {
            restarts: 4,
            ..SearchParams::default()
        };
        let out = search_circle_order(&chain2(), &params);
        assert_eq!(out.status, SearchStatus::FoundVerified);
        let anti = Poset::new(vec!["a".into(), "b".into()], &[]).unwrap();
        let out = search_circle_order(&anti, &params);
        assert_eq!(out.status, SearchStatus::FoundVerified);
        let w = out.witness.unwrap();
        assert!(verify_circle_order(&anti, &w).unwrap().passed);
    }

    #[test]
    fn same_seed_same_outcome() {
        let params = SearchParams {
            restarts: 3,
            max_iters: 300,
            seed: 5,
            ..SearchParams::default()
        };
        let p = chain2();
        assert_eq!(
            search_circle_order(&p, &params),
            search_circle_order(&p, &params)
        );
    }
}
