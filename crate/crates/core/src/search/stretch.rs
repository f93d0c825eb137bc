use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{relu, run_search, Penalty, Rounded, SearchOutcome, SearchParams};
use crate::model::{validate_wiring, WiringDiagram};
use crate::rational::round_to_rat;
use crate::verifiers::Report;
use crate::Rat;

/// Lines `y = slopes[i] x + intercepts[i]`, one per wire.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StretchWitness {
    #[serde(with = "crate::rational::serde_rat_vec")]
    pub slopes: Vec<Rat>,
    #[serde(with = "crate::rational::serde_rat_vec")]
    pub intercepts: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StretchViolation {
    Count {
        expected: usize,
        got: usize,
    },
    InvalidWiring {
        issues: Vec<String>,
    },
    /// Far to the left wire `i` must lie below wire `i + 1`.
    SlopeOrder {
        i: usize,
    },
    /// Along `wire`, the crossing with `first` must come strictly before the
    /// crossing with `second`.
    CrossingOrder {
        wire: usize,
        first: usize,
        second: usize,
    },
}

/// Exact check that the lines reproduce the diagram: wire `i` starts on
/// track `i` counted from the bottom, so slopes strictly decrease with the
/// index, and each wire meets the others in its local-sequence order.
pub fn verify_stretching(w: &WiringDiagram, s: &StretchWitness) -> Report<StretchViolation> {
    let rep = validate_wiring(w);
    let mut out = Vec::new();
    if !rep.is_valid() {
        out.push(StretchViolation::InvalidWiring { issues: rep.issues });
    } else if s.slopes.len() != w.n || s.intercepts.len() != w.n {
        out.push(StretchViolation::Count {
            expected: w.n,
            got: s.slopes.len().min(s.intercepts.len()),
        });
    } else {
        for i in 0..w.n.saturating_sub(1) {
            if s.slopes[i] <= s.slopes[i + 1] {
                out.push(StretchViolation::SlopeOrder { i });
            }
        }
        if out.is_empty() {
            let x = |i: usize, j: usize| {
                (&s.intercepts[j] - &s.intercepts[i]) / (&s.slopes[i] - &s.slopes[j])
            };
            for (wire, seq) in w.local_sequences().iter().enumerate() {
                for pair in seq.windows(2) {
                    if x(wire, pair[0]) >= x(wire, pair[1]) {
                        out.push(StretchViolation::CrossingOrder {
                            wire,
                            first: pair[0],
                            second: pair[1],
                        });
                    }
                }
            }
        }
    }
    Report {
        passed: out.is_empty(),
        violations: out,
    }
}

/// Hinge penalty over `(s_0..s_{n-1}, t_0..t_{n-1})`.
pub struct StretchPenalty {
    n: usize,
    margin: f64,
    seqs: Vec<Vec<usize>>,
}

impl StretchPenalty {
    pub fn new(w: &WiringDiagram, margin: f64) -> Self {
        StretchPenalty {
            n: w.n,
            margin,
            seqs: w.local_sequences(),
        }
    }

    fn crossing(&self, x: &[f64], i: usize, j: usize) -> f64 {
        (x[self.n + j] - x[self.n + i]) / (x[i] - x[j])
    }

    /// Adds `k * grad(x_ij)`.
    fn crossing_grad(&self, x: &[f64], grad: &mut [f64], i: usize, j: usize, k: f64) {
        let num = x[self.n + j] - x[self.n + i];
        let den = x[i] - x[j];
        grad[self.n + j] += k / den;
        grad[self.n + i] -= k / den;
        grad[i] -= k * num / (den * den);
        grad[j] += k * num / (den * den);
    }
}

impl Penalty for StretchPenalty {
    fn dim(&self) -> usize {
        2 * self.n
    }

    fn init(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let mut s: Vec<f64> = (0..self.n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        s.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for k in 1..self.n {
            if s[k] > s[k - 1] - 2.0 * self.margin {
                s[k] = s[k - 1] - 2.0 * self.margin;
            }
        }
        let t = (0..self.n).map(|_| rng.gen_range(-2.0..2.0));
        s.into_iter().chain(t).collect()
    }

    fn eval(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        let mut f = 0.0;
        for i in 0..self.n.saturating_sub(1) {
            let h = relu(x[i + 1] - x[i] + self.margin);
            if h > 0.0 {
                f += h * h;
                grad[i + 1] += 2.0 * h;
                grad[i] -= 2.0 * h;
            }
        }
        for (i, seq) in self.seqs.iter().enumerate() {
            for pair in seq.windows(2) {
                let (a, b) = (pair[0], pair[1]);
                let h = relu(self.crossing(x, i, a) - self.crossing(x, i, b) + self.margin);
                if h > 0.0 {
                    f += h * h;
                    self.crossing_grad(x, grad, i, a, 2.0 * h);
                    self.crossing_grad(x, grad, i, b, -2.0 * h);
                }
            }
        }
        f
    }
}

/// Penalty of explicit float lines, slopes then intercepts.
pub fn stretch_penalty(w: &WiringDiagram, slopes: &[f64], intercepts: &[f64], margin: f64) -> f64 {
    let pen = StretchPenalty::new(w, margin);
    let x: Vec<f64> = slopes.iter().chain(intercepts).copied().collect();
    super::value_and_gradient(&pen, &x).0
}

/// Searches for a straight-line arrangement with the diagram's local sequences.
pub fn stretch_wiring(w: &WiringDiagram, params: &SearchParams) -> SearchOutcome<StretchWitness> {
    let pen = StretchPenalty::new(w, params.margin);
    run_search(&pen, params, |x, bound| {
        let r: Vec<Rat> = x.iter().map(|&v| round_to_rat(v, bound)).collect();
        let wit = StretchWitness {
            slopes: r[..w.n].to_vec(),
            intercepts: r[w.n..].to_vec(),
        };
        if verify_stretching(w, &wit).passed {
            Rounded::Verified(wit)
        } else {
            Rounded::Rejected(wit)
        }
    })
}
