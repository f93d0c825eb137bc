//! Small-instance realizability search.
//!
//! [`constructible_coordinatization`] is exact and its negative answers are
//! proofs. The numerical searches minimise hinge penalties from random
//! starts, round the result to rationals and report `FoundVerified` only
//! after the exact verifier accepts; `NotFound` proves nothing.

mod circle_order;
mod coordinatize;
mod lines;
mod stretch;

pub use circle_order::{circle_order_penalty, search_circle_order, CircleOrderPenalty};
pub use coordinatize::{
    admissible_bases, constructible_coordinatization, coordinatize_with_basis, Conflict,
    Coordinatization, CoordinatizationError, Placement,
};
pub use lines::{line_penalty, repair_lines, search_line_realization, LinePenalty};
pub use stretch::{
    stretch_penalty, stretch_wiring, verify_stretching, StretchPenalty, StretchViolation,
    StretchWitness,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchParams {
    pub restarts: usize,
    pub max_iters: usize,
    /// Initial Adam step size.
    pub learning_rate: f64,
    /// Step size reached at `max_iters`; the schedule is geometric.
    pub final_learning_rate: f64,
    pub margin: f64,
    /// Penalty at or below this counts as zero.
    pub tolerance: f64,
    pub rounding_denominator_bound: u64,
    /// Extra rounding attempts, each doubling the denominator bound.
    pub rounding_retries: u32,
    pub seed: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            restarts: 32,
            max_iters: 5000,
            learning_rate: 0.05,
            final_learning_rate: 1e-4,
            margin: 1e-2,
            tolerance: 1e-12,
            rounding_denominator_bound: 1_000_000,
            rounding_retries: 3,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid search parameter: {0}")]
pub struct ParamError(pub String);

impl SearchParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        let bad = |s: &str| Err(ParamError(s.to_string()));
        if self.restarts == 0 {
            return bad("restarts must be positive");
        }
        if self.max_iters == 0 {
            return bad("max_iters must be positive");
        }
        if !(self.learning_rate > 0.0 && self.final_learning_rate > 0.0) {
            return bad("learning rates must be positive");
        }
        if !(self.margin > 0.0) {
            return bad("margin must be positive");
        }
        if !(self.tolerance > 0.0) {
            return bad("tolerance must be positive");
        }
        if self.rounding_denominator_bound == 0 {
            return bad("denominator bound must be positive");
        }
        Ok(())
    }

    fn learning_rate_at(&self, iter: usize) -> f64 {
        let t = iter as f64 / self.max_iters as f64;
        self.learning_rate * (self.final_learning_rate / self.learning_rate).powf(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchStatus {
    FoundVerified,
    FoundUnverified,
    NotFound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome<W> {
    pub status: SearchStatus,
    /// Exact witness. Present and verified for `FoundVerified`; for
    /// `FoundUnverified` the last rounded attempt that failed.
    pub witness: Option<W>,
    /// Final penalty of every restart, by restart index.
    pub trace: Vec<f64>,
    /// Restart that produced the witness.
    pub restart: Option<usize>,
    /// Denominator bound used for the reported witness.
    pub denominator_bound: Option<u64>,
}

/// Differentiable penalty over a flat parameter vector.
pub trait Penalty: Sync {
    fn dim(&self) -> usize;
    fn init(&self, rng: &mut ChaCha8Rng) -> Vec<f64>;
    /// Value at `x`; the gradient is added into `grad` (zeroed by the caller).
    fn eval(&self, x: &[f64], grad: &mut [f64]) -> f64;
    /// Re-normalisation applied after every step.
    fn project(&self, _x: &mut [f64]) {}
}

/// Value and gradient in a fresh buffer.
pub fn value_and_gradient<P: Penalty + ?Sized>(p: &P, x: &[f64]) -> (f64, Vec<f64>) {
    let mut g = vec![0.0; x.len()];
    let v = p.eval(x, &mut g);
    (v, g)
}

pub(crate) fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Adam descent from one seeded start. Stops early once the penalty is
/// within tolerance. Returns the final point and its penalty.
pub(crate) fn descend<P: Penalty>(p: &P, params: &SearchParams, restart: usize) -> (Vec<f64>, f64) {
    const B1: f64 = 0.9;
    const B2: f64 = 0.999;
    let mut rng = restart_rng(params.seed, restart);
    let mut x = p.init(&mut rng);
    p.project(&mut x);
    let n = x.len();
    let mut m = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut g = vec![0.0; n];
    let (mut b1t, mut b2t) = (1.0, 1.0);
    for it in 0..params.max_iters {
        g.iter_mut().for_each(|e| *e = 0.0);
        let f = p.eval(&x, &mut g);
        if f <= params.tolerance || !f.is_finite() {
            return (x, f);
        }
        let lr = params.learning_rate_at(it);
        b1t *= B1;
        b2t *= B2;
        for i in 0..n {
            m[i] = B1 * m[i] + (1.0 - B1) * g[i];
            v[i] = B2 * v[i] + (1.0 - B2) * g[i] * g[i];
            let mh = m[i] / (1.0 - b1t);
            let vh = v[i] / (1.0 - b2t);
            x[i] -= lr * mh / (vh.sqrt() + 1e-15);
        }
        p.project(&mut x);
    }
    let f = p.eval(&x, &mut g);
    (x, f)
}

/// Result of turning a float optimum into an exact witness.
pub(crate) enum Rounded<W> {
    Verified(W),
    Rejected(W),
    Failed,
}

/// Runs all restarts in parallel, then walks them in index order: the first
/// restart at zero penalty whose rounding verifies wins.
pub(crate) fn run_search<P, W, F>(p: &P, params: &SearchParams, round: F) -> SearchOutcome<W>
where
    P: Penalty,
    F: Fn(&[f64], u64) -> Rounded<W>,
{
    let runs: Vec<(Vec<f64>, f64)> = (0..params.restarts)
        .into_par_iter()
        .map(|r| descend(p, params, r))
        .collect();
    let trace: Vec<f64> = runs.iter().map(|(_, f)| *f).collect();
    let mut unverified: Option<(usize, W, u64)> = None;
    for (r, (x, f)) in runs.iter().enumerate() {
        if !(*f <= params.tolerance) {
            continue;
        }
        let mut bound = params.rounding_denominator_bound;
        let mut rejected = None;
        for _ in 0..=params.rounding_retries {
            match round(x, bound) {
                Rounded::Verified(w) => {
                    return SearchOutcome {
                        status: SearchStatus::FoundVerified,
                        witness: Some(w),
                        trace,
                        restart: Some(r),
                        denominator_bound: Some(bound),
                    }
                }
                Rounded::Rejected(w) => rejected = Some((r, w, bound)),
                Rounded::Failed => {}
            }
            bound = bound.saturating_mul(2);
        }
        if unverified.is_none() {
            unverified = rejected;
        }
    }
    let found_zero = trace.iter().any(|f| *f <= params.tolerance);
    match unverified {
        Some((r, w, bound)) => SearchOutcome {
            status: SearchStatus::FoundUnverified,
            witness: Some(w),
            trace,
            restart: Some(r),
            denominator_bound: Some(bound),
        },
        None => SearchOutcome {
            status: if found_zero {
                SearchStatus::FoundUnverified
            } else {
                SearchStatus::NotFound
            },
            witness: None,
            trace,
            restart: None,
            denominator_bound: None,
        },
    }
}

#[inline]
pub(crate) fn relu(x: f64) -> f64 {
    x.max(0.0)
}
