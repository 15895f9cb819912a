//! Executable checks of the concavity argument behind the optimizer.
//!
//! After eliminating the last weight, the Hessian of the objective is the
//! rank-one modification `diag(q(t_1), ..., q(t_{n-1})) + q(t_n) 1 1^T` with
//! `q = g''`. [`max_eigenvalue`] evaluates its spectrum two independent ways,
//! and [`lemma_oracles`] scans the reciprocal-`q` inequalities the concavity
//! proof depends on.

mod eigen;

pub use eigen::{jacobi_eigenvalues, secular_eigenvalues, RankOneSymmetric};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::domain::Order;
use crate::error::{Error, Result};

/// Agreement required between the dense and secular eigenvalue routes,
/// relative to `max(1, |lambda|)`.
pub const EIGEN_AGREEMENT: f64 = 1e-8;

/// Distance every lemma grid keeps from the boundaries of its open domain.
pub const GRID_MARGIN: f64 = 1e-4;

/// `q(x) = g''(x) = (2x - alpha') / (x (alpha' - x))`.
pub fn q(x: f64, order: Order) -> Result<f64> {
    let conj = order.conj();
    if x == 0.0 || x == conj {
        return Err(Error::Pole(x));
    }
    if !(x > 0.0 && x <= 1.0 && x < conj) {
        return Err(Error::InvalidInput(format!(
            "q needs 0 < x <= 1 and x < alpha' = {conj}, got {x}"
        )));
    }
    Ok(q_unchecked(x, conj))
}

fn q_unchecked(x: f64, conj: f64) -> f64 {
    (2.0 * x - conj) / (x * (conj - x))
}

/// Hessian of the reduced objective at `(t_1, ..., t_{n-1})` as `D + rho 1 1^T`.
pub fn hessian_f(t: &[f64], order: Order) -> Result<RankOneSymmetric> {
    if t.is_empty() {
        return Err(Error::InvalidInput("need at least one free weight".into()));
    }
    if let Some(bad) = t.iter().find(|x| !(**x > 0.0)) {
        return Err(Error::InvalidInput(format!("weight {bad} is not interior")));
    }
    let last = 1.0 - t.iter().sum::<f64>();
    if !(last > 0.0) {
        return Err(Error::InvalidInput(format!(
            "weights sum to {}, not below 1",
            1.0 - last
        )));
    }
    let diagonal = t.iter().map(|&x| q(x, order)).collect::<Result<Vec<_>>>()?;
    let rho = q(last, order)?;
    RankOneSymmetric::with_ones(diagonal, rho)
}

/// Largest eigenvalue, computed by Jacobi rotations and cross-checked against
/// the secular equation. Returns the Jacobi value.
pub fn max_eigenvalue(m: &RankOneSymmetric) -> Result<f64> {
    let dense = *jacobi_eigenvalues(&m.to_dense())?.last().unwrap();
    let secular = *secular_eigenvalues(m).last().unwrap();
    if (dense - secular).abs() > EIGEN_AGREEMENT * dense.abs().max(1.0) {
        return Err(Error::EigenMismatch { dense, secular });
    }
    Ok(dense)
}

/// Smallest observed value of each lemma's left-hand side. All three must be
/// positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaReport {
    pub conj: f64,
    /// `min 1/q(x) + 1/q(1-x)` over `x in (0, 1 - alpha'/2)`.
    pub lemma1_min_slack: f64,
    /// `min 1/q(u) + 1/q(1-u-v) - 1/q(1-v)` over `u, v > 0`, `u + v < 1 - alpha'/2`.
    pub lemma2_min_slack: f64,
    /// `min sum_k 1/q(t_k)` over random interior points with `sum_{k<n} t_k < 1 - alpha'/2`.
    pub lemma3_min_slack: f64,
    pub lemma3_samples: usize,
}

impl LemmaReport {
    pub fn all_positive(&self) -> bool {
        self.lemma1_min_slack > 0.0 && self.lemma2_min_slack > 0.0 && self.lemma3_min_slack > 0.0
    }
}

/// Runs [`lemma_oracles_seeded`] with seed 0 and 2000 random points.
pub fn lemma_oracles(order: Order) -> Result<LemmaReport> {
    lemma_oracles_seeded(order, 0, 2000)
}

/// Scans the three reciprocal-`q` inequalities for `alpha' in (1, 2)`.
///
/// Lemmas 1 and 2 use deterministic grids; lemma 3 draws `samples` random
/// points with `n` between 2 and 9. Grids stay [`GRID_MARGIN`] away from the
/// domain boundaries, where the slack degenerates to 0.
pub fn lemma_oracles_seeded(order: Order, seed: u64, samples: usize) -> Result<LemmaReport> {
    let conj = order.conj();
    if !(conj > 1.0 && conj < 2.0) {
        return Err(Error::InvalidInput(format!(
            "lemmas concern alpha' in (1, 2), got {conj}"
        )));
    }
    let recip = |x: f64| 1.0 / q_unchecked(x, conj);
    let upper = 1.0 - conj / 2.0;
    let (lo, hi) = (GRID_MARGIN, upper - GRID_MARGIN);
    if hi <= lo {
        return Err(Error::InvalidInput(format!(
            "alpha' = {conj} leaves no room inside the lemma domain"
        )));
    }

    const GRID: usize = 10_000;
    let lemma1 = (0..=GRID)
        .map(|i| lo + (hi - lo) * i as f64 / GRID as f64)
        .map(|x| recip(x) + recip(1.0 - x))
        .fold(f64::INFINITY, f64::min);

    const GRID2: usize = 400;
    let mut lemma2 = f64::INFINITY;
    for i in 0..=GRID2 {
        let u = lo + (hi - lo) * i as f64 / GRID2 as f64;
        for j in 0..=GRID2 {
            let v = lo + (hi - lo) * j as f64 / GRID2 as f64;
            if u + v > hi {
                break;
            }
            lemma2 = lemma2.min(recip(u) + recip(1.0 - u - v) - recip(1.0 - v));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lemma3 = f64::INFINITY;
    for _ in 0..samples {
        let free = rng.random_range(1..=8usize);
        let budget = rng.random_range(lo..hi);
        let raw: Vec<f64> = (0..free).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let total: f64 = raw.iter().sum();
        let t: Vec<f64> = raw
            .iter()
            .map(|r| (r / total * budget).max(GRID_MARGIN / free as f64))
            .collect();
        let t_last = 1.0 - t.iter().sum::<f64>();
        let slack = t.iter().map(|&x| recip(x)).sum::<f64>() + recip(t_last);
        lemma3 = lemma3.min(slack);
    }

    Ok(LemmaReport {
        conj,
        lemma1_min_slack: lemma1,
        lemma2_min_slack: lemma2,
        lemma3_min_slack: lemma3,
        lemma3_samples: samples,
    })
}
