use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::convolve::convolve;
use super::grid::{entropy_power_of_grid, GridDensity};
use super::law::Law;
use crate::bounds::{bc_constant, thm1_constant};
use crate::domain::{Order, PowerVector};
use crate::error::{Error, Result};
use crate::optimizer::thm2_constant;

/// Slack allowed on every certified ratio, absorbing quadrature error.
pub const CERTIFY_SLACK: f64 = 1e-4;

/// Outcome of checking `N(X_1 + ... + X_n) >= c * sum N(X_k)` numerically.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certification {
    pub order: Order,
    pub powers: Vec<f64>,
    pub sum_power: f64,
    /// `N(S) / sum_k N(X_k)`.
    pub ratio: f64,
    pub bc: f64,
    pub thm1: f64,
    pub thm2: f64,
    /// `max_k N(X_k) / sum_k N(X_k)`.
    pub bv_ratio: f64,
    pub violations: Vec<String>,
}

impl Certification {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Convolves the densities, measures every entropy power by quadrature, and
/// checks the measured ratio against each constant minus [`CERTIFY_SLACK`].
pub fn certify_repi(densities: &[GridDensity], order: Order) -> Result<Certification> {
    if densities.len() < 2 {
        return Err(Error::InvalidInput(format!(
            "need at least two densities, got {}",
            densities.len()
        )));
    }
    let powers = densities
        .iter()
        .map(|f| entropy_power_of_grid(f, order))
        .collect::<Result<Vec<_>>>()?;
    let mut sum = densities[0].clone();
    for f in &densities[1..] {
        sum = convolve(&sum, f)?;
    }
    let sum_power = entropy_power_of_grid(&sum, order)?;
    let total: f64 = powers.iter().sum();
    let ratio = sum_power / total;

    let n = powers.len();
    let pv = PowerVector::new(powers.clone())?;
    let bc = bc_constant(order);
    let thm1 = thm1_constant(order, n)?;
    let thm2 = thm2_constant(&pv, order)?;
    let bv_ratio = pv.max() / total;

    let mut violations = Vec::new();
    for (name, c) in [("bc", bc), ("thm1", thm1), ("thm2", thm2), ("bv", bv_ratio)] {
        if ratio < c - CERTIFY_SLACK {
            violations.push(format!("{name}: ratio {ratio} below {c}"));
        }
    }
    Ok(Certification {
        order,
        powers,
        sum_power,
        ratio,
        bc,
        thm1,
        thm2,
        bv_ratio,
        violations,
    })
}

/// Upper bound `((27/32)(p_x^-2 + p_y^-2))^(-d/2)` on the collision
/// probability of `X + Y` for per-coordinate collision probabilities
/// `p_x`, `p_y`.
pub fn collision_bound(p_x: f64, p_y: f64, d: usize) -> Result<f64> {
    for p in [p_x, p_y] {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "collision probability must lie in (0, 1], got {p}"
            )));
        }
    }
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    Ok((27.0 / 32.0 * (p_x.powi(-2) + p_y.powi(-2))).powf(-(d as f64) / 2.0))
}

/// One seeded test case: independent summands and the order to check them at.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusInstance {
    pub order: Order,
    pub laws: Vec<Law>,
}

/// Orders sampled by [`random_corpus`].
pub const CORPUS_ORDERS: [f64; 4] = [1.1, 2.0, 5.0, f64::INFINITY];

/// `instances` random cases with 2 to 4 summands drawn from Gaussians,
/// uniforms, shifted exponentials and two-component mixtures of these.
///
/// Breakpoints of uniforms and exponentials sit on multiples of `1/64` so
/// they coincide with grid nodes for every dyadic spacing up to `1/64`.
pub fn random_corpus(seed: u64, instances: usize) -> Vec<CorpusInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..instances)
        .map(|_| {
            let alpha = CORPUS_ORDERS[rng.random_range(0..CORPUS_ORDERS.len())];
            let order = Order::new(alpha).expect("corpus orders exceed 1");
            let n = rng.random_range(2..=4usize);
            let laws = (0..n).map(|_| random_law(&mut rng, true)).collect();
            CorpusInstance { order, laws }
        })
        .collect()
}

fn snap(x: f64) -> f64 {
    (x * 64.0).round() / 64.0
}

fn random_law(rng: &mut ChaCha8Rng, allow_mixture: bool) -> Law {
    let kind = rng.random_range(0..if allow_mixture { 4 } else { 3 });
    match kind {
        0 => Law::Gaussian {
            mean: rng.random_range(-2.0..2.0),
            std: rng.random_range(0.3..2.0),
        },
        1 => {
            let lo = snap(rng.random_range(-2.0..2.0));
            let width = snap(rng.random_range(0.5..3.0));
            Law::Uniform { lo, hi: lo + width }
        }
        2 => Law::Exponential {
            rate: rng.random_range(0.5..3.0),
            shift: snap(rng.random_range(-2.0..2.0)),
        },
        _ => Law::Mixture {
            components: (0..2)
                .map(|_| (rng.random_range(0.2..1.0), random_law(rng, false)))
                .collect(),
        },
    }
}

/// Certifies one corpus instance on a grid of the given spacing.
pub fn certify_instance(instance: &CorpusInstance, spacing: f64) -> Result<Certification> {
    let grids = instance
        .laws
        .iter()
        .map(|law| law.grid(spacing))
        .collect::<Result<Vec<_>>>()?;
    certify_repi(&grids, instance.order)
}

/// Certifies every instance of `random_corpus(seed, instances)`.
pub fn run_corpus(seed: u64, instances: usize, spacing: f64) -> Result<Vec<Certification>> {
    random_corpus(seed, instances)
        .iter()
        .map(|inst| certify_instance(inst, spacing))
        .collect()
}
