//! Optimal simplex weights for the tightened R-EPI.
//!
//! Maximizing the log-constant over the simplex is a concave problem once the
//! last weight is eliminated. Its KKT system collapses to
//!
//! ```text
//! t_k (alpha' - t_k) = c_k t_n (alpha' - t_n),   sum_k t_k = 1,   t_k >= 0
//! ```
//!
//! where `c_k = N_k / N_n` and `N_n` is the largest power. Taking the smaller
//! root of each quadratic gives `t_k = psi(t_n, c_k)`, and `t_n` is the unique
//! root of `phi(x) = x + sum_k psi(x, c_k) = 1` on `[0, 1]`. Zero powers are
//! dropped before solving and get weight 0 on output.
//!
//! At `alpha = inf` the same pipeline runs with `alpha' = 1`. There `phi(1) = 1`
//! for every ratio vector, and the limiting weight is the smaller root of
//! `phi(x) = 1` when `sum_k c_k > 1`, or `t_n = 1` otherwise.

use crate::bounds::{binary_kl, conj_term, objective_f0_unchecked};
use crate::domain::{Order, PowerVector, SimplexWeights};
use crate::error::{Error, Result};

/// Power ratios `c_k = N_k / N_max` of all but the largest entry, with the
/// sorting permutation that put the largest entry last.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioVector {
    ratios: Vec<f64>,
    permutation: Vec<usize>,
}

impl RatioVector {
    /// Builds a ratio vector directly, for callers that already have `c_k`.
    /// The permutation is the identity over `ratios.len() + 1` entries.
    pub fn from_ratios(ratios: Vec<f64>) -> Result<Self> {
        if let Some(bad) = ratios.iter().find(|c| !(0.0..=1.0).contains(*c)) {
            return Err(Error::InvalidInput(format!("power ratio {bad} outside [0, 1]")));
        }
        let permutation = (0..=ratios.len()).collect();
        Ok(Self { ratios, permutation })
    }

    pub fn ratios(&self) -> &[f64] {
        &self.ratios
    }

    /// `permutation()[j]` is the caller's index of sorted position `j`; the
    /// last entry is the index of the largest power.
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn max_index(&self) -> usize {
        *self.permutation.last().expect("permutation is never empty")
    }
}

/// Ratios of every power to the largest one, sorted ascending.
pub fn normalize_ratios(powers: &PowerVector) -> Result<RatioVector> {
    let p = powers.as_slice();
    let mut permutation: Vec<usize> = (0..p.len()).collect();
    permutation.sort_by(|&a, &b| p[a].total_cmp(&p[b]));
    let max = p[*permutation.last().unwrap()];
    if max <= 0.0 {
        return Err(Error::Degenerate);
    }
    let ratios = permutation[..p.len() - 1]
        .iter()
        .map(|&i| (p[i] / max).min(1.0))
        .collect();
    Ok(RatioVector { ratios, permutation })
}

/// Smaller root `psi` of `psi (alpha' - psi) = c x (alpha' - x)`.
pub fn psi(x: f64, c: f64, order: Order) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidInput(format!("psi is defined on [0, 1], got {x}")));
    }
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::InvalidInput(format!("power ratio {c} outside [0, 1]")));
    }
    Ok(psi_unchecked(x, c, order.conj()))
}

// Rationalized form 2p / (a + sqrt(a^2 - 4p)) of (a - sqrt(a^2 - 4p)) / 2;
// it avoids cancellation when alpha' is large.
fn psi_unchecked(x: f64, c: f64, conj: f64) -> f64 {
    let product = c * x * (conj - x);
    if product <= 0.0 {
        return 0.0;
    }
    let disc = discriminant(x, c, conj);
    2.0 * product / (conj + disc.sqrt())
}

fn discriminant(x: f64, c: f64, conj: f64) -> f64 {
    let disc = conj * conj - 4.0 * c * x * (conj - x);
    // (alpha' - 2x)^2 <= disc whenever c <= 1
    debug_assert!(disc >= -1e-12 * conj * conj, "negative discriminant {disc}");
    disc.max(0.0)
}

/// `phi(x) = x + sum_k psi(x, c_k)`.
pub fn phi(x: f64, ratios: &RatioVector, order: Order) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidInput(format!("phi is defined on [0, 1], got {x}")));
    }
    Ok(x + psi_sum(x, ratios.ratios(), order.conj()))
}

/// Derivative of [`phi`]: `1 + sum_k c_k (alpha' - 2x) / sqrt(alpha'^2 - 4 c_k x (alpha' - x))`.
pub fn phi_derivative(x: f64, ratios: &RatioVector, order: Order) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidInput(format!("phi is defined on [0, 1], got {x}")));
    }
    Ok(phi_derivative_unchecked(x, ratios.ratios(), order.conj()))
}

fn psi_sum(x: f64, ratios: &[f64], conj: f64) -> f64 {
    ratios.iter().map(|&c| psi_unchecked(x, c, conj)).sum()
}

/// `phi(x) - 1`, arranged so that no cancellation happens near `x = 1`.
fn residual(x: f64, ratios: &[f64], conj: f64) -> f64 {
    (x - 1.0) + psi_sum(x, ratios, conj)
}

fn phi_derivative_unchecked(x: f64, ratios: &[f64], conj: f64) -> f64 {
    1.0 + ratios
        .iter()
        .map(|&c| {
            let disc = discriminant(x, c, conj);
            if disc == 0.0 {
                // c = 1 and x = alpha'/2: the two branches touch, slope 1
                c
            } else {
                c * (conj - 2.0 * x) / disc.sqrt()
            }
        })
        .sum::<f64>()
}

/// Limit of `phi` as `alpha -> inf`: `x + 1/2 sum_k (1 - sqrt(1 - 4 c_k x (1 - x)))`.
pub fn phi_infinity(x: f64, ratios: &RatioVector) -> Result<f64> {
    phi(x, ratios, Order::infinity())
}

/// Whether the optimal bound and the BV bound coincide as `alpha -> inf`,
/// given order-infinity entropy powers: true iff the non-maximal powers sum to
/// at most the maximal one.
pub fn bv_asymptotically_tight(infinity_powers: &PowerVector) -> bool {
    let p = infinity_powers.as_slice();
    let (argmax, max) =
        p.iter().copied().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |best, (i, v)| if v > best.1 { (i, v) } else { best },
        );
    let rest: f64 = p.iter().enumerate().filter(|(i, _)| *i != argmax).map(|(_, v)| v).sum();
    rest <= max
}

/// Root-finding controls for [`solve_t_last`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Accept `x` once `|phi(x) - 1| <= tol`.
    pub tol: f64,
    pub max_iter: usize,
    /// Try Newton steps inside the bracket, falling back to bisection.
    pub newton_polish: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 200,
            newton_polish: true,
        }
    }
}

/// Unique root `t_n` of `phi(x) = 1` on `(0, 1]`.
pub fn solve_t_last(ratios: &RatioVector, order: Order, opts: SolverOptions) -> Result<f64> {
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {}",
            opts.tol
        )));
    }
    let c = ratios.ratios();
    if c.iter().all(|&ck| ck == 0.0) {
        return Ok(1.0);
    }
    if order.is_infinite() {
        return solve_at_infinity(c, opts);
    }
    bracketed_root(c, order.conj(), 0.0, 1.0, opts)
}

fn solve_at_infinity(c: &[f64], opts: SolverOptions) -> Result<f64> {
    if c.iter().sum::<f64>() <= 1.0 {
        return Ok(1.0);
    }
    // phi_inf rises on [0, 1/2] and is concave on [1/2, 1] with phi_inf(1) = 1
    // and a negative slope at 1, so its maximizer there sits above 1 and the
    // smaller root lies to its left.
    let peak = golden_section_max(|x| residual(x, c, 1.0), 0.5, 1.0);
    if residual(peak, c, 1.0) <= 0.0 {
        return Ok(1.0);
    }
    bracketed_root(c, 1.0, 0.0, peak, opts)
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    for _ in 0..100 {
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        }
    }
    0.5 * (lo + hi)
}

/// Safeguarded root search on `[lo, hi]` where the residual is negative at
/// `lo` and positive at `hi`.
fn bracketed_root(c: &[f64], conj: f64, mut lo: f64, mut hi: f64, opts: SolverOptions) -> Result<f64> {
    let mut x = 0.5 * (lo + hi);
    for _ in 0..opts.max_iter {
        let r = residual(x, c, conj);
        if r.abs() <= opts.tol {
            return Ok(x);
        }
        if r < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= 4.0 * f64::EPSILON {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        x = if opts.newton_polish {
            let slope = phi_derivative_unchecked(x, c, conj);
            let step = x - r / slope;
            if slope > 0.0 && step > lo && step < hi {
                step
            } else {
                mid
            }
        } else {
            mid
        };
    }
    Err(Error::NonConvergence {
        iterations: opts.max_iter,
        lo,
        hi,
    })
}

/// Optimal weights for the tightened R-EPI, in the caller's order.
pub fn optimal_weights(powers: &PowerVector, order: Order) -> Result<SimplexWeights> {
    optimal_weights_with(powers, order, SolverOptions::default())
}

pub fn optimal_weights_with(powers: &PowerVector, order: Order, opts: SolverOptions) -> Result<SimplexWeights> {
    let p = powers.as_slice();
    let positive: Vec<usize> = (0..p.len()).filter(|&i| p[i] > 0.0).collect();
    if positive.is_empty() {
        return Err(Error::Degenerate);
    }
    let mut weights = vec![0.0; p.len()];
    let reduced = PowerVector::new(positive.iter().map(|&i| p[i]).collect())?;
    let ratios = normalize_ratios(&reduced)?;
    let t_last = solve_t_last(&ratios, order, opts)?;
    let perm = ratios.permutation();
    for (j, &c) in ratios.ratios().iter().enumerate() {
        weights[positive[perm[j]]] = psi_unchecked(t_last, c, order.conj());
    }
    weights[positive[ratios.max_index()]] = t_last;
    Ok(SimplexWeights::from_raw(weights))
}

/// Largest violation of the simplified KKT system by `weights`:
/// `|t_k (a' - t_k) - c_k t_n (a' - t_n)|` over `k`, and `|sum t - 1|`.
pub fn kkt_residual(weights: &SimplexWeights, powers: &PowerVector, order: Order) -> Result<f64> {
    if weights.len() != powers.len() {
        return Err(Error::DimensionMismatch {
            expected: powers.len(),
            got: weights.len(),
        });
    }
    let ratios = normalize_ratios(powers)?;
    let t = weights.as_slice();
    let conj = order.conj();
    let t_last = t[ratios.max_index()];
    let anchor = t_last * (conj - t_last);
    let worst = ratios
        .ratios()
        .iter()
        .zip(ratios.permutation())
        .map(|(&c, &i)| (t[i] * (conj - t[i]) - c * anchor).abs())
        .fold(0.0, f64::max);
    let sum: f64 = t.iter().sum();
    Ok(worst.max((sum - 1.0).abs()))
}

/// Constant of the tightened R-EPI, `exp(f0)` at the optimal weights.
pub fn thm2_constant(powers: &PowerVector, order: Order) -> Result<f64> {
    Ok(log_thm2_constant(powers, order)?.exp())
}

/// Natural log of [`thm2_constant`].
pub fn log_thm2_constant(powers: &PowerVector, order: Order) -> Result<f64> {
    match powers.positive_count() {
        0 => Err(Error::Degenerate),
        1 => Ok(0.0),
        _ => {
            let weights = optimal_weights(powers, order)?;
            let normalized = powers.normalized()?;
            Ok(objective_f0_unchecked(weights.as_slice(), normalized.as_slice(), order))
        }
    }
}

/// Closed-form optimal weight of the smaller summand for two summands with
/// power ratio `beta = N_1 / N_2 <= 1`.
pub fn n2_weight(beta: f64, order: Order) -> Result<f64> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidInput(format!("power ratio {beta} outside [0, 1]")));
    }
    if (1.0 - beta).abs() < 1e-8 {
        return Ok(0.5);
    }
    let a = order.conj();
    let b = a * (1.0 + beta) - 2.0 * beta;
    let disc = ((a * (1.0 + beta)).powi(2) - 8.0 * a * beta + 4.0 * beta).max(0.0);
    // smaller root of (1-beta) t^2 - b t + beta (a-1) = 0, rationalized
    Ok(2.0 * beta * (a - 1.0) / (b + disc.sqrt()))
}

/// Closed-form two-summand constant
/// `alpha^(1/(alpha-1)) exp(-d(t || beta/(1+beta))) (1 - t/a')^(a'-t) (1 - (1-t)/a')^(a'-1+t)`.
pub fn n2_constant(beta: f64, order: Order) -> Result<f64> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidInput(format!("power ratio {beta} outside [0, 1]")));
    }
    if beta == 0.0 {
        return Ok(1.0);
    }
    let t = n2_weight(beta, order)?;
    let conj = order.conj();
    let log_c =
        order.log_alpha_ratio() - binary_kl(t, beta / (1.0 + beta))? + conj_term(t, conj) + conj_term(1.0 - t, conj);
    Ok(log_c.exp())
}
