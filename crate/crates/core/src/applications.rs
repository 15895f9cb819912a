//! Entropy gain of a finite impulse response filter.
//!
//! For `Y_n = sum_k H_k X_{n-k}` with i.i.d. inputs and non-singular
//! `d x d` taps, each bound below is a lower bound on `h_alpha(Y) - h_alpha(X)`
//! in nats. Only `|det H_k|` enters, so a filter is described by those
//! magnitudes.

use serde::Serialize;

use crate::bounds::{bc_constant, g, log_thm1_constant};
use crate::domain::{Order, PowerVector};
use crate::error::{Error, Result};
use crate::optimizer::optimal_weights;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FilterSpec {
    taps: Vec<f64>,
    dimension: usize,
    order: Order,
}

impl FilterSpec {
    /// `taps` are `det H_k`; signs are dropped.
    pub fn new(taps: Vec<f64>, dimension: usize, order: Order) -> Result<Self> {
        if taps.is_empty() {
            return Err(Error::InvalidInput("a filter needs at least one tap".into()));
        }
        if let Some(bad) = taps.iter().find(|h| **h == 0.0 || !h.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "tap determinant {bad} is singular or not finite"
            )));
        }
        if dimension == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        Ok(Self {
            taps: taps.iter().map(|h| h.abs()).collect(),
            dimension,
            order,
        })
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }

    fn half_d(&self) -> f64 {
        0.5 * self.dimension as f64
    }

    /// `|det H_k|^(2/d)`, the factor each tap applies to the input entropy power.
    fn powers(&self) -> Result<PowerVector> {
        let e = 2.0 / self.dimension as f64;
        PowerVector::new(self.taps.iter().map(|h| h.powf(e)).collect())
    }

    fn log_power_sum(&self) -> Result<f64> {
        Ok(self.powers()?.sum().ln())
    }
}

/// Bound from the optimal weights:
/// `(d/2)(ln(alpha)/(alpha-1) + sum_k g(t_k)) + sum_k t_k ln |det H_k|`.
pub fn filter_bound_thm2(spec: &FilterSpec) -> Result<f64> {
    if spec.len() == 1 {
        return Ok(spec.taps[0].ln());
    }
    let t = optimal_weights(&spec.powers()?, spec.order)?;
    let mut g_sum = 0.0;
    let mut tap_sum = 0.0;
    for (&tk, &h) in t.as_slice().iter().zip(&spec.taps) {
        g_sum += g(tk.clamp(0.0, 1.0), spec.order)?;
        tap_sum += tk * h.ln();
    }
    Ok(spec.half_d() * (spec.order.log_alpha_ratio() + g_sum) + tap_sum)
}

/// `(d/2) ln(c^(L) sum_k |det H_k|^(2/d))` with the `n`-dependent constant.
pub fn filter_bound_thm1(spec: &FilterSpec) -> Result<f64> {
    Ok(spec.half_d() * (log_thm1_constant(spec.order, spec.len())? + spec.log_power_sum()?))
}

/// `(d/2) ln(c_alpha sum_k |det H_k|^(2/d))` with the `n`-free constant.
pub fn filter_bound_bc(spec: &FilterSpec) -> Result<f64> {
    Ok(spec.half_d() * (bc_constant(spec.order).ln() + spec.log_power_sum()?))
}

/// `ln max_k |det H_k|`.
pub fn filter_bound_bv(spec: &FilterSpec) -> Result<f64> {
    Ok(spec.taps.iter().copied().fold(0.0, f64::max).ln())
}

/// Entropy gain for Gaussian inputs with scalar taps, `(1/2) ln sum_k h_k^2`.
pub fn gaussian_reference(taps: &[f64]) -> Result<f64> {
    if taps.is_empty() {
        return Err(Error::InvalidInput("a filter needs at least one tap".into()));
    }
    if taps.iter().any(|h| !h.is_finite()) {
        return Err(Error::InvalidInput("taps must be finite".into()));
    }
    gaussian_reference_from_det(taps.iter().map(|h| h * h).sum())
}

/// Entropy gain for Gaussian inputs given `det(sum_k H_k H_k^T)`, which the
/// caller computes from the full matrices.
pub fn gaussian_reference_from_det(det: f64) -> Result<f64> {
    if !(det > 0.0) || !det.is_finite() {
        return Err(Error::InvalidInput(format!("determinant must be positive, got {det}")));
    }
    Ok(0.5 * det.ln())
}

/// The four bounds and the Gaussian reference for one filter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FilterReport {
    pub thm2: f64,
    pub thm1: f64,
    pub bc: f64,
    pub bv: f64,
    /// `None` for `d > 1`, where scalar taps do not determine it.
    pub gaussian: Option<f64>,
}

pub fn filter_report(spec: &FilterSpec) -> Result<FilterReport> {
    Ok(FilterReport {
        thm2: filter_bound_thm2(spec)?,
        thm1: filter_bound_thm1(spec)?,
        bc: filter_bound_bc(spec)?,
        bv: filter_bound_bv(spec)?,
        gaussian: if spec.dimension == 1 {
            Some(gaussian_reference(&spec.taps)?)
        } else {
            None
        },
    })
}
