use std::f64::consts::PI;

use serde::Serialize;

use super::grid::GridDensity;
use crate::error::{Error, Result};

/// Densities below this value are treated as outside the support.
pub const TAIL_CUTOFF: f64 = 1e-16;

/// Univariate laws with closed-form densities, used to build test grids.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "law", rename_all = "lowercase")]
pub enum Law {
    Gaussian {
        mean: f64,
        std: f64,
    },
    Uniform {
        lo: f64,
        hi: f64,
    },
    /// `rate * exp(-rate (x - shift))` for `x >= shift`.
    Exponential {
        rate: f64,
        shift: f64,
    },
    /// Weighted components; weights are normalized on use.
    Mixture {
        components: Vec<(f64, Law)>,
    },
}

impl Law {
    pub fn standard_gaussian() -> Self {
        Law::Gaussian { mean: 0.0, std: 1.0 }
    }

    pub fn unit_uniform() -> Self {
        Law::Uniform { lo: 0.0, hi: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        match self {
            Law::Gaussian { mean, std } => {
                if !mean.is_finite() || !(*std > 0.0) || !std.is_finite() {
                    return bad(format!("gaussian needs finite mean and std > 0, got ({mean}, {std})"));
                }
            }
            Law::Uniform { lo, hi } => {
                if !lo.is_finite() || !hi.is_finite() || !(hi > lo) {
                    return bad(format!("uniform needs lo < hi, got [{lo}, {hi}]"));
                }
            }
            Law::Exponential { rate, shift } => {
                if !(*rate > 0.0) || !rate.is_finite() || !shift.is_finite() {
                    return bad(format!(
                        "exponential needs rate > 0 and finite shift, got ({rate}, {shift})"
                    ));
                }
            }
            Law::Mixture { components } => {
                if components.is_empty() {
                    return bad("mixture needs at least one component".into());
                }
                for (w, law) in components {
                    if !(*w > 0.0) || !w.is_finite() {
                        return bad(format!("mixture weight {w} is not positive"));
                    }
                    law.validate()?;
                }
            }
        }
        Ok(())
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match self {
            Law::Gaussian { mean, std } => {
                let z = (x - mean) / std;
                (-0.5 * z * z).exp() / (std * (2.0 * PI).sqrt())
            }
            Law::Uniform { lo, hi } => {
                if *lo <= x && x <= *hi {
                    1.0 / (hi - lo)
                } else {
                    0.0
                }
            }
            Law::Exponential { rate, shift } => {
                if x >= *shift {
                    rate * (-rate * (x - shift)).exp()
                } else {
                    0.0
                }
            }
            Law::Mixture { components } => {
                let total: f64 = components.iter().map(|(w, _)| w).sum();
                components.iter().map(|(w, law)| w * law.pdf(x)).sum::<f64>() / total
            }
        }
    }

    /// Interval outside of which the density is below [`TAIL_CUTOFF`].
    pub fn support(&self) -> (f64, f64) {
        match self {
            Law::Gaussian { mean, std } => {
                let arg = TAIL_CUTOFF * std * (2.0 * PI).sqrt();
                let r = if arg < 1.0 {
                    std * (-2.0 * arg.ln()).sqrt()
                } else {
                    *std
                };
                (mean - r, mean + r)
            }
            Law::Uniform { lo, hi } => (*lo, *hi),
            Law::Exponential { rate, shift } => {
                let tail = if *rate > TAIL_CUTOFF {
                    (rate / TAIL_CUTOFF).ln() / rate
                } else {
                    1.0 / rate
                };
                (*shift, shift + tail)
            }
            Law::Mixture { components } => components
                .iter()
                .map(|(_, law)| law.support())
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), (lo, hi)| {
                    (a.min(lo), b.max(hi))
                }),
        }
    }

    /// Samples the density on a grid of the given spacing whose nodes are
    /// integer multiples of `spacing`, covering the support.
    pub fn grid(&self, spacing: f64) -> Result<GridDensity> {
        self.validate()?;
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(Error::InvalidInput(format!("spacing must be positive, got {spacing}")));
        }
        let (lo, hi) = self.support();
        let start = (lo / spacing).floor() as i64;
        let end = (hi / spacing).ceil() as i64;
        let values: Vec<f64> = (start..=end.max(start + 1))
            .map(|k| self.pdf(k as f64 * spacing))
            .collect();
        GridDensity::normalized(start as f64 * spacing, spacing, values)
    }
}

/// Rényi entropy in nats of a `d`-dimensional Gaussian with covariance
/// determinant `det_cov`.
pub fn gaussian_renyi_entropy(order: crate::domain::Order, d: usize, det_cov: f64) -> Result<f64> {
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    if !(det_cov > 0.0) || !det_cov.is_finite() {
        return Err(Error::InvalidInput(format!(
            "covariance determinant must be positive, got {det_cov}"
        )));
    }
    let d = d as f64;
    Ok(0.5 * d * order.log_alpha_ratio() + 0.5 * (d * (2.0 * PI).ln() + det_cov.ln()))
}
