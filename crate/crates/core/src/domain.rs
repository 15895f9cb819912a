//! Domain types shared by every module: Rényi orders, entropy-power vectors,
//! simplex weights, and the conversions between entropies and entropy powers.
//!
//! All logarithms are natural, so entropies are in nats. Entropy powers carry
//! no dimension: `d` only appears in the conversions below and in the
//! application/verification code.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A Rényi order `alpha` in `(1, +inf]` together with its Hölder conjugate
/// `alpha / (alpha - 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Order {
    alpha: f64,
    conj: f64,
}

impl Order {
    pub fn new(alpha: f64) -> Result<Self> {
        let conj = holder_conjugate(alpha)?;
        Ok(Self { alpha, conj })
    }

    pub fn infinity() -> Self {
        Self {
            alpha: f64::INFINITY,
            conj: 1.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Hölder conjugate `alpha'`; equals 1 at `alpha = inf`.
    pub fn conj(&self) -> f64 {
        self.conj
    }

    pub fn is_infinite(&self) -> bool {
        self.alpha.is_infinite()
    }

    /// `ln(alpha) / (alpha - 1)`, which tends to 1 as `alpha -> 1` and to 0 as
    /// `alpha -> inf`.
    pub fn log_alpha_ratio(&self) -> f64 {
        if self.is_infinite() {
            return 0.0;
        }
        let excess = self.alpha - 1.0;
        excess.ln_1p() / excess
    }

    /// `alpha^(1/(alpha-1))`, the Gaussian-extremal factor shared by all
    /// constants.
    pub fn alpha_factor(&self) -> f64 {
        self.log_alpha_ratio().exp()
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.alpha)
        }
    }
}

/// Serialized as a JSON number, or the string `"inf"` for the infinite order.
impl Serialize for Order {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.alpha)
        }
    }
}

/// Hölder conjugate `alpha / (alpha - 1)`, with `conj(inf) = 1`.
pub fn holder_conjugate(alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha <= 1.0 {
        return Err(Error::InvalidOrder(alpha));
    }
    if alpha.is_infinite() {
        return Ok(1.0);
    }
    Ok(alpha / (alpha - 1.0))
}

/// Entropy power `exp(2h/d)` of a `d`-dimensional law with entropy `h` nats.
pub fn power_from_entropy(h: f64, d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    if h.is_nan() || h == f64::INFINITY {
        return Err(Error::InvalidInput(format!("entropy must be finite or -inf, got {h}")));
    }
    Ok((2.0 * h / d as f64).exp())
}

/// Inverse of [`power_from_entropy`]: `(d/2) ln N`, `-inf` for `N = 0`.
pub fn entropy_from_power(power: f64, d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    if !(power >= 0.0) || power.is_infinite() {
        return Err(Error::InvalidInput(format!(
            "entropy power must be finite and >= 0, got {power}"
        )));
    }
    Ok(0.5 * d as f64 * power.ln())
}

/// Nonnegative Rényi entropy powers `N_alpha(X_1), ..., N_alpha(X_n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PowerVector(Vec<f64>);

impl PowerVector {
    pub fn new(powers: Vec<f64>) -> Result<Self> {
        if powers.is_empty() {
            return Err(Error::InvalidInput("power vector must be non-empty".into()));
        }
        if let Some(bad) = powers.iter().find(|p| !(**p >= 0.0) || p.is_infinite()) {
            return Err(Error::InvalidInput(format!(
                "entropy powers must be finite and >= 0, got {bad}"
            )));
        }
        Ok(Self(powers))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }

    /// Number of strictly positive entries.
    pub fn positive_count(&self) -> usize {
        self.0.iter().filter(|p| **p > 0.0).count()
    }

    /// The vector divided by its sum.
    pub fn normalized(&self) -> Result<Self> {
        let total = self.sum();
        if total <= 0.0 {
            return Err(Error::Degenerate);
        }
        Ok(Self(self.0.iter().map(|p| p / total).collect()))
    }
}

/// A point of the probability simplex.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SimplexWeights(Vec<f64>);

impl SimplexWeights {
    pub const NEGATIVE_SLACK: f64 = 1e-12;
    pub const SUM_SLACK: f64 = 1e-10;

    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidInput("simplex weights must be non-empty".into()));
        }
        if let Some(bad) = weights.iter().find(|t| !(**t >= -Self::NEGATIVE_SLACK)) {
            return Err(Error::InvalidInput(format!("simplex weight {bad} is negative")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > Self::SUM_SLACK {
            return Err(Error::InvalidInput(format!("simplex weights sum to {total}, not 1")));
        }
        Ok(Self(weights))
    }

    /// Solver output; feasibility is checked by the solver's own tests.
    pub(crate) fn from_raw(weights: Vec<f64>) -> Self {
        Self(weights)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}
