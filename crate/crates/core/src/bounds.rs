//! Closed-form R-EPI constants and the scalar functions the optimizer is
//! built from.
//!
//! | Function | Quantity |
//! |----------|----------|
//! | [`bc_constant`] | `alpha^(1/(alpha-1)) / e`, independent of `n` |
//! | [`thm1_constant`] | `alpha^(1/(alpha-1)) (1 - 1/(n alpha'))^(n alpha' - 1)` |
//! | [`objective_f0`] | log of the constant attained by simplex weights `t` |
//! | [`g`] | per-coordinate concave part of the objective |
//! | [`young_constant`] | sharpened Young constant `A_t` |
//! | [`binary_kl`] | binary relative entropy `d(x || y)` |
//! | [`bv_bound`] | `max_k N_k` |

use crate::domain::{Order, PowerVector, SimplexWeights};
use crate::error::{Error, Result};

/// `x ln x` with `0 ln 0 = 0`.
pub(crate) fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `(alpha' - x) ln(1 - x/alpha')`, the part of `g` that survives `alpha' -> inf`.
///
/// Evaluated through `ln_1p` so that the product stays accurate as `alpha'`
/// grows (it tends to `-x`).
pub(crate) fn conj_term(x: f64, conj: f64) -> f64 {
    let u = x / conj;
    if u >= 1.0 {
        // only reachable at alpha' = 1, x = 1
        return 0.0;
    }
    (conj - x) * (-u).ln_1p()
}

/// Bobkov–Chistyakov constant `alpha^(1/(alpha-1)) / e`.
pub fn bc_constant(order: Order) -> f64 {
    (order.log_alpha_ratio() - 1.0).exp()
}

/// Closed-form constant `c_alpha^(n)`; `n = 1` returns 1.
pub fn thm1_constant(order: Order, n: usize) -> Result<f64> {
    Ok(log_thm1_constant(order, n)?.exp())
}

/// Natural log of [`thm1_constant`].
pub fn log_thm1_constant(order: Order, n: usize) -> Result<f64> {
    match n {
        0 => Err(Error::InvalidInput("number of summands must be at least 1".into())),
        1 => Ok(0.0),
        _ => {
            let m = n as f64 * order.conj();
            Ok(order.log_alpha_ratio() + (m - 1.0) * (-1.0 / m).ln_1p())
        }
    }
}

/// Sharpened Young constant `A_t = t^(1/t) |t'|^(-1/|t'|)` with `A_1 = A_inf = 1`.
pub fn young_constant(t: f64) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::InvalidInput(format!("Young exponent must be positive, got {t}")));
    }
    if t == 1.0 || t.is_infinite() {
        return Ok(1.0);
    }
    let conj = (t / (t - 1.0)).abs();
    Ok((t.ln() / t - conj.ln() / conj).exp())
}

/// `g(x) = (alpha' - x) ln(1 - x/alpha') - x ln x` on `[0, 1]`.
pub fn g(x: f64, order: Order) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidInput(format!("g is defined on [0, 1], got {x}")));
    }
    Ok(g_unchecked(x, order.conj()))
}

pub(crate) fn g_unchecked(x: f64, conj: f64) -> f64 {
    conj_term(x, conj) - xlogx(x)
}

/// Binary relative entropy `d(x || y)` in nats.
///
/// Returns `+inf` when `y` is 0 or 1 and `x` differs from it.
pub fn binary_kl(x: f64, y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y) {
        return Err(Error::InvalidInput(format!(
            "binary_kl needs x, y in [0, 1], got ({x}, {y})"
        )));
    }
    Ok(kl_term(x, y) + kl_term(1.0 - x, 1.0 - y))
}

/// One summand `a ln(a/b)` of a relative entropy, with `0 ln(0/b) = 0` and
/// `a ln(a/0) = +inf` for `a > 0`.
pub(crate) fn kl_term(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else if b == 0.0 {
        f64::INFINITY
    } else {
        a * (a / b).ln()
    }
}

/// Bercher–Vignat lower bound `max_k N_k`, in entropy-power units.
pub fn bv_bound(powers: &PowerVector) -> f64 {
    powers.max()
}

/// Log-constant achieved by the simplex weights `t` for normalized powers:
///
/// `ln(alpha)/(alpha-1) - D(t || N) + alpha' sum (1 - t_k/alpha') ln(1 - t_k/alpha')`.
///
/// Returns `-inf` when some `t_k > 0` meets `N_k = 0`.
pub fn objective_f0(t: &SimplexWeights, normalized: &PowerVector, order: Order) -> Result<f64> {
    if t.len() != normalized.len() {
        return Err(Error::DimensionMismatch {
            expected: normalized.len(),
            got: t.len(),
        });
    }
    let total = normalized.sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized(total));
    }
    if let Some(bad) = t.as_slice().iter().find(|x| **x > 1.0 + SimplexWeights::SUM_SLACK) {
        return Err(Error::InvalidInput(format!("weight {bad} exceeds 1")));
    }
    Ok(objective_f0_unchecked(t.as_slice(), normalized.as_slice(), order))
}

pub(crate) fn objective_f0_unchecked(t: &[f64], normalized: &[f64], order: Order) -> f64 {
    let conj = order.conj();
    let mut divergence = 0.0;
    let mut young = 0.0;
    for (&tk, &nk) in t.iter().zip(normalized) {
        let tk = tk.clamp(0.0, 1.0);
        divergence += kl_term(tk, nk);
        young += conj_term(tk, conj);
    }
    order.log_alpha_ratio() - divergence + young
}
