//! Rényi entropy power inequalities for sums of independent random vectors.
//!
//! For orders `alpha > 1` the crate evaluates the lower bounds
//! `N_alpha(X_1 + ... + X_n) >= c * sum_k N_alpha(X_k)` with the classical
//! constant, the `n`-dependent closed form, and the power-dependent optimum,
//! along with numerical checks of the concavity argument and a quadrature
//! certifier working on one-dimensional densities.
//!
//! ```
//! use repi::{bounds, optimizer, Order, PowerVector};
//!
//! let order = Order::new(2.0)?;
//! assert!((bounds::thm1_constant(order, 2)? - 27.0 / 32.0).abs() < 1e-15);
//! let powers = PowerVector::new(vec![4.0, 1.0, 1.0])?;
//! assert!(optimizer::thm2_constant(&powers, order)? > bounds::thm1_constant(order, 3)?);
//! # Ok::<(), repi::Error>(())
//! ```

// `!(x > 0.0)` is used on purpose: it rejects NaN along with the bad range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod applications;
pub mod bounds;
pub mod cli;
pub mod diagnostics;
pub mod domain;
pub mod error;
pub mod optimizer;
pub mod parse;
pub mod report;
pub mod verify;

pub use domain::{Order, PowerVector, SimplexWeights};
pub use error::{Error, Result};
pub use report::BoundReport;
