use serde::Serialize;

use crate::bounds::{bc_constant, bv_bound, thm1_constant};
use crate::domain::{Order, PowerVector, SimplexWeights};
use crate::error::Result;
use crate::optimizer::{optimal_weights, thm2_constant};

/// Every bound on `N_alpha(X_1 + ... + X_n)` for one power vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub order: Order,
    pub powers: PowerVector,
    pub sum_power: f64,
    pub bc: f64,
    /// Uses the number of nonzero powers; zero summands are dropped first.
    pub thm1: f64,
    pub thm2: f64,
    pub optimal_weights: SimplexWeights,
    pub lower_bounds: LowerBounds,
    /// Set at `alpha = inf`, where the tightened constant is a limit value.
    pub limit: bool,
}

/// Lower bounds on the entropy power of the sum itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBounds {
    pub bc: f64,
    pub thm1: f64,
    pub thm2: f64,
    pub bv: f64,
}

impl LowerBounds {
    pub fn best(&self) -> f64 {
        self.bc.max(self.thm1).max(self.thm2).max(self.bv)
    }
}

impl BoundReport {
    pub fn compute(powers: &PowerVector, order: Order) -> Result<Self> {
        let sum_power = powers.sum();
        let bc = bc_constant(order);
        let thm1 = thm1_constant(order, powers.positive_count().max(1))?;
        let thm2 = thm2_constant(powers, order)?;
        let optimal_weights = optimal_weights(powers, order)?;
        Ok(Self {
            order,
            powers: powers.clone(),
            sum_power,
            bc,
            thm1,
            thm2,
            optimal_weights,
            lower_bounds: LowerBounds {
                bc: bc * sum_power,
                thm1: thm1 * sum_power,
                thm2: thm2 * sum_power,
                bv: bv_bound(powers),
            },
            limit: order.is_infinite(),
        })
    }
}
