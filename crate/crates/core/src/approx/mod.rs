//! Approximation for VK: 2-bounded items go through LP rounding, the
//! remaining items through discretized enumeration, and the better of the
//! two results wins.

mod discretize;
mod lp;
mod rounding;
mod split;
mod unbounded;

pub use discretize::{digamma, prune_by_discretization, varpi_down, varpi_up, DigammaKey, DiscretizedCost, Discretizer};
pub use lp::{lp_solve_relaxation, LpSolution};
pub use rounding::{approx_lp_rounding, best_single_item, rounding_scale, ROUNDING_TRIALS};
pub use split::{is_two_bounded, split_by_boundedness, BoundednessSplit};
pub use unbounded::approx_2unbounded;

use crate::caps::Caps;
use crate::error::Result;
use crate::knapsack::{Solution, VkInstance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxOutcome {
    pub solution: Solution,
    pub profit: u64,
    pub bounded: Solution,
    pub unbounded: Solution,
    pub split: BoundednessSplit,
}

pub fn approx_sqrt_d(inst: &VkInstance, seed: u64, caps: &Caps) -> Result<ApproxOutcome> {
    let split = split_by_boundedness(inst);
    let bounded = approx_lp_rounding(&inst.restrict(&split.bounded), seed, caps)?.lift(&split.bounded);
    let unbounded = approx_2unbounded(&inst.restrict(&split.unbounded), caps)?.lift(&split.unbounded);
    let pb = inst.profit(&bounded)?;
    let pu = inst.profit(&unbounded)?;
    let (solution, profit) = if pu > pb {
        (unbounded.clone(), pu)
    } else {
        (bounded.clone(), pb)
    };
    Ok(ApproxOutcome {
        solution,
        profit,
        bounded,
        unbounded,
        split,
    })
}
