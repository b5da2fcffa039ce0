use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approx::lp::lp_solve_relaxation;
use crate::approx::split::is_two_bounded;
use crate::caps::Caps;
use crate::error::{precondition, Result};
use crate::knapsack::{Solution, VkInstance};

pub const ROUNDING_TRIALS: usize = 32;

/// Scaling applied to LP values before sampling: `min(1, 1/(4√d))`.
pub fn rounding_scale(d: usize) -> f64 {
    if d == 0 {
        1.0
    } else {
        (1.0 / (4.0 * (d as f64).sqrt())).min(1.0)
    }
}

/// Highest-profit item that fits on its own, smaller index on ties.
pub fn best_single_item(inst: &VkInstance) -> Solution {
    let mut best: Option<usize> = None;
    for i in (0..inst.len()).filter(|&i| inst.fits_alone(i)) {
        if best.map_or(true, |b| inst.profit_of(i) > inst.profit_of(b)) {
            best = Some(i);
        }
    }
    Solution::new(best)
}

/// Drops items until the set is feasible. Each step removes the item with
/// the lowest profit per unit of relative load on the violated coordinates.
fn repair(inst: &VkInstance, mut chosen: Vec<usize>) -> Solution {
    loop {
        let sol = Solution::new(chosen.iter().copied());
        let total = inst.total_cost(&sol).expect("indices in range");
        let violated: Vec<usize> = (0..inst.dimension())
            .filter(|&j| total[j] > inst.budget()[j])
            .collect();
        if violated.is_empty() {
            return sol;
        }
        let ratio = |i: usize| -> f64 {
            let load = violated
                .iter()
                .map(|&j| {
                    let b = BigInt::from(inst.budget()[j].clone()).max(BigInt::from(1));
                    BigRational::new(BigInt::from(inst.cost(i)[j].clone()), b)
                })
                .fold(BigRational::zero(), |a, b| a + b);
            if load.is_zero() {
                f64::INFINITY
            } else {
                inst.profit_of(i) as f64 / load.to_f64().unwrap_or(f64::MAX)
            }
        };
        let pos = (0..chosen.len())
            .min_by(|&a, &b| ratio(chosen[a]).total_cmp(&ratio(chosen[b])).then(chosen[a].cmp(&chosen[b])))
            .expect("an infeasible set is nonempty");
        chosen.remove(pos);
    }
}

/// Randomized rounding of the LP relaxation for all-2-bounded instances,
/// compared against the best single item.
pub fn approx_lp_rounding(inst: &VkInstance, seed: u64, caps: &Caps) -> Result<Solution> {
    if let Some(i) = (0..inst.len()).find(|&i| !is_two_bounded(inst, i)) {
        return precondition(format!("item {i} is 2-unbounded"));
    }
    let lp = lp_solve_relaxation(inst, caps)?;
    let theta = rounding_scale(inst.dimension());
    let probs: Vec<f64> = lp.x.iter().map(|x| theta * x.to_f64().unwrap_or(0.0)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut best = best_single_item(inst);
    let mut best_profit = inst.profit(&best)?;
    for _ in 0..ROUNDING_TRIALS {
        let chosen: Vec<usize> = probs
            .iter()
            .enumerate()
            .filter_map(|(i, &p)| (rng.gen::<f64>() < p).then_some(i))
            .collect();
        let sol = repair(inst, chosen);
        let profit = inst.profit(&sol)?;
        if profit > best_profit {
            best = sol;
            best_profit = profit;
        }
    }
    Ok(best)
}
