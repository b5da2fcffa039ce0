//! Exhaustive subset search. Subsets are visited as sorted index sequences in
//! lexicographic order and only strict improvements are kept, so the witness
//! is the lexicographically smallest optimal set.

use std::ops::{AddAssign, SubAssign};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::caps::Caps;
use crate::error::{cap, Result};

use super::{Solution, VkInstance};

/// `OPT` with the lexicographically smallest optimal witness.
pub fn solve_bruteforce(inst: &VkInstance, caps: &Caps) -> Result<(u64, Solution)> {
    if inst.len() > caps.knapsack_items {
        return cap("knapsack items for brute force", inst.len(), caps.knapsack_items);
    }
    Ok(search(inst, inst.len()))
}

/// The best feasible set among those with at most `s_max` items.
pub fn solve_bruteforce_bounded_size(
    inst: &VkInstance,
    s_max: usize,
    caps: &Caps,
) -> Result<(u64, Solution)> {
    let s_max = s_max.min(inst.len());
    let subsets = subsets_up_to(inst.len() as u128, s_max as u128);
    if subsets > caps.enumeration {
        return cap("subsets of bounded size", subsets, caps.enumeration);
    }
    Ok(search(inst, s_max))
}

/// `Σ_{k ≤ s} C(n, k)`, saturating.
fn subsets_up_to(n: u128, s: u128) -> u128 {
    let mut total: u128 = 1;
    let mut term: u128 = 1;
    for k in 1..=s {
        term = match term.checked_mul(n - k + 1) {
            Some(t) => t / k,
            None => return u128::MAX,
        };
        total = total.saturating_add(term);
    }
    total
}

fn search(inst: &VkInstance, depth: usize) -> (u64, Solution) {
    let d = inst.dimension();
    let mut wide: Option<(Vec<Vec<u128>>, Vec<u128>)> = None;
    if let Some(costs) = narrow(inst.costs()) {
        // u128 is safe when the coordinate sums of all items plus the budget cannot overflow.
        let budget: Option<Vec<u128>> = inst.budget().iter().map(|b| b.to_u128()).collect();
        if let Some(budget) = budget {
            let fits = (0..d).all(|j| {
                costs
                    .iter()
                    .try_fold(budget[j], |acc, c| acc.checked_add(c[j]))
                    .is_some()
            });
            if fits {
                wide = Some((costs, budget));
            }
        }
    }
    match wide {
        Some((costs, budget)) => Dfs::run(inst.profits(), &costs, &budget, depth),
        None => Dfs::run(inst.profits(), inst.costs(), inst.budget(), depth),
    }
}

fn narrow(costs: &[Vec<BigUint>]) -> Option<Vec<Vec<u128>>> {
    costs
        .iter()
        .map(|c| c.iter().map(|x| x.to_u128()).collect())
        .collect()
}

struct Dfs<'a, T> {
    profits: &'a [u64],
    costs: &'a [Vec<T>],
    budget: &'a [T],
    suffix_profit: Vec<u64>,
    depth: usize,
    load: Vec<T>,
    chosen: Vec<usize>,
    best: u64,
    best_set: Vec<usize>,
}

impl<'a, T> Dfs<'a, T>
where
    T: Clone + PartialOrd + for<'b> AddAssign<&'b T> + for<'b> SubAssign<&'b T> + From<u8>,
{
    fn run(profits: &'a [u64], costs: &'a [Vec<T>], budget: &'a [T], depth: usize) -> (u64, Solution) {
        let n = profits.len();
        let mut suffix_profit = vec![0u64; n + 1];
        for i in (0..n).rev() {
            suffix_profit[i] = suffix_profit[i + 1] + profits[i];
        }
        let mut dfs = Dfs {
            profits,
            costs,
            budget,
            suffix_profit,
            depth,
            load: vec![T::from(0u8); budget.len()],
            chosen: Vec::new(),
            best: 0,
            best_set: Vec::new(),
        };
        dfs.visit(0, 0);
        (dfs.best, Solution::new(dfs.best_set))
    }

    fn visit(&mut self, start: usize, value: u64) {
        if value > self.best {
            self.best = value;
            self.best_set.clone_from(&self.chosen);
        }
        if self.chosen.len() == self.depth {
            return;
        }
        for i in start..self.profits.len() {
            if value + self.suffix_profit[i] <= self.best {
                return;
            }
            if !self.fits(i) {
                continue;
            }
            for (l, c) in self.load.iter_mut().zip(&self.costs[i]) {
                *l += c;
            }
            self.chosen.push(i);
            self.visit(i + 1, value + self.profits[i]);
            self.chosen.pop();
            for (l, c) in self.load.iter_mut().zip(&self.costs[i]) {
                *l -= c;
            }
        }
    }

    fn fits(&self, i: usize) -> bool {
        self.load
            .iter()
            .zip(&self.costs[i])
            .zip(self.budget)
            .all(|((l, c), b)| {
                let mut t = l.clone();
                t += c;
                t <= *b
            })
    }
}
