//! The d-dimensional knapsack model and its exact solvers.

mod brute;
mod dp;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{input, Result};

pub use brute::{solve_bruteforce, solve_bruteforce_bounded_size};
pub use dp::solve_dp;

/// Items with nonnegative profits and `d`-dimensional cost vectors, plus a
/// budget vector. Costs and budgets are arbitrary precision.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VkInstance {
    profits: Vec<u64>,
    costs: Vec<Vec<BigUint>>,
    budget: Vec<BigUint>,
}

impl VkInstance {
    pub fn new(profits: Vec<u64>, costs: Vec<Vec<BigUint>>, budget: Vec<BigUint>) -> Result<Self> {
        if profits.len() != costs.len() {
            return input(format!("{} profits for {} cost vectors", profits.len(), costs.len()));
        }
        let d = budget.len();
        if let Some(i) = costs.iter().position(|c| c.len() != d) {
            return input(format!("cost vector of item {i} has length {}, expected {d}", costs[i].len()));
        }
        Ok(Self {
            profits,
            costs,
            budget,
        })
    }

    /// Convenience constructor from machine-word costs.
    pub fn from_u64(profits: Vec<u64>, costs: Vec<Vec<u64>>, budget: Vec<u64>) -> Result<Self> {
        Self::new(
            profits,
            costs
                .into_iter()
                .map(|c| c.into_iter().map(BigUint::from).collect())
                .collect(),
            budget.into_iter().map(BigUint::from).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.profits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profits.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.budget.len()
    }

    pub fn profits(&self) -> &[u64] {
        &self.profits
    }

    pub fn profit_of(&self, i: usize) -> u64 {
        self.profits[i]
    }

    pub fn cost(&self, i: usize) -> &[BigUint] {
        &self.costs[i]
    }

    pub fn costs(&self) -> &[Vec<BigUint>] {
        &self.costs
    }

    pub fn budget(&self) -> &[BigUint] {
        &self.budget
    }

    /// `W = max_j B_j`.
    pub fn max_budget(&self) -> Result<BigUint> {
        match self.budget.iter().max() {
            Some(w) => Ok(w.clone()),
            None => input("W is undefined for d = 0"),
        }
    }

    /// The instance restricted to `items`, in the given order. Item `k` of the
    /// result is item `items[k]` of `self`.
    pub fn restrict(&self, items: &[usize]) -> Self {
        Self {
            profits: items.iter().map(|&i| self.profits[i]).collect(),
            costs: items.iter().map(|&i| self.costs[i].clone()).collect(),
            budget: self.budget.clone(),
        }
    }

    /// Replaces the budget, keeping items.
    pub fn with_budget(&self, budget: Vec<BigUint>) -> Result<Self> {
        Self::new(self.profits.clone(), self.costs.clone(), budget)
    }

    fn check_indices(&self, s: &Solution) -> Result<()> {
        match s.items().iter().find(|&&i| i >= self.len()) {
            Some(i) => input(format!("unknown item index {i}")),
            None => Ok(()),
        }
    }

    /// Coordinatewise `c(S)`.
    pub fn total_cost(&self, s: &Solution) -> Result<Vec<BigUint>> {
        self.check_indices(s)?;
        let mut total = vec![BigUint::zero(); self.dimension()];
        for &i in s.items() {
            for (t, c) in total.iter_mut().zip(&self.costs[i]) {
                *t += c;
            }
        }
        Ok(total)
    }

    pub fn check_feasible(&self, s: &Solution) -> Result<bool> {
        Ok(self
            .total_cost(s)?
            .iter()
            .zip(&self.budget)
            .all(|(c, b)| c <= b))
    }

    pub fn profit(&self, s: &Solution) -> Result<u64> {
        self.check_indices(s)?;
        Ok(s.items().iter().map(|&i| self.profits[i]).sum())
    }

    /// Whether item `i` alone fits the budget.
    pub fn fits_alone(&self, i: usize) -> bool {
        self.costs[i].iter().zip(&self.budget).all(|(c, b)| c <= b)
    }
}

/// A set of item indices, kept sorted and duplicate free.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    items: Vec<usize>,
}

impl Solution {
    pub fn new(items: impl IntoIterator<Item = usize>) -> Self {
        let mut items: Vec<usize> = items.into_iter().collect();
        items.sort_unstable();
        items.dedup();
        Self { items }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn items(&self) -> &[usize] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.items.binary_search(&i).is_ok()
    }

    /// Maps indices of a restricted instance back through `original`.
    pub fn lift(&self, original: &[usize]) -> Self {
        Self::new(self.items.iter().map(|&k| original[k]))
    }
}
