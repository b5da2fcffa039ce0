//! Exact LP relaxation of VK: maximize `p·x` subject to `Cx <= B`,
//! `0 <= x <= 1`, solved by a dense rational tableau with Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::caps::Caps;
use crate::error::{cap, Result};
use crate::knapsack::VkInstance;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub x: Vec<BigRational>,
    pub value: BigRational,
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn lp_solve_relaxation(inst: &VkInstance, caps: &Caps) -> Result<LpSolution> {
    let n = inst.len();
    let d = inst.dimension();
    let rows = d + n;
    if rows > caps.lp_size {
        return cap("LP rows", rows.to_string(), caps.lp_size.to_string());
    }
    // Columns: n structural variables, then one slack per row, then the rhs.
    let cols = n + rows;
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    for j in 0..d {
        let mut row = vec![BigRational::zero(); cols + 1];
        for (i, cell) in row.iter_mut().take(n).enumerate() {
            *cell = int(inst.cost(i)[j].clone());
        }
        row[n + j] = BigRational::one();
        row[cols] = int(inst.budget()[j].clone());
        tab.push(row);
    }
    for i in 0..n {
        let mut row = vec![BigRational::zero(); cols + 1];
        row[i] = BigRational::one();
        row[n + d + i] = BigRational::one();
        row[cols] = BigRational::one();
        tab.push(row);
    }
    // Reduced costs of the objective row (maximization: positive = improving).
    let mut obj: Vec<BigRational> = (0..=cols)
        .map(|c| if c < n { int(inst.profit_of(c)) } else { BigRational::zero() })
        .collect();
    let mut basis: Vec<usize> = (n..cols).collect();

    while let Some(enter) = (0..cols).find(|&c| obj[c].is_positive()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (r, row) in tab.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[cols] / &row[enter];
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        // Bounded by `x <= 1`, so some row always limits the step.
        let (r, _) = leave.expect("LP relaxation is bounded");
        let pivot = tab[r][enter].clone();
        for v in tab[r].iter_mut() {
            *v /= &pivot;
        }
        let prow = tab[r].clone();
        for (k, row) in tab.iter_mut().enumerate() {
            if k != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v -= &f * p;
                }
            }
        }
        let f = obj[enter].clone();
        for (v, p) in obj.iter_mut().zip(&prow) {
            *v -= &f * p;
        }
        basis[r] = enter;
    }

    let mut x = vec![BigRational::zero(); n];
    for (r, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = tab[r][cols].clone();
        }
    }
    let value = x
        .iter()
        .enumerate()
        .map(|(i, xi)| xi * int(inst.profit_of(i)))
        .fold(BigRational::zero(), |a, b| a + b);
    Ok(LpSolution { x, value })
}
