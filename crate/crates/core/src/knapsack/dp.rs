//! Dynamic program over the residual-budget lattice `∏_j [0, B_j]`.

use bitvec::vec::BitVec;
use num_traits::ToPrimitive;

use crate::caps::Caps;
use crate::error::{cap, Result};

use super::{Solution, VkInstance};

/// Exact `OPT` in `O(n · ∏_j (B_j + 1))` time.
///
/// Items are processed last to first so that `f_i(b)` is the best value using
/// items `i..n` under residual budget `b`. Per item and cell we keep two bits
/// (whether taking item `i` is optimal, whether `f_i(b) = 0`), which is enough
/// to rebuild the lexicographically smallest optimal set front to back.
pub fn solve_dp(inst: &VkInstance, caps: &Caps) -> Result<(u64, Solution)> {
    let budget: Option<Vec<u64>> = inst.budget().iter().map(|b| b.to_u64()).collect();
    let Some(budget) = budget else {
        return cap("DP budget coordinate", "more than 64 bits", "64 bits");
    };
    let mut cells: u64 = 1;
    let mut strides = Vec::with_capacity(budget.len());
    for &b in &budget {
        strides.push(cells);
        cells = match cells.checked_mul(b.saturating_add(1)) {
            Some(c) if c <= caps.lattice => c,
            _ => return cap("DP lattice cells", lattice_size(&budget), caps.lattice),
        };
    }
    let n = inst.len();
    let cells = cells as usize;

    // None for items that exceed the budget on their own.
    let costs: Vec<Option<Vec<u64>>> = (0..n)
        .map(|i| {
            inst.cost(i)
                .iter()
                .zip(&budget)
                .map(|(c, &b)| c.to_u64().filter(|&c| c <= b))
                .collect()
        })
        .collect();

    let mut f = vec![0u64; cells];
    let mut take: BitVec = BitVec::repeat(false, n * cells);
    let mut zero: BitVec = BitVec::repeat(false, n * cells);
    let mut coord = vec![0u64; budget.len()];
    for i in (0..n).rev() {
        let p = inst.profit_of(i);
        let base = i * cells;
        match &costs[i] {
            Some(c) => {
                let shift: u64 = c.iter().zip(&strides).map(|(c, s)| c * s).sum();
                // Descending cell order keeps f[b - c] at its value for items i+1..n.
                decode(cells - 1, &strides, &budget, &mut coord);
                for b in (0..cells).rev() {
                    if c.iter().zip(&coord).all(|(c, x)| c <= x) {
                        let with = p + f[b - shift as usize];
                        if with >= f[b] {
                            f[b] = with;
                            take.set(base + b, true);
                        }
                    }
                    if f[b] == 0 {
                        zero.set(base + b, true);
                    }
                    step_down(&mut coord, &budget);
                }
            }
            None => {
                for (b, &v) in f.iter().enumerate() {
                    if v == 0 {
                        zero.set(base + b, true);
                    }
                }
            }
        }
    }

    let opt = f[cells - 1];
    let mut chosen = Vec::new();
    let mut b = cells - 1;
    for i in 0..n {
        if zero[i * cells + b] {
            break;
        }
        if take[i * cells + b] {
            chosen.push(i);
            let c = costs[i].as_ref().expect("only fitting items are taken");
            b -= c.iter().zip(&strides).map(|(c, s)| c * s).sum::<u64>() as usize;
        }
    }
    Ok((opt, Solution::new(chosen)))
}

fn lattice_size(budget: &[u64]) -> String {
    budget
        .iter()
        .try_fold(1u128, |acc, &b| acc.checked_mul(b as u128 + 1))
        .map_or_else(|| "more than 2^128".to_string(), |c| c.to_string())
}

fn decode(mut idx: usize, strides: &[u64], budget: &[u64], coord: &mut [u64]) {
    for j in (0..budget.len()).rev() {
        coord[j] = idx as u64 / strides[j];
        idx %= strides[j] as usize;
    }
}

/// Decrements a mixed-radix counter (coordinate 0 least significant).
fn step_down(coord: &mut [u64], budget: &[u64]) {
    for j in 0..coord.len() {
        if coord[j] > 0 {
            coord[j] -= 1;
            return;
        }
        coord[j] = budget[j];
    }
}
