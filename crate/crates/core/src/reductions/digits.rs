use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{input, Result};

/// Compares `Σ_i a_i·Q^i` with `Σ_i A·Q^i` (exponents from 1) exactly.
/// With every digit below `Q` the sums agree iff every `a_i = A`.
pub fn verify_base_q_digits(digits: &[u64], q: u64, a: u64) -> Result<bool> {
    if q < 2 {
        return input(format!("base must be at least 2, got {q}"));
    }
    if let Some(&bad) = digits.iter().chain([&a]).find(|&&x| x >= q) {
        return input(format!("digit {bad} is not below the base {q}"));
    }
    let base = BigUint::from(q);
    let mut power = BigUint::one();
    let mut lhs = BigUint::zero();
    let mut rhs = BigUint::zero();
    for &digit in digits {
        power *= &base;
        lhs += &power * digit;
        rhs += &power * a;
    }
    Ok(lhs == rhs)
}
