//! Geometric rounding of costs and of their complements with ratio
//! `γ = 1 + 1/(10d)`, in exact rational arithmetic.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{input, Result};
use crate::knapsack::VkInstance;

/// One coordinate of `Ϝ(x)`.
///
/// Keys are canonical: equal keys (under the same `B_j`, `γ`) mean equal
/// values and vice versa. A value that is a power of `γ` is always `Up`,
/// so `Comp` and `Full` only stand for values no other form can express.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DigammaKey {
    /// Value 0.
    Zero,
    /// Value `γ^t`.
    Up(u32),
    /// Value `B_j - γ^t`.
    Comp(u32),
    /// Value `B_j` (the complement of 0).
    Full,
}

/// `Ϝ(x)`: per-coordinate keys with their exact values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscretizedCost {
    pub keys: Vec<DigammaKey>,
    pub values: Vec<BigRational>,
}

/// Powers of `γ` with integer ceilings and floors for fast exponent lookup.
#[derive(Debug, Clone)]
pub struct Discretizer {
    gamma: BigRational,
    powers: Vec<BigRational>,
    ceil: Vec<BigUint>,
    floor: Vec<BigUint>,
}

impl Discretizer {
    /// Covers integers up to `max` (powers run until the first `γ^t >= max`).
    pub fn new(d: usize, max: &BigUint) -> Result<Self> {
        if d == 0 {
            return input("γ needs d >= 1");
        }
        let ten_d = BigInt::from(10 * d as u64);
        let gamma = BigRational::new(&ten_d + 1, ten_d);
        let mut disc = Self {
            gamma,
            powers: Vec::new(),
            ceil: Vec::new(),
            floor: Vec::new(),
        };
        disc.push(BigRational::one());
        while disc.floor.last().expect("nonempty") < max {
            let next = disc.powers.last().expect("nonempty") * &disc.gamma;
            disc.push(next);
        }
        Ok(disc)
    }

    fn push(&mut self, p: BigRational) {
        self.ceil.push(to_biguint(&p.ceil()));
        self.floor.push(to_biguint(&p.floor()));
        self.powers.push(p);
    }

    pub fn gamma(&self) -> &BigRational {
        &self.gamma
    }

    /// `γ^t` for `t` within the precomputed range.
    pub fn power(&self, t: u32) -> &BigRational {
        &self.powers[t as usize]
    }

    fn check(&self, x: &BigUint) -> Result<()> {
        if x > self.floor.last().expect("nonempty") {
            return input(format!("{x} exceeds the discretizer range"));
        }
        Ok(())
    }

    /// Smallest `t` with `γ^t >= x`, for `x >= 1`. For integer `x` this is
    /// the same as `⌊γ^t⌋ >= x`.
    pub fn up_exponent(&self, x: &BigUint) -> Result<Option<u32>> {
        self.check(x)?;
        if x.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.floor.partition_point(|f| f < x) as u32))
    }

    /// Largest `t` with `γ^t <= x`, for `x >= 1` (via `⌈γ^t⌉ <= x`).
    pub fn down_exponent(&self, x: &BigUint) -> Result<Option<u32>> {
        self.check(x)?;
        if x.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.ceil.partition_point(|c| c <= x) as u32 - 1))
    }

    pub fn varpi_up(&self, x: &BigUint) -> Result<BigRational> {
        Ok(self
            .up_exponent(x)?
            .map_or_else(BigRational::zero, |t| self.power(t).clone()))
    }

    pub fn varpi_down(&self, x: &BigUint) -> Result<BigRational> {
        Ok(self
            .down_exponent(x)?
            .map_or_else(BigRational::zero, |t| self.power(t).clone()))
    }

    fn power_exponent(&self, v: &BigRational) -> Option<u32> {
        let i = self.powers.partition_point(|p| p < v);
        (i < self.powers.len() && self.powers[i] == *v).then_some(i as u32)
    }

    /// `min{ϖ^up(x), B - ϖ^down(B - x)}` with ties going to the `ϖ^up` side.
    pub fn digamma_coordinate(&self, x: &BigUint, b: &BigUint) -> Result<(DigammaKey, BigRational)> {
        if x > b {
            return input(format!("cost {x} exceeds budget {b}"));
        }
        let up_t = self.up_exponent(x)?;
        let down_t = self.down_exponent(&(b - x))?;
        let up = up_t.map_or_else(BigRational::zero, |t| self.power(t).clone());
        let b_rat = BigRational::from_integer(BigInt::from(b.clone()));
        let comp = match down_t {
            Some(t) => &b_rat - self.power(t),
            None => b_rat.clone(),
        };
        let value = if up <= comp { up } else { comp };
        let key = if value.is_zero() {
            DigammaKey::Zero
        } else if let Some(t) = self.power_exponent(&value) {
            DigammaKey::Up(t)
        } else if value == b_rat {
            DigammaKey::Full
        } else {
            DigammaKey::Comp(down_t.expect("a non-B complement comes from a power"))
        };
        Ok((key, value))
    }

    pub fn digamma(&self, x: &[BigUint], b: &[BigUint]) -> Result<DiscretizedCost> {
        if x.len() != b.len() {
            return input("cost and budget lengths differ");
        }
        let (keys, values) = x
            .iter()
            .zip(b)
            .map(|(x, b)| self.digamma_coordinate(x, b))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip();
        Ok(DiscretizedCost { keys, values })
    }
}

fn to_biguint(v: &BigRational) -> BigUint {
    debug_assert!(!v.is_negative() && v.is_integer());
    v.to_integer().to_biguint().expect("nonnegative")
}

fn nonnegative(x: &BigInt) -> Result<BigUint> {
    x.to_biguint().map_or_else(|| input(format!("{x} is negative")), Ok)
}

/// `ϖ^up(x)` with `γ = 1 + 1/(10d)`.
pub fn varpi_up(x: &BigInt, d: usize) -> Result<BigRational> {
    let x = nonnegative(x)?;
    Discretizer::new(d, &x)?.varpi_up(&x)
}

/// `ϖ^down(x)` with `γ = 1 + 1/(10d)`.
pub fn varpi_down(x: &BigInt, d: usize) -> Result<BigRational> {
    let x = nonnegative(x)?;
    Discretizer::new(d, &x)?.varpi_down(&x)
}

/// `Ϝ(x)` with `γ = 1 + 1/(10d)`, `d = |B|`.
pub fn digamma(x: &[BigUint], b: &[BigUint]) -> Result<DiscretizedCost> {
    let max = b.iter().max().cloned().unwrap_or_default();
    Discretizer::new(b.len().max(1), &max)?.digamma(x, b)
}

/// Keeps one highest-profit item per `Ϝ` key vector (smaller index on
/// ties). Returns surviving indices in increasing order.
pub fn prune_by_discretization(inst: &VkInstance, items: &[usize], disc: &Discretizer) -> Result<Vec<usize>> {
    let mut best: HashMap<Vec<DigammaKey>, usize> = HashMap::new();
    for &i in items {
        let key = disc.digamma(inst.cost(i), inst.budget())?.keys;
        best.entry(key)
            .and_modify(|kept| {
                let p = inst.profit_of(i);
                let q = inst.profit_of(*kept);
                if p > q || (p == q && i < *kept) {
                    *kept = i;
                }
            })
            .or_insert(i);
    }
    let mut kept: Vec<usize> = best.into_values().collect();
    kept.sort_unstable();
    Ok(kept)
}
