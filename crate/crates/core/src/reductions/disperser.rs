use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::error::{cap, input, Error, Result};

/// Attempts made by [`build_disperser`] before giving up.
pub const DISPERSER_RETRIES: usize = 64;

/// `k` subsets of `0..universe` such that any `r` distinct ones cover at
/// least `(1 - ε)·universe` elements. Only constructed after an exhaustive
/// check of all `r`-subsets.
#[derive(Debug, Clone, PartialEq)]
pub struct Disperser {
    universe: usize,
    sets: Vec<Vec<usize>>,
    r: usize,
    epsilon: f64,
}

impl Disperser {
    /// Verifies explicit sets.
    pub fn from_sets(
        universe: usize,
        sets: Vec<Vec<usize>>,
        r: usize,
        epsilon: f64,
        caps: &Caps,
    ) -> Result<Self> {
        check_parameters(sets.len(), r, epsilon, caps)?;
        let sets: Vec<Vec<usize>> = sets
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        if sets.iter().flatten().any(|&x| x >= universe) {
            return input("disperser set leaves the universe");
        }
        match first_uncovered(universe, &sets, r, epsilon) {
            None => Ok(Self {
                universe,
                sets,
                r,
                epsilon,
            }),
            Some(bad) => Err(Error::Construction(format!(
                "sets {bad:?} cover fewer than (1 - {epsilon})·{universe} elements"
            ))),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Largest set size.
    pub fn set_size(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }
}

fn check_parameters(k: usize, r: usize, epsilon: f64, caps: &Caps) -> Result<()> {
    if r == 0 || r > k {
        return input(format!("need 1 <= r <= k, got r = {r}, k = {k}"));
    }
    if !(0.0..1.0).contains(&epsilon) {
        return input(format!("ε must lie in [0, 1), got {epsilon}"));
    }
    let checks = binomial(k as u128, r as u128);
    if checks > caps.disperser_checks as u128 {
        return cap("disperser r-subsets", checks, caps.disperser_checks);
    }
    Ok(())
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// The first `r`-subset of set indices whose union is too small.
fn first_uncovered(universe: usize, sets: &[Vec<usize>], r: usize, epsilon: f64) -> Option<Vec<usize>> {
    let needed = (1.0 - epsilon) * universe as f64 - 1e-9;
    let mut mark = vec![false; universe];
    (0..sets.len()).combinations(r).find(|combo| {
        mark.iter_mut().for_each(|m| *m = false);
        let mut covered = 0usize;
        for &s in combo {
            for &x in &sets[s] {
                if !mark[x] {
                    mark[x] = true;
                    covered += 1;
                }
            }
        }
        (covered as f64) < needed
    })
}

/// Draws `k` uniformly random `l`-subsets of `0..m` and keeps the first draw
/// that passes the exhaustive covering check, for at most
/// [`DISPERSER_RETRIES`] draws.
pub fn build_disperser(
    m: usize,
    k: usize,
    l: usize,
    r: usize,
    epsilon: f64,
    seed: u64,
    caps: &Caps,
) -> Result<Disperser> {
    check_parameters(k, r, epsilon, caps)?;
    if l > m {
        return input(format!("set size {l} exceeds universe {m}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DISPERSER_RETRIES {
        let sets: Vec<Vec<usize>> = (0..k)
            .map(|_| {
                let mut s = sample(&mut rng, m, l).into_vec();
                s.sort_unstable();
                s
            })
            .collect();
        if first_uncovered(m, &sets, r, epsilon).is_none() {
            return Ok(Disperser {
                universe: m,
                sets,
                r,
                epsilon,
            });
        }
    }
    Err(Error::Construction(format!(
        "no ({m}, {k}, {l}, {r})-disperser with ε = {epsilon} found in {DISPERSER_RETRIES} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_with_r_equal_k() {
        let sets = vec![vec![0, 1], vec![2], vec![3, 4, 5]];
        assert!(Disperser::from_sets(6, sets, 3, 0.0, &Caps::default()).is_ok());
    }

    #[test]
    fn single_full_set() {
        for eps in [0.0, 0.3, 0.9] {
            assert!(build_disperser(5, 1, 5, 1, eps, 1, &Caps::default()).is_ok());
        }
    }

    #[test]
    fn seeded_build_is_deterministic_and_verified() {
        let caps = Caps::default();
        let a = build_disperser(12, 6, 6, 3, 0.25, 7, &caps);
        let b = build_disperser(12, 6, 6, 3, 0.25, 7, &caps);
        assert_eq!(a, b);
        if let Ok(d) = a {
            assert_eq!(d.sets().len(), 6);
            for combo in (0..6).combinations(3) {
                let union: std::collections::BTreeSet<_> =
                    combo.iter().flat_map(|&s| d.sets()[s].iter().copied()).collect();
                assert!(union.len() >= 9);
            }
        }
    }

    #[test]
    fn rejects_bad_sets() {
        let caps = Caps::default();
        assert!(Disperser::from_sets(4, vec![vec![0], vec![1]], 1, 0.0, &caps).is_err());
        assert!(Disperser::from_sets(4, vec![vec![0, 1]], 2, 0.0, &caps).is_err());
        assert!(build_disperser(4, 3, 5, 2, 0.1, 0, &caps).is_err());
        assert!(build_disperser(40, 40, 1, 20, 0.1, 0, &caps).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(5, 5), 1);
    }
}
