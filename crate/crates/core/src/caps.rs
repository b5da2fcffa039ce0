use serde::{Deserialize, Serialize};

/// Limits for the exact oracles. Every oracle refuses with
/// [`Error::CapExceeded`](crate::Error::CapExceeded) instead of truncating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Maximum variable count for 3-SAT brute force.
    pub sat_variables: usize,
    /// Maximum item count for subset brute force on knapsack instances.
    pub knapsack_items: usize,
    /// Maximum raw search-space size for CSP / partial-assignment enumeration
    /// and bounded-size subset enumeration.
    pub enumeration: u128,
    /// Maximum number of cells in the knapsack DP budget lattice.
    pub lattice: u64,
    /// Maximum number of r-subsets checked when verifying a disperser.
    pub disperser_checks: u64,
    /// Maximum `n + d` for the exact rational LP relaxation.
    pub lp_size: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            sat_variables: 24,
            knapsack_items: 22,
            enumeration: 1 << 26,
            lattice: 1 << 22,
            disperser_checks: 1 << 20,
            lp_size: 200,
        }
    }
}

impl Caps {
    pub fn with_enumeration(mut self, cap: u128) -> Self {
        self.enumeration = cap;
        self
    }

    pub fn with_lattice(mut self, cap: u64) -> Self {
        self.lattice = cap;
        self
    }
}
