//! Reductions between constraint problems and multidimensional knapsack,
//! together with exact oracles and an approximation algorithm for the
//! knapsack side.

pub mod approx;
pub mod caps;
pub mod csp;
pub mod error;
pub mod gen;
pub mod graph;
pub mod knapsack;
pub mod reductions;
pub mod verify;

pub use caps::Caps;
pub use error::{Error, Result};
pub use graph::Graph;
pub use knapsack::{Solution, VkInstance};
