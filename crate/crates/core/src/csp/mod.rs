//! Constraint-problem models and their exact brute-force oracles.

mod assignment;
mod csp2;
mod gcsp;
mod rcsp;
mod sat;
mod search;

pub use assignment::PartialAssignment;
pub use csp2::Csp2Instance;
pub use gcsp::GcspInstance;
pub use rcsp::RcspInstance;
pub use sat::{Clause, Literal, SatInstance};

/// Which endpoint of an oriented edge `(u, v)` a projection belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// The smaller endpoint `u`.
    Tail,
    /// The larger endpoint `v`.
    Head,
}

impl Side {
    pub fn index(self) -> usize {
        match self {
            Side::Tail => 0,
            Side::Head => 1,
        }
    }

    /// The side of `edge` occupied by vertex `w`, if any.
    pub fn of(edge: (usize, usize), w: usize) -> Option<Side> {
        if edge.0 == w {
            Some(Side::Tail)
        } else if edge.1 == w {
            Some(Side::Head)
        } else {
            None
        }
    }
}
