//! Reductions between the constraint problems and into multidimensional
//! knapsack, with forward (completeness) and backward (soundness) solution
//! maps.

mod certificate;
mod clause_graph;
mod csp_chain;
mod digits;
mod disperser;
mod embed;
mod embedding;
mod sat_rcsp;
mod simple;

pub use certificate::{Direction, ReductionCertificate, Relation};
pub use clause_graph::build_clause_conflict_graph;
pub use csp_chain::{
    csp2_assignment_from_gcsp, csp2_to_gcsp, csp2_to_rcsp, gcsp_assignment_from_csp2, gcsp_to_rcsp, line_graph,
    Csp2Reduction, GcspReduction,
};
pub use digits::verify_base_q_digits;
pub use disperser::{build_disperser, Disperser, DISPERSER_RETRIES};
pub use embed::{
    constraint_load, constraint_weight, embed_extract, embed_size_bound, embed_solution_from_assignment,
    rcsp_to_vk_embed, Constraint, EmbedArtifacts,
};
pub use embedding::{simple_connected_embedding, validate_embedding, ConnectedEmbedding, EmbeddingCheck};
pub use sat_rcsp::{
    sat_to_rcsp, sat_to_rcsp_disperser_route, sat_to_rcsp_embedding_route, DisperserRoute, EmbeddingRoute,
    SatReduction,
};
pub use simple::{
    edge_dimension, item_index, item_pair, rcsp_to_vk_simple, simple_extract, simple_solution_from_assignment,
};

use crate::csp::{PartialAssignment, RcspInstance};
use crate::error::Result;
use crate::knapsack::Solution;

/// Which R-CSP → VK reduction a solution map refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Simple,
    /// The dimension-embedding reduction with chunk size `F`.
    Embed(usize),
}

/// `S = {(v, φ(v))}`. The simple variant accepts any consistent `φ`; the
/// embed variant needs `φ` total.
pub fn vk_solution_from_assignment(pi: &RcspInstance, phi: &PartialAssignment, variant: Variant) -> Result<Solution> {
    match variant {
        Variant::Simple => simple_solution_from_assignment(pi, phi),
        Variant::Embed(_) => embed_solution_from_assignment(pi, phi),
    }
}

/// Rebuilds the target instance and extracts a consistent partial
/// assignment from a feasible solution of it.
pub fn extract_partial_assignment(pi: &RcspInstance, variant: Variant, s: &Solution) -> Result<PartialAssignment> {
    match variant {
        Variant::Simple => simple_extract(pi, &rcsp_to_vk_simple(pi), s),
        Variant::Embed(f) => {
            let (vk, artifacts) = rcsp_to_vk_embed(pi, f)?;
            embed_extract(pi, &vk, &artifacts, s)
        }
    }
}
