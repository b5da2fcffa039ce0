//! 3-SAT to R-CSP: every constraint vertex `x` carries a clause set `C_x`
//! and picks a satisfying assignment of `var(C_x)`; adjacent vertices must
//! agree on shared variables.

use crate::caps::Caps;
use crate::csp::{PartialAssignment, RcspInstance, SatInstance};
use crate::error::{cap, input, Error, Result};
use crate::graph::Graph;

use super::clause_graph::build_clause_conflict_graph;
use super::disperser::{build_disperser, Disperser};
use super::embedding::{simple_connected_embedding, validate_embedding, ConnectedEmbedding, EmbeddingCheck};

/// The R-CSP instance together with the decoding tables.
///
/// Symbol `σ < |Φ_x|` at vertex `x` is the `σ`-th satisfying assignment of
/// `var(C_x)` in lexicographic order (first variable most significant).
/// Every other symbol maps to the sentinel of `x` on all incident edges.
/// Υ holds the `2^s` bit-packings of assignments to the largest shared
/// variable set (bit `k` is the `k`-th shared variable in increasing order),
/// followed by one sentinel `2^s + x` per vertex.
#[derive(Debug, Clone)]
pub struct SatReduction {
    pub instance: RcspInstance,
    /// `var(C_x)`, sorted.
    pub vars: Vec<Vec<usize>>,
    /// `Φ_x`: values of `vars[x]` for each member, in symbol order.
    pub phis: Vec<Vec<Vec<bool>>>,
    /// Vertices whose clause set is unsatisfiable.
    pub warnings: Vec<String>,
}

impl SatReduction {
    /// Projects a satisfying assignment of the formula onto every vertex. A
    /// vertex whose clauses `s` does not satisfy gets ⊥.
    pub fn project_assignment(&self, s: &[bool]) -> Result<PartialAssignment> {
        let mut values = Vec::with_capacity(self.vars.len());
        for (x, vars) in self.vars.iter().enumerate() {
            if let Some(&v) = vars.iter().find(|&&v| v >= s.len()) {
                return input(format!("assignment does not cover variable {v}"));
            }
            let restricted: Vec<bool> = vars.iter().map(|&v| s[v]).collect();
            values.push(self.phis[x].iter().position(|g| *g == restricted));
        }
        Ok(PartialAssignment::new(values))
    }

    /// The variable assignment encoded by symbol `sigma` at vertex `x`.
    pub fn decode(&self, x: usize, sigma: usize) -> Option<Vec<(usize, bool)>> {
        self.phis[x]
            .get(sigma)
            .map(|g| self.vars[x].iter().copied().zip(g.iter().copied()).collect())
    }
}

/// Builds `Π(φ, H, 𝒞)` for clause sets `clause_sets[x] ⊆ clauses(φ)`.
pub fn sat_to_rcsp(phi: &SatInstance, h: &Graph, clause_sets: &[Vec<usize>], caps: &Caps) -> Result<SatReduction> {
    if clause_sets.len() != h.vertex_count() {
        return input(format!(
            "{} clause sets for {} vertices",
            clause_sets.len(),
            h.vertex_count()
        ));
    }
    let mut vars = Vec::with_capacity(clause_sets.len());
    let mut phis = Vec::with_capacity(clause_sets.len());
    let mut warnings = Vec::new();
    for (x, set) in clause_sets.iter().enumerate() {
        if let Some(&c) = set.iter().find(|&&c| c >= phi.clause_count()) {
            return input(format!("clause {c} in C_{x} does not exist"));
        }
        let mut vx: Vec<usize> = set.iter().flat_map(|&c| phi.clause_vars(c)).collect();
        vx.sort_unstable();
        vx.dedup();
        let t = vx.len();
        if t >= 64 || (1u128 << t) > caps.enumeration {
            return cap("assignments of var(C_x)", format!("2^{t}"), caps.enumeration);
        }
        let mut members = Vec::new();
        let mut full = vec![false; phi.variables()];
        for a in 0u64..(1u64 << t) {
            let g: Vec<bool> = (0..t).map(|k| a >> (t - 1 - k) & 1 == 1).collect();
            for (&v, &b) in vx.iter().zip(&g) {
                full[v] = b;
            }
            if set.iter().all(|&c| phi.clause_satisfied(c, &full)) {
                members.push(g);
            }
        }
        if members.is_empty() {
            warnings.push(format!("C_{x} is unsatisfiable; vertex {x} has no consistent symbol"));
        }
        vars.push(vx);
        phis.push(members);
    }

    let alphabet = phis.iter().map(Vec::len).max().unwrap_or(0).max(1);
    let shared: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .map(|&(x, y)| vars[x].iter().copied().filter(|v| vars[y].binary_search(v).is_ok()).collect())
        .collect();
    let s_max = shared.iter().map(Vec::len).max().unwrap_or(0);
    if s_max >= 64 || (1u128 << s_max) > caps.enumeration {
        return cap("packed shared assignments", format!("2^{s_max}"), caps.enumeration);
    }
    let packed_values = 1usize << s_max;
    let upsilon = packed_values + h.vertex_count();

    let project = |x: usize, shared: &[usize], sigma: usize| -> usize {
        match phis[x].get(sigma) {
            Some(g) => shared.iter().enumerate().fold(0usize, |acc, (k, v)| {
                let pos = vars[x].binary_search(v).expect("shared variable belongs to var(C_x)");
                acc | (usize::from(g[pos]) << k)
            }),
            None => packed_values + x,
        }
    };
    let projections = h
        .edges()
        .iter()
        .zip(&shared)
        .map(|(&(x, y), sh)| {
            [
                (0..alphabet).map(|s| project(x, sh, s)).collect(),
                (0..alphabet).map(|s| project(y, sh, s)).collect(),
            ]
        })
        .collect();
    let instance = RcspInstance::new(h.clone(), alphabet, upsilon, projections)?;
    Ok(SatReduction {
        instance,
        vars,
        phis,
        warnings,
    })
}

/// Output of [`sat_to_rcsp_embedding_route`].
#[derive(Debug, Clone)]
pub struct EmbeddingRoute {
    pub reduction: SatReduction,
    pub clause_graph: Graph,
    pub embedding: ConnectedEmbedding,
    pub check: EmbeddingCheck,
}

/// Clause-conflict graph, embedded into a 3-regular graph on at most `k`
/// vertices, with `C_x = V_x(ψ)`.
pub fn sat_to_rcsp_embedding_route(phi: &SatInstance, k: usize, caps: &Caps) -> Result<EmbeddingRoute> {
    let clause_graph = build_clause_conflict_graph(phi);
    let (h, embedding) = simple_connected_embedding(&clause_graph, k)?;
    let check = validate_embedding(&embedding);
    if !check.valid {
        return Err(Error::Construction(format!(
            "embedding failed validation: {}",
            check.diagnostic.clone().unwrap_or_default()
        )));
    }
    let clause_sets: Vec<Vec<usize>> = (0..h.vertex_count()).map(|x| embedding.preimage(x)).collect();
    let reduction = sat_to_rcsp(phi, &h, &clause_sets, caps)?;
    Ok(EmbeddingRoute {
        reduction,
        clause_graph,
        embedding,
        check,
    })
}

/// Output of [`sat_to_rcsp_disperser_route`].
#[derive(Debug, Clone)]
pub struct DisperserRoute {
    pub reduction: SatReduction,
    pub disperser: Disperser,
}

/// `H = K_k` with the clause sets drawn from an `(m, k, ℓ, r)`-disperser over
/// the clauses, `ℓ = min(m, ⌈3m / (εr)⌉)`.
pub fn sat_to_rcsp_disperser_route(
    phi: &SatInstance,
    k: usize,
    r: usize,
    epsilon: f64,
    seed: u64,
    caps: &Caps,
) -> Result<DisperserRoute> {
    if epsilon <= 0.0 {
        return input("the disperser route needs ε > 0");
    }
    let m = phi.clause_count();
    let l = ((3.0 * m as f64) / (epsilon * r.max(1) as f64)).ceil() as usize;
    let disperser = build_disperser(m, k, l.min(m), r, epsilon, seed, caps)?;
    let reduction = sat_to_rcsp(phi, &Graph::complete(k), disperser.sets(), caps)?;
    Ok(DisperserRoute { reduction, disperser })
}
