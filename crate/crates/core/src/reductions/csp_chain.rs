//! 2-CSP → G-CSP (line graph) → R-CSP (sentinel symbols), with the solution
//! maps in both directions.

use crate::csp::{Csp2Instance, GcspInstance, PartialAssignment, RcspInstance, Side};
use crate::error::{input, precondition, Result};
use crate::graph::Graph;

/// `Δ(Γ)` for a 3-regular constraint graph `H`.
///
/// `L` has one vertex per edge of `H` (same index). Two `L`-vertices are
/// adjacent iff the `H`-edges share an endpoint. The alphabet of `L`-vertex
/// `x = (a, b)` is `X_x`, with the pair `(σ_a, σ_b)` encoded as the symbol
/// `σ_a·|Σ| + σ_b`. `Υ = Σ`, and an `L`-edge projects each endpoint's pair to
/// the coordinate of the shared `H`-vertex.
pub fn csp2_to_gcsp(gamma: &Csp2Instance) -> Result<GcspInstance> {
    let h = gamma.graph();
    if !h.is_regular(3) {
        return precondition("the constraint graph must be 3-regular");
    }
    let line = line_graph(h);
    let sigma = gamma.alphabet();
    let pairs: Vec<Vec<(usize, usize)>> = (0..h.edge_count()).map(|e| gamma.pairs(e)).collect();
    let alphabets = pairs
        .iter()
        .map(|ps| ps.iter().map(|&(a, b)| a * sigma + b).collect())
        .collect();
    let projections = line
        .edges()
        .iter()
        .map(|&(x, y)| {
            let shared = shared_vertex(h, x, y);
            [x, y].map(|z| {
                let side = Side::of(h.edge(z), shared).expect("shared vertex is an endpoint");
                pairs[z]
                    .iter()
                    .map(|&(a, b)| if side == Side::Tail { a } else { b })
                    .collect()
            })
        })
        .collect();
    GcspInstance::new(line, sigma * sigma, alphabets, sigma, projections)
}

/// The line graph of `h`, vertex `e` being edge `e` of `h`.
pub fn line_graph(h: &Graph) -> Graph {
    let mut edges = Vec::new();
    for v in 0..h.vertex_count() {
        let inc = h.incident_edges(v);
        for (i, &a) in inc.iter().enumerate() {
            for &b in &inc[i + 1..] {
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    Graph::new(h.edge_count(), edges).expect("a simple graph has a simple line graph")
}

fn shared_vertex(h: &Graph, x: usize, y: usize) -> usize {
    let (a, b) = h.edge(x);
    let (c, d) = h.edge(y);
    if a == c || a == d {
        a
    } else {
        debug_assert!(b == c || b == d);
        b
    }
}

/// The forward map: `φ(x) = (λ(a), λ(b))` when that pair satisfies edge `x`,
/// else ⊥.
pub fn gcsp_assignment_from_csp2(gamma: &Csp2Instance, lambda: &[usize]) -> Result<PartialAssignment> {
    let h = gamma.graph();
    if lambda.len() != h.vertex_count() || lambda.iter().any(|&s| s >= gamma.alphabet()) {
        return input("λ must be a total assignment over Σ");
    }
    let sigma = gamma.alphabet();
    Ok(PartialAssignment::new(
        h.edges()
            .iter()
            .enumerate()
            .map(|(e, &(a, b))| gamma.allows(e, lambda[a], lambda[b]).then(|| lambda[a] * sigma + lambda[b]))
            .collect(),
    ))
}

/// The backward map: `λ(v)` is read off the first assigned `H`-edge at `v`
/// (consistency makes every assigned incident edge agree), and is 0 when no
/// incident edge is assigned. Every assigned `H`-edge is satisfied by `λ`.
pub fn csp2_assignment_from_gcsp(gamma: &Csp2Instance, phi: &PartialAssignment) -> Result<Vec<usize>> {
    let h = gamma.graph();
    if phi.len() != h.edge_count() {
        return input("φ must assign the line-graph vertices");
    }
    let sigma = gamma.alphabet().max(1);
    Ok((0..h.vertex_count())
        .map(|v| {
            h.incident_edges(v)
                .iter()
                .find_map(|&e| {
                    let sym = phi.get(e)?;
                    let side = Side::of(h.edge(e), v)?;
                    Some(if side == Side::Tail { sym / sigma } else { sym % sigma })
                })
                .unwrap_or(0)
        })
        .collect())
}

/// `Π(Δ)` together with the dense indexing of `Σ = ∪_x Σ_x`.
#[derive(Debug, Clone)]
pub struct GcspReduction {
    pub instance: RcspInstance,
    /// `symbols[σ]` is the `Δ` symbol behind R-CSP symbol `σ`, increasing.
    pub symbols: Vec<usize>,
    /// `Υ` of `Δ`; values `upsilon + u` are the sentinels.
    pub upsilon: usize,
}

impl GcspReduction {
    /// The R-CSP symbol of `Δ`-symbol `s`, if used by some vertex.
    pub fn index_of(&self, s: usize) -> Option<usize> {
        self.symbols.binary_search(&s).ok()
    }

    /// `Δ`-solution to `Π(Δ)`-solution: identical values, reindexed.
    pub fn forward(&self, phi: &PartialAssignment) -> Result<PartialAssignment> {
        phi.values()
            .iter()
            .map(|v| match v {
                None => Ok(None),
                Some(s) => self
                    .index_of(*s)
                    .map(Some)
                    .ok_or_else(|| crate::Error::Input(format!("symbol {s} not used by Δ"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(PartialAssignment::new)
    }

    /// `Π(Δ)`-solution to `Δ`-solution: a symbol outside `Σ_x` is replaced
    /// by the first element of `Σ_x`. Size is preserved.
    pub fn backward(&self, delta: &GcspInstance, psi: &PartialAssignment) -> PartialAssignment {
        PartialAssignment::new(
            (0..psi.len())
                .map(|x| {
                    psi.get(x).map(|sigma| {
                        let s = self.symbols[sigma];
                        if delta.position(x, s).is_some() {
                            s
                        } else {
                            delta.alphabet(x)[0]
                        }
                    })
                })
                .collect(),
        )
    }
}

/// `Π(Δ)`: same graph, `Σ` the union of the vertex alphabets, and target set
/// `Υ ⊔ V(L)` where vertex `u` owns the sentinel `|Υ| + u`. A symbol outside
/// `Σ_u` projects to the sentinel of `u`, which nothing on the other side of
/// an edge can match.
pub fn gcsp_to_rcsp(delta: &GcspInstance) -> Result<GcspReduction> {
    let l = delta.graph();
    if l.max_degree() > 4 {
        return precondition("the G-CSP graph must have maximum degree at most 4");
    }
    let mut symbols: Vec<usize> = delta.alphabets().iter().flatten().copied().collect();
    symbols.sort_unstable();
    symbols.dedup();
    let upsilon = delta.upsilon();
    let projections = l
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            [(u, Side::Tail), (v, Side::Head)].map(|(w, side)| {
                symbols
                    .iter()
                    .map(|&s| delta.project(e, side, s).unwrap_or(upsilon + w))
                    .collect()
            })
        })
        .collect();
    let instance = RcspInstance::new(l.clone(), symbols.len(), upsilon + l.vertex_count(), projections)?;
    Ok(GcspReduction {
        instance,
        symbols,
        upsilon,
    })
}

/// `Π(Δ(Γ))` with both intermediate objects kept for solution mapping.
#[derive(Debug, Clone)]
pub struct Csp2Reduction {
    pub gcsp: GcspInstance,
    pub rcsp: GcspReduction,
}

impl Csp2Reduction {
    pub fn instance(&self) -> &RcspInstance {
        &self.rcsp.instance
    }

    /// Total 2-CSP assignment to a consistent R-CSP partial assignment whose
    /// size is the number of edges `λ` satisfies.
    pub fn forward(&self, gamma: &Csp2Instance, lambda: &[usize]) -> Result<PartialAssignment> {
        self.rcsp.forward(&gcsp_assignment_from_csp2(gamma, lambda)?)
    }

    /// Consistent R-CSP partial assignment of size `|E(H)| - t` to a 2-CSP
    /// assignment satisfying at least `|E(H)| - t` edges.
    pub fn backward(&self, gamma: &Csp2Instance, psi: &PartialAssignment) -> Result<Vec<usize>> {
        csp2_assignment_from_gcsp(gamma, &self.rcsp.backward(&self.gcsp, psi))
    }
}

pub fn csp2_to_rcsp(gamma: &Csp2Instance) -> Result<Csp2Reduction> {
    let gcsp = csp2_to_gcsp(gamma)?;
    let rcsp = gcsp_to_rcsp(&gcsp)?;
    Ok(Csp2Reduction { gcsp, rcsp })
}
