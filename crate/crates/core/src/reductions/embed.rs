//! R-CSP to VK with `F` vertex/edge constraints packed into each pair of
//! dimensions as base-`Q` digits, topped by a counting digit `M = Q^{2F}`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::csp::{PartialAssignment, RcspInstance, Side};
use crate::error::{input, precondition, Error, Result};
use crate::knapsack::{Solution, VkInstance};

use super::simple::{item_index, item_pair};

/// A vertex constraint or an edge constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    Vertex(usize),
    Edge(usize),
}

/// Everything the construction decided, for auditing and for extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedArtifacts {
    /// Chunk size `F`.
    pub f: usize,
    /// `D_1, …, D_r`: vertices in index order, then edges in order, cut into
    /// consecutive blocks of `F`.
    pub chunks: Vec<Vec<Constraint>>,
    /// `J(ℓ, v)`: constraints of chunk `ℓ` that involve `v`.
    pub j: Vec<Vec<usize>>,
    /// `N_ℓ = Σ_v J(ℓ, v)`.
    pub n: Vec<usize>,
    /// `Q = 3·F²·m·|V|·|Σ|`.
    pub q: BigUint,
    /// `M = Q^{2F}`.
    pub m_big: BigUint,
    chunk_of_vertex: Vec<usize>,
    chunk_of_edge: Vec<usize>,
}

impl EmbedArtifacts {
    /// `r`, the number of chunks.
    pub fn chunk_count(&self) -> usize {
        self.chunks.len()
    }

    /// `ord_ℓ(j)`: 1-based position of `j` inside its chunk.
    pub fn ord(&self, chunk: usize, j: Constraint) -> Option<usize> {
        self.chunks[chunk].iter().position(|&c| c == j).map(|p| p + 1)
    }

    pub fn chunk_of(&self, j: Constraint) -> usize {
        match j {
            Constraint::Vertex(v) => self.chunk_of_vertex[v],
            Constraint::Edge(e) => self.chunk_of_edge[e],
        }
    }

    /// `Σ_{(v,σ) ∈ S} J(ℓ, v)`.
    pub fn chunk_count_of(&self, pi: &RcspInstance, chunk: usize, s: &Solution) -> usize {
        s.items().iter().map(|&i| self.j[chunk][item_pair(pi, i).0]).sum()
    }

    /// Chunks whose count reaches `N_ℓ` under `S`.
    pub fn tight_chunks(&self, pi: &RcspInstance, s: &Solution) -> Vec<usize> {
        (0..self.chunk_count())
            .filter(|&l| self.chunk_count_of(pi, l, s) == self.n[l])
            .collect()
    }
}

/// `w_j((v, σ))`: `m` on the vertex's own constraint, `π_{e,v}(σ)` when `v`
/// is the first endpoint of `e`, `m - π_{e,v}(σ)` when it is the second,
/// and 0 otherwise. Projection values are taken in `{1, …, m}`.
pub fn constraint_weight(pi: &RcspInstance, j: Constraint, v: usize, sigma: usize) -> u64 {
    let m = pi.upsilon() as u64;
    match j {
        Constraint::Vertex(x) if x == v => m,
        Constraint::Vertex(_) => 0,
        Constraint::Edge(e) => match Side::of(pi.graph().edge(e), v) {
            Some(Side::Tail) => pi.project_value(e, Side::Tail, sigma),
            Some(Side::Head) => m - pi.project_value(e, Side::Head, sigma),
            None => 0,
        },
    }
}

/// `w_j(S)`.
pub fn constraint_load(pi: &RcspInstance, j: Constraint, s: &Solution) -> u64 {
    s.items()
        .iter()
        .map(|&i| {
            let (v, sigma) = item_pair(pi, i);
            constraint_weight(pi, j, v, sigma)
        })
        .sum()
}

pub fn rcsp_to_vk_embed(pi: &RcspInstance, f: usize) -> Result<(VkInstance, EmbedArtifacts)> {
    let g = pi.graph();
    let nv = g.vertex_count();
    if !g.is_regular(3) {
        return precondition("the constraint graph must be 3-regular");
    }
    if f == 0 {
        return precondition("F must be at least 1");
    }
    let order: Vec<Constraint> = (0..nv)
        .map(Constraint::Vertex)
        .chain((0..g.edge_count()).map(Constraint::Edge))
        .collect();
    let chunks: Vec<Vec<Constraint>> = order.chunks(f).map(<[Constraint]>::to_vec).collect();
    let r = chunks.len();
    let mut chunk_of_vertex = vec![0; nv];
    let mut chunk_of_edge = vec![0; g.edge_count()];
    let mut j = vec![vec![0usize; nv]; r];
    for (l, chunk) in chunks.iter().enumerate() {
        for &c in chunk {
            match c {
                Constraint::Vertex(v) => {
                    chunk_of_vertex[v] = l;
                    j[l][v] += 1;
                }
                Constraint::Edge(e) => {
                    chunk_of_edge[e] = l;
                    let (a, b) = g.edge(e);
                    j[l][a] += 1;
                    j[l][b] += 1;
                }
            }
        }
    }
    let n: Vec<usize> = j.iter().map(|row| row.iter().sum()).collect();

    let sigma = pi.alphabet();
    let m = pi.upsilon();
    let q = BigUint::from(3u8) * BigUint::from(f) * BigUint::from(f) * BigUint::from(m)
        * BigUint::from(nv) * BigUint::from(sigma);
    let m_big = q.pow(2 * f as u32);
    // powers[t] = Q^t for t in 0..=F
    let mut powers = vec![BigUint::one()];
    for t in 1..=f {
        powers.push(&powers[t - 1] * &q);
    }

    let items = nv * sigma;
    let mut costs = vec![vec![BigUint::zero(); 2 * r]; items];
    let mut profits = vec![0u64; items];
    for v in 0..nv {
        for s in 0..sigma {
            let i = item_index(pi, v, s);
            profits[i] = (0..r).map(|l| j[l][v] as u64).sum();
            for l in 0..r {
                if j[l][v] == 0 {
                    continue;
                }
                let mut c1 = BigUint::zero();
                for (pos, &c) in chunks[l].iter().enumerate() {
                    let w = constraint_weight(pi, c, v, s);
                    if w > 0 {
                        c1 += &powers[pos + 1] * w;
                    }
                }
                costs[i][2 * l + 1] = &m_big * j[l][v] - &c1;
                costs[i][2 * l] = c1;
            }
        }
    }
    let mut budget = Vec::with_capacity(2 * r);
    for l in 0..r {
        let b1: BigUint = (1..=chunks[l].len()).map(|t| &powers[t] * m).sum();
        let b2 = &m_big * n[l] - &b1;
        budget.push(b1);
        budget.push(b2);
    }
    let vk = VkInstance::new(profits, costs, budget)?;
    Ok((
        vk,
        EmbedArtifacts {
            f,
            chunks,
            j,
            n,
            q,
            m_big,
            chunk_of_vertex,
            chunk_of_edge,
        },
    ))
}

/// `S = {(v, φ(v))}` for a total consistent `φ`; profit `|V| + 2|E|`.
pub fn embed_solution_from_assignment(pi: &RcspInstance, phi: &PartialAssignment) -> Result<Solution> {
    if !phi.is_total() {
        return precondition("φ must be total");
    }
    if !pi.is_consistent(phi)? {
        return precondition("φ is not consistent");
    }
    Ok(Solution::new(
        (0..phi.len()).map(|v| item_index(pi, v, phi.get(v).expect("total"))),
    ))
}

/// Keeps the vertices whose own constraint and incident edge constraints all
/// sit in tight chunks; each such vertex has exactly one chosen item.
pub fn embed_extract(
    pi: &RcspInstance,
    target: &VkInstance,
    artifacts: &EmbedArtifacts,
    s: &Solution,
) -> Result<PartialAssignment> {
    if !target.check_feasible(s)? {
        return precondition("solution is infeasible");
    }
    let g = pi.graph();
    let tight = artifacts.tight_chunks(pi, s);
    let is_tight = |c: Constraint| tight.binary_search(&artifacts.chunk_of(c)).is_ok();
    let mut chosen: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for &i in s.items() {
        let (v, sigma) = item_pair(pi, i);
        chosen[v].push(sigma);
    }
    let mut values = vec![None; g.vertex_count()];
    for v in 0..g.vertex_count() {
        let inside = is_tight(Constraint::Vertex(v))
            && g.incident_edges(v).iter().all(|&e| is_tight(Constraint::Edge(e)));
        if !inside {
            continue;
        }
        match chosen[v].as_slice() {
            [sigma] => values[v] = Some(*sigma),
            other => {
                return Err(Error::Construction(format!(
                    "vertex {v} lies in tight chunks but has {} chosen items",
                    other.len()
                )))
            }
        }
    }
    Ok(PartialAssignment::new(values))
}

/// `|V| - 2·q·F` with `q = |V| + 2|E| - p(S)`, clamped at 0.
pub fn embed_size_bound(pi: &RcspInstance, f: usize, profit: u64) -> Result<usize> {
    let g = pi.graph();
    let full = (g.vertex_count() + 2 * g.edge_count()) as u64;
    if profit > full {
        return input(format!("profit {profit} exceeds |V| + 2|E| = {full}"));
    }
    let deficit = (full - profit) as usize;
    Ok(g.vertex_count().saturating_sub(2 * deficit * f))
}
