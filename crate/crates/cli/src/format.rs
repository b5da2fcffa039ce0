//! JSON instance files. Each document carries a `"kind"` tag. VK costs and
//! budgets are decimal strings so they survive any JSON reader; R-CSP and
//! G-CSP projection values are written 1-based, matching `Υ = {1, …, m}`.

use std::str::FromStr;

use anyhow::{anyhow, Result};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use dimknap_core::csp::{Clause, Csp2Instance, GcspInstance, Literal, RcspInstance, SatInstance};
use dimknap_core::reductions::{Constraint, EmbedArtifacts};
use dimknap_core::{Error, Graph, VkInstance};

/// Bad file contents count as usage errors.
fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Error::Input(msg.into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InstanceFile {
    Sat(SatFile),
    Csp2(Csp2File),
    Rcsp(RcspFile),
    Gcsp(GcspFile),
    Vk(VkFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatFile {
    pub variables: usize,
    pub occurrence_bound: usize,
    /// DIMACS literals: `v+1` or `-(v+1)`.
    pub clauses: Vec<[i64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Csp2File {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub alphabet: usize,
    pub constraints: Vec<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RcspFile {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub alphabet: usize,
    pub upsilon: usize,
    pub projections: Vec<[Vec<usize>; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcspFile {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub symbols: usize,
    pub alphabets: Vec<Vec<usize>>,
    pub upsilon: usize,
    pub projections: Vec<[Vec<usize>; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VkFile {
    pub profits: Vec<u64>,
    pub costs: Vec<Vec<String>>,
    pub budget: Vec<String>,
}

fn one_based(maps: &[[Vec<usize>; 2]]) -> Vec<[Vec<usize>; 2]> {
    maps.iter()
        .map(|pair| pair.clone().map(|m| m.into_iter().map(|x| x + 1).collect()))
        .collect()
}

fn zero_based(maps: &[[Vec<usize>; 2]]) -> Result<Vec<[Vec<usize>; 2]>> {
    maps.iter()
        .map(|pair| {
            let [a, b] = pair;
            let shift = |m: &Vec<usize>| -> Result<Vec<usize>> {
                m.iter()
                    .map(|&x| x.checked_sub(1).ok_or_else(|| usage("projection values are 1-based")))
                    .collect()
            };
            Ok([shift(a)?, shift(b)?])
        })
        .collect()
}

fn parse_big(s: &str) -> Result<BigUint> {
    BigUint::from_str(s).map_err(|_| usage(format!("{s:?} is not a nonnegative decimal integer")))
}

impl From<&SatInstance> for SatFile {
    fn from(phi: &SatInstance) -> Self {
        Self {
            variables: phi.variables(),
            occurrence_bound: phi.occurrence_bound(),
            clauses: phi.clauses().iter().map(|c| c.map(Literal::to_dimacs)).collect(),
        }
    }
}

impl SatFile {
    pub fn to_instance(&self) -> Result<SatInstance> {
        let clauses = self
            .clauses
            .iter()
            .map(|c| -> Result<Clause> {
                let [a, b, c] = *c;
                Ok([Literal::from_dimacs(a)?, Literal::from_dimacs(b)?, Literal::from_dimacs(c)?])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SatInstance::new(self.variables, clauses, self.occurrence_bound)?)
    }
}

impl From<&Csp2Instance> for Csp2File {
    fn from(gamma: &Csp2Instance) -> Self {
        let g = gamma.graph();
        Self {
            vertices: g.vertex_count(),
            edges: g.edges().to_vec(),
            alphabet: gamma.alphabet(),
            constraints: (0..g.edge_count()).map(|e| gamma.pairs(e)).collect(),
        }
    }
}

fn graph_of(vertices: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    let g = Graph::new(vertices, edges.iter().copied())?;
    if g.edges() != edges {
        return Err(usage("edges must be listed as (min, max) pairs in increasing order"));
    }
    Ok(g)
}

impl Csp2File {
    pub fn to_instance(&self) -> Result<Csp2Instance> {
        let g = graph_of(self.vertices, &self.edges)?;
        Ok(Csp2Instance::new(g, self.alphabet, self.constraints.clone())?)
    }
}

impl From<&RcspInstance> for RcspFile {
    fn from(pi: &RcspInstance) -> Self {
        let g = pi.graph();
        Self {
            vertices: g.vertex_count(),
            edges: g.edges().to_vec(),
            alphabet: pi.alphabet(),
            upsilon: pi.upsilon(),
            projections: one_based(pi.projections()),
        }
    }
}

impl RcspFile {
    pub fn to_instance(&self) -> Result<RcspInstance> {
        let g = graph_of(self.vertices, &self.edges)?;
        Ok(RcspInstance::new(g, self.alphabet, self.upsilon, zero_based(&self.projections)?)?)
    }
}

impl From<&GcspInstance> for GcspFile {
    fn from(delta: &GcspInstance) -> Self {
        let g = delta.graph();
        Self {
            vertices: g.vertex_count(),
            edges: g.edges().to_vec(),
            symbols: delta.symbols(),
            alphabets: delta.alphabets().to_vec(),
            upsilon: delta.upsilon(),
            projections: one_based(delta.projections()),
        }
    }
}

impl GcspFile {
    pub fn to_instance(&self) -> Result<GcspInstance> {
        let g = graph_of(self.vertices, &self.edges)?;
        Ok(GcspInstance::new(
            g,
            self.symbols,
            self.alphabets.clone(),
            self.upsilon,
            zero_based(&self.projections)?,
        )?)
    }
}

impl From<&VkInstance> for VkFile {
    fn from(inst: &VkInstance) -> Self {
        Self {
            profits: inst.profits().to_vec(),
            costs: inst
                .costs()
                .iter()
                .map(|c| c.iter().map(ToString::to_string).collect())
                .collect(),
            budget: inst.budget().iter().map(ToString::to_string).collect(),
        }
    }
}

impl VkFile {
    pub fn to_instance(&self) -> Result<VkInstance> {
        let costs = self
            .costs
            .iter()
            .map(|c| c.iter().map(|s| parse_big(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let budget = self.budget.iter().map(|s| parse_big(s)).collect::<Result<Vec<_>>>()?;
        Ok(VkInstance::new(self.profits.clone(), costs, budget)?)
    }
}

impl InstanceFile {
    pub fn kind(&self) -> &'static str {
        match self {
            InstanceFile::Sat(_) => "sat",
            InstanceFile::Csp2(_) => "csp2",
            InstanceFile::Rcsp(_) => "rcsp",
            InstanceFile::Gcsp(_) => "gcsp",
            InstanceFile::Vk(_) => "vk",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: InstanceFile =
            serde_json::from_str(text).map_err(|e| usage(format!("malformed instance file: {e}")))?;
        file.validate()?;
        Ok(file)
    }

    /// Builds the in-memory instance once, so bad files fail at read time.
    pub fn validate(&self) -> Result<()> {
        match self {
            InstanceFile::Sat(f) => f.to_instance().map(drop),
            InstanceFile::Csp2(f) => f.to_instance().map(drop),
            InstanceFile::Rcsp(f) => f.to_instance().map(drop),
            InstanceFile::Gcsp(f) => f.to_instance().map(drop),
            InstanceFile::Vk(f) => f.to_instance().map(drop),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance files serialize");
        s.push('\n');
        s
    }

    pub fn expect_sat(&self) -> Result<SatInstance> {
        match self {
            InstanceFile::Sat(f) => f.to_instance(),
            other => Err(usage(format!("expected a sat instance, got {}", other.kind()))),
        }
    }

    pub fn expect_csp2(&self) -> Result<Csp2Instance> {
        match self {
            InstanceFile::Csp2(f) => f.to_instance(),
            other => Err(usage(format!("expected a csp2 instance, got {}", other.kind()))),
        }
    }

    pub fn expect_rcsp(&self) -> Result<RcspInstance> {
        match self {
            InstanceFile::Rcsp(f) => f.to_instance(),
            other => Err(usage(format!("expected an rcsp instance, got {}", other.kind()))),
        }
    }

    pub fn expect_vk(&self) -> Result<VkInstance> {
        match self {
            InstanceFile::Vk(f) => f.to_instance(),
            other => Err(usage(format!("expected a vk instance, got {}", other.kind()))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkEntry {
    /// `"v<index>"` or `"e<index>"`.
    pub constraint: String,
    pub ord: usize,
}

/// Audit record for the dimension-embedding reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtifactsFile {
    pub kind: String,
    pub f: usize,
    pub chunks: Vec<Vec<ChunkEntry>>,
    /// `J(ℓ, v)` per chunk and vertex.
    pub j: Vec<Vec<usize>>,
    /// `N_ℓ` per chunk.
    pub n: Vec<usize>,
    pub q: String,
    pub m: String,
}

impl From<&EmbedArtifacts> for ArtifactsFile {
    fn from(a: &EmbedArtifacts) -> Self {
        let name = |c: &Constraint| match c {
            Constraint::Vertex(v) => format!("v{v}"),
            Constraint::Edge(e) => format!("e{e}"),
        };
        Self {
            kind: "embed-artifacts".to_string(),
            f: a.f,
            chunks: a
                .chunks
                .iter()
                .map(|chunk| {
                    chunk
                        .iter()
                        .enumerate()
                        .map(|(k, c)| ChunkEntry {
                            constraint: name(c),
                            ord: k + 1,
                        })
                        .collect()
                })
                .collect(),
            j: a.j.clone(),
            n: a.n.clone(),
            q: a.q.to_string(),
            m: a.m_big.to_string(),
        }
    }
}
