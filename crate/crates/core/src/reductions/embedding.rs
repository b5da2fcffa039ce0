use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A map `ψ` from the vertices of `source` to vertex sets of `target`.
///
/// Validity (connected images, touching images on source edges) is checked by
/// [`validate_embedding`], not enforced, so broken embeddings can be built
/// for testing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectedEmbedding {
    source: Graph,
    target: Graph,
    psi: Vec<Vec<usize>>,
}

/// Outcome of [`validate_embedding`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingCheck {
    pub valid: bool,
    /// `Δ(ψ) = max_x |V_x(ψ)|`.
    pub depth: usize,
    /// Where the first violation was found.
    pub diagnostic: Option<String>,
}

impl ConnectedEmbedding {
    pub fn new(source: Graph, target: Graph, psi: Vec<Vec<usize>>) -> Result<Self> {
        if psi.len() != source.vertex_count() {
            return Err(Error::Input(format!(
                "ψ has {} images for {} source vertices",
                psi.len(),
                source.vertex_count()
            )));
        }
        let psi = psi
            .into_iter()
            .map(|set| set.into_iter().collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        Ok(Self { source, target, psi })
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    /// `ψ(u)`, sorted.
    pub fn image(&self, u: usize) -> &[usize] {
        &self.psi[u]
    }

    pub fn images(&self) -> &[Vec<usize>] {
        &self.psi
    }

    /// `V_x(ψ)`: source vertices whose image contains `x`.
    pub fn preimage(&self, x: usize) -> Vec<usize> {
        (0..self.psi.len())
            .filter(|&u| self.psi[u].binary_search(&x).is_ok())
            .collect()
    }

    pub fn depth(&self) -> usize {
        let mut count = vec![0usize; self.target.vertex_count()];
        for set in &self.psi {
            for &x in set {
                if x < count.len() {
                    count[x] += 1;
                }
            }
        }
        count.into_iter().max().unwrap_or(0)
    }

    fn touch(&self, a: &[usize], b: &[usize]) -> bool {
        a.iter()
            .any(|&x| b.binary_search(&x).is_ok() || b.iter().any(|&y| self.target.has_edge(x, y)))
    }
}

/// Checks every image for nonemptiness and connectivity, and every source
/// edge for touching images.
pub fn validate_embedding(emb: &ConnectedEmbedding) -> EmbeddingCheck {
    let depth = emb.depth();
    let fail = |msg: String| EmbeddingCheck {
        valid: false,
        depth,
        diagnostic: Some(msg),
    };
    let h = emb.target.vertex_count();
    for (u, set) in emb.psi.iter().enumerate() {
        if set.is_empty() {
            return fail(format!("ψ({u}) is empty"));
        }
        if let Some(&x) = set.iter().find(|&&x| x >= h) {
            return fail(format!("ψ({u}) contains {x}, outside the target"));
        }
        if !emb.target.is_connected_subset(set) {
            return fail(format!("ψ({u}) = {set:?} does not induce a connected subgraph"));
        }
    }
    for &(u, v) in emb.source.edges() {
        if !emb.touch(&emb.psi[u], &emb.psi[v]) {
            return fail(format!("images of source edge ({u}, {v}) do not touch"));
        }
    }
    EmbeddingCheck {
        valid: true,
        depth,
        diagnostic: None,
    }
}

/// Embeds `g` into the 3-regular Möbius ladder on the largest even number of
/// vertices `N <= k`.
///
/// Source vertices are visited in BFS order; the `i`-th gets the one-vertex
/// arc `{i mod N}` of the ladder's Hamiltonian cycle. Then for each source
/// edge whose arcs do not touch, the arc of the later-placed endpoint grows
/// one cycle vertex at a time (in the direction needing fewer steps) until
/// they do. Arcs stay contiguous, hence connected, and only ever grow, so
/// earlier edges stay satisfied. The depth is whatever this produces.
pub fn simple_connected_embedding(g: &Graph, k: usize) -> Result<(Graph, ConnectedEmbedding)> {
    let n_target = if k % 2 == 0 { k } else { k.saturating_sub(1) };
    if n_target < 4 {
        return Err(Error::Construction(format!(
            "no simple 3-regular graph fits in {k} vertices"
        )));
    }
    let h = Graph::mobius_ladder(n_target)?;
    let order = g.bfs_order();
    let mut rank = vec![0usize; g.vertex_count()];
    // arcs[u] = (start, len) on the cycle 0 -> 1 -> ... -> N-1 -> 0
    let mut arcs = vec![(0usize, 1usize); g.vertex_count()];
    for (i, &u) in order.iter().enumerate() {
        rank[u] = i;
        arcs[u] = (i % n_target, 1);
    }
    let arc_set = |(start, len): (usize, usize)| -> Vec<usize> {
        let mut s: Vec<usize> = (0..len).map(|t| (start + t) % n_target).collect();
        s.sort_unstable();
        s
    };
    let touches = |a: &[usize], b: &[usize]| {
        a.iter()
            .any(|&x| b.binary_search(&x).is_ok() || b.iter().any(|&y| h.has_edge(x, y)))
    };
    for &(a, b) in g.edges() {
        let (fixed, grow) = if rank[a] < rank[b] { (a, b) } else { (b, a) };
        let target = arc_set(arcs[fixed]);
        if touches(&arc_set(arcs[grow]), &target) {
            continue;
        }
        let (start, len) = arcs[grow];
        let steps_to = |forward: bool| -> usize {
            (1..=n_target)
                .find(|&t| {
                    let arc = if forward {
                        (start, (len + t).min(n_target))
                    } else {
                        ((start + n_target * t - t) % n_target, (len + t).min(n_target))
                    };
                    touches(&arc_set(arc), &target)
                })
                .unwrap_or(n_target)
        };
        let fwd = steps_to(true);
        let back = steps_to(false);
        arcs[grow] = if fwd <= back {
            (start, (len + fwd).min(n_target))
        } else {
            ((start + n_target * back - back) % n_target, (len + back).min(n_target))
        };
    }
    let psi = arcs.iter().map(|&arc| arc_set(arc)).collect();
    let emb = ConnectedEmbedding::new(g.clone(), h.clone(), psi)?;
    Ok((h, emb))
}
