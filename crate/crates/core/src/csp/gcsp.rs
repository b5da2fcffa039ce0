use crate::caps::Caps;
use crate::error::{cap, input, Result};
use crate::graph::Graph;

use super::search::max_consistent_partial;
use super::{PartialAssignment, Side};

/// A rectangular 2-CSP with a separate alphabet per vertex.
///
/// Symbols are drawn from a shared universe `0..symbols`; vertex `x` may only
/// take symbols from its sorted alphabet `Σ_x`. Projections of edge `e` are
/// indexed by position inside the endpoint's alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GcspInstance {
    graph: Graph,
    symbols: usize,
    alphabets: Vec<Vec<usize>>,
    upsilon: usize,
    projections: Vec<[Vec<usize>; 2]>,
}

impl GcspInstance {
    pub fn new(
        graph: Graph,
        symbols: usize,
        mut alphabets: Vec<Vec<usize>>,
        upsilon: usize,
        projections: Vec<[Vec<usize>; 2]>,
    ) -> Result<Self> {
        if alphabets.len() != graph.vertex_count() {
            return input(format!(
                "{} alphabets for {} vertices",
                alphabets.len(),
                graph.vertex_count()
            ));
        }
        for (x, sigma) in alphabets.iter_mut().enumerate() {
            if sigma.is_empty() {
                return input(format!("alphabet of vertex {x} is empty"));
            }
            sigma.sort_unstable();
            if sigma.windows(2).any(|w| w[0] == w[1]) {
                return input(format!("alphabet of vertex {x} repeats a symbol"));
            }
            if *sigma.last().unwrap() >= symbols {
                return input(format!("alphabet of vertex {x} leaves the symbol universe"));
            }
        }
        if projections.len() != graph.edge_count() {
            return input(format!(
                "{} projection pairs for {} edges",
                projections.len(),
                graph.edge_count()
            ));
        }
        for (e, pair) in projections.iter().enumerate() {
            let (u, v) = graph.edge(e);
            for (map, w) in pair.iter().zip([u, v]) {
                if map.len() != alphabets[w].len() {
                    return input(format!("projection on edge {e} is not total on Σ_{w}"));
                }
                if map.iter().any(|&y| y >= upsilon) {
                    return input(format!("projection value on edge {e} outside Υ"));
                }
            }
        }
        Ok(Self {
            graph,
            symbols,
            alphabets,
            upsilon,
            projections,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Size of the shared symbol universe.
    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn alphabet(&self, x: usize) -> &[usize] {
        &self.alphabets[x]
    }

    pub fn alphabets(&self) -> &[Vec<usize>] {
        &self.alphabets
    }

    pub fn upsilon(&self) -> usize {
        self.upsilon
    }

    pub fn projections(&self) -> &[[Vec<usize>; 2]] {
        &self.projections
    }

    /// Position of `symbol` in `Σ_x`, if present.
    pub fn position(&self, x: usize, symbol: usize) -> Option<usize> {
        self.alphabets[x].binary_search(&symbol).ok()
    }

    /// `π_{e,side}(symbol)`; `None` when the symbol is outside the endpoint's alphabet.
    pub fn project(&self, e: usize, side: Side, symbol: usize) -> Option<usize> {
        let (u, v) = self.graph.edge(e);
        let w = match side {
            Side::Tail => u,
            Side::Head => v,
        };
        self.position(w, symbol).map(|p| self.projections[e][side.index()][p])
    }

    pub fn edge_satisfied(&self, e: usize, at_tail: usize, at_head: usize) -> bool {
        match (
            self.project(e, Side::Tail, at_tail),
            self.project(e, Side::Head, at_head),
        ) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    /// Errors if some assigned symbol lies outside its vertex's alphabet.
    pub fn gcsp_is_consistent(&self, phi: &PartialAssignment) -> Result<bool> {
        if phi.len() != self.graph.vertex_count() {
            return input(format!(
                "assignment has {} entries for {} vertices",
                phi.len(),
                self.graph.vertex_count()
            ));
        }
        for x in 0..phi.len() {
            if let Some(s) = phi.get(x) {
                if self.position(x, s).is_none() {
                    return input(format!("symbol {s} at vertex {x} is outside Σ_{x}"));
                }
            }
        }
        Ok(self.graph.edges().iter().enumerate().all(|(e, &(u, v))| {
            match (phi.get(u), phi.get(v)) {
                (Some(a), Some(b)) => self.edge_satisfied(e, a, b),
                _ => true,
            }
        }))
    }

    pub fn gcsp_par_bruteforce(&self, caps: &Caps) -> Result<(usize, PartialAssignment)> {
        let mut space: u128 = 1;
        for sigma in &self.alphabets {
            space = space.saturating_mul(sigma.len() as u128 + 1);
        }
        if space > caps.enumeration {
            return cap("G-CSP partial assignments", space, caps.enumeration);
        }
        Ok(max_consistent_partial(&self.graph, &self.alphabets, |e, a, b| {
            self.edge_satisfied(e, a, b)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cases() {
        let caps = Caps::default();
        let single = GcspInstance::new(Graph::empty(1), 4, vec![vec![3]], 1, vec![]).unwrap();
        assert!(single.gcsp_is_consistent(&PartialAssignment::unassigned(1)).unwrap());
        assert_eq!(single.gcsp_par_bruteforce(&caps).unwrap().0, 1);
    }

    #[test]
    fn disjoint_images_allow_one_vertex() {
        let delta = GcspInstance::new(
            Graph::path(2),
            4,
            vec![vec![0, 1], vec![2, 3]],
            4,
            vec![[vec![0, 1], vec![2, 3]]],
        )
        .unwrap();
        let (par, witness) = delta.gcsp_par_bruteforce(&Caps::default()).unwrap();
        assert_eq!(par, 1);
        assert!(delta.gcsp_is_consistent(&witness).unwrap());
    }

    #[test]
    fn symbols_outside_alphabet_rejected() {
        let delta = GcspInstance::new(
            Graph::path(2),
            4,
            vec![vec![0, 1], vec![2, 3]],
            2,
            vec![[vec![0, 1], vec![0, 1]]],
        )
        .unwrap();
        assert!(delta.gcsp_is_consistent(&PartialAssignment::total(&[2, 2])).is_err());
        assert!(delta.gcsp_is_consistent(&PartialAssignment::total(&[1, 3])).unwrap());
        assert!(!delta.gcsp_is_consistent(&PartialAssignment::total(&[1, 2])).unwrap());
    }

    #[test]
    fn empty_alphabet_rejected() {
        assert!(GcspInstance::new(Graph::empty(1), 2, vec![vec![]], 1, vec![]).is_err());
    }
}
