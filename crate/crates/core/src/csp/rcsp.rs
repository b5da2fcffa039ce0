use crate::caps::Caps;
use crate::error::{cap, input, Result};
use crate::graph::Graph;

use super::search::max_consistent_partial;
use super::{PartialAssignment, Side};

/// A 2-CSP with rectangular constraints: edge `e = (u, v)` is satisfied by
/// `(a, b)` iff `π_{e,u}(a) = π_{e,v}(b)`.
///
/// Projection values are stored 0-based in `0..upsilon`; the value `k` stands
/// for the element `k + 1` of `Υ = {1, …, m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RcspInstance {
    graph: Graph,
    alphabet: usize,
    upsilon: usize,
    projections: Vec<[Vec<usize>; 2]>,
}

impl RcspInstance {
    pub fn new(
        graph: Graph,
        alphabet: usize,
        upsilon: usize,
        projections: Vec<[Vec<usize>; 2]>,
    ) -> Result<Self> {
        if upsilon == 0 {
            return input("|Υ| must be at least 1");
        }
        if projections.len() != graph.edge_count() {
            return input(format!(
                "{} projection pairs for {} edges",
                projections.len(),
                graph.edge_count()
            ));
        }
        for (e, pair) in projections.iter().enumerate() {
            for map in pair {
                if map.len() != alphabet {
                    return input(format!("projection on edge {e} is not total on Σ"));
                }
                if let Some(&bad) = map.iter().find(|&&x| x >= upsilon) {
                    return input(format!("projection value {bad} on edge {e} outside Υ"));
                }
            }
        }
        Ok(Self {
            graph,
            alphabet,
            upsilon,
            projections,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    /// `m = |Υ|`.
    pub fn upsilon(&self) -> usize {
        self.upsilon
    }

    /// `π_{e,side}(sigma)`, 0-based.
    pub fn project(&self, e: usize, side: Side, sigma: usize) -> usize {
        self.projections[e][side.index()][sigma]
    }

    /// `π_{e,side}(sigma)` as an element of `{1, …, m}`.
    pub fn project_value(&self, e: usize, side: Side, sigma: usize) -> u64 {
        self.project(e, side, sigma) as u64 + 1
    }

    pub fn projections(&self) -> &[[Vec<usize>; 2]] {
        &self.projections
    }

    pub fn edge_satisfied(&self, e: usize, at_tail: usize, at_head: usize) -> bool {
        self.project(e, Side::Tail, at_tail) == self.project(e, Side::Head, at_head)
    }

    fn check_domain(&self, phi: &PartialAssignment) -> Result<()> {
        if phi.len() != self.graph.vertex_count() {
            return input(format!(
                "assignment has {} entries for {} vertices",
                phi.len(),
                self.graph.vertex_count()
            ));
        }
        if let Some(v) = (0..phi.len()).find(|&v| phi.get(v).is_some_and(|s| s >= self.alphabet)) {
            return input(format!("symbol at vertex {v} outside Σ"));
        }
        Ok(())
    }

    pub fn is_consistent(&self, phi: &PartialAssignment) -> Result<bool> {
        self.check_domain(phi)?;
        Ok(self.first_violation(phi).is_none())
    }

    /// The first edge with both endpoints assigned whose projections differ.
    pub fn first_violation(&self, phi: &PartialAssignment) -> Option<usize> {
        self.graph.edges().iter().enumerate().find_map(|(e, &(u, v))| {
            match (phi.get(u), phi.get(v)) {
                (Some(a), Some(b)) if !self.edge_satisfied(e, a, b) => Some(e),
                _ => None,
            }
        })
    }

    /// `Par(Π)` with a witness, by exhaustive pruned enumeration.
    pub fn par_bruteforce(&self, caps: &Caps) -> Result<(usize, PartialAssignment)> {
        let n = self.graph.vertex_count();
        let space = (self.alphabet as u128 + 1).checked_pow(n as u32).unwrap_or(u128::MAX);
        if space > caps.enumeration {
            return cap("R-CSP partial assignments", space, caps.enumeration);
        }
        let candidates = vec![(0..self.alphabet).collect::<Vec<_>>(); n];
        Ok(max_consistent_partial(&self.graph, &candidates, |e, a, b| {
            self.edge_satisfied(e, a, b)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two vertices, one edge, `π_{e,u}` the identity and `π_{e,v}` the swap
    /// on `Σ = {1, 2}` (0-based here).
    pub(crate) fn swap_instance() -> RcspInstance {
        RcspInstance::new(Graph::path(2), 2, 2, vec![[vec![0, 1], vec![1, 0]]]).unwrap()
    }

    #[test]
    fn vacuous_consistency() {
        let pi = swap_instance();
        assert!(pi.is_consistent(&PartialAssignment::unassigned(2)).unwrap());
        let lone = RcspInstance::new(Graph::empty(1), 3, 1, vec![]).unwrap();
        for s in 0..3 {
            assert!(lone.is_consistent(&PartialAssignment::total(&[s])).unwrap());
        }
    }

    #[test]
    fn swap_projection_consistency() {
        let pi = swap_instance();
        // symbols (1, 2) in 1-based terms
        assert!(pi.is_consistent(&PartialAssignment::total(&[0, 1])).unwrap());
        assert!(!pi.is_consistent(&PartialAssignment::total(&[0, 0])).unwrap());
    }

    #[test]
    fn par_examples() {
        let caps = Caps::default();
        let edgeless = RcspInstance::new(Graph::empty(3), 2, 1, vec![]).unwrap();
        assert_eq!(edgeless.par_bruteforce(&caps).unwrap().0, 3);

        let (par, witness) = swap_instance().par_bruteforce(&caps).unwrap();
        assert_eq!(par, 2);
        assert_eq!(witness, PartialAssignment::total(&[0, 1]));

        let never = RcspInstance::new(Graph::path(2), 3, 2, vec![[vec![0; 3], vec![1; 3]]]).unwrap();
        let (par, witness) = never.par_bruteforce(&caps).unwrap();
        assert_eq!(par, 1);
        assert!(never.is_consistent(&witness).unwrap());
    }

    #[test]
    fn domain_errors() {
        let pi = swap_instance();
        assert!(pi.is_consistent(&PartialAssignment::unassigned(3)).is_err());
        assert!(pi.is_consistent(&PartialAssignment::total(&[0, 5])).is_err());
        assert!(RcspInstance::new(Graph::path(2), 2, 0, vec![[vec![0, 0], vec![0, 0]]]).is_err());
        assert!(RcspInstance::new(Graph::path(2), 2, 1, vec![[vec![0], vec![0, 0]]]).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let pi = RcspInstance::new(Graph::empty(30), 3, 1, vec![]).unwrap();
        assert!(pi.par_bruteforce(&Caps::default()).is_err());
    }
}
