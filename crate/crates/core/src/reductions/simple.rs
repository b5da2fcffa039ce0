//! R-CSP to VK with one dimension per vertex and two per edge.

use crate::csp::{PartialAssignment, RcspInstance, Side};
use crate::error::{input, precondition, Result};
use crate::knapsack::{Solution, VkInstance};

/// Item of `(v, σ)`.
pub fn item_index(pi: &RcspInstance, v: usize, sigma: usize) -> usize {
    v * pi.alphabet() + sigma
}

/// `(v, σ)` of item `i`.
pub fn item_pair(pi: &RcspInstance, i: usize) -> (usize, usize) {
    (i / pi.alphabet(), i % pi.alphabet())
}

/// Dimension of `(e, side)`; vertex `v` owns dimension `v`.
pub fn edge_dimension(pi: &RcspInstance, e: usize, side: Side) -> usize {
    pi.graph().vertex_count() + 2 * e + side.index()
}

/// Items `V × Σ` with unit profits, `d = |V| + 2|E|`, all budgets `m`.
/// Item `(v, σ)` costs `m` in dimension `v`; for `e = (u, v)` an item at `u`
/// costs `π_{e,u}(σ)` in `(e, u)` and `m - π_{e,u}(σ)` in `(e, v)`, and an
/// item at `v` costs `m - π_{e,v}(σ)` in `(e, u)` and `π_{e,v}(σ)` in `(e, v)`.
/// Both endpoints assigned therefore fill `(e, u)` and `(e, v)` exactly when
/// their projections agree.
pub fn rcsp_to_vk_simple(pi: &RcspInstance) -> VkInstance {
    let g = pi.graph();
    let n = g.vertex_count();
    let sigma = pi.alphabet();
    let m = pi.upsilon() as u64;
    let d = n + 2 * g.edge_count();
    let mut costs = vec![vec![0u64; d]; n * sigma];
    for v in 0..n {
        for s in 0..sigma {
            costs[item_index(pi, v, s)][v] = m;
        }
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let du = edge_dimension(pi, e, Side::Tail);
        let dv = edge_dimension(pi, e, Side::Head);
        for s in 0..sigma {
            let pu = pi.project_value(e, Side::Tail, s);
            let pv = pi.project_value(e, Side::Head, s);
            let iu = item_index(pi, u, s);
            let iv = item_index(pi, v, s);
            costs[iu][du] = pu;
            costs[iu][dv] = m - pu;
            costs[iv][du] = m - pv;
            costs[iv][dv] = pv;
        }
    }
    VkInstance::from_u64(vec![1; n * sigma], costs, vec![m; d]).expect("dimensions are consistent")
}

/// `S = {(v, φ(v)) : φ(v) ≠ ⊥}` for a consistent `φ`; profit `|φ|`.
pub fn simple_solution_from_assignment(pi: &RcspInstance, phi: &PartialAssignment) -> Result<Solution> {
    if !pi.is_consistent(phi)? {
        return precondition("φ is not consistent");
    }
    Ok(Solution::new(
        (0..phi.len()).filter_map(|v| phi.get(v).map(|s| item_index(pi, v, s))),
    ))
}

/// `φ(v)` is the unique `σ` with `(v, σ) ∈ S`, ⊥ if there is none.
/// Feasibility forces at most one item per vertex and consistency.
pub fn simple_extract(pi: &RcspInstance, target: &VkInstance, s: &Solution) -> Result<PartialAssignment> {
    if !target.check_feasible(s)? {
        return precondition("solution is infeasible");
    }
    let mut values = vec![None; pi.graph().vertex_count()];
    for &i in s.items() {
        let (v, sigma) = item_pair(pi, i);
        if values[v].replace(sigma).is_some() {
            return input(format!("two items chosen for vertex {v}"));
        }
    }
    Ok(PartialAssignment::new(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::graph::Graph;
    use crate::knapsack::solve_bruteforce;

    fn swap_instance() -> RcspInstance {
        RcspInstance::new(Graph::path(2), 2, 2, vec![[vec![0, 1], vec![1, 0]]]).unwrap()
    }

    #[test]
    fn dimensions_and_budget() {
        let pi = swap_instance();
        let vk = rcsp_to_vk_simple(&pi);
        assert_eq!(vk.dimension(), 4);
        assert_eq!(vk.len(), 4);
        assert_eq!(vk.max_budget().unwrap(), num_bigint::BigUint::from(pi.upsilon()));
    }

    #[test]
    fn swap_round_trip() {
        let pi = swap_instance();
        let vk = rcsp_to_vk_simple(&pi);
        let caps = Caps::default();
        let (opt, best) = solve_bruteforce(&vk, &caps).unwrap();
        assert_eq!(opt, 2);
        assert_eq!(opt as usize, pi.par_bruteforce(&caps).unwrap().0);
        let phi = simple_extract(&pi, &vk, &best).unwrap();
        assert!(pi.is_consistent(&phi).unwrap());
        assert_eq!(phi.size(), 2);

        let s = simple_solution_from_assignment(&pi, &PartialAssignment::total(&[0, 1])).unwrap();
        assert!(vk.check_feasible(&s).unwrap());
        assert_eq!(vk.profit(&s).unwrap(), 2);
    }

    #[test]
    fn inconsistent_pair_is_infeasible() {
        let pi = swap_instance();
        let vk = rcsp_to_vk_simple(&pi);
        let s = Solution::new([item_index(&pi, 0, 0), item_index(&pi, 1, 0)]);
        assert!(!vk.check_feasible(&s).unwrap());
        assert!(simple_solution_from_assignment(&pi, &PartialAssignment::total(&[0, 0])).is_err());
    }
}
