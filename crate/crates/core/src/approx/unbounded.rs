use crate::approx::discretize::{prune_by_discretization, Discretizer};
use crate::approx::split::is_two_bounded;
use crate::caps::Caps;
use crate::error::{precondition, Result};
use crate::knapsack::{solve_bruteforce_bounded_size, Solution, VkInstance};

/// Approximation for instances whose items are all 2-unbounded.
///
/// An optimum holds at most `d` such items, so after dropping items that
/// never fit and collapsing items with equal discretized cost, the search
/// only looks at subsets of size at most `d`.
pub fn approx_2unbounded(inst: &VkInstance, caps: &Caps) -> Result<Solution> {
    if let Some(i) = (0..inst.len()).find(|&i| is_two_bounded(inst, i)) {
        return precondition(format!("item {i} is 2-bounded"));
    }
    let fitting: Vec<usize> = (0..inst.len()).filter(|&i| inst.fits_alone(i)).collect();
    if fitting.is_empty() {
        return Ok(Solution::empty());
    }
    let d = inst.dimension();
    let disc = Discretizer::new(d, &inst.max_budget()?)?;
    let kept = prune_by_discretization(inst, &fitting, &disc)?;
    let (_, sol) = solve_bruteforce_bounded_size(&inst.restrict(&kept), d, caps)?;
    Ok(sol.lift(&kept))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn picks_best_pair() {
        let inst = VkInstance::from_u64(
            vec![5, 4, 4, 1],
            vec![vec![6, 0], vec![4, 1], vec![2, 2], vec![0, 3]],
            vec![6, 3],
        )
        .unwrap();
        let sol = approx_2unbounded(&inst, &Caps::default()).unwrap();
        assert!(inst.check_feasible(&sol).unwrap());
        assert_eq!(inst.profit(&sol).unwrap(), 8);
    }

    #[test]
    fn rejects_bounded_items() {
        let inst = VkInstance::from_u64(vec![1], vec![vec![1]], vec![4]).unwrap();
        assert!(approx_2unbounded(&inst, &Caps::default()).is_err());
    }

    #[test]
    fn drops_items_that_never_fit() {
        let inst = VkInstance::from_u64(vec![9, 1], vec![vec![5], vec![3]], vec![4]).unwrap();
        let sol = approx_2unbounded(&inst, &Caps::default()).unwrap();
        assert_eq!(sol.items(), &[1]);
    }
}
