use crate::knapsack::VkInstance;

/// Items with `2·c(i)_j <= B_j` in every coordinate, and the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundednessSplit {
    pub bounded: Vec<usize>,
    pub unbounded: Vec<usize>,
}

pub fn is_two_bounded(inst: &VkInstance, i: usize) -> bool {
    inst.cost(i)
        .iter()
        .zip(inst.budget())
        .all(|(c, b)| c * 2u8 <= *b)
}

pub fn split_by_boundedness(inst: &VkInstance) -> BoundednessSplit {
    let (bounded, unbounded) = (0..inst.len()).partition(|&i| is_two_bounded(inst, i));
    BoundednessSplit { bounded, unbounded }
}
