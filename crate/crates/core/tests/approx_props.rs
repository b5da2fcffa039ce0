use std::collections::HashSet;

use dimknap_core::approx::{
    approx_2unbounded, approx_lp_rounding, approx_sqrt_d, is_two_bounded, lp_solve_relaxation,
    prune_by_discretization, split_by_boundedness, Discretizer,
};
use dimknap_core::gen::{random_vk, seeded, VkFlavor};
use dimknap_core::knapsack::solve_bruteforce;
use dimknap_core::{Caps, VkInstance};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

/// Fractional knapsack optimum for `d = 1`: take items by falling profit
/// density, splitting the last one.
fn fractional_greedy(profits: &[u64], costs: &[u64], budget: u64) -> BigRational {
    let rat = |x: u64| BigRational::from_integer(BigInt::from(x));
    let mut order: Vec<usize> = (0..profits.len()).collect();
    // Zero-cost items first, then by density p/c descending.
    order.sort_by(|&a, &b| {
        let (pa, ca, pb, cb) = (profits[a] as u128, costs[a] as u128, profits[b] as u128, costs[b] as u128);
        (pb * ca).cmp(&(pa * cb)).then((ca == 0).cmp(&(cb == 0)).reverse())
    });
    let mut left = rat(budget);
    let mut value = BigRational::zero();
    for i in order {
        if costs[i] == 0 {
            value += rat(profits[i]);
        } else if left >= rat(costs[i]) {
            left -= rat(costs[i]);
            value += rat(profits[i]);
        } else {
            value += rat(profits[i]) * &left / rat(costs[i]);
            left = BigRational::zero();
        }
    }
    value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lp_matches_fractional_greedy(
        items in prop::collection::vec((0u64..20, 0u64..15), 0..9),
        budget in 0u64..30,
    ) {
        let profits: Vec<u64> = items.iter().map(|x| x.0).collect();
        let costs: Vec<u64> = items.iter().map(|x| x.1).collect();
        let inst = VkInstance::from_u64(profits.clone(), costs.iter().map(|&c| vec![c]).collect(), vec![budget]).unwrap();
        let lp = lp_solve_relaxation(&inst, &Caps::default()).unwrap();
        prop_assert_eq!(&lp.value, &fractional_greedy(&profits, &costs, budget));
        let (opt, _) = solve_bruteforce(&inst, &Caps::default()).unwrap();
        prop_assert!(lp.value >= BigRational::from_integer(BigInt::from(opt)));
    }

    #[test]
    fn lp_is_feasible_and_dominates_opt(seed in any::<u64>()) {
        let inst = random_vk(&mut seeded(seed), 8, 3, 20, 10, VkFlavor::Random).unwrap();
        let lp = lp_solve_relaxation(&inst, &Caps::default()).unwrap();
        let zero = BigRational::zero();
        let one = BigRational::from_integer(1.into());
        prop_assert!(lp.x.iter().all(|x| *x >= zero && *x <= one));
        for j in 0..3 {
            let load = lp.x.iter().enumerate().fold(BigRational::zero(), |acc, (i, x)| {
                acc + x * BigRational::from_integer(BigInt::from(inst.cost(i)[j].clone()))
            });
            prop_assert!(load <= BigRational::from_integer(BigInt::from(inst.budget()[j].clone())));
        }
        let (opt, _) = solve_bruteforce(&inst, &Caps::default()).unwrap();
        prop_assert!(lp.value >= BigRational::from_integer(BigInt::from(opt)));
    }

    #[test]
    fn digamma_keys_are_a_congruence(d in 1usize..5, b in 0u64..120, x in 0u64..120, y in 0u64..120) {
        let disc = Discretizer::new(d, &BigUint::from(120u32)).unwrap();
        let (x, y) = (x.min(b), y.min(b));
        let (kx, vx) = disc.digamma_coordinate(&BigUint::from(x), &BigUint::from(b)).unwrap();
        let (ky, vy) = disc.digamma_coordinate(&BigUint::from(y), &BigUint::from(b)).unwrap();
        prop_assert_eq!(kx == ky, vx == vy);
        if x <= y {
            prop_assert!(vx <= vy);
        }
    }

    #[test]
    fn pruning_keeps_one_item_per_key(seed in any::<u64>()) {
        let inst = random_vk(&mut seeded(seed), 12, 2, 30, 10, VkFlavor::Unbounded).unwrap();
        let disc = Discretizer::new(2, &inst.max_budget().unwrap()).unwrap();
        let all: Vec<usize> = (0..inst.len()).collect();
        let kept = prune_by_discretization(&inst, &all, &disc).unwrap();
        let keys: HashSet<_> = all.iter().map(|&i| disc.digamma(inst.cost(i), inst.budget()).unwrap().keys).collect();
        prop_assert_eq!(kept.len(), keys.len());
        for &i in &all {
            let key = disc.digamma(inst.cost(i), inst.budget()).unwrap().keys;
            let rep = kept.iter().find(|&&k| disc.digamma(inst.cost(k), inst.budget()).unwrap().keys == key).unwrap();
            prop_assert!(inst.profit_of(*rep) >= inst.profit_of(i));
        }
    }

    #[test]
    fn branches_are_feasible(seed in any::<u64>(), n in 0usize..12, d in 1usize..4) {
        let caps = Caps::default();
        let mut rng = seeded(seed);
        let bounded = random_vk(&mut rng, n, d, 40, 20, VkFlavor::Bounded).unwrap();
        let unbounded = random_vk(&mut rng, n, d, 40, 20, VkFlavor::Unbounded).unwrap();
        let mixed = random_vk(&mut rng, n, d, 40, 20, VkFlavor::Mixed).unwrap();

        let lp = approx_lp_rounding(&bounded, seed, &caps).unwrap();
        prop_assert!(bounded.check_feasible(&lp).unwrap());
        let un = approx_2unbounded(&unbounded, &caps).unwrap();
        prop_assert!(unbounded.check_feasible(&un).unwrap());
        prop_assert!(un.len() <= d);

        // Single-branch instances reproduce that branch.
        prop_assert_eq!(approx_sqrt_d(&bounded, seed, &caps).unwrap().solution, lp);
        prop_assert_eq!(approx_sqrt_d(&unbounded, seed, &caps).unwrap().solution, un);

        let out = approx_sqrt_d(&mixed, seed, &caps).unwrap();
        prop_assert!(mixed.check_feasible(&out.solution).unwrap());
        let single = (0..n).filter(|&i| mixed.fits_alone(i)).map(|i| mixed.profit_of(i)).max().unwrap_or(0);
        prop_assert!(out.profit >= single);
        let split = split_by_boundedness(&mixed);
        prop_assert_eq!(split.bounded.len() + split.unbounded.len(), n);
        prop_assert!(split.bounded.iter().all(|&i| is_two_bounded(&mixed, i)));
    }
}
