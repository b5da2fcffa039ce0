use dimknap_core::knapsack::{solve_bruteforce, solve_bruteforce_bounded_size, solve_dp};
use dimknap_core::{Caps, Solution, VkInstance};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = VkInstance> {
    (0usize..=9, 1usize..=3).prop_flat_map(|(n, d)| {
        (
            prop::collection::vec(0u64..20, n),
            prop::collection::vec(prop::collection::vec(0u64..12, d), n),
            prop::collection::vec(0u64..15, d),
        )
            .prop_map(|(p, c, b)| VkInstance::from_u64(p, c, b).unwrap())
    })
}

/// Every subset in lexicographic order of its sorted index list; returns
/// the first one of maximum profit.
fn lex_first_optimum(inst: &VkInstance) -> (u64, Vec<usize>) {
    let n = inst.len();
    let mut subsets: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort();
    let mut best = (0, Vec::new());
    for s in subsets {
        let sol = Solution::new(s.clone());
        if inst.check_feasible(&sol).unwrap() {
            let p = inst.profit(&sol).unwrap();
            if p > best.0 {
                best = (p, s);
            }
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dp_and_brute_force_match_enumeration(inst in instance()) {
        let caps = Caps::default();
        let (opt, witness) = lex_first_optimum(&inst);
        let (bf, bf_sol) = solve_bruteforce(&inst, &caps).unwrap();
        let (dp, dp_sol) = solve_dp(&inst, &caps).unwrap();
        prop_assert_eq!(bf, opt);
        prop_assert_eq!(dp, opt);
        prop_assert_eq!(bf_sol.items(), witness.as_slice());
        prop_assert_eq!(dp_sol.items(), witness.as_slice());
    }

    #[test]
    fn bounded_size_never_exceeds_limit(inst in instance(), s_max in 0usize..4) {
        let (p, sol) = solve_bruteforce_bounded_size(&inst, s_max, &Caps::default()).unwrap();
        prop_assert!(sol.len() <= s_max);
        prop_assert!(inst.check_feasible(&sol).unwrap());
        prop_assert_eq!(inst.profit(&sol).unwrap(), p);
        let (full, _) = solve_bruteforce(&inst, &Caps::default()).unwrap();
        prop_assert!(p <= full);
    }

    #[test]
    fn solutions_are_sorted_sets(items in prop::collection::vec(0usize..30, 0..20)) {
        let s = Solution::new(items.clone());
        prop_assert!(s.items().windows(2).all(|w| w[0] < w[1]));
        for i in items {
            prop_assert!(s.contains(i));
        }
    }

    #[test]
    fn restrict_then_lift_keeps_profit(inst in instance(), keep in prop::collection::vec(any::<bool>(), 9)) {
        let kept: Vec<usize> = (0..inst.len()).filter(|&i| keep[i]).collect();
        let sub = inst.restrict(&kept);
        let (p, sol) = solve_bruteforce(&sub, &Caps::default()).unwrap();
        let lifted = sol.lift(&kept);
        prop_assert_eq!(inst.profit(&lifted).unwrap(), p);
        prop_assert!(inst.check_feasible(&lifted).unwrap());
    }
}

#[test]
fn caps_are_enforced() {
    let inst = VkInstance::from_u64(vec![1; 30], vec![vec![1]; 30], vec![5]).unwrap();
    assert!(solve_bruteforce(&inst, &Caps::default()).is_err());
    let wide = VkInstance::from_u64(vec![1], vec![vec![1, 1]], vec![10_000, 10_000]).unwrap();
    assert!(solve_dp(&wide, &Caps::default().with_lattice(100)).is_err());
}
