//! Acceptance checks. Run with `cargo test --test acceptance`; prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.
//!
//! Values the library computes are compared against naive oracles written
//! here (subset enumeration, assignment enumeration, direct formulas).

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use dimknap_core::approx::{approx_2unbounded, approx_sqrt_d, digamma, Discretizer};
use dimknap_core::csp::{Csp2Instance, PartialAssignment, RcspInstance};
use dimknap_core::gen::{
    planted_csp2, planted_rcsp, planted_sat, random_csp2, random_graph, random_rcsp, random_regular3, random_vk,
    seeded, VkFlavor,
};
use dimknap_core::knapsack::{solve_bruteforce, solve_dp};
use dimknap_core::reductions::{
    csp2_to_rcsp, extract_partial_assignment, rcsp_to_vk_embed, rcsp_to_vk_simple, sat_to_rcsp_disperser_route,
    sat_to_rcsp_embedding_route, verify_base_q_digits, vk_solution_from_assignment, Variant,
};
use dimknap_core::{Caps, Graph, Solution, VkInstance};

// ---- naive oracles ----

/// Best profit over all subsets, by bitmask.
fn vk_opt(inst: &VkInstance) -> u64 {
    let n = inst.len();
    assert!(n <= 20);
    let mut best = 0;
    for mask in 0u32..1 << n {
        let items: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if feasible(inst, &items) {
            best = best.max(items.iter().map(|&i| inst.profits()[i]).sum());
        }
    }
    best
}

fn feasible(inst: &VkInstance, items: &[usize]) -> bool {
    (0..inst.dimension()).all(|j| {
        let total: BigUint = items.iter().map(|&i| &inst.costs()[i][j]).sum();
        total <= inst.budget()[j]
    })
}

fn consistent(pi: &RcspInstance, phi: &[Option<usize>]) -> bool {
    pi.graph().edges().iter().enumerate().all(|(e, &(u, v))| match (phi[u], phi[v]) {
        (Some(a), Some(b)) => pi.projections()[e][0][a] == pi.projections()[e][1][b],
        _ => true,
    })
}

/// Largest consistent partial assignment, over all `(σ+1)^n` labelings.
fn par_naive(pi: &RcspInstance) -> usize {
    let n = pi.graph().vertex_count();
    let base = pi.alphabet() + 1;
    let mut best = 0;
    for code in 0..base.pow(n as u32) {
        let phi: Vec<Option<usize>> = (0..n)
            .map(|v| {
                let digit = code / base.pow(v as u32) % base;
                (digit > 0).then(|| digit - 1)
            })
            .collect();
        if consistent(pi, &phi) {
            best = best.max(phi.iter().flatten().count());
        }
    }
    best
}

fn csp_naive(gamma: &Csp2Instance) -> usize {
    let n = gamma.graph().vertex_count();
    let s = gamma.alphabet();
    (0..s.pow(n as u32))
        .map(|code| {
            let lambda: Vec<usize> = (0..n).map(|v| code / s.pow(v as u32) % s).collect();
            satisfied(gamma, &lambda)
        })
        .max()
        .unwrap_or(0)
}

fn satisfied(gamma: &Csp2Instance, lambda: &[usize]) -> usize {
    gamma
        .graph()
        .edges()
        .iter()
        .enumerate()
        .filter(|&(e, &(u, v))| gamma.pairs(e).contains(&(lambda[u], lambda[v])))
        .count()
}

/// Constraint `j` of the embedding: vertices first, then edges.
#[derive(Clone, Copy)]
enum Con {
    V(usize),
    E(usize),
}

fn constraints(g: &Graph) -> Vec<Con> {
    (0..g.vertex_count())
        .map(Con::V)
        .chain((0..g.edge_count()).map(Con::E))
        .collect()
}

/// `w_j(S)` straight from the definition, with `Υ = {1, …, m}`.
fn weight(pi: &RcspInstance, j: Con, s: &[usize]) -> u64 {
    let m = pi.upsilon() as u64;
    let sigma = pi.alphabet();
    s.iter()
        .map(|&i| {
            let (v, a) = (i / sigma, i % sigma);
            match j {
                Con::V(x) => if x == v { m } else { 0 },
                Con::E(e) => {
                    let (tail, head) = pi.graph().edges()[e];
                    if v == tail {
                        pi.projections()[e][0][a] as u64 + 1
                    } else if v == head {
                        m - (pi.projections()[e][1][a] as u64 + 1)
                    } else {
                        0
                    }
                }
            }
        })
        .sum()
}

fn involves(g: &Graph, j: Con, v: usize) -> bool {
    match j {
        Con::V(x) => x == v,
        Con::E(e) => {
            let (a, b) = g.edges()[e];
            a == v || b == v
        }
    }
}

// ---- criteria ----

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn big_caps() -> Caps {
    Caps::default().with_enumeration(1 << 60)
}

fn simple_equivalence() -> Outcome {
    let mut rng = seeded(101);
    let caps = Caps::default();
    let mut bad = 0;
    let total = 240;
    for _ in 0..total {
        let n = rng.gen_range(1..=5);
        let g = random_graph(&mut rng, n, 0.5);
        let sigma = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let pi = random_rcsp(&mut rng, g, sigma, m).unwrap();
        let par = par_naive(&pi);
        let target = rcsp_to_vk_simple(&pi);
        let opt = vk_opt(&target);
        let (lib_opt, _) = solve_bruteforce(&target, &caps).unwrap();
        let (lib_par, _) = pi.par_bruteforce(&caps).unwrap();
        if par as u64 != opt || lib_opt != opt || lib_par != par {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{} of {total} instances with Par = OPT", total - bad))
}

fn embed_completeness() -> Outcome {
    let mut rng = seeded(202);
    let mut checks = 0;
    let mut bad = 0;
    for k in 0..60 {
        let n = [4, 6, 8][k % 3];
        let g = random_regular3(&mut rng, n).unwrap();
        let sigma = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let (pi, planted) = planted_rcsp(&mut rng, g, sigma, m).unwrap();
        let phi = PartialAssignment::total(&planted);
        let full = (n + 2 * pi.graph().edge_count()) as u64;
        let mut fs = vec![1, 2, n];
        fs.dedup();
        for f in fs {
            checks += 1;
            let (target, _) = rcsp_to_vk_embed(&pi, f).unwrap();
            let s = vk_solution_from_assignment(&pi, &phi, Variant::Embed(f)).unwrap();
            let profit: u64 = s.items().iter().map(|&i| target.profits()[i]).sum();
            if !feasible(&target, s.items()) || profit != full {
                bad += 1;
            }
        }
    }
    outcome(bad == 0, format!("{} of {checks} (instance, F) pairs feasible with profit |V|+2|E|", checks - bad))
}

fn embed_soundness() -> Outcome {
    let mut rng = seeded(303);
    let mut subsets = 0;
    let mut bad = 0;
    for _ in 0..20 {
        let g = Graph::complete(4);
        let sigma = rng.gen_range(1..=2);
        let m = rng.gen_range(1..=3);
        let pi = random_rcsp(&mut rng, g, sigma, m).unwrap();
        let full = 4 + 2 * 6;
        for f in [1, 2] {
            let (target, _) = rcsp_to_vk_embed(&pi, f).unwrap();
            let n = target.len();
            for mask in 0u32..1 << n {
                let items: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                if !feasible(&target, &items) {
                    continue;
                }
                subsets += 1;
                let profit: u64 = items.iter().map(|&i| target.profits()[i]).sum();
                let q = full - profit as usize;
                let bound = 4usize.saturating_sub(2 * q * f);
                let ok = match extract_partial_assignment(&pi, Variant::Embed(f), &Solution::new(items)) {
                    Ok(phi) => consistent(&pi, phi.values()) && phi.size() >= bound,
                    Err(_) => false,
                };
                if !ok {
                    bad += 1;
                }
            }
        }
    }
    outcome(bad == 0 && subsets > 0, format!("{} of {subsets} feasible subsets extract soundly", subsets - bad))
}

fn algebraic_identities() -> Outcome {
    let mut rng = seeded(404);
    let mut violations = 0;
    let mut feasible_seen = 0;
    let instances = 50;
    for k in 0..instances {
        let n = [4, 6, 8][k % 3];
        let g = random_regular3(&mut rng, n).unwrap();
        let sigma = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let (pi, planted) = planted_rcsp(&mut rng, g, sigma, m).unwrap();
        let f = rng.gen_range(1..=n);
        let (target, art) = rcsp_to_vk_embed(&pi, f).unwrap();
        let g = pi.graph();
        let cons = constraints(g);
        let chunks: Vec<&[Con]> = cons.chunks(f).collect();
        let q = BigUint::from(3 * f * f * pi.upsilon() * n * sigma);
        let big_m = num_traits::pow(q.clone(), 2 * f);
        if art.q != q || art.m_big != big_m || art.chunk_count() != chunks.len() {
            violations += 1;
        }
        let jl = |l: usize, v: usize| chunks[l].iter().filter(|&&c| involves(g, c, v)).count() as u64;
        let nl: Vec<u64> = (0..chunks.len()).map(|l| (0..n).map(|v| jl(l, v)).sum()).collect();
        let planted_items: Vec<usize> = planted.iter().enumerate().map(|(v, &a)| v * sigma + a).collect();
        for t in 0..1000 {
            let pool: Vec<usize> = if t % 2 == 0 { planted_items.clone() } else { (0..target.len()).collect() };
            let s: Vec<usize> = pool.into_iter().filter(|_| rng.gen_bool(0.5)).collect();
            let mut profit = 0u64;
            let is_feasible = feasible(&target, &s);
            feasible_seen += usize::from(is_feasible);
            for (l, chunk) in chunks.iter().enumerate() {
                let mut digits = BigUint::zero();
                let mut power = BigUint::one();
                for &j in chunk.iter() {
                    power *= &q;
                    digits += &power * weight(&pi, j, &s);
                }
                let count: u64 = s.iter().map(|&i| jl(l, i / sigma)).sum();
                profit += count;
                let c1: BigUint = s.iter().map(|&i| &target.costs()[i][2 * l]).sum();
                let c2: BigUint = s.iter().map(|&i| &target.costs()[i][2 * l + 1]).sum();
                if c1 != digits {
                    violations += 1;
                }
                if c2 + &digits != &big_m * count {
                    violations += 1;
                }
                if is_feasible {
                    if count > nl[l] {
                        violations += 1;
                    } else if count == nl[l] && chunk.iter().any(|&j| weight(&pi, j, &s) != m as u64) {
                        violations += 1;
                    }
                }
            }
            let p: u64 = s.iter().map(|&i| target.profits()[i]).sum();
            if p != profit {
                violations += 1;
            }
        }
    }
    let mut digit_bad = 0;
    let mut vectors = 0;
    for q in 2..=7u64 {
        for len in 1..=4u32 {
            for code in 0..q.pow(len) {
                let digits: Vec<u64> = (0..len).map(|i| code / q.pow(i) % q).collect();
                for a in 0..q {
                    vectors += 1;
                    if verify_base_q_digits(&digits, q, a).unwrap() != digits.iter().all(|&x| x == a) {
                        digit_bad += 1;
                    }
                }
            }
        }
    }
    outcome(
        violations == 0 && digit_bad == 0,
        format!(
            "{violations} identity violations over {instances}x1000 subsets ({feasible_seen} feasible); \
             {digit_bad} digit-fact violations over {vectors} vectors"
        ),
    )
}

fn csp_chain() -> Outcome {
    let mut rng = seeded(505);
    let caps = big_caps();
    let mut bad = 0;
    let mut deficits = BTreeMap::new();
    let total = 120;
    for k in 0..total {
        let h = random_regular3(&mut rng, 4).unwrap();
        let sigma = rng.gen_range(1..=3);
        let gamma = if k % 2 == 0 {
            planted_csp2(&mut rng, h, sigma, 0.4).unwrap().0
        } else {
            random_csp2(&mut rng, h, sigma, 0.5).unwrap()
        };
        let edges = gamma.graph().edge_count();
        let csp = csp_naive(&gamma);
        let red = csp2_to_rcsp(&gamma).unwrap();
        let (par, psi) = red.instance().par_bruteforce(&caps).unwrap();
        let t = edges - par;
        *deficits.entry(t).or_insert(0) += 1;
        let lambda = red.backward(&gamma, &psi).unwrap();
        let ok = consistent(red.instance(), psi.values())
            && psi.size() == par
            && (csp == edges) == (par == edges)
            && satisfied(&gamma, &lambda) + 6 * t >= edges;
        if !ok {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{} of {total} instances; Par deficits {deficits:?}", total - bad))
}

fn discretization_bounds() -> Outcome {
    let mut bad = 0;
    let mut pairs = 0;
    for d in 1..=5usize {
        let gamma = BigRational::new(BigInt::from(10 * d + 1), BigInt::from(10 * d));
        let mut powers = vec![BigRational::one()];
        while *powers.last().unwrap() < BigRational::from_integer(200.into()) {
            let next = powers.last().unwrap() * &gamma;
            powers.push(next);
        }
        let rat = |x: u64| BigRational::from_integer(BigInt::from(x));
        let up = |x: u64| {
            if x == 0 {
                BigRational::zero()
            } else {
                powers.iter().find(|p| **p >= rat(x)).unwrap().clone()
            }
        };
        let down = |x: u64| {
            if x == 0 {
                BigRational::zero()
            } else {
                powers.iter().rev().find(|p| **p <= rat(x)).unwrap().clone()
            }
        };
        let ups: Vec<BigRational> = (0..=200).map(up).collect();
        let downs: Vec<BigRational> = (0..=200).map(down).collect();
        let disc = Discretizer::new(d, &BigUint::from(200u32)).unwrap();
        for x in 1..=200u64 {
            let ok = downs[x as usize] <= rat(x) && rat(x) <= ups[x as usize] && ups[x as usize] < &gamma * rat(x);
            let lib_ok = disc.varpi_up(&BigUint::from(x)).unwrap() == ups[x as usize]
                && disc.varpi_down(&BigUint::from(x)).unwrap() == downs[x as usize];
            if !ok || !lib_ok {
                bad += 1;
            }
        }
        for b in 0..=200u64 {
            for x in 0..=b {
                pairs += 1;
                let naive = {
                    let a = ups[x as usize].clone();
                    let c = rat(b) - &downs[(b - x) as usize];
                    if a <= c { a } else { c }
                };
                let (_, value) = disc.digamma_coordinate(&BigUint::from(x), &BigUint::from(b)).unwrap();
                let cap_up = &gamma * rat(x);
                let cap_comp = rat(b) - (rat(b) - rat(x)) / &gamma;
                if value != naive || value > cap_up || value > cap_comp {
                    bad += 1;
                }
            }
        }
    }
    // The free function agrees with the cached discretizer.
    let spot = digamma(&[BigUint::from(7u32)], &[BigUint::from(19u32)]).unwrap();
    let cached = Discretizer::new(1, &BigUint::from(19u32)).unwrap();
    if spot.values[0] != cached.digamma_coordinate(&BigUint::from(7u32), &BigUint::from(19u32)).unwrap().1 {
        bad += 1;
    }
    outcome(bad == 0, format!("{bad} violations over {pairs} (B, x) pairs, d = 1..5"))
}

fn unbounded_branch() -> Outcome {
    let mut rng = seeded(707);
    let caps = Caps::default();
    let mut bad = 0;
    let mut worst = f64::INFINITY;
    let total = 120;
    for _ in 0..total {
        let n = rng.gen_range(1..=14);
        let d = rng.gen_range(1..=4);
        let w = rng.gen_range(2..=50);
        let inst = random_vk(&mut rng, n, d, w, 20, VkFlavor::Unbounded).unwrap();
        let sol = approx_2unbounded(&inst, &caps).unwrap();
        let opt = vk_opt(&inst);
        let p: u64 = sol.items().iter().map(|&i| inst.profits()[i]).sum();
        if opt > 0 {
            worst = worst.min(p as f64 / opt as f64);
        }
        if !feasible(&inst, sol.items()) || (p as f64) < opt as f64 / (10.0 * (d as f64).sqrt()) {
            bad += 1;
        }
    }
    let mut size_bad = 0;
    let mut checked = 0;
    for _ in 0..60 {
        let n = rng.gen_range(1..=10);
        let d = rng.gen_range(1..=4);
        let w = rng.gen_range(2..=50);
        let inst = random_vk(&mut rng, n, d, w, 5, VkFlavor::Unbounded).unwrap();
        for mask in 0u32..1 << n {
            let items: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if feasible(&inst, &items) {
                checked += 1;
                if items.len() > d {
                    size_bad += 1;
                }
            }
        }
    }
    outcome(
        bad == 0 && size_bad == 0,
        format!(
            "{} of {total} meet OPT/(10√d), worst ratio {worst:.3}; {size_bad} of {checked} feasible sets exceed d items",
            total - bad
        ),
    )
}

fn combined() -> Outcome {
    let mut rng = seeded(808);
    let caps = Caps::default();
    let mut bad = 0;
    let mut ratios: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    let total = 220;
    for k in 0..total {
        let n = rng.gen_range(1..=14);
        let d = rng.gen_range(1..=4);
        let w = rng.gen_range(2..=50);
        let inst = random_vk(&mut rng, n, d, w, 20, VkFlavor::Mixed).unwrap();
        let out = approx_sqrt_d(&inst, k as u64, &caps).unwrap();
        let p: u64 = out.solution.items().iter().map(|&i| inst.profits()[i]).sum();
        let single = (0..n)
            .filter(|&i| feasible(&inst, &[i]))
            .map(|i| inst.profits()[i])
            .max()
            .unwrap_or(0);
        if !feasible(&inst, out.solution.items()) || p < single || p != out.profit {
            bad += 1;
        }
        let opt = vk_opt(&inst);
        ratios.entry(d).or_default().push(if opt == 0 { 1.0 } else { p as f64 / opt as f64 });
    }
    let mut medians = Vec::new();
    let mut median_ok = true;
    for (d, rs) in &mut ratios {
        rs.sort_by(f64::total_cmp);
        let median = rs[rs.len() / 2];
        median_ok &= median >= 1.0 / (4.0 * (*d as f64).sqrt());
        medians.push(format!("d={d}: {median:.3}"));
    }
    outcome(
        bad == 0 && median_ok,
        format!("{} of {total} feasible and >= best single item; median ratios {}", total - bad, medians.join(", ")),
    )
}

fn oracle_agreement() -> Outcome {
    let mut rng = seeded(909);
    let caps = Caps::default();
    let mut bad = 0;
    let total = 320;
    for _ in 0..total {
        let n = rng.gen_range(0..=10);
        let d = rng.gen_range(1..=3);
        let w = rng.gen_range(1..=12);
        let inst = random_vk(&mut rng, n, d, w, 15, VkFlavor::Random).unwrap();
        let (dp, dp_sol) = solve_dp(&inst, &caps).unwrap();
        let (bf, bf_sol) = solve_bruteforce(&inst, &caps).unwrap();
        let opt = vk_opt(&inst);
        if dp != bf || bf != opt || !feasible(&inst, dp_sol.items()) || !feasible(&inst, bf_sol.items()) {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{} of {total} instances agree", total - bad))
}

fn sat_completeness() -> Outcome {
    let mut rng = seeded(1010);
    let caps = big_caps();
    let mut bad = 0;
    let mut runs = 0;
    let mut failures = Vec::new();
    for k in 0..110 {
        let vars = rng.gen_range(3..=10);
        let clauses = rng.gen_range(1..=8);
        let (phi, planted) = planted_sat(&mut rng, vars, clauses).unwrap();
        let h_size = [4, 5, 6][k % 3];
        let emb = sat_to_rcsp_embedding_route(&phi, h_size, &caps).unwrap();
        let disp = sat_to_rcsp_disperser_route(&phi, h_size, 2, 0.5, k as u64, &caps).unwrap();
        for (name, red) in [("embedding", &emb.reduction), ("disperser", &disp.reduction)] {
            runs += 1;
            let hv = red.instance.graph().vertex_count();
            let (par, _) = red.instance.par_bruteforce(&caps).unwrap();
            let projected = red.project_assignment(&planted).unwrap();
            let ok = hv <= 6 && par == hv && projected.is_total() && consistent(&red.instance, projected.values());
            if !ok {
                bad += 1;
                failures.push(format!("{name}#{k}: Par {par} of {hv}"));
            }
        }
        if !emb.check.valid {
            bad += 1;
            failures.push(format!("embedding#{k}: invalid embedding"));
        }
    }
    outcome(bad == 0, format!("{} of {runs} routes reach Par = |V(H)| {}", runs - bad, failures.join("; ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 simple reduction: Par = OPT", simple_equivalence),
        ("2 embedding completeness", embed_completeness),
        ("3 embedding soundness", embed_soundness),
        ("4 cost/profit identities and count bound", algebraic_identities),
        ("5 2-CSP chain", csp_chain),
        ("6 discretization bounds", discretization_bounds),
        ("7 unbounded branch", unbounded_branch),
        ("8 combined algorithm", combined),
        ("9 DP vs brute force", oracle_agreement),
        ("10 3-SAT completeness", sat_completeness),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let out = check();
        println!(
            "criterion {name}: {} ({:.1} s) {}",
            if out.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            out.detail
        );
        if !out.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
