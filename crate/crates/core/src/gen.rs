//! Seeded random instances. Every generator takes the RNG explicitly, so the
//! same seed always yields the same instance.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::csp::{Clause, Csp2Instance, GcspInstance, Literal, RcspInstance, SatInstance};
use crate::error::{input, Error, Result};
use crate::graph::Graph;
use crate::knapsack::VkInstance;

const PAIRING_ATTEMPTS: usize = 10_000;

/// The RNG behind every seeded command.
pub type GenRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("simple by construction")
}

/// Random simple 3-regular graph via the pairing model, resampling until the
/// pairing has no loops or parallel edges.
pub fn random_regular3<R: Rng>(rng: &mut R, n: usize) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return input(format!("no 3-regular graph on {n} vertices"));
    }
    let mut points: Vec<usize> = (0..n).flat_map(|v| [v; 3]).collect();
    'attempt: for _ in 0..PAIRING_ATTEMPTS {
        points.shuffle(rng);
        let mut edges = Vec::with_capacity(points.len() / 2);
        for pair in points.chunks(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a == b || edges.contains(&(a, b)) {
                continue 'attempt;
            }
            edges.push((a, b));
        }
        return Graph::new(n, edges);
    }
    Err(Error::Construction(format!(
        "pairing model found no simple graph on {n} vertices in {PAIRING_ATTEMPTS} attempts"
    )))
}

/// 3-SAT formula satisfied by a hidden random assignment, which is returned
/// alongside. Each clause uses three distinct variables.
pub fn planted_sat<R: Rng>(rng: &mut R, variables: usize, clauses: usize) -> Result<(SatInstance, Vec<bool>)> {
    if variables < 3 && clauses > 0 {
        return input("clauses need at least 3 variables");
    }
    let planted: Vec<bool> = (0..variables).map(|_| rng.gen()).collect();
    let vars: Vec<usize> = (0..variables).collect();
    let mut out: Vec<Clause> = Vec::with_capacity(clauses);
    for _ in 0..clauses {
        let picked: Vec<usize> = vars.choose_multiple(rng, 3).copied().collect();
        let mut clause: Clause = [0, 1, 2].map(|k| Literal {
            var: picked[k],
            negated: rng.gen(),
        });
        if !clause.iter().any(|l| l.eval(planted[l.var])) {
            let k = rng.gen_range(0..3);
            clause[k].negated = !clause[k].negated;
        }
        out.push(clause);
    }
    Ok((SatInstance::with_tight_bound(variables, out)?, planted))
}

fn random_projections<R: Rng>(rng: &mut R, g: &Graph, alphabet: usize, upsilon: usize) -> Vec<[Vec<usize>; 2]> {
    (0..g.edge_count())
        .map(|_| {
            [0, 1].map(|_| (0..alphabet).map(|_| rng.gen_range(0..upsilon)).collect())
        })
        .collect()
}

/// R-CSP with uniformly random projections.
pub fn random_rcsp<R: Rng>(rng: &mut R, g: Graph, alphabet: usize, upsilon: usize) -> Result<RcspInstance> {
    if alphabet == 0 || upsilon == 0 {
        return input("alphabet and range must be nonempty");
    }
    let projections = random_projections(rng, &g, alphabet, upsilon);
    RcspInstance::new(g, alphabet, upsilon, projections)
}

/// R-CSP with a planted total consistent assignment, returned alongside.
pub fn planted_rcsp<R: Rng>(
    rng: &mut R,
    g: Graph,
    alphabet: usize,
    upsilon: usize,
) -> Result<(RcspInstance, Vec<usize>)> {
    if alphabet == 0 || upsilon == 0 {
        return input("alphabet and range must be nonempty");
    }
    let planted: Vec<usize> = (0..g.vertex_count()).map(|_| rng.gen_range(0..alphabet)).collect();
    let mut projections = random_projections(rng, &g, alphabet, upsilon);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        projections[e][1][planted[v]] = projections[e][0][planted[u]];
    }
    Ok((RcspInstance::new(g, alphabet, upsilon, projections)?, planted))
}

/// 2-CSP where each pair is allowed with probability `density`. Every
/// relation keeps at least one pair.
pub fn random_csp2<R: Rng>(rng: &mut R, g: Graph, alphabet: usize, density: f64) -> Result<Csp2Instance> {
    if alphabet == 0 {
        return input("alphabet must be nonempty");
    }
    let constraints = (0..g.edge_count())
        .map(|_| {
            let mut pairs: Vec<(usize, usize)> = (0..alphabet)
                .flat_map(|a| (0..alphabet).map(move |b| (a, b)))
                .filter(|_| rng.gen_bool(density.clamp(0.0, 1.0)))
                .collect();
            if pairs.is_empty() {
                pairs.push((rng.gen_range(0..alphabet), rng.gen_range(0..alphabet)));
            }
            pairs
        })
        .collect();
    Csp2Instance::new(g, alphabet, constraints)
}

/// 2-CSP whose relations all contain the pairs of a hidden total assignment.
pub fn planted_csp2<R: Rng>(
    rng: &mut R,
    g: Graph,
    alphabet: usize,
    density: f64,
) -> Result<(Csp2Instance, Vec<usize>)> {
    if alphabet == 0 {
        return input("alphabet must be nonempty");
    }
    let planted: Vec<usize> = (0..g.vertex_count()).map(|_| rng.gen_range(0..alphabet)).collect();
    let base = random_csp2(rng, g.clone(), alphabet, density)?;
    let constraints = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            let mut pairs = base.pairs(e);
            if !pairs.contains(&(planted[u], planted[v])) {
                pairs.push((planted[u], planted[v]));
            }
            pairs
        })
        .collect();
    Ok((Csp2Instance::new(g, alphabet, constraints)?, planted))
}

/// G-CSP with random per-vertex alphabets drawn from `symbols` and random
/// projections into `upsilon`.
pub fn random_gcsp<R: Rng>(rng: &mut R, g: Graph, symbols: usize, upsilon: usize) -> Result<GcspInstance> {
    if symbols == 0 || upsilon == 0 {
        return input("symbol set and range must be nonempty");
    }
    let all: Vec<usize> = (0..symbols).collect();
    let alphabets: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|_| {
            let size = rng.gen_range(1..=symbols);
            let mut a: Vec<usize> = all.choose_multiple(rng, size).copied().collect();
            a.sort_unstable();
            a
        })
        .collect();
    let projections = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            [u, v].map(|x| (0..alphabets[x].len()).map(|_| rng.gen_range(0..upsilon)).collect())
        })
        .collect();
    GcspInstance::new(g, symbols, alphabets, upsilon, projections)
}

/// Which kind of items a random VK instance gets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VkFlavor {
    /// Costs uniform in `[0, W]`.
    Random,
    /// Every coordinate at most half its budget.
    Bounded,
    /// Some coordinate above half its budget (and within it).
    Unbounded,
    /// Each item bounded or unbounded with equal probability.
    Mixed,
}

impl std::str::FromStr for VkFlavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Self::Random),
            "bounded" => Ok(Self::Bounded),
            "unbounded" => Ok(Self::Unbounded),
            "mixed" => Ok(Self::Mixed),
            other => input(format!("unknown VK flavor {other:?}")),
        }
    }
}

/// Random VK instance with budgets in `[1, w_max]` and profits in
/// `[1, p_max]`.
pub fn random_vk<R: Rng>(
    rng: &mut R,
    n: usize,
    d: usize,
    w_max: u64,
    p_max: u64,
    flavor: VkFlavor,
) -> Result<VkInstance> {
    if w_max == 0 || p_max == 0 {
        return input("w_max and p_max must be positive");
    }
    if d == 0 && matches!(flavor, VkFlavor::Unbounded | VkFlavor::Mixed) && n > 0 {
        return input("unbounded items need d >= 1");
    }
    let budget: Vec<u64> = (0..d).map(|_| rng.gen_range(1..=w_max)).collect();
    let mut costs = Vec::with_capacity(n);
    let mut profits = Vec::with_capacity(n);
    for _ in 0..n {
        let unbounded = match flavor {
            VkFlavor::Random | VkFlavor::Bounded => false,
            VkFlavor::Unbounded => true,
            VkFlavor::Mixed => rng.gen(),
        };
        let mut cost: Vec<u64> = budget
            .iter()
            .map(|&b| match flavor {
                VkFlavor::Random => rng.gen_range(0..=w_max),
                _ => rng.gen_range(0..=b / 2),
            })
            .collect();
        if unbounded {
            let j = rng.gen_range(0..d);
            cost[j] = rng.gen_range(budget[j] / 2 + 1..=budget[j]);
        }
        costs.push(cost);
        profits.push(rng.gen_range(1..=p_max));
    }
    VkInstance::from_u64(profits, costs, budget)
}
