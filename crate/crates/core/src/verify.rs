//! Property suites over seeded random instances. Each suite checks one
//! family of reduction or approximation guarantees against brute force.

use std::fmt::{self, Debug};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::approx::Discretizer;
use crate::caps::Caps;
use crate::csp::{PartialAssignment, RcspInstance};
use crate::error::{input, Result};
use crate::gen::{planted_csp2, planted_rcsp, random_csp2, random_graph, random_rcsp, random_regular3};
use crate::graph::Graph;
use crate::knapsack::{solve_bruteforce, Solution, VkInstance};
use crate::reductions::{
    constraint_load, csp2_to_rcsp, embed_extract, embed_size_bound, embed_solution_from_assignment,
    rcsp_to_vk_embed, rcsp_to_vk_simple, simple_extract, verify_base_q_digits, EmbedArtifacts,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    SimpleRoundtrip,
    EmbedRoundtrip,
    CspChain,
    Discretize,
    ObsBasic,
    Vkw,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::SimpleRoundtrip,
        Suite::EmbedRoundtrip,
        Suite::CspChain,
        Suite::Discretize,
        Suite::ObsBasic,
        Suite::Vkw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SimpleRoundtrip => "simple-roundtrip",
            Suite::EmbedRoundtrip => "embed-roundtrip",
            Suite::CspChain => "csp-chain",
            Suite::Discretize => "discretize",
            Suite::ObsBasic => "obs-basic",
            Suite::Vkw => "vkw",
        }
    }

    /// Instance count used when none is given.
    pub fn default_instances(self) -> usize {
        match self {
            Suite::SimpleRoundtrip => 200,
            Suite::EmbedRoundtrip => 30,
            Suite::CspChain => 100,
            Suite::Discretize => 5,
            Suite::ObsBasic | Suite::Vkw => 50,
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .map_or_else(|| input(format!("unknown suite {s:?}")), Ok)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub seed: u64,
    pub instances: Option<usize>,
    /// Random subsets per instance for the identity suites.
    pub subsets: usize,
    /// Restrict the embed suites to one chunk size.
    pub f: Option<usize>,
    /// Negative control: lower one budget of every embed target by 1.
    pub corrupt_budget: bool,
    pub caps: Caps,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            seed: 0,
            instances: None,
            subsets: 1000,
            f: None,
            corrupt_budget: false,
            caps: Caps::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    /// The property being checked.
    pub check: String,
    /// Truncated SHA-256 of the instance's debug form.
    pub digest: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        writeln!(
            f,
            "suite {} seed {}: {} checks, {} failed",
            self.suite,
            self.seed,
            self.records.len(),
            failed
        )?;
        for r in &self.records {
            writeln!(
                f,
                "{} {} [{}] expected {} observed {}",
                if r.pass { "PASS" } else { "FAIL" },
                r.check,
                r.digest,
                r.expected,
                r.observed
            )?;
        }
        Ok(())
    }
}

pub fn digest<T: Debug>(x: &T) -> String {
    let hash = Sha256::digest(format!("{x:?}").as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

struct Recorder {
    records: Vec<CheckRecord>,
}

impl Recorder {
    fn push(&mut self, check: &str, digest: &str, expected: impl ToString, observed: impl ToString, pass: bool) {
        self.records.push(CheckRecord {
            check: check.to_string(),
            digest: digest.to_string(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            pass,
        });
    }
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<VerificationReport> {
    let count = params.instances.unwrap_or_else(|| suite.default_instances());
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut rec = Recorder { records: Vec::new() };
    match suite {
        Suite::SimpleRoundtrip => simple_roundtrip(&mut rng, count, params, &mut rec)?,
        Suite::EmbedRoundtrip => embed_roundtrip(&mut rng, count, params, &mut rec)?,
        Suite::CspChain => csp_chain(&mut rng, count, params, &mut rec)?,
        Suite::Discretize => discretize(count.clamp(1, 5), 200, &mut rec)?,
        Suite::ObsBasic => obs_basic(&mut rng, count, params, &mut rec)?,
        Suite::Vkw => vkw(&mut rng, count, params, &mut rec)?,
    }
    Ok(VerificationReport {
        suite: suite.name().to_string(),
        seed: params.seed,
        records: rec.records,
    })
}

/// Small R-CSP: at most 5 vertices, 3 symbols, range 3.
pub fn small_rcsp<R: Rng>(rng: &mut R) -> Result<RcspInstance> {
    let n = rng.gen_range(1..=5);
    let g = random_graph(rng, n, 0.5);
    let sigma = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=3);
    random_rcsp(rng, g, sigma, m)
}

fn simple_roundtrip(rng: &mut ChaCha8Rng, count: usize, params: &SuiteParams, rec: &mut Recorder) -> Result<()> {
    for _ in 0..count {
        let pi = small_rcsp(rng)?;
        let id = digest(&pi);
        let (par, _) = pi.par_bruteforce(&params.caps)?;
        let target = rcsp_to_vk_simple(&pi);
        let (opt, s) = solve_bruteforce(&target, &params.caps)?;
        rec.push("Par(Π) = OPT(simple target)", &id, par, opt, par as u64 == opt);
        let phi = simple_extract(&pi, &target, &s)?;
        let ok = pi.is_consistent(&phi)? && phi.size() as u64 == opt;
        rec.push("optimum extracts to a consistent φ of equal size", &id, opt, phi.size(), ok);
    }
    Ok(())
}

/// `F ∈ {1, 2, |V|}` unless a single `F` is requested.
fn chunk_sizes(n: usize, f: Option<usize>) -> Vec<usize> {
    match f {
        Some(f) => vec![f],
        None => {
            let mut fs = vec![1, 2, n];
            fs.dedup();
            fs
        }
    }
}

fn corrupt(target: VkInstance) -> Result<VkInstance> {
    let mut budget = target.budget().to_vec();
    if let Some(b) = budget.first_mut() {
        if !b.is_zero() {
            *b -= 1u8;
        }
    }
    target.with_budget(budget)
}

/// Every subset of a small target, as a solution.
fn all_subsets(n: usize) -> impl Iterator<Item = Solution> {
    (0u32..1 << n).map(move |mask| Solution::new((0..n).filter(|&i| mask >> i & 1 == 1)))
}

fn embed_roundtrip(rng: &mut ChaCha8Rng, count: usize, params: &SuiteParams, rec: &mut Recorder) -> Result<()> {
    for k in 0..count {
        // Alternate K4 instances small enough for exhaustive soundness checks
        // with larger random 3-regular ones.
        let (n, sigma) = if k % 2 == 0 {
            (4, rng.gen_range(1..=2))
        } else {
            (6, rng.gen_range(1..=3))
        };
        let g = random_regular3(rng, n)?;
        let m = rng.gen_range(1..=3);
        let (pi, planted) = planted_rcsp(rng, g, sigma, m)?;
        let id = digest(&pi);
        let full = (pi.graph().vertex_count() + 2 * pi.graph().edge_count()) as u64;
        let phi = PartialAssignment::total(&planted);
        for f in chunk_sizes(n, params.f) {
            let (mut target, art) = rcsp_to_vk_embed(&pi, f)?;
            if params.corrupt_budget {
                target = corrupt(target)?;
            }
            let s = embed_solution_from_assignment(&pi, &phi)?;
            let feasible = target.check_feasible(&s)?;
            let profit = target.profit(&s)?;
            rec.push(
                &format!("F={f}: planted assignment gives a feasible solution of profit |V|+2|E|"),
                &id,
                format!("feasible, {full}"),
                format!("{}, {profit}", if feasible { "feasible" } else { "infeasible" }),
                feasible && profit == full,
            );
            if !feasible {
                continue;
            }
            let back = embed_extract(&pi, &target, &art, &s)?;
            rec.push(
                &format!("F={f}: extraction recovers a total consistent φ"),
                &id,
                n,
                back.size(),
                back.is_total() && pi.is_consistent(&back)?,
            );
            if target.len() <= 10 {
                let (checked, bad) = soundness_exhaustive(&pi, &target, &art, f)?;
                rec.push(
                    &format!("F={f}: every feasible subset extracts to consistent φ with |φ| >= |V|-2qF"),
                    &id,
                    "0 violations",
                    format!("{bad} violations over {checked} feasible subsets"),
                    bad == 0,
                );
            }
        }
    }
    Ok(())
}

/// Returns (feasible subsets checked, violations).
pub fn soundness_exhaustive(pi: &RcspInstance, target: &VkInstance, art: &EmbedArtifacts, f: usize) -> Result<(usize, usize)> {
    let mut checked = 0;
    let mut bad = 0;
    for s in all_subsets(target.len()) {
        if !target.check_feasible(&s)? {
            continue;
        }
        checked += 1;
        let ok = match embed_extract(pi, target, art, &s) {
            Ok(phi) => pi.is_consistent(&phi)? && phi.size() >= embed_size_bound(pi, f, target.profit(&s)?)?,
            Err(_) => false,
        };
        if !ok {
            bad += 1;
        }
    }
    Ok((checked, bad))
}

fn csp_chain(rng: &mut ChaCha8Rng, count: usize, params: &SuiteParams, rec: &mut Recorder) -> Result<()> {
    for k in 0..count {
        let h = random_regular3(rng, 4)?;
        let sigma = rng.gen_range(1..=3);
        let gamma = if k % 2 == 0 {
            planted_csp2(rng, h, sigma, 0.4)?.0
        } else {
            random_csp2(rng, h, sigma, 0.5)?
        };
        let id = digest(&gamma);
        let edges = gamma.graph().edge_count();
        let (csp, _) = gamma.csp_opt_bruteforce(&params.caps)?;
        let red = csp2_to_rcsp(&gamma)?;
        let (par, psi) = red.instance().par_bruteforce(&params.caps)?;
        rec.push(
            "CSP(Γ) = |E(H)| iff Par(Π) = |E(H)|",
            &id,
            format!("both or neither of CSP={csp}, Par={par} equal {edges}"),
            format!("CSP={csp}, Par={par}"),
            (csp == edges) == (par == edges),
        );
        let t = edges - par;
        let lambda = red.backward(&gamma, &psi)?;
        let sat = gamma.csp_value(&lambda)?;
        let need = edges.saturating_sub(6 * t);
        rec.push("Par = |E(H)|-t gives an assignment satisfying >= |E(H)|-6t edges", &id, format!(">= {need}"), sat, sat >= need);
    }
    Ok(())
}

fn discretize(d_max: usize, b_max: u64, rec: &mut Recorder) -> Result<()> {
    for d in 1..=d_max {
        let disc = Discretizer::new(d, &BigUint::from(b_max))?;
        let gamma = disc.gamma().clone();
        let mut sandwich_bad = 0usize;
        let mut bound_bad = 0usize;
        let mut checked = 0usize;
        for b in 0..=b_max {
            let b_big = BigUint::from(b);
            let b_rat = BigRational::from_integer(BigInt::from(b));
            for x in 0..=b {
                let x_big = BigUint::from(x);
                let x_rat = BigRational::from_integer(BigInt::from(x));
                if b == b_max && x >= 1 {
                    let up = disc.varpi_up(&x_big)?;
                    let down = disc.varpi_down(&x_big)?;
                    if !(down <= x_rat && x_rat <= up && up < &gamma * &x_rat) {
                        sandwich_bad += 1;
                    }
                }
                let (_, v) = disc.digamma_coordinate(&x_big, &b_big)?;
                let cap_up = &gamma * &x_rat;
                let cap_comp = &b_rat - (&b_rat - &x_rat) / &gamma;
                if v > cap_up || v > cap_comp {
                    bound_bad += 1;
                }
                checked += 1;
            }
        }
        let id = format!("d={d},B<={b_max}");
        rec.push(
            &format!("d={d}: ϖ^down(x) <= x <= ϖ^up(x) < γx for 1 <= x <= {b_max}"),
            &id,
            "0 violations",
            format!("{sandwich_bad} violations"),
            sandwich_bad == 0,
        );
        rec.push(
            &format!("d={d}: Ϝ(x) <= γx and Ϝ(x) <= B-(B-x)/γ"),
            &id,
            "0 violations",
            format!("{bound_bad} violations over {checked} pairs"),
            bound_bad == 0,
        );
    }
    Ok(())
}

/// Random R-CSP on a random 3-regular graph with 4, 6 or 8 vertices.
pub fn embed_source<R: Rng>(rng: &mut R) -> Result<(RcspInstance, Vec<usize>)> {
    let n = [4, 6, 8][rng.gen_range(0..3)];
    let g = random_regular3(rng, n)?;
    let sigma = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=3);
    planted_rcsp(rng, g, sigma, m)
}

fn random_subset<R: Rng>(rng: &mut R, from: &[usize]) -> Solution {
    Solution::new(from.iter().copied().filter(|_| rng.gen_bool(0.5)))
}

/// `c_{ℓ,1}(S)` from the constraint loads: `Σ_{j ∈ D_ℓ} w_j(S)·Q^{ord_ℓ(j)}`.
pub fn load_digits_value(pi: &RcspInstance, art: &EmbedArtifacts, l: usize, s: &Solution) -> BigUint {
    let mut power = BigUint::one();
    let mut total = BigUint::zero();
    for &j in &art.chunks[l] {
        power *= &art.q;
        total += &power * constraint_load(pi, j, s);
    }
    total
}

/// Checks the three cost/profit identities on `S`; returns how many fail.
pub fn basic_identity_violations(pi: &RcspInstance, target: &VkInstance, art: &EmbedArtifacts, s: &Solution) -> Result<usize> {
    let cost = target.total_cost(s)?;
    let mut bad = 0;
    let mut profit = 0u64;
    for l in 0..art.chunk_count() {
        let digits = load_digits_value(pi, art, l, s);
        let count = art.chunk_count_of(pi, l, s);
        profit += count as u64;
        if cost[2 * l] != digits {
            bad += 1;
        }
        if &cost[2 * l + 1] + &digits != &art.m_big * count {
            bad += 1;
        }
    }
    if target.profit(s)? != profit {
        bad += 1;
    }
    Ok(bad)
}

/// Checks both count properties on a feasible `S`; returns how many fail.
pub fn count_bound_violations(pi: &RcspInstance, art: &EmbedArtifacts, s: &Solution) -> Result<usize> {
    let m = pi.upsilon() as u64;
    let q = art.q.iter_u64_digits().next().unwrap_or(0);
    let mut bad = 0;
    for l in 0..art.chunk_count() {
        let count = art.chunk_count_of(pi, l, s);
        if count > art.n[l] {
            bad += 1;
        } else if count == art.n[l] {
            let loads: Vec<u64> = art.chunks[l].iter().map(|&j| constraint_load(pi, j, s)).collect();
            let digits_ok = art.q.bits() <= 64 && loads.iter().all(|&w| w < q) && verify_base_q_digits(&loads, q, m)?;
            if !digits_ok || loads.iter().any(|&w| w != m) {
                bad += 1;
            }
        }
    }
    Ok(bad)
}

fn obs_basic(rng: &mut ChaCha8Rng, count: usize, params: &SuiteParams, rec: &mut Recorder) -> Result<()> {
    for _ in 0..count {
        let (pi, _) = embed_source(rng)?;
        let n = pi.graph().vertex_count();
        let f = params.f.unwrap_or_else(|| rng.gen_range(1..=n));
        let (target, art) = rcsp_to_vk_embed(&pi, f)?;
        let id = digest(&pi);
        let items: Vec<usize> = (0..target.len()).collect();
        let mut bad = 0;
        for _ in 0..params.subsets {
            bad += basic_identity_violations(&pi, &target, &art, &random_subset(rng, &items))?;
        }
        rec.push(
            &format!("F={f}: c_1(S) = Σ w_j(S)Q^ord, c_2(S) = M·ΣJ - c_1(S), p(S) = ΣΣJ"),
            &id,
            "0 violations",
            format!("{bad} violations over {} subsets", params.subsets),
            bad == 0,
        );
    }
    Ok(())
}

/// Exhaustive check of the base-`Q` uniqueness fact for `Q <= q_max` and
/// up to `len_max` digits. Returns (vectors checked, violations).
pub fn digit_fact_exhaustive(q_max: u64, len_max: u32) -> Result<(usize, usize)> {
    let mut checked = 0;
    let mut bad = 0;
    for q in 2..=q_max {
        for len in 1..=len_max {
            for code in 0..q.pow(len) {
                let digits: Vec<u64> = (0..len).map(|i| code / q.pow(i) % q).collect();
                for a in 0..q {
                    checked += 1;
                    let direct = digits.iter().all(|&x| x == a);
                    if verify_base_q_digits(&digits, q, a)? != direct {
                        bad += 1;
                    }
                }
            }
        }
    }
    Ok((checked, bad))
}

fn vkw(rng: &mut ChaCha8Rng, count: usize, params: &SuiteParams, rec: &mut Recorder) -> Result<()> {
    let (checked, bad) = digit_fact_exhaustive(7, 4)?;
    rec.push(
        "equal base-Q sums force equal digits (Q <= 7, <= 4 digits)",
        "exhaustive",
        "0 violations",
        format!("{bad} violations over {checked} vectors"),
        bad == 0,
    );
    for _ in 0..count {
        let (pi, planted) = embed_source(rng)?;
        let n = pi.graph().vertex_count();
        let f = params.f.unwrap_or_else(|| rng.gen_range(1..=n));
        let (target, art) = rcsp_to_vk_embed(&pi, f)?;
        let id = digest(&pi);
        let full = embed_solution_from_assignment(&pi, &PartialAssignment::total(&planted))?;
        let items: Vec<usize> = (0..target.len()).collect();
        let mut feasible = 0;
        let mut bad = 0;
        for k in 0..params.subsets {
            // Subsets of a feasible solution are feasible; uniform subsets
            // mostly are not, but exercise the other branch.
            let s = if k % 2 == 0 {
                random_subset(rng, full.items())
            } else {
                random_subset(rng, &items)
            };
            if target.check_feasible(&s)? {
                feasible += 1;
                bad += count_bound_violations(&pi, &art, &s)?;
            }
        }
        rec.push(
            &format!("F={f}: feasible S has ΣJ <= N per chunk, and equality forces w_j(S) = m"),
            &id,
            "0 violations",
            format!("{bad} violations over {feasible} feasible subsets"),
            bad == 0,
        );
    }
    // Exhaustive on K4 with a binary alphabet.
    for _ in 0..count.min(10) {
        let g = Graph::complete(4);
        let m = rng.gen_range(1..=3);
        let (pi, _) = planted_rcsp(rng, g, 2, m)?;
        let id = digest(&pi);
        for f in chunk_sizes(4, params.f) {
            let (target, art) = rcsp_to_vk_embed(&pi, f)?;
            let mut bad = 0;
            let mut feasible = 0;
            for s in all_subsets(target.len()) {
                if target.check_feasible(&s)? {
                    feasible += 1;
                    bad += count_bound_violations(&pi, &art, &s)?;
                }
            }
            rec.push(
                &format!("F={f}: count properties on every feasible subset"),
                &id,
                "0 violations",
                format!("{bad} violations over {feasible} feasible subsets"),
                bad == 0,
            );
        }
    }
    Ok(())
}
