//! Command-line front end: generate instances, run reductions, solve, and
//! run the verification suites.

pub mod format;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dimknap_core::approx::{
    approx_2unbounded, approx_lp_rounding, approx_sqrt_d, split_by_boundedness,
};
use dimknap_core::gen::{
    planted_csp2, planted_rcsp, planted_sat, random_csp2, random_gcsp, random_graph, random_rcsp,
    random_regular3, random_vk, seeded, GenRng, VkFlavor,
};
use dimknap_core::knapsack::{solve_bruteforce, solve_dp};
use dimknap_core::reductions::{
    csp2_to_rcsp, rcsp_to_vk_embed, rcsp_to_vk_simple, sat_to_rcsp_disperser_route, sat_to_rcsp_embedding_route,
};
use dimknap_core::verify::{run_suite, Suite, SuiteParams, VerificationReport};
use dimknap_core::{Caps, Error, Graph, Solution, VkInstance};

use format::{ArtifactsFile, Csp2File, GcspFile, InstanceFile, RcspFile, SatFile, VkFile};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;
pub const EXIT_OTHER: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "dimknap", version, about = "Multidimensional knapsack reductions and approximation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on enumerated states for brute-force oracles.
    #[arg(long = "cap-enum", global = true)]
    pub cap_enum: Option<u128>,
    /// Cap on DP lattice cells.
    #[arg(long = "cap-lattice", global = true)]
    pub cap_lattice: Option<u64>,
    /// Output format for result records and reports.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl GlobalOpts {
    pub fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(c) = self.cap_enum {
            caps = caps.with_enumeration(c);
        }
        if let Some(c) = self.cap_lattice {
            caps = caps.with_lattice(c);
        }
        caps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Apply a reduction to an instance file.
    Reduce(ReduceArgs),
    /// Solve a VK instance file.
    Solve(SolveArgs),
    /// Run a property suite over seeded random instances.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Sat,
    Rcsp,
    Csp2,
    Gcsp,
    Vk,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: GenKind,
    #[arg(long, default_value_t = 6)]
    pub variables: usize,
    #[arg(long, default_value_t = 8)]
    pub clauses: usize,
    #[arg(long, default_value_t = 4)]
    pub vertices: usize,
    /// Use a random 3-regular constraint graph.
    #[arg(long)]
    pub regular3: bool,
    /// Edge probability when the graph is not 3-regular.
    #[arg(long = "edge-prob", default_value_t = 0.5)]
    pub edge_prob: f64,
    #[arg(long, default_value_t = 2)]
    pub alphabet: usize,
    /// `|Υ|` for R-CSP and G-CSP.
    #[arg(long, default_value_t = 2)]
    pub range: usize,
    /// Plant a satisfying / consistent total assignment.
    #[arg(long)]
    pub planted: bool,
    /// Pair density for 2-CSP relations.
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    #[arg(long, default_value_t = 8)]
    pub items: usize,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long = "w-max", default_value_t = 20)]
    pub w_max: u64,
    #[arg(long = "p-max", default_value_t = 10)]
    pub p_max: u64,
    /// random, bounded, unbounded or mixed.
    #[arg(long, default_value = "random")]
    pub flavor: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    #[value(name = "sat2rcsp-embed")]
    Sat2RcspEmbed,
    #[value(name = "sat2rcsp-disperser")]
    Sat2RcspDisperser,
    #[value(name = "csp2rcsp")]
    Csp2Rcsp,
    #[value(name = "rcsp2vk-simple")]
    Rcsp2VkSimple,
    #[value(name = "rcsp2vk-embed")]
    Rcsp2VkEmbed,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(value_enum)]
    pub route: Route,
    #[arg(long)]
    pub input: PathBuf,
    /// Chunk size for rcsp2vk-embed.
    #[arg(long = "F", default_value_t = 1)]
    pub f: usize,
    /// Target graph size for the 3-SAT routes.
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    /// Disperser union size.
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    /// Where to write the rcsp2vk-embed audit record (defaults next to --out).
    #[arg(long)]
    pub artifacts: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Dp,
    Approx,
    #[value(name = "approx-unbounded")]
    ApproxUnbounded,
    #[value(name = "approx-lp")]
    ApproxLp,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(value_enum)]
    pub method: Method,
    #[arg(long)]
    pub input: PathBuf,
    /// Also compute the exact optimum by brute force and report the ratio.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// simple-roundtrip, embed-roundtrip, csp-chain, discretize, obs-basic or vkw.
    pub suite: String,
    #[arg(long)]
    pub instances: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub subsets: usize,
    /// Restrict the embed suites to one chunk size.
    #[arg(long = "F")]
    pub f: Option<usize>,
    /// Negative control: lower one budget of each embed target by 1.
    #[arg(long = "corrupt-budget")]
    pub corrupt_budget: bool,
}

/// Maps an error to the documented exit status.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<VerificationFailed>().is_some() {
        return EXIT_VERIFY;
    }
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::CapExceeded { .. }) => EXIT_CAP,
        Some(Error::Input(_)) | Some(Error::Precondition(_)) => EXIT_USAGE,
        Some(Error::Construction(_)) => EXIT_OTHER,
        None => EXIT_OTHER,
    }
}

#[derive(Debug)]
pub struct VerificationFailed(pub usize);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "verification failed: {} check(s) did not pass", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

pub fn run(cli: &Cli) -> Result<()> {
    let started = Instant::now();
    let result = match &cli.command {
        Command::Gen(args) => cmd_gen(args, &cli.global),
        Command::Reduce(args) => cmd_reduce(args, &cli.global),
        Command::Solve(args) => cmd_solve(args, &cli.global),
        Command::Verify(args) => cmd_verify(args, &cli.global),
    };
    eprintln!("wall time: {:.3} s", started.elapsed().as_secs_f64());
    result
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read_instance(path: &Path) -> Result<InstanceFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    InstanceFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn gen_graph(args: &GenArgs, rng: &mut GenRng) -> Result<Graph> {
    if args.regular3 {
        Ok(random_regular3(rng, args.vertices)?)
    } else {
        Ok(random_graph(rng, args.vertices, args.edge_prob))
    }
}

pub fn cmd_gen(args: &GenArgs, global: &GlobalOpts) -> Result<()> {
    let mut rng = seeded(global.seed);
    let file = match args.kind {
        GenKind::Sat => {
            let (phi, _) = planted_sat(&mut rng, args.variables, args.clauses)?;
            InstanceFile::Sat(SatFile::from(&phi))
        }
        GenKind::Rcsp => {
            let g = gen_graph(args, &mut rng)?;
            let pi = if args.planted {
                planted_rcsp(&mut rng, g, args.alphabet, args.range)?.0
            } else {
                random_rcsp(&mut rng, g, args.alphabet, args.range)?
            };
            InstanceFile::Rcsp(RcspFile::from(&pi))
        }
        GenKind::Csp2 => {
            let g = gen_graph(args, &mut rng)?;
            let gamma = if args.planted {
                planted_csp2(&mut rng, g, args.alphabet, args.density)?.0
            } else {
                random_csp2(&mut rng, g, args.alphabet, args.density)?
            };
            InstanceFile::Csp2(Csp2File::from(&gamma))
        }
        GenKind::Gcsp => {
            let g = gen_graph(args, &mut rng)?;
            InstanceFile::Gcsp(GcspFile::from(&random_gcsp(&mut rng, g, args.alphabet, args.range)?))
        }
        GenKind::Vk => {
            let flavor: VkFlavor = args.flavor.parse()?;
            let inst = random_vk(&mut rng, args.items, args.dim, args.w_max, args.p_max, flavor)?;
            InstanceFile::Vk(VkFile::from(&inst))
        }
    };
    emit(global.out.as_deref(), &file.to_json())
}

pub fn cmd_reduce(args: &ReduceArgs, global: &GlobalOpts) -> Result<()> {
    let caps = global.caps();
    let input = read_instance(&args.input)?;
    let route = args.route.to_possible_value().expect("no skipped values").get_name().to_string();
    let target = (|| -> Result<InstanceFile> {
        Ok(match args.route {
            Route::Sat2RcspEmbed => {
                let route = sat_to_rcsp_embedding_route(&input.expect_sat()?, args.k, &caps)?;
                eprintln!("embedding depth: {}", route.check.depth);
                warn_all(&route.reduction.warnings);
                InstanceFile::Rcsp(RcspFile::from(&route.reduction.instance))
            }
            Route::Sat2RcspDisperser => {
                let phi = input.expect_sat()?;
                let route = sat_to_rcsp_disperser_route(&phi, args.k, args.r, args.epsilon, global.seed, &caps)?;
                eprintln!("disperser set size: {}", route.disperser.set_size());
                warn_all(&route.reduction.warnings);
                InstanceFile::Rcsp(RcspFile::from(&route.reduction.instance))
            }
            Route::Csp2Rcsp => {
                let red = csp2_to_rcsp(&input.expect_csp2()?)?;
                InstanceFile::Rcsp(RcspFile::from(red.instance()))
            }
            Route::Rcsp2VkSimple => InstanceFile::Vk(VkFile::from(&rcsp_to_vk_simple(&input.expect_rcsp()?))),
            Route::Rcsp2VkEmbed => {
                let (vk, artifacts) = rcsp_to_vk_embed(&input.expect_rcsp()?, args.f)?;
                let path = args
                    .artifacts
                    .clone()
                    .or_else(|| global.out.as_ref().map(|p| p.with_extension("artifacts.json")));
                match path {
                    Some(path) => {
                        let mut text = serde_json::to_string_pretty(&ArtifactsFile::from(&artifacts))?;
                        text.push('\n');
                        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                    }
                    None => eprintln!("note: pass --artifacts or --out to keep the embed artifacts"),
                }
                InstanceFile::Vk(VkFile::from(&vk))
            }
        })
    })()
    .with_context(|| format!("route {route}"))?;
    emit(global.out.as_deref(), &target.to_json())
}

fn warn_all(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveRecord {
    pub method: String,
    pub value: u64,
    pub witness: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_opt: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

fn solve(method: Method, inst: &VkInstance, seed: u64, caps: &Caps) -> Result<Solution> {
    Ok(match method {
        Method::Brute => solve_bruteforce(inst, caps)?.1,
        Method::Dp => solve_dp(inst, caps)?.1,
        Method::Approx => approx_sqrt_d(inst, seed, caps)?.solution,
        Method::ApproxUnbounded => {
            let items = split_by_boundedness(inst).unbounded;
            approx_2unbounded(&inst.restrict(&items), caps)?.lift(&items)
        }
        Method::ApproxLp => {
            let items = split_by_boundedness(inst).bounded;
            approx_lp_rounding(&inst.restrict(&items), seed, caps)?.lift(&items)
        }
    })
}

pub fn cmd_solve(args: &SolveArgs, global: &GlobalOpts) -> Result<()> {
    let caps = global.caps();
    let inst = read_instance(&args.input)?.expect_vk()?;
    let sol = solve(args.method, &inst, global.seed, &caps)?;
    if !inst.check_feasible(&sol)? {
        bail!("solver returned an infeasible solution");
    }
    let value = inst.profit(&sol)?;
    let (oracle_opt, ratio) = if args.oracle {
        let (opt, _) = solve_bruteforce(&inst, &caps)?;
        let ratio = if opt == 0 { 1.0 } else { value as f64 / opt as f64 };
        (Some(opt), Some(ratio))
    } else {
        (None, None)
    };
    let method = args.method.to_possible_value().expect("no skipped values").get_name().to_string();
    let record = SolveRecord {
        method,
        value,
        witness: sol.items().to_vec(),
        oracle_opt,
        ratio,
    };
    let text = match global.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&record)?;
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["method", "value", "witness", "oracle_opt", "ratio"])?;
            let witness: Vec<String> = record.witness.iter().map(ToString::to_string).collect();
            w.write_record([
                record.method.clone(),
                record.value.to_string(),
                witness.join(" "),
                record.oracle_opt.map(|o| o.to_string()).unwrap_or_default(),
                record.ratio.map(|r| r.to_string()).unwrap_or_default(),
            ])?;
            String::from_utf8(w.into_inner()?)?
        }
    };
    emit(global.out.as_deref(), &text)
}

pub fn report_csv(report: &VerificationReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["suite", "check", "digest", "expected", "observed", "pass"])?;
    for r in &report.records {
        w.write_record([
            report.suite.as_str(),
            &r.check,
            &r.digest,
            &r.expected,
            &r.observed,
            if r.pass { "true" } else { "false" },
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn cmd_verify(args: &VerifyArgs, global: &GlobalOpts) -> Result<()> {
    let suite: Suite = args.suite.parse()?;
    let params = SuiteParams {
        seed: global.seed,
        instances: args.instances,
        subsets: args.subsets,
        f: args.f,
        corrupt_budget: args.corrupt_budget,
        caps: global.caps(),
    };
    let report = run_suite(suite, &params)?;
    let text = match global.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report)?;
            s.push('\n');
            s
        }
        OutputFormat::Csv => report_csv(&report)?,
    };
    emit(global.out.as_deref(), &text)?;
    for r in report.failures() {
        eprintln!("FAIL {} [{}]: expected {}, observed {}", r.check, r.digest, r.expected, r.observed);
    }
    let failed = report.failures().count();
    if failed > 0 {
        return Err(VerificationFailed(failed).into());
    }
    Ok(())
}
