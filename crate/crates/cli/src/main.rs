//! `factorlab`: solve, decompose, certify and check `H`-factor instances, and
//! run batch verification.
//!
//! Exit status: `solve` 0 if a factor exists, 1 if not; `certify` 0 on a
//! valid certificate, 3 on a theorem violation; `check` 0 if the condition
//! holds, 1 if violated; `verify` 1 if any property fails. Errors exit 2.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use factorlab::certificate::extract_certificate_with;
use factorlab::corpus::{CorpusContext, CorpusSpec, Family, EXHAUSTIVE_CAP};
use factorlab::criteria::{
    check_amahashi_with, check_cui_kano_nonempty_with, check_cui_kano_with, check_las_vergnas_with,
    check_neighborhood_condition, ConditionReport, SweepOptions,
};
use factorlab::decomposition::decompose_with;
use factorlab::format::{emit_graph6, parse_graph_auto};
use factorlab::harness::{run_verification, HarnessOptions, Property, VerificationSummary};
use factorlab::optimizer::{solve_with, Budget, SolveOptions};
use factorlab::prescription::parse_overrides;
use factorlab::theorems::CheckOptions;
use factorlab::{DegreeSet, Error, Graph, Prescription};

const ENV_MAX_MILLIS: &str = "FACTORLAB_MAX_MILLIS";

#[derive(Parser)]
#[command(name = "factorlab", version, about = "Exact H-factor solver and verification harness")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Vertex cap for factor searches and subset sweeps; also the order cap
    /// for exhaustive corpora.
    #[arg(long, global = true)]
    max_vertices: Option<usize>,
    /// Edge cap for the exact optimum search.
    #[arg(long, global = true)]
    max_edges: Option<usize>,
    /// Time limit per search; FACTORLAB_MAX_MILLIS takes precedence.
    #[arg(long, global = true)]
    max_millis: Option<u64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file (graph6 or edge list, detected); `-` reads stdin.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum deviation, optimal degree sets and a witness.
    Solve {
        #[command(flatten)]
        input: GraphInput,
        /// `Hn:2`, `Ho:2`, `Hn*:2` or an explicit set such as `{1,3,4}`.
        #[arg(long)]
        prescription: String,
        /// File of per-vertex overrides, one `v: {...}` per line.
        #[arg(long)]
        overrides: Option<PathBuf>,
    },
    /// The (A, B, C, D) decomposition; defaults to `Hn*:N`.
    Decompose {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        prescription: Option<String>,
        #[arg(long)]
        overrides: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// A set S leaving at least 2n|S|+1 odd factorless components.
    Certify {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Evaluate a Tutte-type or neighborhood condition.
    Check {
        condition: Condition,
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Print a family member as graph6.
    Gen {
        family: FamilyArg,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Small side of the bipartite family.
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Clique size of the clique-independent family (odd).
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Check properties over a corpus.
    Verify {
        /// `exhaustive:v<=5`, `random:COUNT,SIZE,P[,SEED]`, `gen:FAMILY:LO..HI`
        /// or a file of graph6 lines.
        #[arg(long)]
        corpus: String,
        /// `all` or a comma-separated list of property names.
        #[arg(long, default_value = "all")]
        properties: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Seed for random corpora that do not name one.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Condition {
    Ck,
    CkNonempty,
    Amahashi,
    LasVergnas,
    Neighborhood,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    ApexCliques,
    BipartiteSharp,
    CliqueIndependent,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::ApexCliques => Family::ApexCliques,
            FamilyArg::BipartiteSharp => Family::BipartiteSharp,
            FamilyArg::CliqueIndependent => Family::CliqueIndependent,
        }
    }
}

impl Global {
    fn budget(&self) -> Result<Budget> {
        let mut budget = Budget::default();
        if let Some(v) = self.max_vertices {
            budget.max_vertices = positive(v, "--max-vertices")?;
        }
        if let Some(e) = self.max_edges {
            budget.max_edges = positive(e, "--max-edges")?;
        }
        budget.max_millis = match std::env::var(ENV_MAX_MILLIS) {
            Ok(v) => Some(v.trim().parse().with_context(|| format!("{ENV_MAX_MILLIS}={v:?} is not a number"))?),
            Err(_) => self.max_millis,
        };
        if budget.max_millis == Some(0) {
            bail!("the time limit must be positive");
        }
        Ok(budget)
    }

    fn sweep(&self) -> Result<SweepOptions> {
        let mut sweep = SweepOptions::default();
        if let Some(v) = self.max_vertices {
            sweep.max_vertices = positive(v, "--max-vertices")?;
        }
        Ok(sweep)
    }
}

fn positive(v: usize, flag: &str) -> Result<usize> {
    if v == 0 {
        bail!("{flag} must be positive");
    }
    Ok(v)
}

fn read_text(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
        return Ok(text);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(input: &GraphInput) -> Result<Graph> {
    let text = read_text(&input.graph)?;
    parse_graph_auto(&text).with_context(|| format!("parsing {}", input.graph.display()))
}

fn read_prescription(graph: &Graph, literal: &str, overrides: Option<&PathBuf>) -> Result<Prescription> {
    let set: DegreeSet = literal.parse()?;
    let base = Prescription::uniform(graph.order(), set);
    match overrides {
        Some(path) => Ok(base.with_overrides(parse_overrides(&read_text(path)?)?)?),
        None => Ok(base),
    }
}

fn emit<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn edges_text(edges: &[(usize, usize)]) -> String {
    if edges.is_empty() {
        return "(none)".into();
    }
    edges.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" ")
}

fn cmd_solve(global: &Global, input: &GraphInput, literal: &str, overrides: Option<&PathBuf>) -> Result<u8> {
    let graph = read_graph(input)?;
    let prescription = read_prescription(&graph, literal, overrides)?;
    let options = SolveOptions::with_budget(global.budget()?);
    let report = solve_with(&graph, &prescription, &options)?;
    let summary = report.summary(&graph);
    if global.json {
        emit(&summary)?;
    } else {
        println!("delta: {}", summary.delta);
        println!("factor: {}", if summary.has_factor { "yes" } else { "no" });
        println!("witness: {}", edges_text(&summary.witness));
        println!("optimal subgraphs: {}", summary.optimum_count);
        for (v, set) in summary.degree_sets.iter().enumerate() {
            println!("I({v}) = {set:?}");
        }
    }
    Ok(if summary.has_factor { 0 } else { 1 })
}

fn cmd_decompose(
    global: &Global,
    input: &GraphInput,
    literal: Option<&str>,
    overrides: Option<&PathBuf>,
    n: u32,
) -> Result<u8> {
    let graph = read_graph(input)?;
    let literal = literal.map_or_else(|| format!("Hn*:{n}"), str::to_owned);
    let prescription = read_prescription(&graph, &literal, overrides)?;
    let dec = decompose_with(&graph, &prescription, &SolveOptions::with_budget(global.budget()?))?;
    let summary = dec.summary(&graph)?;
    if global.json {
        emit(&summary)?;
    } else {
        println!("A = {:?}", summary.a);
        println!("B = {:?}", summary.b);
        println!("C = {:?}", summary.c);
        println!("D = {:?}", summary.d);
        println!("delta: {} (formula: {})", summary.delta_search, summary.delta_formula);
    }
    Ok(0)
}

fn cmd_certify(global: &Global, input: &GraphInput, n: u32) -> Result<u8> {
    let graph = read_graph(input)?;
    let options = SolveOptions::with_budget(global.budget()?);
    match extract_certificate_with(&graph, n, &options) {
        Ok(certificate) => {
            let summary = certificate.summary();
            if global.json {
                emit(&summary)?;
            } else {
                println!("S = {:?}", summary.s_set);
                println!("odd factorless components: {}", summary.odd_components.len());
                for c in &summary.odd_components {
                    println!("  {c:?}");
                }
                println!(
                    "{} >= 2*{n}*{} + 1 = {}",
                    summary.checks.inequality_lhs,
                    summary.s_set.len(),
                    summary.checks.inequality_rhs + 1
                );
            }
            Ok(0)
        }
        Err(Error::TheoremViolation(reason)) => {
            if global.json {
                emit(&serde_json::json!({ "theorem_violation": reason, "graph6": emit_graph6(&graph) }))?;
            } else {
                println!("THEOREM VIOLATION: {reason}");
                println!("graph6: {}", emit_graph6(&graph));
            }
            Ok(3)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_check(global: &Global, condition: Condition, input: &GraphInput, n: u32) -> Result<u8> {
    let graph = read_graph(input)?;
    let sweep = global.sweep()?;
    let report: ConditionReport = match condition {
        Condition::Ck => check_cui_kano_with(&graph, n, &sweep)?,
        Condition::CkNonempty => check_cui_kano_nonempty_with(&graph, n, &sweep)?,
        Condition::Amahashi => check_amahashi_with(&graph, n, &sweep)?,
        Condition::LasVergnas => check_las_vergnas_with(&graph, n, &sweep)?,
        Condition::Neighborhood => check_neighborhood_condition(&graph, n)?,
    };
    if global.json {
        emit(&report)?;
    } else if let Some(v) = &report.violator {
        match condition {
            Condition::Neighborhood => println!("violated at {:?}: {} <= {}", v.set, v.lhs, v.rhs),
            _ => println!("violated at S = {:?}: {} > {}", v.set, v.lhs, v.rhs),
        }
    } else {
        println!("holds");
    }
    Ok(if report.holds { 0 } else { 1 })
}

fn cmd_gen(global: &Global, family: FamilyArg, n: u32, m: u32, k: u32) -> Result<u8> {
    let family = Family::from(family);
    let param = match family {
        Family::ApexCliques => 0,
        Family::BipartiteSharp => m,
        Family::CliqueIndependent => k,
    };
    let graph = family.generate(n, param)?;
    let line = emit_graph6(&graph);
    if global.json {
        emit(&serde_json::json!({
            "family": family.name(),
            "order": graph.order(),
            "size": graph.size(),
            "graph6": line,
        }))?;
    } else {
        println!("{line}");
    }
    Ok(0)
}

fn print_summary(summary: &VerificationSummary) {
    println!("instances: {} (n = {})", summary.instances, summary.n);
    println!("{:<16}{:>10}{:>10}{:>8}{:>10}", "property", "pass", "vacuous", "fail", "skipped");
    for p in &summary.properties {
        let c = p.counters;
        println!("{:<16}{:>10}{:>10}{:>8}{:>10}", p.property, c.pass, c.vacuous, c.fail, c.skipped);
    }
    for f in &summary.failures {
        println!("FAIL {} #{} {}: {}", f.property, f.index, f.graph6, f.detail);
    }
}

fn cmd_verify(global: &Global, corpus: &str, properties: &str, n: u32, seed: Option<u64>) -> Result<u8> {
    let spec: CorpusSpec = corpus.parse()?;
    let properties = Property::parse_list(properties)?;
    let context = CorpusContext { n, seed, exhaustive_cap: global.max_vertices.unwrap_or(EXHAUSTIVE_CAP) };
    let items = spec.load(&context)?;
    let options = HarnessOptions {
        check: CheckOptions { budget: global.budget()?, sweep: global.sweep()? },
        ..Default::default()
    };
    let summary = run_verification(&items, &properties, n, &options);
    if global.json {
        emit(&summary)?;
    } else {
        print_summary(&summary);
    }
    Ok(if summary.failed() { 1 } else { 0 })
}

fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    match &cli.command {
        Command::Solve { input, prescription, overrides } => cmd_solve(g, input, prescription, overrides.as_ref()),
        Command::Decompose { input, prescription, overrides, n } => {
            cmd_decompose(g, input, prescription.as_deref(), overrides.as_ref(), *n)
        }
        Command::Certify { input, n } => cmd_certify(g, input, *n),
        Command::Check { condition, input, n } => cmd_check(g, *condition, input, *n),
        Command::Gen { family, n, m, k } => cmd_gen(g, *family, *n, *m, *k),
        Command::Verify { corpus, properties, n, seed } => cmd_verify(g, corpus, properties, *n, *seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
