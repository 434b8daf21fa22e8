//! Batch verification of lemmas and theorems over a corpus.
//!
//! Instances are evaluated independently (in parallel when enabled) and
//! aggregated in corpus order, so summaries do not depend on scheduling.
//! An instance whose evaluation exceeds a budget counts as skipped.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::certificate::extract_certificate_with;
use crate::constructions::{verify_apex_cliques, verify_bipartite_sharp, verify_clique_independent};
use crate::corpus::{CorpusItem, Family, Origin};
use crate::decomposition::{
    decompose_with, delta_by_formula, verify_component_criticality, verify_interval_lemma, verify_no_cd_edges,
    verify_vertex_removal, Decomposition,
};
use crate::error::Error;
use crate::format::emit_graph6;
use crate::graph::{Graph, MAX_CONNECTIVITY_K};
use crate::optimizer::has_factor_with;
use crate::par::{self, Parallelism};
use crate::prescription::{DegreeSet, Prescription};
use crate::theorems::{
    verify_amahashi, verify_corollary_ck, verify_g_minus_v_theorem, verify_kconnected_all_pairs, verify_las_vergnas,
    verify_neighborhood_theorem, verify_odd_order_theorem, CheckOptions,
};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    /// No edge between `C` and `D` (under `H_n*`).
    CdLemma,
    /// No `I(v)` contains two consecutive integers.
    IntervalLemma,
    /// Components of `G[D]` are critical with unit deviation.
    CriticalityLemma,
    /// Deleting a vertex of `A` leaves the decomposition otherwise intact.
    VertexRemovalLemma,
    /// The deviation formula equals the searched `δ`.
    DeltaFormula,
    /// Factorless graphs without odd components yield a valid certificate.
    Certificate,
    CorollaryCk,
    /// Odd-degree factors and the odd-component condition, coefficient `2n − 1`.
    Amahashi,
    /// `[1, 2n]`-factors and the isolated-vertex condition with bound `2n`.
    LasVergnas,
    Neighborhood,
    OddOrder,
    GMinusV,
    /// Edge addition between non-adjacent vertices with large neighborhood
    /// union, at the graph's vertex connectivity (up to 8).
    KConnected,
    /// Family members behave as their constructions claim.
    Sharpness,
}

impl Property {
    pub const ALL: [Property; 14] = [
        Property::CdLemma,
        Property::IntervalLemma,
        Property::CriticalityLemma,
        Property::VertexRemovalLemma,
        Property::DeltaFormula,
        Property::Certificate,
        Property::CorollaryCk,
        Property::Amahashi,
        Property::LasVergnas,
        Property::Neighborhood,
        Property::OddOrder,
        Property::GMinusV,
        Property::KConnected,
        Property::Sharpness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::CdLemma => "cd",
            Property::IntervalLemma => "interval",
            Property::CriticalityLemma => "criticality",
            Property::VertexRemovalLemma => "vertex-removal",
            Property::DeltaFormula => "delta-formula",
            Property::Certificate => "certificate",
            Property::CorollaryCk => "corollary-ck",
            Property::Amahashi => "amahashi",
            Property::LasVergnas => "las-vergnas",
            Property::Neighborhood => "neighborhood",
            Property::OddOrder => "odd-order",
            Property::GMinusV => "g-minus-v",
            Property::KConnected => "k-connected",
            Property::Sharpness => "sharpness",
        }
    }

    fn needs_decomposition(self) -> bool {
        matches!(
            self,
            Property::CdLemma
                | Property::IntervalLemma
                | Property::CriticalityLemma
                | Property::VertexRemovalLemma
                | Property::DeltaFormula
        )
    }

    /// `all`, or a comma-separated list of names.
    pub fn parse_list(text: &str) -> Result<Vec<Property>, Error> {
        if text.trim() == "all" {
            return Ok(Property::ALL.to_vec());
        }
        let mut out: Vec<Property> = text.split(',').map(|s| s.trim().parse()).collect::<Result<_, _>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Property, Error> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown property {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub pass: u64,
    pub vacuous: u64,
    pub fail: u64,
    pub skipped: u64,
}

impl Counters {
    fn record(&mut self, verdict: &Verdict) {
        match verdict {
            Verdict::Pass => self.pass += 1,
            Verdict::Vacuous(_) => self.vacuous += 1,
            Verdict::Fail(_) => self.fail += 1,
            Verdict::Skipped(_) => self.skipped += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.pass + self.vacuous + self.fail + self.skipped
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyCounters {
    pub property: &'static str,
    #[serde(flatten)]
    pub counters: Counters,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureWitness {
    /// Position in the corpus.
    pub index: usize,
    pub graph6: String,
    pub property: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationSummary {
    pub n: u32,
    pub instances: usize,
    pub properties: Vec<PropertyCounters>,
    pub failures: Vec<FailureWitness>,
}

impl VerificationSummary {
    pub fn failed(&self) -> bool {
        !self.failures.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HarnessOptions {
    pub check: CheckOptions,
    pub parallelism: Parallelism,
}

fn or_skip(result: Result<Verdict, Error>) -> Verdict {
    result.unwrap_or_else(|e| Verdict::skipped(format!("error: {e}")))
}

/// Largest `k <= 8` for which the graph is `k`-connected (0 if none).
fn connectivity(graph: &Graph) -> usize {
    (1..=MAX_CONNECTIVITY_K.min(graph.order().saturating_sub(1)))
        .take_while(|&k| graph.is_k_connected(k).unwrap_or(false))
        .last()
        .unwrap_or(0)
}

fn certificate_property(graph: &Graph, n: u32, options: &CheckOptions) -> Result<Verdict, Error> {
    if graph.has_odd_component() {
        return Ok(Verdict::skipped("the graph has an odd component"));
    }
    let h_n = Prescription::uniform(graph.order(), DegreeSet::h_n(n)?);
    if has_factor_with(graph, &h_n, &options.budget)? {
        return Ok(Verdict::vacuous("the graph has an H_n-factor"));
    }
    let solve = crate::optimizer::SolveOptions { budget: options.budget, parallelism: Parallelism::Sequential };
    match extract_certificate_with(graph, n, &solve) {
        Ok(_) => Ok(Verdict::Pass),
        Err(Error::TheoremViolation(reason)) => Ok(Verdict::Fail(reason)),
        Err(e) => Err(e),
    }
}

fn sharpness_property(origin: &Origin) -> Result<Verdict, Error> {
    match *origin {
        Origin::Family { family: Family::ApexCliques, n, .. } => verify_apex_cliques(n),
        Origin::Family { family: Family::BipartiteSharp, n, param } => verify_bipartite_sharp(n, param),
        Origin::Family { family: Family::CliqueIndependent, n, param } => verify_clique_independent(n, param),
        _ => Ok(Verdict::skipped("not a family member")),
    }
}

fn lemma_property(
    property: Property,
    graph: &Graph,
    star: &Prescription,
    dec: &Decomposition,
    options: &CheckOptions,
) -> Result<Verdict, Error> {
    let solve = crate::optimizer::SolveOptions { budget: options.budget, parallelism: Parallelism::Sequential };
    match property {
        Property::CdLemma => Ok(verify_no_cd_edges(graph, dec)),
        Property::IntervalLemma => Ok(verify_interval_lemma(dec)),
        Property::CriticalityLemma => verify_component_criticality(graph, star, dec, &solve),
        Property::VertexRemovalLemma => verify_vertex_removal(graph, star, dec, &solve),
        Property::DeltaFormula => {
            let formula = delta_by_formula(graph, star, dec)?;
            Ok(if formula == dec.delta as i64 {
                Verdict::Pass
            } else {
                Verdict::fail(format!("formula gives {formula}, search gives {}", dec.delta))
            })
        }
        _ => unreachable!("not a decomposition property"),
    }
}

/// Verdicts for one instance, aligned with `properties`.
pub fn evaluate(item: &CorpusItem, properties: &[Property], n: u32, options: &CheckOptions) -> Vec<Verdict> {
    let graph = &item.graph;
    let star = DegreeSet::h_n_star(n).map(|s| Prescription::uniform(graph.order(), s));
    let solve = crate::optimizer::SolveOptions { budget: options.budget, parallelism: Parallelism::Sequential };
    let dec = properties
        .iter()
        .any(|p| p.needs_decomposition())
        .then(|| star.clone().and_then(|star| decompose_with(graph, &star, &solve)));
    properties
        .iter()
        .map(|&property| {
            or_skip(match property {
                p if p.needs_decomposition() => match (&star, dec.as_ref().expect("computed above")) {
                    (Ok(star), Ok(dec)) => lemma_property(p, graph, star, dec, options),
                    (Err(e), _) | (_, Err(e)) => Err(e.clone()),
                },
                Property::Certificate => certificate_property(graph, n, options),
                Property::CorollaryCk => verify_corollary_ck(graph, n, options),
                Property::Amahashi => verify_amahashi(graph, n, options),
                Property::LasVergnas => verify_las_vergnas(graph, 2 * n, options),
                Property::Neighborhood => verify_neighborhood_theorem(graph, n, options),
                Property::OddOrder => verify_odd_order_theorem(graph, n, options),
                Property::GMinusV => verify_g_minus_v_theorem(graph, n, options),
                Property::KConnected => match connectivity(graph) {
                    0 => Ok(Verdict::skipped("not connected")),
                    k => verify_kconnected_all_pairs(graph, n, k, options),
                },
                Property::Sharpness => sharpness_property(&item.origin),
                _ => unreachable!("every property is handled"),
            })
        })
        .collect()
}

/// Runs `properties` over `items` and aggregates the verdicts.
pub fn run_verification(
    items: &[CorpusItem],
    properties: &[Property],
    n: u32,
    options: &HarnessOptions,
) -> VerificationSummary {
    let parallel = options.parallelism.enabled(items.len() >= 64);
    let verdicts = par::map(items, parallel, |item| evaluate(item, properties, n, &options.check));
    let mut counters = vec![Counters::default(); properties.len()];
    let mut failures = Vec::new();
    for (index, (item, row)) in items.iter().zip(&verdicts).enumerate() {
        for ((property, verdict), counter) in properties.iter().zip(row).zip(&mut counters) {
            counter.record(verdict);
            if let Verdict::Fail(detail) = verdict {
                failures.push(FailureWitness {
                    index,
                    graph6: emit_graph6(&item.graph),
                    property: property.name(),
                    detail: detail.clone(),
                });
            }
        }
    }
    VerificationSummary {
        n,
        instances: items.len(),
        properties: properties
            .iter()
            .zip(counters)
            .map(|(p, counters)| PropertyCounters { property: p.name(), counters })
            .collect(),
        failures,
    }
}
