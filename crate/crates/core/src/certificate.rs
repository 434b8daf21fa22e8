//! Obstruction certificates for `H_n`-factors.
//!
//! For a graph without odd components and without an `H_n`-factor, the set
//! `A` of the `H_n*`-decomposition (`H_n* = H_n ∪ {−1}`) leaves at least
//! `2n|A| + 1` odd components that have no `H_n`-factor. Every certificate is
//! re-checked on construction, each component by its own factor search.

use serde::Serialize;

use crate::decomposition::decompose_with;
use crate::error::Error;
use crate::graph::{Graph, VertexSet};
use crate::optimizer::{has_factor_with, Budget, SolveOptions};
use crate::par;
use crate::prescription::{DegreeSet, Prescription};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub n: u32,
    pub s_set: VertexSet,
    /// Odd components of `G − S` without an `H_n`-factor, by smallest vertex.
    pub odd_comps: Vec<VertexSet>,
    pub factorless_flags: Vec<bool>,
    /// `o(G − S)`, counting every odd component.
    pub odd_total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateChecks {
    pub inequality_lhs: usize,
    pub inequality_rhs: usize,
    pub per_component_factorless: Vec<bool>,
    pub odd_components_total: usize,
}

/// JSON shape of a [`Certificate`].
#[derive(Clone, Debug, Serialize)]
pub struct CertificateSummary {
    pub n: u32,
    pub s_set: VertexSet,
    pub odd_components: Vec<VertexSet>,
    pub checks: CertificateChecks,
}

impl Certificate {
    /// `2n|S| + 1`.
    pub fn required(&self) -> usize {
        2 * self.n as usize * self.s_set.len() + 1
    }

    pub fn summary(&self) -> CertificateSummary {
        CertificateSummary {
            n: self.n,
            s_set: self.s_set,
            odd_components: self.odd_comps.clone(),
            checks: CertificateChecks {
                inequality_lhs: self.odd_comps.len(),
                inequality_rhs: self.required() - 1,
                per_component_factorless: self.factorless_flags.clone(),
                odd_components_total: self.odd_total,
            },
        }
    }

    /// Re-checks every invariant against `graph`; `Err` names the first
    /// broken one.
    pub fn validate(&self, graph: &Graph) -> Result<(), String> {
        if self.s_set.is_empty() {
            return Err("S is empty".into());
        }
        if self.odd_comps.len() != self.factorless_flags.len() {
            return Err("one flag per component expected".into());
        }
        let rest = graph.vertices().difference(self.s_set);
        let components = graph.components_within(rest);
        for (c, &flag) in self.odd_comps.iter().zip(&self.factorless_flags) {
            if c.len() % 2 == 0 {
                return Err(format!("component {c:?} has even order"));
            }
            if !components.contains(c) {
                return Err(format!("{c:?} is not a component of G − S"));
            }
            if !flag {
                return Err(format!("component {c:?} has an H_{}-factor", self.n));
            }
        }
        if self.odd_comps.len() < self.required() {
            return Err(format!(
                "{} factorless odd components, at least {} required",
                self.odd_comps.len(),
                self.required()
            ));
        }
        Ok(())
    }
}

/// Builds and validates the certificate for `G` and `n`.
///
/// Errors with `Precondition` when `G` has an odd component or an
/// `H_n`-factor, and with `TheoremViolation` when the constructed set fails
/// validation.
pub fn extract_certificate(graph: &Graph, n: u32) -> Result<Certificate, Error> {
    extract_certificate_with(graph, n, &SolveOptions::default())
}

pub fn extract_certificate_with(graph: &Graph, n: u32, options: &SolveOptions) -> Result<Certificate, Error> {
    let h_n = Prescription::uniform(graph.order(), DegreeSet::h_n(n)?);
    if graph.has_odd_component() {
        return Err(Error::Precondition("the graph has an odd component".into()));
    }
    let budget = Budget { max_vertices: graph.order().max(options.budget.max_vertices), ..options.budget };
    if has_factor_with(graph, &h_n, &budget)? {
        return Err(Error::Precondition(format!("the graph has an H_{n}-factor")));
    }
    let star = Prescription::uniform(graph.order(), DegreeSet::h_n_star(n)?);
    let dec = decompose_with(graph, &star, options)?;
    let s_set = dec.a_set;
    let rest = graph.vertices().difference(s_set);
    let odd: Vec<VertexSet> = graph.components_within(rest).into_iter().filter(|c| c.len() % 2 == 1).collect();
    let flags = par::map(&odd, options.parallelism.enabled(odd.len() >= 8), |&c| -> Result<bool, Error> {
        let sub = graph.induced(c)?;
        let p = Prescription::uniform(sub.graph.order(), DegreeSet::h_n(n)?);
        Ok(!has_factor_with(&sub.graph, &p, &Budget { max_vertices: sub.graph.order(), ..budget })?)
    });
    let mut odd_comps = Vec::new();
    for (c, flag) in odd.iter().zip(flags) {
        if flag? {
            odd_comps.push(*c);
        }
    }
    let certificate =
        Certificate { n, s_set, factorless_flags: vec![true; odd_comps.len()], odd_comps, odd_total: odd.len() };
    certificate.validate(graph).map_err(Error::TheoremViolation)?;
    Ok(certificate)
}
