//! Tutte-type subset conditions and the neighborhood-union condition.
//!
//! Subset sweeps visit `S` by increasing size, then lexicographically, and
//! report the first violator. Thresholds are compared exactly.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{BudgetError, Error};
use crate::graph::{for_each_subset_of_size, subsets_of_size, Graph, VertexSet};
use crate::par::{self, Parallelism};

pub const DEFAULT_SWEEP_VERTICES: usize = 20;

/// Order from which `Parallelism::Auto` spreads a sweep over threads.
const PARALLEL_ORDER: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub max_vertices: usize,
    pub parallelism: Parallelism,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { max_vertices: DEFAULT_SWEEP_VERTICES, parallelism: Parallelism::Auto }
    }
}

impl SweepOptions {
    pub fn sequential() -> SweepOptions {
        SweepOptions { parallelism: Parallelism::Sequential, ..Default::default() }
    }
}

/// An exact rational, printed as `p/q` (or `p` when integral).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exact(pub Ratio<i64>);

impl Exact {
    pub fn int(v: i64) -> Exact {
        Exact(Ratio::from_integer(v))
    }

    pub fn new(numer: i64, denom: i64) -> Exact {
        Exact(Ratio::new(numer, denom))
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Exact {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            serializer.serialize_i64(self.0.to_integer())
        } else {
            serializer.serialize_str(&self.0.to_string())
        }
    }
}

/// A set at which a condition fails, with the two sides of the violated
/// inequality `lhs <= rhs` (or `lhs > rhs` for the neighborhood condition).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub set: VertexSet,
    pub lhs: Exact,
    pub rhs: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    pub violator: Option<Violation>,
}

impl ConditionReport {
    fn from_violator(violator: Option<Violation>) -> ConditionReport {
        ConditionReport { holds: violator.is_none(), violator }
    }
}

fn check_n(n: u32) -> Result<(), Error> {
    if n == 0 {
        Err(Error::InvalidArgument("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// First `S` (by size, then lexicographically) with `lhs(S) > coeff * |S|`.
fn sweep<F>(
    graph: &Graph,
    include_empty: bool,
    coeff: i64,
    options: &SweepOptions,
    lhs: F,
) -> Result<ConditionReport, Error>
where
    F: Fn(VertexSet) -> i64 + Sync + Send,
{
    let g = graph.order();
    if g > options.max_vertices {
        return Err(BudgetError::TooManyVertices { vertices: g, cap: options.max_vertices }.into());
    }
    let test = |s: VertexSet| {
        let left = lhs(s);
        let right = coeff * s.len() as i64;
        (left > right).then(|| Violation { set: s, lhs: Exact::int(left), rhs: Exact::int(right) })
    };
    let parallel = options.parallelism.enabled(g >= PARALLEL_ORDER);
    let first = if include_empty { 0 } else { 1 };
    for size in first..=g {
        let hit = if parallel {
            par::find_map_first(&subsets_of_size(g, size), true, |&s| test(s))
        } else {
            let mut hit = None;
            for_each_subset_of_size(g, size, |s| {
                hit = test(s);
                hit.is_none()
            });
            hit
        };
        if hit.is_some() {
            return Ok(ConditionReport::from_violator(hit));
        }
    }
    Ok(ConditionReport::from_violator(None))
}

fn odd_after_removal(graph: &Graph) -> impl Fn(VertexSet) -> i64 + Sync + Send + '_ {
    let all = graph.vertices();
    move |s| graph.odd_component_count_within(all.difference(s)) as i64
}

/// `o(G − S) <= 2n|S|` for every `S`, including the empty set.
pub fn check_cui_kano(graph: &Graph, n: u32) -> Result<ConditionReport, Error> {
    check_cui_kano_with(graph, n, &SweepOptions::default())
}

pub fn check_cui_kano_with(graph: &Graph, n: u32, options: &SweepOptions) -> Result<ConditionReport, Error> {
    check_n(n)?;
    sweep(graph, true, 2 * i64::from(n), options, odd_after_removal(graph))
}

/// `o(G − S) <= 2n|S|` for every nonempty `S`.
pub fn check_cui_kano_nonempty(graph: &Graph, n: u32) -> Result<ConditionReport, Error> {
    check_cui_kano_nonempty_with(graph, n, &SweepOptions::default())
}

pub fn check_cui_kano_nonempty_with(graph: &Graph, n: u32, options: &SweepOptions) -> Result<ConditionReport, Error> {
    check_n(n)?;
    sweep(graph, false, 2 * i64::from(n), options, odd_after_removal(graph))
}

/// `o(G − S) <= (2n − 1)|S|` for every `S`; equivalent to an
/// `{1, 3, ..., 2n−1}`-factor.
pub fn check_amahashi(graph: &Graph, n: u32) -> Result<ConditionReport, Error> {
    check_amahashi_with(graph, n, &SweepOptions::default())
}

pub fn check_amahashi_with(graph: &Graph, n: u32, options: &SweepOptions) -> Result<ConditionReport, Error> {
    check_n(n)?;
    sweep(graph, true, 2 * i64::from(n) - 1, options, odd_after_removal(graph))
}

/// `i(G − S) <= n|S|` for every `S`, where `i` counts isolated vertices;
/// equivalent to a `[1, n]`-factor.
pub fn check_las_vergnas(graph: &Graph, n: u32) -> Result<ConditionReport, Error> {
    check_las_vergnas_with(graph, n, &SweepOptions::default())
}

pub fn check_las_vergnas_with(graph: &Graph, n: u32, options: &SweepOptions) -> Result<ConditionReport, Error> {
    check_n(n)?;
    let all = graph.vertices();
    sweep(graph, true, i64::from(n), options, move |s| graph.isolated_count_within(all.difference(s)) as i64)
}

/// The four terms `(g−2)/(2n) − 1`, `(2g−4)/(4n+1)`, `(g−1)/(2n+1)`, `4n−3`.
pub fn neighborhood_terms(g: usize, n: u32) -> [Exact; 4] {
    let g = g as i64;
    let n = i64::from(n);
    [
        Exact(Ratio::new(g - 2, 2 * n) - 1),
        Exact::new(2 * g - 4, 4 * n + 1),
        Exact::new(g - 1, 2 * n + 1),
        Exact::int(4 * n - 3),
    ]
}

pub fn neighborhood_threshold(g: usize, n: u32) -> Exact {
    neighborhood_terms(g, n).into_iter().max().expect("four terms")
}

/// Whether the threshold reduces to its first term `(g−2)/(2n) − 1`.
pub fn threshold_simplifies(g: usize, n: u32) -> Result<bool, Error> {
    check_n(n)?;
    if g == 0 {
        return Err(Error::InvalidArgument("g must be at least 1".into()));
    }
    let terms = neighborhood_terms(g, n);
    Ok(neighborhood_threshold(g, n) == terms[0])
}

/// `|N(u) ∪ N(v)|` exceeds the threshold for every non-adjacent pair.
pub fn check_neighborhood_condition(graph: &Graph, n: u32) -> Result<ConditionReport, Error> {
    check_n(n)?;
    let threshold = neighborhood_threshold(graph.order(), n);
    let violator = graph.non_edges().find_map(|(u, v)| {
        let union = Exact::int(VertexSet(graph.adjacency()[u] | graph.adjacency()[v]).len() as i64);
        (union <= threshold).then(|| Violation { set: VertexSet::from_slice(&[u, v]), lhs: union, rhs: threshold })
    });
    Ok(ConditionReport::from_violator(violator))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizer::has_factor;
    use crate::prescription::{DegreeSet, Prescription};

    fn apex() -> Graph {
        Graph::complete(1).join(&Graph::complete(3).copies(3))
    }

    #[test]
    fn cui_kano_examples() {
        let r = check_cui_kano(&apex(), 1).unwrap();
        assert!(!r.holds);
        let v = r.violator.unwrap();
        assert_eq!(v.set, VertexSet::singleton(0));
        assert_eq!((v.lhs, v.rhs), (Exact::int(3), Exact::int(2)));

        let r = check_cui_kano(&Graph::complete(3), 1).unwrap();
        assert_eq!(r.violator.unwrap().set, VertexSet::EMPTY);
        assert!(check_cui_kano(&Graph::complete(4), 1).unwrap().holds);
    }

    #[test]
    fn cui_kano_nonempty_examples() {
        assert!(check_cui_kano_nonempty(&Graph::complete(3), 1).unwrap().holds);
        let r = check_cui_kano_nonempty(&apex(), 1).unwrap();
        assert_eq!(r.violator.unwrap().set, VertexSet::singleton(0));
        assert!(check_cui_kano_nonempty(&Graph::complete(1), 1).unwrap().holds);
    }

    #[test]
    fn amahashi_examples() {
        assert!(check_amahashi(&Graph::complete(4), 1).unwrap().holds);
        let star = Graph::complete_bipartite(1, 3);
        let r = check_amahashi(&star, 1).unwrap();
        let v = r.violator.unwrap();
        assert_eq!(v.set, VertexSet::singleton(0));
        assert_eq!((v.lhs, v.rhs), (Exact::int(3), Exact::int(1)));
        assert!(check_amahashi(&star, 2).unwrap().holds);
        let h_o = Prescription::uniform(4, DegreeSet::h_o(2).unwrap());
        assert!(has_factor(&star, &h_o).unwrap());
    }

    #[test]
    fn las_vergnas_examples() {
        let k25 = Graph::complete_bipartite(2, 5);
        let r = check_las_vergnas(&k25, 2).unwrap();
        let v = r.violator.unwrap();
        assert_eq!(v.set, VertexSet::from_slice(&[0, 1]));
        assert_eq!((v.lhs, v.rhs), (Exact::int(5), Exact::int(4)));
        assert!(check_las_vergnas(&Graph::complete_bipartite(1, 3), 3).unwrap().holds);
        assert!(check_las_vergnas(&Graph::cycle(5), 5).unwrap().holds);
    }

    #[test]
    fn neighborhood_examples() {
        assert!(check_neighborhood_condition(&Graph::complete(6), 1).unwrap().holds);

        let star = Graph::complete_bipartite(1, 3);
        assert_eq!(neighborhood_threshold(4, 1), Exact::int(1));
        let r = check_neighborhood_condition(&star, 1).unwrap();
        let v = r.violator.unwrap();
        assert_eq!(v.set, VertexSet::from_slice(&[1, 2]));
        assert_eq!(v.lhs, Exact::int(1));

        let octahedron = Graph::complete_bipartite(2, 2).join(&Graph::empty(2));
        assert_eq!(neighborhood_threshold(6, 1), Exact::new(5, 3));
        assert!(check_neighborhood_condition(&octahedron, 1).unwrap().holds);
        let p = Prescription::uniform(6, DegreeSet::h_n(1).unwrap());
        assert!(has_factor(&octahedron, &p).unwrap());
    }

    #[test]
    fn threshold_examples() {
        assert!(threshold_simplifies(12, 1).unwrap());
        assert!(!threshold_simplifies(4, 1).unwrap());
        assert!(threshold_simplifies(38, 2).unwrap());
        assert!(threshold_simplifies(1, 0).is_err());
    }

    #[test]
    fn threshold_simplifies_beyond_bound() {
        for n in 1..=6u32 {
            let bound = (8 * n * n + 2 * n + 2) as usize;
            for g in bound..bound + 200 {
                assert!(threshold_simplifies(g, n).unwrap(), "g={g}, n={n}");
            }
        }
    }

    #[test]
    fn sweep_cap_and_parallel_agreement() {
        let big = Graph::complete(21);
        assert!(matches!(check_cui_kano(&big, 1), Err(Error::Budget(BudgetError::TooManyVertices { .. }))));
        let g = Graph::complete_bipartite(3, 12);
        let seq = check_las_vergnas_with(&g, 3, &SweepOptions::sequential()).unwrap();
        let par =
            check_las_vergnas_with(&g, 3, &SweepOptions { parallelism: Parallelism::Parallel, ..Default::default() })
                .unwrap();
        assert_eq!(seq, par);
        assert!(!seq.holds);
        assert_eq!(seq.violator.unwrap().set, VertexSet::from_slice(&[0, 1, 2]));
        assert!(check_cui_kano(&g, 0).is_err());
    }
}
