//! Instance-level checks of the factor theorems. Each returns
//! [`Verdict::Vacuous`] when the statement's hypothesis fails and
//! [`Verdict::Skipped`] when the instance lies outside its standing
//! assumptions; only `Pass` counts as evidence.

use crate::criteria::{
    check_amahashi_with, check_cui_kano_nonempty_with, check_cui_kano_with, check_las_vergnas_with,
    check_neighborhood_condition, SweepOptions,
};
use crate::decomposition::is_critical_with;
use crate::error::Error;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::optimizer::{has_factor_with, Budget, SolveOptions};
use crate::par::Parallelism;
use crate::prescription::{DegreeSet, Prescription};
use crate::verdict::Verdict;

/// Limits shared by the theorem checks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    pub budget: Budget,
    pub sweep: SweepOptions,
}

impl CheckOptions {
    pub fn sequential() -> CheckOptions {
        CheckOptions { sweep: SweepOptions::sequential(), ..Default::default() }
    }

    fn solve(&self) -> SolveOptions {
        SolveOptions { budget: self.budget, parallelism: Parallelism::Sequential }
    }
}

fn has_set_factor(graph: &Graph, set: DegreeSet, options: &CheckOptions) -> Result<bool, Error> {
    has_factor_with(graph, &Prescription::uniform(graph.order(), set), &options.budget)
}

fn has_hn(graph: &Graph, n: u32, options: &CheckOptions) -> Result<bool, Error> {
    has_set_factor(graph, DegreeSet::h_n(n)?, options)
}

/// `o(G − S) <= 2n|S|` for all `S` implies an `H_n`-factor.
pub fn verify_corollary_ck(graph: &Graph, n: u32, options: &CheckOptions) -> Result<Verdict, Error> {
    let condition = check_cui_kano_with(graph, n, &options.sweep)?;
    if let Some(v) = condition.violator {
        return Ok(Verdict::vacuous(format!("condition fails at S = {:?}", v.set)));
    }
    Ok(if has_hn(graph, n, options)? {
        Verdict::Pass
    } else {
        Verdict::fail("condition holds but there is no H_n-factor")
    })
}

/// A connected graph of odd order with `o(G − S) <= 2n|S|` for all nonempty
/// `S` has an `H_n`-factor or is `H_n*`-critical.
pub fn verify_odd_order_theorem(graph: &Graph, n: u32, options: &CheckOptions) -> Result<Verdict, Error> {
    if graph.order().is_multiple_of(2) || !graph.is_connected() {
        return Ok(Verdict::skipped("not a connected graph of odd order"));
    }
    if let Some(v) = check_cui_kano_nonempty_with(graph, n, &options.sweep)?.violator {
        return Ok(Verdict::skipped(format!("condition fails at S = {:?}", v.set)));
    }
    if has_hn(graph, n, options)? {
        return Ok(Verdict::Pass);
    }
    let star = Prescription::uniform(graph.order(), DegreeSet::h_n_star(n)?);
    Ok(if is_critical_with(graph, &star, &options.solve())? {
        Verdict::Pass
    } else {
        Verdict::fail("no H_n-factor and not H_n*-critical")
    })
}

/// Without odd components, an `H_n`-factor in every `G − v` gives one in `G`.
pub fn verify_g_minus_v_theorem(graph: &Graph, n: u32, options: &CheckOptions) -> Result<Verdict, Error> {
    if graph.order() == 0 || graph.has_odd_component() {
        return Ok(Verdict::skipped("the graph has an odd component"));
    }
    for v in graph.vertices().iter() {
        let sub = graph.delete_vertices(VertexSet::singleton(v))?;
        if !has_hn(&sub.graph, n, options)? {
            return Ok(Verdict::vacuous(format!("G − {v} has no H_n-factor")));
        }
    }
    Ok(if has_hn(graph, n, options)? {
        Verdict::Pass
    } else {
        Verdict::fail("every G − v has an H_n-factor but G has none")
    })
}

/// For `k`-connected `G` of even order and non-adjacent `u, v` with
/// `|N(u) ∪ N(v)| >= g − 2nk`: `G` has an `H_n`-factor iff `G + uv` has.
pub fn verify_kconnected_theorem(
    graph: &Graph,
    n: u32,
    k: usize,
    u: Vertex,
    v: Vertex,
    options: &CheckOptions,
) -> Result<Verdict, Error> {
    graph.check_vertex(u)?;
    graph.check_vertex(v)?;
    if u == v || graph.has_edge(u, v) {
        return Ok(Verdict::skipped(format!("{u} and {v} are not a non-adjacent pair")));
    }
    if graph.order() % 2 == 1 {
        return Ok(Verdict::skipped("odd order"));
    }
    if !graph.is_k_connected(k)? {
        return Ok(Verdict::skipped(format!("not {k}-connected")));
    }
    let union = graph.neighborhood_union(u, v)?.len() as i64;
    let bound = graph.order() as i64 - 2 * i64::from(n) * k as i64;
    if union < bound {
        return Ok(Verdict::skipped(format!("|N(u) ∪ N(v)| = {union} < {bound}")));
    }
    let before = has_hn(graph, n, options)?;
    let after = has_hn(&graph.with_edge(u, v)?, n, options)?;
    Ok(if before == after {
        Verdict::Pass
    } else {
        Verdict::fail(format!("G has an H_n-factor: {before}; G + uv: {after}"))
    })
}

/// The k-connected check for every non-adjacent pair, stopping at the first
/// failure. Vacuous when no pair meets the hypotheses.
pub fn verify_kconnected_all_pairs(graph: &Graph, n: u32, k: usize, options: &CheckOptions) -> Result<Verdict, Error> {
    let mut verdict = Verdict::vacuous("no pair meets the hypotheses");
    for (u, v) in graph.non_edges() {
        match verify_kconnected_theorem(graph, n, k, u, v, options)? {
            Verdict::Skipped(_) => {}
            other => verdict = verdict.and(other),
        }
        if verdict.is_fail() {
            break;
        }
    }
    Ok(verdict)
}

/// Without odd components, the neighborhood-union condition implies an
/// `H_n`-factor.
pub fn verify_neighborhood_theorem(graph: &Graph, n: u32, options: &CheckOptions) -> Result<Verdict, Error> {
    if graph.has_odd_component() {
        return Ok(Verdict::skipped("the graph has an odd component"));
    }
    if let Some(v) = check_neighborhood_condition(graph, n)?.violator {
        return Ok(Verdict::vacuous(format!("condition fails at {:?}", v.set)));
    }
    Ok(if has_hn(graph, n, options)? {
        Verdict::Pass
    } else {
        Verdict::fail("condition holds but there is no H_n-factor")
    })
}

/// `o(G − S) <= (2n − 1)|S|` for all `S` iff an `{1, 3, ..., 2n − 1}`-factor
/// exists.
pub fn verify_amahashi(graph: &Graph, n: u32, options: &CheckOptions) -> Result<Verdict, Error> {
    let condition = check_amahashi_with(graph, n, &options.sweep)?.holds;
    let factor = has_set_factor(graph, DegreeSet::h_o(n)?, options)?;
    Ok(if condition == factor {
        Verdict::Pass
    } else {
        Verdict::fail(format!("condition holds: {condition}; odd factor exists: {factor}"))
    })
}

/// `i(G − S) <= n|S|` for all `S` iff a `[1, n]`-factor exists.
pub fn verify_las_vergnas(graph: &Graph, n: u32, options: &CheckOptions) -> Result<Verdict, Error> {
    let condition = check_las_vergnas_with(graph, n, &options.sweep)?.holds;
    let factor = has_set_factor(graph, DegreeSet::interval(1, i64::from(n))?, options)?;
    Ok(if condition == factor {
        Verdict::Pass
    } else {
        Verdict::fail(format!("condition holds: {condition}; [1,{n}]-factor exists: {factor}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    fn apex() -> Graph {
        Graph::complete(1).join(&Graph::complete(3).copies(3))
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(verify_corollary_ck(&Graph::complete(4), 1, &opts()).unwrap(), Verdict::Pass);
        assert!(matches!(verify_corollary_ck(&apex(), 1, &opts()).unwrap(), Verdict::Vacuous(_)));
        let k25 = Graph::complete_bipartite(2, 5);
        assert!(matches!(verify_corollary_ck(&k25, 1, &opts()).unwrap(), Verdict::Vacuous(_)));
    }

    #[test]
    fn odd_order_examples() {
        for g in [Graph::complete(3), Graph::complete(1), Graph::cycle(5)] {
            assert_eq!(verify_odd_order_theorem(&g, 1, &opts()).unwrap(), Verdict::Pass);
        }
        assert!(matches!(verify_odd_order_theorem(&Graph::complete(4), 1, &opts()).unwrap(), Verdict::Skipped(_)));
    }

    #[test]
    fn g_minus_v_examples() {
        assert_eq!(verify_g_minus_v_theorem(&Graph::cycle(4), 1, &opts()).unwrap(), Verdict::Pass);
        let star = Graph::complete_bipartite(1, 3);
        assert!(matches!(verify_g_minus_v_theorem(&star, 1, &opts()).unwrap(), Verdict::Vacuous(_)));
        assert!(matches!(verify_g_minus_v_theorem(&Graph::complete(2), 1, &opts()).unwrap(), Verdict::Vacuous(_)));
        assert!(matches!(verify_g_minus_v_theorem(&Graph::complete(3), 1, &opts()).unwrap(), Verdict::Skipped(_)));
    }

    #[test]
    fn kconnected_examples() {
        let g = Graph::complete(4).edges().iter().copied().filter(|&e| e != (2, 3)).collect::<Vec<_>>();
        let g = Graph::new(4, g).unwrap();
        assert_eq!(verify_kconnected_theorem(&g, 1, 2, 2, 3, &opts()).unwrap(), Verdict::Pass);
        let star = Graph::complete_bipartite(1, 3);
        assert!(matches!(verify_kconnected_theorem(&star, 1, 1, 1, 2, &opts()).unwrap(), Verdict::Skipped(_)));
        assert!(matches!(
            verify_kconnected_all_pairs(&Graph::complete(6), 1, 2, &opts()).unwrap(),
            Verdict::Vacuous(_)
        ));
        assert!(verify_kconnected_theorem(&star, 1, 1, 1, 1, &opts()).unwrap() != Verdict::Pass);
    }

    #[test]
    fn neighborhood_examples() {
        let octahedron = Graph::complete(6).edges().iter().copied().filter(|&(u, v)| v != u + 3).collect::<Vec<_>>();
        let octahedron = Graph::new(6, octahedron).unwrap();
        assert_eq!(verify_neighborhood_theorem(&octahedron, 1, &opts()).unwrap(), Verdict::Pass);
        let star = Graph::complete_bipartite(1, 3);
        assert!(matches!(verify_neighborhood_theorem(&star, 1, &opts()).unwrap(), Verdict::Vacuous(_)));
    }

    #[test]
    fn equivalences() {
        let star = Graph::complete_bipartite(1, 3);
        for n in 1..=3 {
            for g in [Graph::complete(4), star.clone(), Graph::complete_bipartite(2, 5), Graph::cycle(5)] {
                assert_eq!(verify_amahashi(&g, n, &opts()).unwrap(), Verdict::Pass);
                if n >= 2 {
                    assert_eq!(verify_las_vergnas(&g, n, &opts()).unwrap(), Verdict::Pass);
                }
            }
        }
    }

    #[test]
    fn isolated_vertex_condition_is_not_enough_for_perfect_matchings() {
        // A [1,1]-factor is a perfect matching; odd cycles meet the
        // isolated-vertex condition without having one.
        for g in [Graph::complete(3), Graph::cycle(5)] {
            assert!(verify_las_vergnas(&g, 1, &opts()).unwrap().is_fail());
        }
    }
}
