//! The `(A, B, C, D)` vertex partition obtained by comparing each optimal
//! degree set `I_H(v)` with `H(v)`, the deviation formula it yields, and
//! runtime checks of the structural lemmas that hold for allowed
//! prescriptions.

use serde::Serialize;

use crate::error::Error;
use crate::graph::{Graph, VertexSet};
use crate::optimizer::{self, DegreeMask, SolveOptions};
use crate::prescription::{vertex_deviation, Prescription};
use crate::verdict::Verdict;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub a_set: VertexSet,
    pub b_set: VertexSet,
    pub c_set: VertexSet,
    pub d_set: VertexSet,
    pub degree_sets: Vec<DegreeMask>,
    /// `δ(H)` from the exact search.
    pub delta: u64,
    pub prescription: Prescription,
}

/// JSON shape of a decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionSummary {
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
    pub d: VertexSet,
    pub degree_sets: Vec<DegreeMask>,
    pub delta_search: u64,
    pub delta_formula: i64,
}

impl Decomposition {
    pub fn order(&self) -> usize {
        self.degree_sets.len()
    }

    pub fn summary(&self, graph: &Graph) -> Result<DecompositionSummary, Error> {
        Ok(DecompositionSummary {
            a: self.a_set,
            b: self.b_set,
            c: self.c_set,
            d: self.d_set,
            degree_sets: self.degree_sets.clone(),
            delta_search: self.delta,
            delta_formula: delta_by_formula(graph, &self.prescription, self)?,
        })
    }

    /// The decomposition with every class mapped through `labels`.
    fn lifted(&self, labels: &[usize]) -> [VertexSet; 4] {
        let lift = |s: VertexSet| s.iter().map(|v| labels[v]).collect();
        [lift(self.a_set), lift(self.b_set), lift(self.c_set), lift(self.d_set)]
    }
}

pub fn decompose(graph: &Graph, prescription: &Prescription) -> Result<Decomposition, Error> {
    decompose_with(graph, prescription, &SolveOptions::default())
}

pub fn decompose_with(
    graph: &Graph,
    prescription: &Prescription,
    options: &SolveOptions,
) -> Result<Decomposition, Error> {
    prescription.check_host(graph)?;
    if let Some(v) = prescription.first_disallowed() {
        return Err(Error::NotAllowed(v));
    }
    let report = optimizer::solve_with(graph, prescription, options)?;
    let mut classes = [VertexSet::EMPTY; 4];
    for (v, &optimal) in report.degree_sets.iter().enumerate() {
        let set = prescription.get(v);
        let (lo, hi) = (i64::from(optimal.min().expect("nonempty")), i64::from(optimal.max().expect("nonempty")));
        let class = if optimal.is_within(set) {
            2
        } else if lo >= set.max() {
            0
        } else if hi <= set.min() {
            1
        } else {
            3
        };
        classes[class].insert(v);
    }
    let [a_set, b_set, c_set, d_set] = classes;
    Ok(Decomposition {
        a_set,
        b_set,
        c_set,
        d_set,
        degree_sets: report.degree_sets,
        delta: report.delta,
        prescription: prescription.clone(),
    })
}

/// `c(D) + Σ_{B} min H(v) − Σ_{A} max H(v) − Σ_{B} d_{G−A}(v)`.
pub fn delta_by_formula(graph: &Graph, prescription: &Prescription, dec: &Decomposition) -> Result<i64, Error> {
    if dec.order() != graph.order() || &dec.prescription != prescription {
        return Err(Error::InvalidArgument("decomposition does not belong to this graph and prescription".into()));
    }
    let without_a = graph.vertices().difference(dec.a_set);
    let components = graph.component_count_within(dec.d_set) as i64;
    let b_min: i64 = dec.b_set.iter().map(|v| prescription.get(v).min()).sum();
    let a_max: i64 = dec.a_set.iter().map(|v| prescription.get(v).max()).sum();
    let b_deg: i64 = dec.b_set.iter().map(|v| graph.edges_into(v, without_a) as i64).sum();
    Ok(components + b_min - a_max - b_deg)
}

/// Connected with every vertex in `D`.
pub fn is_critical(graph: &Graph, prescription: &Prescription) -> Result<bool, Error> {
    is_critical_with(graph, prescription, &SolveOptions::default())
}

pub fn is_critical_with(graph: &Graph, prescription: &Prescription, options: &SolveOptions) -> Result<bool, Error> {
    if graph.order() == 0 || !graph.is_connected() {
        return Ok(false);
    }
    let dec = decompose_with(graph, prescription, options)?;
    Ok(dec.d_set == graph.vertices())
}

/// No edge joins `C` and `D`.
pub fn verify_no_cd_edges(graph: &Graph, dec: &Decomposition) -> Verdict {
    if dec.c_set.is_empty() || dec.d_set.is_empty() {
        return Verdict::vacuous("C or D is empty");
    }
    for v in dec.c_set.iter() {
        if let Some(w) = graph.neighbors(v).intersection(dec.d_set).min() {
            return Verdict::fail(format!("edge {v}-{w} joins C and D"));
        }
    }
    Verdict::Pass
}

/// For `v` in `D`, `[min I(v), max I(v)] ∩ H(v)` holds no two consecutive
/// integers.
pub fn verify_interval_lemma(dec: &Decomposition) -> Verdict {
    if dec.d_set.is_empty() {
        return Verdict::vacuous("D is empty");
    }
    if let Some(v) = dec.prescription.first_disallowed() {
        return Verdict::skipped(format!("prescription not allowed at {v}"));
    }
    for v in dec.d_set.iter() {
        let optimal = dec.degree_sets[v];
        let (lo, hi) = (i64::from(optimal.min().expect("nonempty")), i64::from(optimal.max().expect("nonempty")));
        let set = dec.prescription.get(v);
        if let Some(w) = set.values().windows(2).find(|w| w[1] == w[0] + 1 && w[0] >= lo && w[1] <= hi) {
            return Verdict::fail(format!("vertex {v}: [{lo},{hi}] ∩ H contains {} and {}", w[0], w[1]));
        }
    }
    Verdict::Pass
}

/// For each component `T` of `G[D]` under `H' = H_B` restricted to `T`:
/// `δ_{H'} = 1`, every `H'`-optimal subgraph of `T` has exactly one vertex
/// with positive (unit) deviation, and `T` is `H'`-critical.
pub fn verify_component_criticality(
    graph: &Graph,
    prescription: &Prescription,
    dec: &Decomposition,
    options: &SolveOptions,
) -> Result<Verdict, Error> {
    if dec.d_set.is_empty() {
        return Ok(Verdict::vacuous("D is empty"));
    }
    let shifted = prescription.shift_by_set(graph, dec.b_set)?;
    for component in graph.components_within(dec.d_set) {
        let sub = graph.induced(component)?;
        let local = shifted.restrict(&sub.labels);
        let report = optimizer::solve_with(&sub.graph, &local, options)?;
        if report.delta != 1 {
            return Ok(Verdict::fail(format!("component {component:?} has δ = {}", report.delta)));
        }
        let mut bad = None;
        optimizer::for_each_with_deviation(&sub.graph, &local, 1, &options.budget, |edges, degrees| {
            let deviating = degrees.iter().enumerate().filter(|&(v, &d)| vertex_deviation(d, local.get(v)) > 0).count();
            if deviating != 1 && bad.is_none() {
                bad = Some((edges.clone(), deviating));
            }
        })?;
        if let Some((edges, deviating)) = bad {
            return Ok(Verdict::fail(format!(
                "component {component:?}: optimum {edges:?} has {deviating} deviating vertices"
            )));
        }
        if !is_critical_with(&sub.graph, &local, options)? {
            return Ok(Verdict::fail(format!(
                "component {component:?} is not critical under the shifted prescription"
            )));
        }
    }
    Ok(Verdict::Pass)
}

/// Removing any `a` in `A` leaves the other three classes unchanged and
/// shrinks `A` by exactly `a`.
pub fn verify_vertex_removal(
    graph: &Graph,
    prescription: &Prescription,
    dec: &Decomposition,
    options: &SolveOptions,
) -> Result<Verdict, Error> {
    if dec.a_set.is_empty() {
        return Ok(Verdict::vacuous("A is empty"));
    }
    for a in dec.a_set.iter() {
        let sub = graph.delete_vertices(VertexSet::singleton(a))?;
        let local = prescription.restrict(&sub.labels);
        let after = decompose_with(&sub.graph, &local, options)?.lifted(&sub.labels);
        let mut expected_a = dec.a_set;
        expected_a.remove(a);
        let expected = [expected_a, dec.b_set, dec.c_set, dec.d_set];
        if after != expected {
            return Ok(Verdict::fail(format!("removing {a}: got (A,B,C,D) = {after:?}, expected {expected:?}")));
        }
    }
    Ok(Verdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prescription::DegreeSet;

    fn uniform(g: &Graph, values: &[i64]) -> Prescription {
        Prescription::uniform(g.order(), DegreeSet::new(values.iter().copied()).unwrap())
    }

    fn sets(d: &Decomposition) -> [Vec<usize>; 4] {
        [d.a_set.to_vec(), d.b_set.to_vec(), d.c_set.to_vec(), d.d_set.to_vec()]
    }

    #[test]
    fn single_vertex_is_critical() {
        let g = Graph::complete(1);
        let p = uniform(&g, &[-1, 1, 2]);
        let d = decompose(&g, &p).unwrap();
        assert_eq!(sets(&d), [vec![], vec![], vec![], vec![0]]);
        assert_eq!(delta_by_formula(&g, &p, &d).unwrap(), 1);
        assert!(is_critical(&g, &p).unwrap());
        assert_eq!(verify_interval_lemma(&d), Verdict::Pass);
    }

    #[test]
    fn star_decomposition() {
        let g = Graph::complete_bipartite(1, 3);
        let p = uniform(&g, &[-1, 1, 2]);
        let d = decompose(&g, &p).unwrap();
        assert_eq!(sets(&d), [vec![0], vec![], vec![], vec![1, 2, 3]]);
        assert_eq!(delta_by_formula(&g, &p, &d).unwrap(), 1);
        assert!(verify_no_cd_edges(&g, &d).is_ok());
        assert_eq!(verify_interval_lemma(&d), Verdict::Pass);
        let opts = SolveOptions::default();
        assert_eq!(verify_component_criticality(&g, &p, &d, &opts).unwrap(), Verdict::Pass);
        assert_eq!(verify_vertex_removal(&g, &p, &d, &opts).unwrap(), Verdict::Pass);

        // The leaves of the star remain critical singletons once the center goes.
        let rest = g.delete_vertices(VertexSet::singleton(0)).unwrap();
        let d2 = decompose(&rest.graph, &p.restrict(&rest.labels)).unwrap();
        assert_eq!(sets(&d2), [vec![], vec![], vec![], vec![0, 1, 2]]);
    }

    #[test]
    fn star_with_interval_prescription() {
        let g = Graph::complete_bipartite(1, 3);
        let p = uniform(&g, &[1, 2]);
        let d = decompose(&g, &p).unwrap();
        assert_eq!(sets(&d), [vec![0], vec![1, 2, 3], vec![], vec![]]);
        assert_eq!(delta_by_formula(&g, &p, &d).unwrap(), 1);
    }

    #[test]
    fn cycle_conforms() {
        let g = Graph::cycle(4);
        let p = uniform(&g, &[1, 2]);
        let d = decompose(&g, &p).unwrap();
        assert_eq!(d.c_set, g.vertices());
        assert_eq!(delta_by_formula(&g, &p, &d).unwrap(), 0);
        assert!(verify_no_cd_edges(&g, &d).is_ok());
        let opts = SolveOptions::default();
        assert!(matches!(verify_component_criticality(&g, &p, &d, &opts).unwrap(), Verdict::Vacuous(_)));
        assert!(matches!(verify_vertex_removal(&g, &p, &d, &opts).unwrap(), Verdict::Vacuous(_)));
        assert!(!is_critical(&Graph::complete(2), &uniform(&Graph::complete(2), &[1, 2])).unwrap());
    }

    #[test]
    fn formula_rejects_foreign_decomposition() {
        let g = Graph::complete(3);
        let p = uniform(&g, &[1, 2]);
        let d = decompose(&g, &p).unwrap();
        assert!(delta_by_formula(&Graph::complete(4), &p, &d).is_err());
        assert!(delta_by_formula(&g, &uniform(&g, &[1]), &d).is_err());
    }

    #[test]
    fn disallowed_prescription_is_rejected() {
        let g = Graph::complete(3);
        assert!(matches!(decompose(&g, &uniform(&g, &[0, 3])), Err(Error::NotAllowed(0))));
    }

    #[test]
    fn detects_cd_edge() {
        // Hand-built decomposition with an edge from C into D.
        let g = Graph::complete(2);
        let d = Decomposition {
            a_set: VertexSet::EMPTY,
            b_set: VertexSet::EMPTY,
            c_set: VertexSet::singleton(0),
            d_set: VertexSet::singleton(1),
            degree_sets: vec![DegreeMask(1), DegreeMask(1)],
            delta: 0,
            prescription: uniform(&g, &[1]),
        };
        assert!(verify_no_cd_edges(&g, &d).is_fail());
    }
}
