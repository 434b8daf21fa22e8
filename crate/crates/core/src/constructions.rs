//! Extremal graph families for `H_n`-factors.
//!
//! * `K_1 + (2n+1)K_{2n+1}`: has an `H_n`-factor yet fails `o(G − S) <= 2n|S|`
//!   at the apex, so that condition is not necessary.
//! * `K_{m, 2nm+1}`: no `H_n`-factor although `o(G − S) < (2n + ε)|S|` for
//!   the small side, once `m > 1/ε`.
//! * `K_k + (2nk+1)K_1` (`k` odd): no `H_n`-factor, but adding any edge
//!   inside the independent side creates one.

use num_rational::Ratio;
use serde::Serialize;

use crate::criteria::Exact;
use crate::error::Error;
use crate::graph::{Graph, VertexSet, MAX_CONNECTIVITY_K, MAX_ORDER};
use crate::optimizer::{has_factor_with, Budget};
use crate::prescription::{DegreeSet, Prescription};
use crate::verdict::Verdict;

/// Vertex count up to which factor existence is decided by direct search.
const DIRECT_SEARCH_ORDER: usize = 16;

fn check_positive(name: &str, value: u32) -> Result<(), Error> {
    if value == 0 {
        return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
    }
    Ok(())
}

fn check_order(order: u64) -> Result<(), Error> {
    if order > MAX_ORDER as u64 {
        return Err(Error::OrderTooLarge { order: order.min(usize::MAX as u64) as usize, max: MAX_ORDER });
    }
    Ok(())
}

/// `K_1 + (2n+1)K_{2n+1}` with the apex at vertex 0 and clique `j` on
/// `1 + j(2n+1) .. 1 + (j+1)(2n+1)`.
pub fn gen_apex_cliques(n: u32) -> Result<Graph, Error> {
    check_positive("n", n)?;
    let side = 2 * u64::from(n) + 1;
    check_order(side * side + 1)?;
    let side = side as usize;
    Ok(Graph::complete(1).join(&Graph::complete(side).copies(side)))
}

/// `K_{m, 2nm+1}` with the `m`-side at `0..m`.
pub fn gen_bipartite_sharp(n: u32, m: u32) -> Result<Graph, Error> {
    check_positive("n", n)?;
    check_positive("m", m)?;
    let (n, m) = (u64::from(n), u64::from(m));
    check_order(m + 2 * n * m + 1)?;
    Ok(Graph::complete_bipartite(m as usize, (2 * n * m + 1) as usize))
}

/// `K_k + (2nk+1)K_1` with the clique at `0..k`; `k` must be odd.
pub fn gen_clique_independent(n: u32, k: u32) -> Result<Graph, Error> {
    check_positive("n", n)?;
    check_positive("k", k)?;
    if k.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("k must be odd, got {k}")));
    }
    let (n, k) = (u64::from(n), u64::from(k));
    check_order(k + 2 * n * k + 1)?;
    Ok(Graph::complete(k as usize).join(&Graph::empty((2 * n * k + 1) as usize)))
}

/// A graph meeting `o(G − S) < (2n + ε)|S|` at `S` but without an
/// `H_n`-factor.
#[derive(Clone, Debug, Serialize)]
pub struct EpsilonWitness {
    #[serde(skip)]
    pub graph: Graph,
    pub m: u32,
    pub s_set: VertexSet,
    pub odd_components: usize,
    /// `(2n + ε)|S|`.
    pub bound: Exact,
}

/// `K_{m, 2nm+1}` with `m` the least integer above `1/ε`, validated before
/// it is returned.
pub fn epsilon_witness(n: u32, epsilon: Ratio<i64>) -> Result<EpsilonWitness, Error> {
    check_positive("n", n)?;
    if epsilon <= Ratio::from_integer(0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    let m = (epsilon.recip().floor() + 1).to_integer();
    let m = u32::try_from(m).map_err(|_| Error::InvalidArgument(format!("epsilon {epsilon} is too small")))?;
    let graph = gen_bipartite_sharp(n, m)?;
    let s_set = VertexSet::full(m as usize);
    let odd_components = graph.odd_component_count_within(graph.vertices().difference(s_set));
    let bound = (Ratio::from_integer(2 * i64::from(n)) + epsilon) * i64::from(m);
    let expected = 2 * n as usize * m as usize + 1;
    if odd_components != expected {
        return Err(Error::TheoremViolation(format!("o(G − S) = {odd_components}, expected {expected}")));
    }
    if Ratio::from_integer(odd_components as i64) >= bound {
        return Err(Error::TheoremViolation(format!("o(G − S) = {odd_components} is not below {bound}")));
    }
    if has_hn_factor_checked(&graph, n, s_set)? {
        return Err(Error::TheoremViolation(format!("K_{{{m},{expected}}} has an H_{n}-factor")));
    }
    Ok(EpsilonWitness { graph, m, s_set, odd_components, bound: Exact(bound) })
}

/// `H_n`-factor existence: direct search on small graphs. On larger ones a
/// factor is first ruled out by counting: every vertex isolated in `G − S`
/// needs an edge into `S`, and `S` offers at most `2n|S|` such edges.
fn has_hn_factor_checked(graph: &Graph, n: u32, s_set: VertexSet) -> Result<bool, Error> {
    let isolated = graph.isolated_count_within(graph.vertices().difference(s_set));
    if graph.order() > DIRECT_SEARCH_ORDER && isolated > 2 * n as usize * s_set.len() {
        return Ok(false);
    }
    let p = Prescription::uniform(graph.order(), DegreeSet::h_n(n)?);
    has_factor_with(graph, &p, &Budget::unlimited())
}

/// `K_1 + (2n+1)K_{2n+1}` has an `H_n`-factor and `o(G − apex) = 2n + 1`.
pub fn verify_apex_cliques(n: u32) -> Result<Verdict, Error> {
    let g = gen_apex_cliques(n)?;
    let odd = g.odd_component_count_within(g.vertices().difference(VertexSet::singleton(0)));
    if odd as u32 != 2 * n + 1 {
        return Ok(Verdict::fail(format!("removing the apex leaves {odd} odd components")));
    }
    let p = Prescription::uniform(g.order(), DegreeSet::h_n(n)?);
    if !has_factor_with(&g, &p, &Budget::unlimited())? {
        return Ok(Verdict::fail("no H_n-factor"));
    }
    Ok(Verdict::Pass)
}

/// `K_{m, 2nm+1}` has no `H_n`-factor.
pub fn verify_bipartite_sharp(n: u32, m: u32) -> Result<Verdict, Error> {
    let g = gen_bipartite_sharp(n, m)?;
    if has_hn_factor_checked(&g, n, VertexSet::full(m as usize))? {
        return Ok(Verdict::fail(format!("K_{{{m},{}}} has an H_{n}-factor", 2 * n * m + 1)));
    }
    Ok(Verdict::Pass)
}

/// `K_k + (2nk+1)K_1` is `k`-connected (checked for `k <= 8`) and has no
/// `H_n`-factor; every two independent vertices have `g − 2nk − 1` common
/// neighbors in their union, and joining them creates an `H_n`-factor.
pub fn verify_clique_independent(n: u32, k: u32) -> Result<Verdict, Error> {
    let g = gen_clique_independent(n, k)?;
    let k = k as usize;
    if k <= MAX_CONNECTIVITY_K && !g.is_k_connected(k)? {
        return Ok(Verdict::fail(format!("the construction is not {k}-connected")));
    }
    if has_hn_factor_checked(&g, n, VertexSet::full(k))? {
        return Ok(Verdict::fail("the construction has an H_n-factor"));
    }
    let p = Prescription::uniform(g.order(), DegreeSet::h_n(n)?);
    let expected = g.order() - 2 * n as usize * k - 1;
    for u in k..g.order() {
        for v in u + 1..g.order() {
            let union = g.neighborhood_union(u, v)?.len();
            if union != expected {
                return Ok(Verdict::fail(format!("|N({u}) ∪ N({v})| = {union}, expected {expected}")));
            }
            if !has_factor_with(&g.with_edge(u, v)?, &p, &Budget::unlimited())? {
                return Ok(Verdict::fail(format!("adding {u}-{v} does not create an H_n-factor")));
            }
        }
    }
    Ok(Verdict::Pass)
}
