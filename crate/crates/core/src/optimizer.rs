//! Exact minimization of the deviation over all spanning subgraphs.
//!
//! The search decides edges one at a time in a vertex-elimination order
//! (lowest degree first, each vertex's remaining edges in one run) so that
//! vertices reach their final degree early. A node is pruned when the
//! admissible bound (per vertex, the distance from the interval of
//! still-reachable degrees to its prescribed set) exceeds the best deviation
//! found so far. Ties are never pruned, so every optimal subgraph is
//! visited: that is what makes the degree sets `I_H(v)` exact.

use std::sync::atomic::{AtomicU32, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::error::{BudgetError, Error};
use crate::graph::{Graph, Vertex, MAX_ORDER};
use crate::par::{self, Parallelism};
use crate::prescription::{DegreeSet, Prescription, SpanningSubgraph, Targets};

pub const DEFAULT_MAX_EDGES: usize = 25;
pub const DEFAULT_MAX_VERTICES: usize = 20;

/// Edge count from which `Parallelism::Auto` splits the search tree.
const PARALLEL_EDGES: usize = 18;

/// Search limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Cap on `|E|` for the full optimum sweep.
    pub max_edges: usize,
    /// Cap on `|V|` for the factor-existence wrappers.
    pub max_vertices: usize,
    pub max_millis: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_edges: DEFAULT_MAX_EDGES, max_vertices: DEFAULT_MAX_VERTICES, max_millis: None }
    }
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget { max_edges: usize::MAX, max_vertices: MAX_ORDER, max_millis: None }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub budget: Budget,
    pub parallelism: Parallelism,
}

impl SolveOptions {
    pub fn sequential() -> SolveOptions {
        SolveOptions { parallelism: Parallelism::Sequential, ..Default::default() }
    }

    pub fn with_budget(budget: Budget) -> SolveOptions {
        SolveOptions { budget, ..Default::default() }
    }
}

/// Degrees in `0..=63` as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct DegreeMask(pub u64);

impl DegreeMask {
    pub fn contains(self, d: u32) -> bool {
        d < 64 && self.0 >> d & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros())
    }

    pub fn max(self) -> Option<u32> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros())
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        (0..64).filter(move |&d| self.0 >> d & 1 == 1)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Every member lies in `set`.
    pub fn is_within(self, set: &DegreeSet) -> bool {
        self.iter().all(|d| set.contains(i64::from(d)))
    }
}

impl std::fmt::Debug for DegreeMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for DegreeMask {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Result of an exact solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    /// `δ(H)`.
    pub delta: u64,
    /// The optimal subgraph with the smallest edge mask.
    pub witness: SpanningSubgraph,
    /// `I_H(v)`: degrees of `v` across all optimal subgraphs.
    pub degree_sets: Vec<DegreeMask>,
    pub optimum_count: u64,
}

impl SolveReport {
    pub fn is_factor(&self) -> bool {
        self.delta == 0
    }

    pub fn summary(&self, graph: &Graph) -> SolveSummary {
        SolveSummary {
            delta: self.delta,
            has_factor: self.is_factor(),
            witness: self.witness.edges(graph),
            degree_sets: self.degree_sets.clone(),
            optimum_count: self.optimum_count,
        }
    }
}

/// JSON shape of a [`SolveReport`].
#[derive(Clone, Debug, Serialize)]
pub struct SolveSummary {
    pub delta: u64,
    pub has_factor: bool,
    pub witness: Vec<(Vertex, Vertex)>,
    pub degree_sets: Vec<DegreeMask>,
    pub optimum_count: u64,
}

trait TargetLookup: Copy + Sync {
    fn at(self, v: usize) -> Targets;
}

impl TargetLookup for Targets {
    #[inline(always)]
    fn at(self, _: usize) -> Targets {
        self
    }
}

impl TargetLookup for &[Targets] {
    #[inline(always)]
    fn at(self, v: usize) -> Targets {
        self[v]
    }
}

const UNSET: u32 = u32::MAX;
const TICK_MASK: u64 = (1 << 14) - 1;

/// Accumulated optima of one search subtree.
#[derive(Clone, Debug)]
struct Partial {
    best: u32,
    count: u64,
    isets: Vec<u64>,
    witness: Option<(EdgeSet, Vec<u32>)>,
}

impl Partial {
    fn new(order: usize) -> Partial {
        Partial { best: UNSET, count: 0, isets: vec![0; order], witness: None }
    }

    /// Combines the optima of two disjoint subtrees.
    fn merge(mut self, other: Partial) -> Partial {
        if other.best < self.best {
            return other;
        }
        if other.best == self.best && other.best != UNSET {
            self.count += other.count;
            for (a, b) in self.isets.iter_mut().zip(&other.isets) {
                *a |= b;
            }
            self.witness = match (self.witness, other.witness) {
                (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
                (a, b) => a.or(b),
            };
        }
        self
    }
}

struct Search<'a, T: TargetLookup> {
    edges: &'a [(Vertex, Vertex)],
    plan: &'a [usize],
    targets: T,
    order: usize,
    deg: [u32; MAX_ORDER],
    rem: [u32; MAX_ORDER],
    lbv: [u32; MAX_ORDER],
    lb: u32,
    chosen: EdgeSet,
    found: Partial,
    shared: Option<&'a AtomicU32>,
    nodes: u64,
    deadline: Option<Instant>,
    aborted: bool,
}

impl<'a, T: TargetLookup> Search<'a, T> {
    fn new(graph: &'a Graph, plan: &'a [usize], targets: T) -> Self {
        let order = graph.order();
        let mut s = Search {
            edges: graph.edges(),
            plan,
            targets,
            order,
            deg: [0; MAX_ORDER],
            rem: [0; MAX_ORDER],
            lbv: [0; MAX_ORDER],
            lb: 0,
            chosen: EdgeSet::with_capacity(graph.size()),
            found: Partial::new(order),
            shared: None,
            nodes: 0,
            deadline: None,
            aborted: false,
        };
        for v in 0..order {
            s.rem[v] = graph.degree(v) as u32;
            s.lbv[v] = targets.at(v).interval_distance(0, s.rem[v]);
            s.lb += s.lbv[v];
        }
        s
    }

    #[inline(always)]
    fn refresh(&mut self, v: usize) {
        let d = self.deg[v];
        let new = self.targets.at(v).interval_distance(d, d + self.rem[v]);
        self.lb = self.lb - self.lbv[v] + new;
        self.lbv[v] = new;
    }

    #[inline(always)]
    fn exclude(&mut self, e: usize) {
        let (u, v) = self.edges[e];
        self.rem[u] -= 1;
        self.rem[v] -= 1;
        self.refresh(u);
        self.refresh(v);
    }

    /// Turns an excluded decision into an included one.
    #[inline(always)]
    fn flip_to_include(&mut self, e: usize) {
        let (u, v) = self.edges[e];
        self.deg[u] += 1;
        self.deg[v] += 1;
        self.chosen.insert(e);
        self.refresh(u);
        self.refresh(v);
    }

    #[inline(always)]
    fn include(&mut self, e: usize) {
        let (u, v) = self.edges[e];
        self.rem[u] -= 1;
        self.rem[v] -= 1;
        self.deg[u] += 1;
        self.deg[v] += 1;
        self.chosen.insert(e);
        self.refresh(u);
        self.refresh(v);
    }

    #[inline(always)]
    fn undo_include(&mut self, e: usize) {
        let (u, v) = self.edges[e];
        self.rem[u] += 1;
        self.rem[v] += 1;
        self.deg[u] -= 1;
        self.deg[v] -= 1;
        self.chosen.remove(e);
        self.refresh(u);
        self.refresh(v);
    }

    #[inline(always)]
    fn undo_exclude(&mut self, e: usize) {
        let (u, v) = self.edges[e];
        self.rem[u] += 1;
        self.rem[v] += 1;
        self.refresh(u);
        self.refresh(v);
    }

    #[inline(always)]
    fn tick(&mut self) {
        self.nodes += 1;
        if self.nodes & TICK_MASK == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.aborted = true;
                }
            }
        }
    }

    #[inline(always)]
    fn bound(&self) -> u32 {
        match self.shared {
            Some(shared) => self.found.best.min(shared.load(Ordering::Relaxed)),
            None => self.found.best,
        }
    }

    fn record_leaf(&mut self) {
        let value = self.lb;
        if value < self.found.best {
            self.found.best = value;
            self.found.count = 0;
            self.found.isets.iter_mut().for_each(|m| *m = 0);
            self.found.witness = None;
            if let Some(shared) = self.shared {
                shared.fetch_min(value, Ordering::Relaxed);
            }
        }
        if self.found.witness.as_ref().is_none_or(|(w, _)| self.chosen < *w) {
            self.found.witness = Some((self.chosen.clone(), self.deg[..self.order].to_vec()));
        }
        self.found.count += 1;
        for v in 0..self.order {
            self.found.isets[v] |= 1 << self.deg[v];
        }
    }

    /// Visits every completion of the plan from `step` on whose bound does
    /// not exceed the running optimum.
    fn all_optima(&mut self, step: usize) {
        self.tick();
        if self.aborted {
            return;
        }
        let Some(&e) = self.plan.get(step) else {
            self.record_leaf();
            return;
        };
        self.exclude(e);
        if self.lb <= self.bound() {
            self.all_optima(step + 1);
        }
        self.flip_to_include(e);
        if self.lb <= self.bound() {
            self.all_optima(step + 1);
        }
        self.undo_include(e);
    }

    /// Greedy depth-first search for a zero-deviation completion.
    fn find_zero(&mut self, step: usize) -> bool {
        self.tick();
        if self.aborted {
            return false;
        }
        let Some(&e) = self.plan.get(step) else {
            return true;
        };
        self.include(e);
        if self.lb == 0 && self.find_zero(step + 1) {
            return true;
        }
        self.undo_include(e);
        self.exclude(e);
        if self.lb == 0 && self.find_zero(step + 1) {
            return true;
        }
        self.undo_exclude(e);
        false
    }

    /// Calls `visit` on every subgraph whose deviation equals `target`.
    fn visit_exact(&mut self, step: usize, target: u32, visit: &mut dyn FnMut(&EdgeSet, &[u32])) {
        self.tick();
        if self.aborted {
            return;
        }
        let Some(&e) = self.plan.get(step) else {
            if self.lb == target {
                visit(&self.chosen, &self.deg[..self.order]);
            }
            return;
        };
        self.exclude(e);
        if self.lb <= target {
            self.visit_exact(step + 1, target, visit);
        }
        self.flip_to_include(e);
        if self.lb <= target {
            self.visit_exact(step + 1, target, visit);
        }
        self.undo_include(e);
    }
}

fn check_instance(graph: &Graph, prescription: &Prescription) -> Result<(), Error> {
    prescription.check_host(graph)
}

/// Edge indices in decision order: repeatedly take the unfinished vertex of
/// smallest degree (ties to the larger label) and decide all of its
/// undecided edges, highest index first.
pub(crate) fn search_plan(graph: &Graph) -> Vec<usize> {
    let g = graph.order();
    let mut plan = Vec::with_capacity(graph.size());
    let mut done = 0u64;
    let mut order: Vec<usize> = (0..g).collect();
    order.sort_by_key(|&v| (graph.degree(v), std::cmp::Reverse(v)));
    for v in order {
        let mut row = graph.adjacency()[v] & !done;
        done |= 1 << v;
        let mut run = Vec::with_capacity(row.count_ones() as usize);
        while row != 0 {
            let w = row.trailing_zeros() as usize;
            row &= row - 1;
            run.push(graph.edge_index(v, w).expect("adjacent pair is an edge"));
        }
        run.sort_unstable_by(|a, b| b.cmp(a));
        plan.extend(run);
    }
    plan
}

fn deadline(budget: &Budget) -> Option<Instant> {
    budget.max_millis.map(|ms| Instant::now() + Duration::from_millis(ms))
}

fn timeout(budget: &Budget, best: u32) -> Error {
    Error::Budget(BudgetError::Timeout {
        millis: budget.max_millis.unwrap_or(0),
        best_bound: (best != UNSET).then_some(best),
    })
}

/// Runs `f` with the prescription's target lookup, monomorphized for the
/// uniform case.
macro_rules! with_targets {
    ($prescription:expr, |$t:ident| $body:expr) => {{
        match $prescription.uniform_set() {
            Some(set) => {
                let $t = set.targets();
                $body
            }
            None => {
                let owned = $prescription.targets();
                let $t: &[Targets] = &owned;
                $body
            }
        }
    }};
}

/// Exact `δ(H)`, the optimal degree sets and a deterministic witness, with
/// default options.
pub fn solve(graph: &Graph, prescription: &Prescription) -> Result<SolveReport, Error> {
    solve_with(graph, prescription, &SolveOptions::default())
}

pub fn solve_with(graph: &Graph, prescription: &Prescription, options: &SolveOptions) -> Result<SolveReport, Error> {
    check_instance(graph, prescription)?;
    let budget = &options.budget;
    if graph.size() > budget.max_edges {
        return Err(BudgetError::TooManyEdges { edges: graph.size(), cap: budget.max_edges }.into());
    }
    let parallel = options.parallelism.enabled(graph.size() >= PARALLEL_EDGES);
    let found = with_targets!(prescription, |t| {
        if parallel {
            solve_split(graph, t, budget)
        } else {
            solve_sequential(graph, t, budget)
        }
    })?;
    let (chosen, degrees) = found.witness.expect("the subgraph lattice is finite and nonempty");
    Ok(SolveReport {
        delta: u64::from(found.best),
        witness: SpanningSubgraph::from_parts(chosen, degrees),
        degree_sets: found.isets.into_iter().map(DegreeMask).collect(),
        optimum_count: found.count,
    })
}

fn solve_sequential<T: TargetLookup>(graph: &Graph, targets: T, budget: &Budget) -> Result<Partial, Error> {
    let plan = search_plan(graph);
    let mut search = Search::new(graph, &plan, targets);
    search.deadline = deadline(budget);
    search.all_optima(0);
    if search.aborted {
        return Err(timeout(budget, search.found.best));
    }
    Ok(search.found)
}

/// Splits the first decisions into independent subtrees. Subtrees share the
/// running optimum only as a pruning bound; merging is order-independent, so
/// the report equals the sequential one.
fn solve_split<T: TargetLookup>(graph: &Graph, targets: T, budget: &Budget) -> Result<Partial, Error> {
    let m = graph.size();
    let split = m.min(10);
    let plan = search_plan(graph);
    let shared = AtomicU32::new(UNSET);
    let deadline = deadline(budget);
    let prefixes: Vec<u64> = (0..1u64 << split).collect();
    let parts = par::map(&prefixes, true, |&prefix| {
        let mut search = Search::new(graph, &plan, targets);
        search.shared = Some(&shared);
        search.deadline = deadline;
        for (step, &e) in plan[..split].iter().enumerate() {
            if prefix >> (split - 1 - step) & 1 == 1 {
                search.include(e);
            } else {
                search.exclude(e);
            }
            if search.lb > search.bound() {
                return Ok(Partial::new(graph.order()));
            }
        }
        search.all_optima(split);
        if search.aborted {
            Err(search.found.best)
        } else {
            Ok(search.found)
        }
    });
    let mut merged = Partial::new(graph.order());
    let mut failed = None;
    for part in parts {
        match part {
            Ok(p) => merged = merged.merge(p),
            Err(best) => failed = Some(failed.map_or(best, |b: u32| b.min(best))),
        }
    }
    if let Some(best) = failed {
        return Err(timeout(budget, best.min(merged.best)));
    }
    Ok(merged)
}

fn check_wrapper_budget(graph: &Graph, budget: &Budget) -> Result<(), Error> {
    if graph.order() > budget.max_vertices {
        return Err(BudgetError::TooManyVertices { vertices: graph.order(), cap: budget.max_vertices }.into());
    }
    Ok(())
}

/// Whether an `H`-factor exists; stops at the first one found.
pub fn has_factor(graph: &Graph, prescription: &Prescription) -> Result<bool, Error> {
    has_factor_with(graph, prescription, &Budget::default())
}

pub fn has_factor_with(graph: &Graph, prescription: &Prescription, budget: &Budget) -> Result<bool, Error> {
    check_instance(graph, prescription)?;
    check_wrapper_budget(graph, budget)?;
    let plan = search_plan(graph);
    with_targets!(prescription, |t| exists_with(graph, &plan, t, &[], deadline(budget)))
        .ok_or_else(|| timeout(budget, UNSET))
}

/// Existence of a zero-deviation subgraph with some edges fixed in advance.
/// `None` on timeout.
fn exists_with<T: TargetLookup>(
    graph: &Graph,
    plan: &[usize],
    targets: T,
    fixed: &[(usize, bool)],
    deadline: Option<Instant>,
) -> Option<bool> {
    let free: Vec<usize> = plan.iter().copied().filter(|e| !fixed.iter().any(|(f, _)| f == e)).collect();
    let mut search = Search::new(graph, &free, targets);
    search.deadline = deadline;
    for &(e, chosen) in fixed {
        if chosen {
            search.include(e);
        } else {
            search.exclude(e);
        }
    }
    let hit = search.lb == 0 && search.find_zero(0);
    (!search.aborted).then_some(hit)
}

/// The `H`-factor with the smallest edge mask, if any.
pub fn find_factor(graph: &Graph, prescription: &Prescription) -> Result<Option<SpanningSubgraph>, Error> {
    find_factor_with(graph, prescription, &Budget::default())
}

pub fn find_factor_with(
    graph: &Graph,
    prescription: &Prescription,
    budget: &Budget,
) -> Result<Option<SpanningSubgraph>, Error> {
    check_instance(graph, prescription)?;
    check_wrapper_budget(graph, budget)?;
    let plan = search_plan(graph);
    let deadline = deadline(budget);
    let out = with_targets!(prescription, |t| {
        // Fix edges from the highest index down, keeping each one out
        // whenever a factor survives without it.
        let mut fixed = Vec::with_capacity(graph.size());
        match exists_with(graph, &plan, t, &fixed, deadline) {
            Some(true) => {}
            Some(false) => return Ok(None),
            None => return Err(timeout(budget, UNSET)),
        }
        for e in (0..graph.size()).rev() {
            fixed.push((e, false));
            match exists_with(graph, &plan, t, &fixed, deadline) {
                Some(true) => {}
                Some(false) => fixed.last_mut().expect("just pushed").1 = true,
                None => return Err(timeout(budget, UNSET)),
            }
        }
        Ok::<Vec<usize>, Error>(fixed.into_iter().filter(|&(_, chosen)| chosen).map(|(e, _)| e).collect::<Vec<_>>())
    })?;
    let chosen = EdgeSet::from_indices(graph.size(), out);
    Ok(Some(SpanningSubgraph::new(graph, chosen)?))
}

/// `has_factor` with the uniform prescription `{1, 3, ..., 2n-1, 2n}`.
pub fn has_hn_factor(graph: &Graph, n: u32) -> Result<bool, Error> {
    has_factor(graph, &Prescription::uniform(graph.order(), DegreeSet::h_n(n)?))
}

/// Calls `visit` with the edge set and degree vector of every subgraph whose
/// deviation equals `target`. Returns the number visited.
pub fn for_each_with_deviation(
    graph: &Graph,
    prescription: &Prescription,
    target: u64,
    budget: &Budget,
    mut visit: impl FnMut(&EdgeSet, &[u32]),
) -> Result<u64, Error> {
    check_instance(graph, prescription)?;
    if graph.size() > budget.max_edges {
        return Err(BudgetError::TooManyEdges { edges: graph.size(), cap: budget.max_edges }.into());
    }
    let target = u32::try_from(target).unwrap_or(u32::MAX - 1);
    let mut count = 0u64;
    let mut counted = |e: &EdgeSet, d: &[u32]| {
        count += 1;
        visit(e, d);
    };
    let plan = search_plan(graph);
    with_targets!(prescription, |t| {
        let mut search = Search::new(graph, &plan, t);
        search.deadline = deadline(budget);
        if search.lb <= target {
            search.visit_exact(0, target, &mut counted);
        }
        if search.aborted {
            return Err(timeout(budget, UNSET));
        }
        Ok::<(), Error>(())
    })?;
    Ok(count)
}
