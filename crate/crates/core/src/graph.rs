//! Immutable simple graphs on dense labels `0..order` with `u64` adjacency rows.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Largest order representable by the bitset adjacency.
pub const MAX_ORDER: usize = 64;

/// Default upper bound on `k` for [`Graph::is_k_connected`].
pub const MAX_CONNECTIVITY_K: usize = 8;

pub type Vertex = usize;

/// A set of vertices of a graph with at most [`MAX_ORDER`] vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All of `0..order`.
    pub fn full(order: usize) -> VertexSet {
        debug_assert!(order <= MAX_ORDER);
        if order == MAX_ORDER {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << order) - 1)
        }
    }

    pub fn singleton(v: Vertex) -> VertexSet {
        VertexSet(1u64 << v)
    }

    pub fn from_slice(vertices: &[Vertex]) -> VertexSet {
        vertices.iter().copied().collect()
    }

    #[inline]
    pub fn contains(self, v: Vertex) -> bool {
        v < MAX_ORDER && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: Vertex) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: Vertex) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    pub fn min(self) -> Option<Vertex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexSetIter {
        VertexSetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            assert!(v < MAX_ORDER, "vertex {v} exceeds bitset capacity");
            set.insert(v);
        }
        set
    }
}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = VertexSetIter;
    fn into_iter(self) -> VertexSetIter {
        self.iter()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let vertices = Vec::<Vertex>::deserialize(deserializer)?;
        if let Some(&v) = vertices.iter().find(|&&v| v >= MAX_ORDER) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(VertexSet::from_slice(&vertices))
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexSetIter(u64);

impl Iterator for VertexSetIter {
    type Item = Vertex;

    #[inline]
    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexSetIter {}

/// Simple undirected graph on vertices `0..order`.
///
/// Edges are stored as a sorted list of pairs `(u, v)` with `u < v`; the
/// position of a pair in that list is its edge index, which the optimizer
/// uses as a bit position in edge-subset masks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<u64>,
}

/// A vertex-induced subgraph together with its label map: `labels[i]` is the
/// vertex of the parent graph that became vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    pub labels: Vec<Vertex>,
}

impl Subgraph {
    /// Maps a vertex set of the subgraph back to parent labels.
    pub fn lift(&self, set: VertexSet) -> VertexSet {
        set.iter().map(|v| self.labels[v]).collect()
    }
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(order: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Graph, Error> {
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge { order, max: MAX_ORDER });
        }
        let mut adj = vec![0u64; order];
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= order || b >= order {
                return Err(Error::VertexOutOfRange { vertex: a.max(b), order });
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            if adj[a] >> b & 1 == 1 {
                return Err(Error::DuplicateEdge(a.min(b), a.max(b)));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        Ok(Graph { order, edges: list, adj })
    }

    /// Builds a graph from symmetric adjacency rows. Bits at or above `order`
    /// and diagonal bits must be clear.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Graph, Error> {
        let order = adj.len();
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge { order, max: MAX_ORDER });
        }
        let full = VertexSet::full(order).0;
        let mut edges = Vec::new();
        for (u, &row) in adj.iter().enumerate() {
            if row & !full != 0 {
                return Err(Error::VertexOutOfRange { vertex: 63 - (row & !full).leading_zeros() as usize, order });
            }
            if row >> u & 1 == 1 {
                return Err(Error::SelfLoop(u));
            }
            for v in VertexSet(row).iter() {
                if adj[v] >> u & 1 == 0 {
                    return Err(Error::AsymmetricAdjacency(u, v));
                }
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Ok(Graph { order, edges, adj })
    }

    /// The labeled graph whose edge set is selected by `mask` over all pairs
    /// of `0..order` in sorted pair order (bit `i` = `i`-th pair).
    pub fn from_pair_mask(order: usize, mask: u64) -> Graph {
        assert!(order <= 11, "pair mask holds at most 11 vertices");
        let mut adj = vec![0u64; order];
        let mut edges = Vec::with_capacity(mask.count_ones() as usize);
        let mut bit = 0;
        for u in 0..order {
            for v in u + 1..order {
                if mask >> bit & 1 == 1 {
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                    edges.push((u, v));
                }
                bit += 1;
            }
        }
        Graph { order, edges, adj }
    }

    pub fn empty(order: usize) -> Graph {
        Graph::new(order, []).expect("order within capacity")
    }

    /// The complete graph `K_m`.
    ///
    /// # Panics
    /// If `m` exceeds [`MAX_ORDER`].
    pub fn complete(m: usize) -> Graph {
        Graph::new(m, (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v)))).expect("order within capacity")
    }

    /// `K_{a,b}` with the `a`-side labeled `0..a`.
    ///
    /// # Panics
    /// If `a + b` exceeds [`MAX_ORDER`].
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).expect("order within capacity")
    }

    pub fn path(m: usize) -> Graph {
        Graph::new(m, (1..m).map(|v| (v - 1, v))).expect("order within capacity")
    }

    pub fn cycle(m: usize) -> Graph {
        assert!(m >= 3, "a cycle needs at least three vertices");
        Graph::new(m, (0..m).map(|v| (v, (v + 1) % m))).expect("order within capacity")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    ///
    /// # Panics
    /// If the combined order exceeds [`MAX_ORDER`].
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order;
        let edges = self.edges.iter().copied().chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::new(self.order + other.order, edges).expect("combined order within capacity")
    }

    /// Join: disjoint union plus every edge between the two vertex sets.
    ///
    /// # Panics
    /// If the combined order exceeds [`MAX_ORDER`].
    pub fn join(&self, other: &Graph) -> Graph {
        let shift = self.order;
        let cross = (0..self.order).flat_map(|u| (0..other.order).map(move |v| (u, v + shift)));
        let edges =
            self.edges.iter().copied().chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift))).chain(cross);
        Graph::new(self.order + other.order, edges).expect("combined order within capacity")
    }

    /// `copies` disjoint copies of `self`.
    pub fn copies(&self, copies: usize) -> Graph {
        (0..copies).fold(Graph::empty(0), |acc, _| acc.disjoint_union(self))
    }

    /// `self + uv`.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, Error> {
        Graph::new(self.order, self.edges.iter().copied().chain([(u, v)]))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    #[inline]
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    /// Number of edges from `v` into `set`, written e(v, X).
    #[inline]
    pub fn edges_into(&self, v: Vertex, set: VertexSet) -> usize {
        (self.adj[v] & set.0).count_ones() as usize
    }

    /// Index of edge `{u, v}` in the sorted edge list.
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn check_set(&self, set: VertexSet) -> Result<(), Error> {
        if set.is_subset(self.vertices()) {
            Ok(())
        } else {
            let vertex = set.difference(self.vertices()).min().unwrap_or(0);
            Err(Error::VertexOutOfRange { vertex, order: self.order })
        }
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), Error> {
        if v < self.order {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, order: self.order })
        }
    }

    /// Component of the subgraph induced by `within` that contains `start`.
    #[inline]
    pub fn reach(&self, start: Vertex, within: VertexSet) -> VertexSet {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & within.0 & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        VertexSet(seen)
    }

    /// Components of `G[within]`, ordered by smallest member.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.min() {
            let comp = self.reach(v, within);
            out.push(comp);
            rest = rest.difference(comp);
        }
        out
    }

    /// Number of components of `G[within]`, written c(X).
    #[inline]
    pub fn component_count_within(&self, within: VertexSet) -> usize {
        let mut rest = within;
        let mut count = 0;
        while let Some(v) = rest.min() {
            rest = rest.difference(self.reach(v, within));
            count += 1;
        }
        count
    }

    /// Number of odd components of `G[within]`.
    #[inline]
    pub fn odd_component_count_within(&self, within: VertexSet) -> usize {
        let mut rest = within;
        let mut count = 0;
        while let Some(v) = rest.min() {
            let comp = self.reach(v, within);
            rest = rest.difference(comp);
            count += comp.len() & 1;
        }
        count
    }

    /// Number of vertices of `G[within]` with no neighbor inside `within`.
    #[inline]
    pub fn isolated_count_within(&self, within: VertexSet) -> usize {
        within.iter().filter(|&v| self.adj[v] & within.0 == 0).count()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_within(self.vertices()).into_iter().map(VertexSet::to_vec).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.order == 0 || self.reach(0, self.vertices()).len() == self.order
    }

    /// True if some component of the graph has odd order.
    pub fn has_odd_component(&self) -> bool {
        self.odd_component_count_within(self.vertices()) > 0
    }

    /// Odd components of `G - removed`.
    pub fn odd_components(&self, removed: VertexSet) -> Result<Vec<VertexSet>, Error> {
        self.check_set(removed)?;
        let rest = self.vertices().difference(removed);
        Ok(self.components_within(rest).into_iter().filter(|c| c.len() % 2 == 1).collect())
    }

    /// Induced subgraph `G[keep]`, relabeled in increasing order.
    pub fn induced(&self, keep: VertexSet) -> Result<Subgraph, Error> {
        self.check_set(keep)?;
        let labels = keep.to_vec();
        let mut position = [usize::MAX; MAX_ORDER];
        for (i, &v) in labels.iter().enumerate() {
            position[v] = i;
        }
        let adj = labels
            .iter()
            .map(|&v| VertexSet(self.adj[v] & keep.0).iter().fold(0u64, |row, w| row | 1 << position[w]))
            .collect();
        let graph = Graph::from_adjacency(adj).expect("induced rows are symmetric");
        Ok(Subgraph { graph, labels })
    }

    /// `G - removed`.
    pub fn delete_vertices(&self, removed: VertexSet) -> Result<Subgraph, Error> {
        self.check_set(removed)?;
        self.induced(self.vertices().difference(removed))
    }

    /// True iff the graph has more than `k` vertices and stays connected after
    /// removing any set of fewer than `k` vertices. Enumerates removal sets, so
    /// `k` is limited to [`MAX_CONNECTIVITY_K`].
    pub fn is_k_connected(&self, k: usize) -> Result<bool, Error> {
        if k == 0 {
            return Err(Error::InvalidArgument("connectivity k must be at least 1".into()));
        }
        if k > MAX_CONNECTIVITY_K {
            return Err(Error::ConnectivityCap { k, max: MAX_CONNECTIVITY_K });
        }
        if self.order <= k {
            return Ok(false);
        }
        let all = self.vertices();
        for size in 0..k {
            let mut connected = true;
            for_each_subset_of_size(self.order, size, |removed| {
                let rest = all.difference(removed);
                // `rest` is nonempty because order > k > size.
                let start = rest.min().expect("nonempty remainder");
                connected = self.reach(start, rest) == rest;
                connected
            });
            if !connected {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `N(u) ∪ N(v)` for distinct `u`, `v`.
    pub fn neighborhood_union(&self, u: Vertex, v: Vertex) -> Result<VertexSet, Error> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidArgument(format!("neighborhood union needs distinct vertices, got {u} twice")));
        }
        Ok(VertexSet(self.adj[u] | self.adj[v]))
    }

    /// Non-adjacent pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.order)
            .flat_map(move |u| (u + 1..self.order).filter(move |&v| !self.has_edge(u, v)).map(move |v| (u, v)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(order={}, edges={:?})", self.order, self.edges)
    }
}

/// Calls `visit` on every `size`-subset of `0..order` in lexicographic order
/// of sorted member lists, stopping as soon as `visit` returns `false`.
/// Returns `false` if the walk was stopped.
pub fn for_each_subset_of_size(order: usize, size: usize, mut visit: impl FnMut(VertexSet) -> bool) -> bool {
    if size > order {
        return true;
    }
    let mut idx = [0usize; MAX_ORDER];
    for (i, slot) in idx.iter_mut().enumerate().take(size) {
        *slot = i;
    }
    let mut mask: u64 = if size == 0 { 0 } else { VertexSet::full(size).0 };
    loop {
        if !visit(VertexSet(mask)) {
            return false;
        }
        // Advance the rightmost index that still has room.
        let mut i = size;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] < order - size + i {
                break;
            }
        }
        mask &= !(1u64 << idx[i]);
        idx[i] += 1;
        mask |= 1u64 << idx[i];
        for j in i + 1..size {
            mask &= !(1u64 << idx[j]);
            idx[j] = idx[j - 1] + 1;
            mask |= 1u64 << idx[j];
        }
    }
}

/// All `size`-subsets of `0..order` in lexicographic order.
pub fn subsets_of_size(order: usize, size: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    for_each_subset_of_size(order, size, |s| {
        out.push(s);
        true
    });
    out
}
