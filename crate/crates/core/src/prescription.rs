//! Degree sets, per-vertex prescriptions and the deviation functional.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::error::{Error, FormatError};
use crate::graph::{Graph, Vertex, VertexSet};

/// Bound on the magnitude of prescribed degrees, keeping deviation sums in `u32`.
pub const MAX_ABS_VALUE: i64 = 1_000_000;

/// A nonempty finite set of permitted integer degrees.
///
/// The set is *allowed* when consecutive members differ by at most two, i.e.
/// every gap holds at most one integer.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DegreeSet {
    values: Vec<i64>,
    #[serde(skip)]
    allowed: bool,
    #[serde(skip)]
    targets: Targets,
}

impl DegreeSet {
    pub fn new(values: impl IntoIterator<Item = i64>) -> Result<DegreeSet, Error> {
        let mut values: Vec<i64> = values.into_iter().collect();
        if values.is_empty() {
            return Err(Error::InvalidArgument("degree set must be nonempty".into()));
        }
        if let Some(v) = values.iter().find(|v| v.abs() > MAX_ABS_VALUE) {
            return Err(Error::InvalidArgument(format!("degree {v} outside ±{MAX_ABS_VALUE}")));
        }
        values.sort_unstable();
        values.dedup();
        let allowed = values.windows(2).all(|w| w[1] - w[0] <= 2);
        let targets = Targets::new(&values);
        Ok(DegreeSet { values, allowed, targets })
    }

    /// `{1, 3, ..., 2n-1}`.
    pub fn h_o(n: u32) -> Result<DegreeSet, Error> {
        check_family_parameter(n)?;
        DegreeSet::new((1..=n as i64).map(|i| 2 * i - 1))
    }

    /// `{1, 3, ..., 2n-1, 2n}`.
    pub fn h_n(n: u32) -> Result<DegreeSet, Error> {
        check_family_parameter(n)?;
        DegreeSet::new((1..=n as i64).map(|i| 2 * i - 1).chain([2 * n as i64]))
    }

    /// `{-1, 1, 3, ..., 2n-1, 2n}`.
    pub fn h_n_star(n: u32) -> Result<DegreeSet, Error> {
        check_family_parameter(n)?;
        DegreeSet::new((1..=n as i64).map(|i| 2 * i - 1).chain([-1, 2 * n as i64]))
    }

    /// The interval `{lo, ..., hi}`, i.e. the degrees of an `[lo, hi]`-factor.
    pub fn interval(lo: i64, hi: i64) -> Result<DegreeSet, Error> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty interval [{lo}, {hi}]")));
        }
        DegreeSet::new(lo..=hi)
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_allowed(&self) -> bool {
        self.allowed
    }

    pub fn min(&self) -> i64 {
        self.values[0]
    }

    pub fn max(&self) -> i64 {
        *self.values.last().expect("nonempty")
    }

    pub fn contains(&self, value: i64) -> bool {
        self.values.binary_search(&value).is_ok()
    }

    /// Every member decreased by `by`; gaps and hence allowedness are kept.
    pub fn translate_down(&self, by: i64) -> DegreeSet {
        DegreeSet::new(self.values.iter().map(|h| h - by)).expect("translation keeps the set nonempty")
    }

    pub(crate) fn targets(&self) -> Targets {
        self.targets
    }
}

fn check_family_parameter(n: u32) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("family parameter n must be at least 1".into()));
    }
    if n > 31 {
        return Err(Error::InvalidArgument(format!("family parameter n = {n} exceeds any representable degree")));
    }
    Ok(())
}

impl fmt::Debug for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Parses `Hn:2`, `Ho:2`, `Hn*:2` or an explicit `{1,3,4}`.
impl FromStr for DegreeSet {
    type Err = Error;

    fn from_str(literal: &str) -> Result<DegreeSet, Error> {
        let bad = |reason: String| Error::from(FormatError::Prescription { literal: literal.to_string(), reason });
        let text = literal.trim();
        if let Some(inner) = text.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
            let values = inner
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i64>().map_err(|e| bad(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            return DegreeSet::new(values).map_err(|e| bad(e.to_string()));
        }
        let (family, param) = text.split_once(':').ok_or_else(|| bad("expected FAMILY:n or {..}".into()))?;
        let n: u32 = param.trim().parse().map_err(|e| bad(format!("parameter: {e}")))?;
        let set = match family.trim() {
            "Hn" => DegreeSet::h_n(n),
            "Ho" => DegreeSet::h_o(n),
            "Hn*" => DegreeSet::h_n_star(n),
            other => return Err(bad(format!("unknown family {other:?}"))),
        };
        set.map_err(|e| bad(e.to_string()))
    }
}

/// Constant-time distance queries against a degree set, for degrees in
/// `0..=63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct Targets {
    /// Members in `0..=63`.
    mask: u64,
    /// Largest negative member.
    below: Option<i64>,
    /// Smallest member above 63.
    above: Option<i64>,
}

impl Targets {
    fn new(values: &[i64]) -> Targets {
        let mut t = Targets::default();
        for &v in values {
            match v {
                v if v < 0 => t.below = Some(v),
                0..=63 => t.mask |= 1 << v,
                v => {
                    t.above.get_or_insert(v);
                }
            }
        }
        t
    }

    /// Distance from the interval `[lo, hi]` to the nearest member, with
    /// `lo <= hi <= 63`.
    #[inline]
    pub(crate) fn interval_distance(self, lo: u32, hi: u32) -> u32 {
        let span = (u64::MAX >> (63 - (hi - lo))) << lo;
        if self.mask & span != 0 {
            return 0;
        }
        let under = self.mask & ((1u64 << lo) - 1);
        let down = if under != 0 {
            lo - (63 - under.leading_zeros())
        } else {
            self.below.map_or(u32::MAX, |b| (i64::from(lo) - b) as u32)
        };
        let over = if hi == 63 { 0 } else { self.mask >> (hi + 1) };
        let up = if over != 0 {
            over.trailing_zeros() + 1
        } else {
            self.above.map_or(u32::MAX, |a| (a - i64::from(hi)) as u32)
        };
        down.min(up)
    }

    #[inline]
    pub(crate) fn distance(self, d: u32) -> u32 {
        self.interval_distance(d, d)
    }
}

/// `min { |d - h| : h in set }`.
pub fn vertex_deviation(d: u32, set: &DegreeSet) -> u32 {
    if d <= 63 {
        return set.targets.distance(d);
    }
    set.values.iter().map(|&h| (i64::from(d) - h).unsigned_abs() as u32).min().expect("nonempty")
}

/// A degree set for every vertex of a host graph.
#[derive(Clone)]
pub struct Prescription {
    order: usize,
    sets: Sets,
}

#[derive(Clone)]
enum Sets {
    Uniform(DegreeSet),
    PerVertex(Vec<DegreeSet>),
}

impl Prescription {
    pub fn uniform(order: usize, set: DegreeSet) -> Prescription {
        Prescription { order, sets: Sets::Uniform(set) }
    }

    pub fn per_vertex(sets: Vec<DegreeSet>) -> Prescription {
        Prescription { order: sets.len(), sets: Sets::PerVertex(sets) }
    }

    /// Replaces the sets of some vertices.
    pub fn with_overrides(
        &self,
        overrides: impl IntoIterator<Item = (Vertex, DegreeSet)>,
    ) -> Result<Prescription, Error> {
        let mut sets: Vec<DegreeSet> = (0..self.order).map(|v| self.get(v).clone()).collect();
        for (v, set) in overrides {
            if v >= self.order {
                return Err(Error::VertexOutOfRange { vertex: v, order: self.order });
            }
            sets[v] = set;
        }
        Ok(Prescription::per_vertex(sets))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> &DegreeSet {
        match &self.sets {
            Sets::Uniform(set) => set,
            Sets::PerVertex(sets) => &sets[v],
        }
    }

    pub fn uniform_set(&self) -> Option<&DegreeSet> {
        match &self.sets {
            Sets::Uniform(set) => Some(set),
            Sets::PerVertex(_) => None,
        }
    }

    pub fn is_allowed(&self) -> bool {
        match &self.sets {
            Sets::Uniform(set) => set.is_allowed(),
            Sets::PerVertex(sets) => sets.iter().all(DegreeSet::is_allowed),
        }
    }

    /// First vertex whose set is not allowed.
    pub fn first_disallowed(&self) -> Option<Vertex> {
        (0..self.order).find(|&v| !self.get(v).is_allowed())
    }

    pub fn check_host(&self, graph: &Graph) -> Result<(), Error> {
        if self.order == graph.order() {
            Ok(())
        } else {
            Err(Error::PrescriptionOrder { prescribed: self.order, order: graph.order() })
        }
    }

    /// The shifted prescription `H_X(v) = { h - e(v, X) : h in H(v) }`.
    pub fn shift_by_set(&self, graph: &Graph, set: VertexSet) -> Result<Prescription, Error> {
        self.check_host(graph)?;
        graph.check_set(set)?;
        if set.is_empty() {
            return Ok(self.clone());
        }
        Ok(Prescription::per_vertex(
            (0..self.order).map(|v| self.get(v).translate_down(graph.edges_into(v, set) as i64)).collect(),
        ))
    }

    /// The prescription on a subgraph whose vertex `i` is `labels[i]` here.
    pub fn restrict(&self, labels: &[Vertex]) -> Prescription {
        match &self.sets {
            Sets::Uniform(set) => Prescription::uniform(labels.len(), set.clone()),
            Sets::PerVertex(sets) => Prescription::per_vertex(labels.iter().map(|&v| sets[v].clone()).collect()),
        }
    }

    pub(crate) fn targets(&self) -> Vec<Targets> {
        (0..self.order).map(|v| self.get(v).targets()).collect()
    }
}

impl PartialEq for Prescription {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && (0..self.order).all(|v| self.get(v) == other.get(v))
    }
}

impl Eq for Prescription {}

impl fmt::Debug for Prescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.sets {
            Sets::Uniform(set) => write!(f, "Uniform({set}; {})", self.order),
            Sets::PerVertex(sets) => f.debug_list().entries(sets).finish(),
        }
    }
}

/// Parses per-vertex override lines `v: {..}`; blank lines and `#` comments
/// are ignored.
pub fn parse_overrides(text: &str) -> Result<Vec<(Vertex, DegreeSet)>, Error> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |reason: String| {
            Error::from(FormatError::Prescription {
                literal: line.to_string(),
                reason: format!("line {}: {reason}", i + 1),
            })
        };
        let (v, set) = line.split_once(':').ok_or_else(|| bad("expected \"v: {..}\"".into()))?;
        let v: Vertex = v.trim().parse().map_err(|e| bad(format!("vertex: {e}")))?;
        let set: DegreeSet = set.parse()?;
        out.push((v, set));
    }
    Ok(out)
}

/// A spanning subgraph of a host graph given by its chosen edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningSubgraph {
    chosen: EdgeSet,
    degrees: Vec<u32>,
}

impl SpanningSubgraph {
    pub fn new(host: &Graph, chosen: EdgeSet) -> Result<SpanningSubgraph, Error> {
        if chosen.bound() > host.size() {
            return Err(Error::InvalidArgument(format!(
                "edge index {} out of range for {} edges",
                chosen.bound() - 1,
                host.size()
            )));
        }
        let mut degrees = vec![0u32; host.order()];
        for i in chosen.iter() {
            let (u, v) = host.edges()[i];
            degrees[u] += 1;
            degrees[v] += 1;
        }
        Ok(SpanningSubgraph { chosen, degrees })
    }

    pub fn empty(host: &Graph) -> SpanningSubgraph {
        SpanningSubgraph { chosen: EdgeSet::with_capacity(host.size()), degrees: vec![0; host.order()] }
    }

    pub fn full(host: &Graph) -> SpanningSubgraph {
        SpanningSubgraph::new(host, EdgeSet::from_indices(host.size(), 0..host.size())).expect("indices in range")
    }

    pub(crate) fn from_parts(chosen: EdgeSet, degrees: Vec<u32>) -> SpanningSubgraph {
        SpanningSubgraph { chosen, degrees }
    }

    pub fn chosen(&self) -> &EdgeSet {
        &self.chosen
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn edge_count(&self) -> usize {
        self.chosen.len()
    }

    pub fn edges(&self, host: &Graph) -> Vec<(Vertex, Vertex)> {
        self.chosen.iter().map(|i| host.edges()[i]).collect()
    }
}

/// `δ_H(F)`: the summed per-vertex deviation of `F`'s degrees from `P`.
pub fn deviation(subgraph: &SpanningSubgraph, prescription: &Prescription) -> Result<u64, Error> {
    if subgraph.degrees.len() != prescription.order() {
        return Err(Error::PrescriptionOrder { prescribed: prescription.order(), order: subgraph.degrees.len() });
    }
    Ok(subgraph.degrees.iter().enumerate().map(|(v, &d)| u64::from(vertex_deviation(d, prescription.get(v)))).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(values: &[i64]) -> DegreeSet {
        DegreeSet::new(values.iter().copied()).unwrap()
    }

    #[test]
    fn allowed_flag() {
        assert!(set(&[1, 3, 5]).is_allowed());
        assert!(!set(&[1, 4]).is_allowed());
        assert!(set(&[1, 3, 4]).is_allowed());
        assert!(set(&[7]).is_allowed());
        assert_eq!(set(&[3, 1, 3]).values(), &[1, 3]);
        assert!(DegreeSet::new([]).is_err());
    }

    #[test]
    fn named_families() {
        assert_eq!(DegreeSet::h_n(1).unwrap().values(), &[1, 2]);
        assert_eq!(DegreeSet::h_n_star(1).unwrap().values(), &[-1, 1, 2]);
        assert_eq!(DegreeSet::h_o(2).unwrap().values(), &[1, 3]);
        assert_eq!(DegreeSet::h_n(3).unwrap().values(), &[1, 3, 5, 6]);
        for n in 1..6 {
            assert!(DegreeSet::h_o(n).unwrap().is_allowed());
            assert!(DegreeSet::h_n(n).unwrap().is_allowed());
            assert!(DegreeSet::h_n_star(n).unwrap().is_allowed());
        }
        assert!(DegreeSet::h_n(0).is_err());
        assert!(DegreeSet::h_o(0).is_err());
        assert!(DegreeSet::h_n_star(0).is_err());
    }

    #[test]
    fn literals() {
        assert_eq!("Hn:2".parse::<DegreeSet>().unwrap(), set(&[1, 3, 4]));
        assert_eq!("Ho:2".parse::<DegreeSet>().unwrap(), set(&[1, 3]));
        assert_eq!("Hn*:1".parse::<DegreeSet>().unwrap(), set(&[-1, 1, 2]));
        assert_eq!("{1, 3,4}".parse::<DegreeSet>().unwrap(), set(&[1, 3, 4]));
        assert_eq!("{-1,2}".parse::<DegreeSet>().unwrap(), set(&[-1, 2]));
        for bad in ["Hx:1", "Hn:0", "Hn", "{}", "{1,a}", "Hn:-2"] {
            assert!(bad.parse::<DegreeSet>().is_err(), "{bad}");
        }
        let o = parse_overrides("# comment\n0: {1}\n\n2: Hn:1\n").unwrap();
        assert_eq!(o, vec![(0, set(&[1])), (2, set(&[1, 2]))]);
        assert!(parse_overrides("x: {1}").is_err());
    }

    #[test]
    fn shift_examples() {
        let k2 = Graph::complete(2);
        let p = Prescription::uniform(2, set(&[1, 2]));
        assert_eq!(p.shift_by_set(&k2, VertexSet::EMPTY).unwrap(), p);
        let shifted = p.shift_by_set(&k2, VertexSet::singleton(1)).unwrap();
        assert_eq!(shifted.get(0), &set(&[0, 1]));
        assert_eq!(shifted.get(1), &set(&[1, 2]));
        assert!(p.shift_by_set(&Graph::complete(3), VertexSet::EMPTY).is_err());
    }

    #[test]
    fn vertex_deviation_examples() {
        for n in 1..5 {
            assert_eq!(vertex_deviation(2 * n, &DegreeSet::h_n(n).unwrap()), 0);
        }
        assert_eq!(vertex_deviation(0, &set(&[1, 2])), 1);
        assert_eq!(vertex_deviation(3, &set(&[-1, 1, 2])), 1);
        assert_eq!(vertex_deviation(0, &set(&[-1, 1, 2])), 1);
        assert_eq!(vertex_deviation(5, &set(&[-3])), 8);
        assert_eq!(vertex_deviation(10, &set(&[100])), 90);
        assert_eq!(vertex_deviation(70, &set(&[1])), 69);
    }

    #[test]
    fn deviation_examples() {
        let k2 = Graph::complete(2);
        let edge = SpanningSubgraph::full(&k2);
        assert_eq!(deviation(&edge, &Prescription::uniform(2, DegreeSet::h_n(1).unwrap())).unwrap(), 0);
        let k1 = Graph::complete(1);
        assert_eq!(deviation(&SpanningSubgraph::empty(&k1), &Prescription::uniform(1, set(&[-1, 1, 2]))).unwrap(), 1);
        let c5 = Graph::cycle(5);
        assert_eq!(deviation(&SpanningSubgraph::full(&c5), &Prescription::uniform(5, set(&[1, 2]))).unwrap(), 0);
        let sub = SpanningSubgraph::new(&c5, EdgeSet::from_indices(5, [0])).unwrap();
        assert_eq!(sub.degrees().iter().sum::<u32>(), 2);
        assert!(SpanningSubgraph::new(&c5, EdgeSet::from_indices(9, [7])).is_err());
    }

    fn any_set() -> impl Strategy<Value = DegreeSet> {
        prop::collection::vec(-3i64..70, 1..6).prop_map(|v| DegreeSet::new(v).unwrap())
    }

    fn allowed_set() -> impl Strategy<Value = DegreeSet> {
        (-1i64..20, prop::collection::vec(1i64..=2, 0..6)).prop_map(|(start, steps)| {
            let values = steps.iter().scan(start, |h, step| {
                *h += step;
                Some(*h)
            });
            DegreeSet::new(std::iter::once(start).chain(values)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn deviation_zero_iff_member(d in 0u32..64, s in any_set()) {
            prop_assert_eq!(vertex_deviation(d, &s) == 0, s.contains(i64::from(d)));
        }

        #[test]
        fn deviation_is_lipschitz(d in 0u32..63, s in any_set()) {
            let a = vertex_deviation(d, &s) as i64;
            let b = vertex_deviation(d + 1, &s) as i64;
            prop_assert!((a - b).abs() <= 1);
        }

        #[test]
        fn fast_distance_matches_definition(lo in 0u32..64, width in 0u32..64, s in any_set()) {
            let hi = (lo + width).min(63);
            let expected = (lo..=hi)
                .flat_map(|d| s.values().iter().map(move |&h| (i64::from(d) - h).unsigned_abs()))
                .min()
                .unwrap() as u32;
            prop_assert_eq!(s.targets().interval_distance(lo, hi), expected);
        }

        #[test]
        fn allowed_sets_have_no_double_gap(s in allowed_set()) {
            prop_assert!(s.is_allowed());
            // Only meaningful between the extremes of the set.
            for d in s.min().max(0)..s.max() {
                let d = d as u32;
                prop_assert!(!(vertex_deviation(d, &s) >= 2 && vertex_deviation(d + 1, &s) >= 2));
            }
        }

        #[test]
        fn translation_keeps_allowedness(s in any_set(), by in 0i64..10) {
            prop_assert_eq!(s.translate_down(by).is_allowed(), s.is_allowed());
        }
    }
}
