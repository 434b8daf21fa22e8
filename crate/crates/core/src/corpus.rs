//! Graph streams for batch verification: every labeled graph up to a small
//! order, seeded `G(g, p)` samples, graph6 files and the extremal families.
//!
//! Random graphs use ChaCha8 seeded with the 64-bit seed through
//! `SeedableRng::seed_from_u64`; each vertex pair in sorted order is kept
//! with probability `p`, one graph after another.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::{gen_apex_cliques, gen_bipartite_sharp, gen_clique_independent};
use crate::error::Error;
use crate::format::parse_graph6;
use crate::graph::{Graph, MAX_ORDER};

/// Default order cap for exhaustive iteration (`2^15` graphs at order 6).
pub const EXHAUSTIVE_CAP: usize = 6;

/// Largest order `from_pair_mask` can enumerate.
const PAIR_MASK_ORDER: usize = 11;

/// Number of labeled graphs on `order` vertices.
pub fn labeled_graph_count(order: usize) -> u64 {
    1u64 << (order * order.saturating_sub(1) / 2)
}

/// All labeled graphs on exactly `order` vertices, by edge mask.
pub fn labeled_graphs_of_order(order: usize) -> Result<impl Iterator<Item = Graph> + Clone, Error> {
    if order > PAIR_MASK_ORDER {
        return Err(Error::InvalidArgument(format!(
            "exhaustive iteration supports at most {PAIR_MASK_ORDER} vertices"
        )));
    }
    Ok((0..labeled_graph_count(order)).map(move |mask| Graph::from_pair_mask(order, mask)))
}

/// All labeled graphs on `1..=max_vertices` vertices, by order then mask.
/// `max_vertices` is limited to [`EXHAUSTIVE_CAP`].
pub fn iterate_labeled_graphs(max_vertices: usize) -> Result<impl Iterator<Item = Graph>, Error> {
    iterate_labeled_graphs_capped(max_vertices, EXHAUSTIVE_CAP)
}

/// [`iterate_labeled_graphs`] with an explicit cap.
pub fn iterate_labeled_graphs_capped(max_vertices: usize, cap: usize) -> Result<impl Iterator<Item = Graph>, Error> {
    if max_vertices > cap.min(PAIR_MASK_ORDER) {
        return Err(Error::InvalidArgument(format!(
            "exhaustive iteration up to {max_vertices} vertices exceeds the cap of {}",
            cap.min(PAIR_MASK_ORDER)
        )));
    }
    let orders = (1..=max_vertices).map(|g| labeled_graphs_of_order(g).expect("order checked against the cap"));
    Ok(orders.flatten())
}

/// `count` independent `G(size, p)` graphs, determined by `seed`.
pub fn sample_gnp(count: usize, size: usize, p: f64, seed: u64) -> Result<Vec<Graph>, Error> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("edge probability {p} is outside [0, 1]")));
    }
    if size > MAX_ORDER {
        return Err(Error::OrderTooLarge { order: size, max: MAX_ORDER });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| gnp(&mut rng, size, p)).collect())
}

/// One `G(size, p)` draw from `rng`.
pub fn gnp(rng: &mut impl Rng, size: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..size {
        for v in u + 1..size {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(size, edges).expect("sampled pairs are valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    ApexCliques,
    BipartiteSharp,
    CliqueIndependent,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::ApexCliques => "apex-cliques",
            Family::BipartiteSharp => "bipartite-sharp",
            Family::CliqueIndependent => "clique-independent",
        }
    }

    /// The family member for `n` and the family's second parameter (`m` or
    /// `k`; ignored by `ApexCliques`).
    pub fn generate(self, n: u32, param: u32) -> Result<Graph, Error> {
        match self {
            Family::ApexCliques => gen_apex_cliques(n),
            Family::BipartiteSharp => gen_bipartite_sharp(n, param),
            Family::CliqueIndependent => gen_clique_independent(n, param),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family, Error> {
        match s {
            "apex-cliques" => Ok(Family::ApexCliques),
            "bipartite-sharp" => Ok(Family::BipartiteSharp),
            "clique-independent" => Ok(Family::CliqueIndependent),
            _ => Err(Error::InvalidArgument(format!("unknown family {s:?}"))),
        }
    }
}

/// Where a corpus graph came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Origin {
    Exhaustive,
    Random,
    File { line: usize },
    Family { family: Family, n: u32, param: u32 },
}

#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub graph: Graph,
    pub origin: Origin,
}

/// A parsed corpus description.
///
/// * `exhaustive:v<=5` (also `exhaustive:v≤5`, `exhaustive:5`)
/// * `random:COUNT,SIZE,P,SEED` (the seed may be written `seed=SEED`, or
///   omitted to take the run's seed)
/// * `gen:FAMILY:LO..HI` over the family's second parameter
/// * anything else: a file of graph6 lines (blank and `#` lines skipped)
#[derive(Clone, Debug, PartialEq)]
pub enum CorpusSpec {
    Exhaustive { max_vertices: usize },
    Random { count: usize, size: usize, p: f64, seed: Option<u64> },
    Family { family: Family, lo: u32, hi: u32 },
    File(PathBuf),
}

fn bad_spec(spec: &str, reason: impl fmt::Display) -> Error {
    Error::InvalidArgument(format!("corpus {spec:?}: {reason}"))
}

impl FromStr for CorpusSpec {
    type Err = Error;

    fn from_str(spec: &str) -> Result<CorpusSpec, Error> {
        if let Some(rest) = spec.strip_prefix("exhaustive:") {
            let digits = rest.trim_start_matches('v').trim_start_matches("<=").trim_start_matches('≤').trim();
            let max_vertices = digits.parse().map_err(|_| bad_spec(spec, "expected a vertex bound"))?;
            return Ok(CorpusSpec::Exhaustive { max_vertices });
        }
        if let Some(rest) = spec.strip_prefix("random:") {
            let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
            if !(3..=4).contains(&parts.len()) {
                return Err(bad_spec(spec, "expected COUNT,SIZE,P[,SEED]"));
            }
            let count = parts[0].parse().map_err(|_| bad_spec(spec, "bad count"))?;
            let size = parts[1].parse().map_err(|_| bad_spec(spec, "bad size"))?;
            let p = parts[2].parse().map_err(|_| bad_spec(spec, "bad probability"))?;
            let seed = match parts.get(3) {
                Some(s) => Some(s.trim_start_matches("seed=").parse().map_err(|_| bad_spec(spec, "bad seed"))?),
                None => None,
            };
            return Ok(CorpusSpec::Random { count, size, p, seed });
        }
        if let Some(rest) = spec.strip_prefix("gen:") {
            let (family, range) = rest.split_once(':').ok_or_else(|| bad_spec(spec, "expected gen:FAMILY:LO..HI"))?;
            let family = family.parse()?;
            let (lo, hi) = range.split_once("..").ok_or_else(|| bad_spec(spec, "expected LO..HI"))?;
            let lo = lo.parse().map_err(|_| bad_spec(spec, "bad range start"))?;
            let hi = hi.trim_start_matches('=').parse().map_err(|_| bad_spec(spec, "bad range end"))?;
            return Ok(CorpusSpec::Family { family, lo, hi });
        }
        Ok(CorpusSpec::File(PathBuf::from(spec)))
    }
}

/// Settings that a corpus spec may defer to the run.
#[derive(Clone, Copy, Debug)]
pub struct CorpusContext {
    pub n: u32,
    pub seed: Option<u64>,
    pub exhaustive_cap: usize,
}

impl CorpusSpec {
    /// Materializes the corpus in its canonical order.
    pub fn load(&self, context: &CorpusContext) -> Result<Vec<CorpusItem>, Error> {
        let tag = |origin: Origin| move |graph| CorpusItem { graph, origin: origin.clone() };
        match *self {
            CorpusSpec::Exhaustive { max_vertices } => {
                Ok(iterate_labeled_graphs_capped(max_vertices, context.exhaustive_cap)?
                    .map(tag(Origin::Exhaustive))
                    .collect())
            }
            CorpusSpec::Random { count, size, p, seed } => {
                let seed = seed
                    .or(context.seed)
                    .ok_or_else(|| Error::InvalidArgument("a random corpus needs a seed".into()))?;
                Ok(sample_gnp(count, size, p, seed)?.into_iter().map(tag(Origin::Random)).collect())
            }
            CorpusSpec::Family { family, lo, hi } => (lo..=hi)
                .map(|param| {
                    let graph = family.generate(context.n, param)?;
                    Ok(CorpusItem { graph, origin: Origin::Family { family, n: context.n, param } })
                })
                .collect(),
            CorpusSpec::File(ref path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
                parse_graph6_lines(&text)
            }
        }
    }
}

/// One graph6 string per line; blank lines and `#` comments are skipped.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<CorpusItem>, Error> {
    let mut items = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let graph = parse_graph6(line).map_err(|e| Error::InvalidArgument(format!("line {}: {e}", i + 1)))?;
        items.push(CorpusItem { graph, origin: Origin::File { line: i + 1 } });
    }
    Ok(items)
}
