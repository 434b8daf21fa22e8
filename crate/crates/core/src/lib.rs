//! Exact solver and verification toolkit for degree-prescribed subgraphs,
//! specialized to `H_n`-factors (every degree in `{1, 3, ..., 2n-1, 2n}`).
//!
//! * [`graph`] and [`format`]: small immutable graphs, graph6 and edge lists.
//! * [`prescription`]: degree sets, prescriptions and the deviation `δ_H(F)`.
//! * [`optimizer`]: exact `δ(H)`, optimal degree sets `I_H(v)`, factor search.
//! * [`decomposition`]: the `(A, B, C, D)` decomposition and lemma checks.
//! * [`criteria`], [`certificate`], [`theorems`], [`constructions`]:
//!   Tutte-type conditions, obstruction certificates, theorem verifiers and
//!   extremal graph families.
//! * [`corpus`] and [`harness`]: graph streams and batch verification.

pub mod certificate;
pub mod constructions;
pub mod corpus;
pub mod criteria;
pub mod decomposition;
pub mod edgeset;
pub mod error;
pub mod format;
pub mod graph;
pub mod harness;
pub mod optimizer;
pub mod par;
pub mod prescription;
pub mod theorems;
pub mod verdict;

pub use edgeset::EdgeSet;
pub use error::{BudgetError, Error, FormatError};
pub use graph::{Graph, Subgraph, Vertex, VertexSet};
pub use optimizer::{has_factor, has_hn_factor, solve, Budget, SolveOptions, SolveReport};
pub use par::Parallelism;
pub use prescription::{deviation, vertex_deviation, DegreeSet, Prescription, SpanningSubgraph};
pub use verdict::Verdict;
