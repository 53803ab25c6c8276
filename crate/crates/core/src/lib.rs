//! Permanence: a vertex-centric community quality metric, the MaxPerm
//! detector that maximizes it, and the supporting scoring, validation,
//! perturbation and analysis tools.
//!
//! Metric code is generic over [`Scalar`], so the same routines run in
//! `f32`, `f64` or exact rational arithmetic. The aliases below fix the
//! common instantiations.

pub mod analysis;
pub mod error;
pub mod generate;
pub mod graph;
pub mod maxperm;
pub mod partition;
pub mod perturbation;
pub mod rng;
pub mod scalar;
pub mod scoring;
pub mod validation;

pub use error::{Error, Result};
pub use generate::{generate, GeneratorSpec};
pub use graph::{load_edge_list, Graph, VertexId};
pub use partition::{load_partition, CommunityId, Partition};
pub use scalar::Scalar;

/// Exact rational scalar used by oracles and the lemma laboratory.
pub type Exact = num_rational::BigRational;

/// Default floating-point scalar.
pub type Real = f64;

pub type Breakdown = scoring::PermanenceBreakdown<Real>;
pub type ExactBreakdown = scoring::PermanenceBreakdown<Exact>;
pub type Report = scoring::ScoreReport<Real>;
