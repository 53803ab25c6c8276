//! Vertex and graph permanence, plus modularity, conductance and cut-ratio.
//!
//! Permanence of a vertex `v` in community `c` combines the pull of `v`'s
//! strongest external community with how tightly `v`'s internal neighbors
//! are knit together:
//!
//! ```text
//! Perm(v) = I(v) / (E_max(v) * D(v)) - (1 - c_in(v))
//! ```
//!
//! with the boundary rules applied in this order:
//! 1. `v` alone in its community scores 0;
//! 2. an isolated vertex scores 0 (flagged);
//! 3. a vertex without external neighbors scores `c_in(v)`;
//! 4. `c_in(v)` is 0 whenever `I(v) < 2`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::partition::{CommunityId, Partition};
use crate::scalar::Scalar;

/// Which boundary rule, if any, determined a vertex's permanence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    /// Regular formula with at least one external neighbor and `I(v) >= 1`.
    Regular,
    /// `v` is the only member of its community.
    Singleton,
    /// `v` has no neighbors at all. Reported as 0.
    Isolated,
    /// No external neighbors; permanence equals `c_in(v)`.
    NoExternal,
    /// `I(v) = 0` with external neighbors: the formula gives exactly -1,
    /// the lower bound.
    ExternalOnly,
}

/// The integer counts permanence is computed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PermanenceCounts {
    pub internal: usize,
    pub degree: usize,
    pub max_external: usize,
    /// Edges with both endpoints among `v`'s internal neighbors.
    pub internal_links: usize,
    pub singleton: bool,
}

impl PermanenceCounts {
    /// Gathers the counts of `v` under `assignment`; `community_size` is the
    /// size of `v`'s own community.
    pub fn gather(graph: &Graph, assignment: &[CommunityId], community_size: usize, v: VertexId) -> Self {
        let own = assignment[v];
        let mut internal_neighbors = Vec::new();
        let mut external: Vec<CommunityId> = Vec::new();
        for &u in graph.neighbors(v) {
            if assignment[u] == own {
                internal_neighbors.push(u);
            } else {
                external.push(assignment[u]);
            }
        }
        PermanenceCounts {
            internal: internal_neighbors.len(),
            degree: graph.degree(v),
            max_external: max_run(&mut external),
            internal_links: graph.edges_within(&internal_neighbors),
            singleton: community_size == 1,
        }
    }

    /// `c_in(v)`, zero when fewer than two internal neighbors.
    pub fn internal_cc<S: Scalar>(&self) -> S {
        if self.internal < 2 {
            S::zero()
        } else {
            let pairs = self.internal * (self.internal - 1) / 2;
            S::ratio(self.internal_links as i64, pairs as i64)
        }
    }

    pub fn boundary(&self) -> Boundary {
        if self.singleton {
            Boundary::Singleton
        } else if self.degree == 0 {
            Boundary::Isolated
        } else if self.max_external == 0 {
            Boundary::NoExternal
        } else if self.internal == 0 {
            Boundary::ExternalOnly
        } else {
            Boundary::Regular
        }
    }

    pub fn permanence<S: Scalar>(&self) -> S {
        match self.boundary() {
            Boundary::Singleton | Boundary::Isolated => S::zero(),
            Boundary::NoExternal => self.internal_cc(),
            Boundary::ExternalOnly => -S::one(),
            Boundary::Regular => {
                let pull = S::ratio(self.internal as i64, (self.max_external * self.degree) as i64);
                pull - (S::one() - self.internal_cc::<S>())
            }
        }
    }
}

/// Length of the longest run of equal values after sorting.
fn max_run(values: &mut [CommunityId]) -> usize {
    values.sort_unstable();
    let mut best = 0;
    let mut run = 0;
    for i in 0..values.len() {
        run = if i > 0 && values[i] == values[i - 1] { run + 1 } else { 1 };
        best = best.max(run);
    }
    best
}

/// Per-vertex permanence record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PermanenceBreakdown<S> {
    pub vertex: VertexId,
    pub internal_degree: usize,
    pub degree: usize,
    pub max_external: usize,
    pub internal_cc: S,
    pub permanence: S,
    pub boundary: Boundary,
}

pub fn vertex_permanence<S: Scalar>(graph: &Graph, partition: &Partition, v: VertexId) -> PermanenceBreakdown<S> {
    let size = partition.community_size(partition.community_of(v));
    let counts = PermanenceCounts::gather(graph, partition.assignment(), size, v);
    PermanenceBreakdown {
        vertex: v,
        internal_degree: counts.internal,
        degree: counts.degree,
        max_external: counts.max_external,
        internal_cc: counts.internal_cc(),
        permanence: counts.permanence(),
        boundary: counts.boundary(),
    }
}

/// Breakdowns for every vertex, evaluated in parallel.
pub fn permanence_breakdowns<S: Scalar>(graph: &Graph, partition: &Partition) -> Result<Vec<PermanenceBreakdown<S>>> {
    partition.check_covers(graph)?;
    Ok(graph.vertices().into_par_iter().map(|v| vertex_permanence(graph, partition, v)).collect())
}

/// `Perm(G)`, the mean vertex permanence.
pub fn graph_permanence<S: Scalar>(graph: &Graph, partition: &Partition) -> Result<S> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    partition.check_covers(graph)?;
    let values: Vec<S> = graph
        .vertices()
        .into_par_iter()
        .map(|v| vertex_permanence::<S>(graph, partition, v).permanence)
        .collect();
    // Sequential reduction keeps float results independent of thread count.
    let total = values.into_iter().fold(S::zero(), |acc, x| acc + x);
    Ok(total / S::from_count(graph.vertex_count()))
}

/// Newman-Girvan modularity.
pub fn modularity<S: Scalar>(graph: &Graph, partition: &Partition) -> Result<S> {
    partition.check_covers(graph)?;
    let m = graph.edge_count();
    if m == 0 {
        return Err(Error::EdgelessGraph);
    }
    let k = partition.community_count();
    let mut internal_edges = vec![0usize; k];
    let mut volume = vec![0usize; k];
    for v in graph.vertices() {
        volume[partition.community_of(v)] += graph.degree(v);
    }
    for (u, v) in graph.edges() {
        if partition.community_of(u) == partition.community_of(v) {
            internal_edges[partition.community_of(u)] += 1;
        }
    }
    let two_m = 2 * m as i64;
    let mut q = S::zero();
    for c in 0..k {
        let share = S::ratio(volume[c] as i64, two_m);
        q = q + S::ratio(internal_edges[c] as i64, m as i64) - share.clone() * share;
    }
    Ok(q)
}

/// A per-community score, flagged when the defining denominator vanishes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommunityScore<S> {
    pub value: S,
    pub degenerate: bool,
}

/// `(C_S, Vol(S))`: boundary edges and volume of community `c`.
fn boundary_and_volume(graph: &Graph, partition: &Partition, c: CommunityId) -> (usize, usize) {
    let mut cut = 0;
    let mut volume = 0;
    for &v in partition.members(c) {
        volume += graph.degree(v);
        cut += graph.neighbors(v).iter().filter(|&&u| partition.community_of(u) != c).count();
    }
    (cut, volume)
}

/// Conductance `C_S / min(Vol(S), Vol(V \ S))`; 0 and degenerate when either volume is 0.
pub fn conductance<S: Scalar>(graph: &Graph, partition: &Partition, c: CommunityId) -> CommunityScore<S> {
    let (cut, volume) = boundary_and_volume(graph, partition, c);
    let rest = 2 * graph.edge_count() - volume;
    let denom = volume.min(rest);
    if denom == 0 {
        return CommunityScore { value: S::zero(), degenerate: true };
    }
    CommunityScore { value: S::ratio(cut as i64, denom as i64), degenerate: false }
}

/// Cut-ratio `C_S / (n_S (n - n_S))`; 0 and degenerate when `n_S` is 0 or `n`.
pub fn cut_ratio<S: Scalar>(graph: &Graph, partition: &Partition, c: CommunityId) -> CommunityScore<S> {
    let n = graph.vertex_count();
    let size = partition.community_size(c);
    if size == 0 || size == n {
        return CommunityScore { value: S::zero(), degenerate: true };
    }
    let (cut, _) = boundary_and_volume(graph, partition, c);
    CommunityScore { value: S::ratio(cut as i64, (size * (n - size)) as i64), degenerate: false }
}

/// How per-community conductance and cut-ratio are averaged.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    #[default]
    Unweighted,
    SizeWeighted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreReport<S> {
    pub modularity: S,
    /// Mean of `1 - conductance` over communities.
    pub mean_conductance_complement: S,
    /// Mean of `1 - cut_ratio` over communities.
    pub mean_cutratio_complement: S,
    pub graph_permanence: S,
    pub degenerate_conductance: usize,
    pub degenerate_cut_ratio: usize,
}

pub fn score_report<S: Scalar>(graph: &Graph, partition: &Partition, aggregation: Aggregation) -> Result<ScoreReport<S>> {
    partition.check_covers(graph)?;
    let graph_permanence = graph_permanence(graph, partition)?;
    let modularity = modularity(graph, partition)?;
    let k = partition.community_count();
    let weight = |c: CommunityId| match aggregation {
        Aggregation::Unweighted => S::one(),
        Aggregation::SizeWeighted => S::from_count(partition.community_size(c)),
    };
    let total_weight = match aggregation {
        Aggregation::Unweighted => S::from_count(k),
        Aggregation::SizeWeighted => S::from_count(graph.vertex_count()),
    };
    let (mut con, mut cut) = (S::zero(), S::zero());
    let (mut degenerate_conductance, mut degenerate_cut_ratio) = (0, 0);
    for c in 0..k {
        let phi = conductance::<S>(graph, partition, c);
        let theta = cut_ratio::<S>(graph, partition, c);
        degenerate_conductance += phi.degenerate as usize;
        degenerate_cut_ratio += theta.degenerate as usize;
        con = con + weight(c) * (S::one() - phi.value);
        cut = cut + weight(c) * (S::one() - theta.value);
    }
    Ok(ScoreReport {
        modularity,
        mean_conductance_complement: con / total_weight.clone(),
        mean_cutratio_complement: cut / total_weight,
        graph_permanence,
        degenerate_conductance,
        degenerate_cut_ratio,
    })
}
