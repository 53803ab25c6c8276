//! Initial seed communities. Every seed community induces a connected subgraph.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexId};
use crate::partition::Partition;
use crate::rng;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedStrategy {
    /// Greedy maximal matching; unmatched vertices stay alone.
    PairWise,
    /// Sweep by decreasing degree; each unclaimed vertex claims its unclaimed neighbors.
    #[default]
    HighDegree,
    /// As `HighDegree`, keyed by the local clustering coefficient.
    HighCc,
}

impl std::str::FromStr for SeedStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pair_wise" | "pair-wise" | "pairwise" => Ok(SeedStrategy::PairWise),
            "high_degree" | "high-degree" => Ok(SeedStrategy::HighDegree),
            "high_cc" | "high-cc" => Ok(SeedStrategy::HighCc),
            other => Err(format!("unknown seed strategy {other:?} (expected pair_wise, high_degree or high_cc)")),
        }
    }
}

/// Seed partition for `graph`. `PairWise` matches in a random order drawn
/// from `rng_seed`; the sweep strategies break ties by vertex id and ignore it.
pub fn seed(graph: &Graph, strategy: SeedStrategy, rng_seed: u64) -> Partition {
    let mut order: Vec<VertexId> = graph.vertices().collect();
    if strategy == SeedStrategy::PairWise {
        order.shuffle(&mut rng::seeded(rng::derive_seed(rng_seed, &[rng::tag("seed")])));
    }
    seed_in_order(graph, strategy, &order)
}

/// As [`seed`] with an explicit matching order; ties in the sweep
/// strategies go to the vertex that comes first in `order`.
pub fn seed_in_order(graph: &Graph, strategy: SeedStrategy, order: &[VertexId]) -> Partition {
    let n = graph.vertex_count();
    let mut label = vec![usize::MAX; n];
    match strategy {
        SeedStrategy::PairWise => {
            let mut next = 0;
            for &v in order {
                if label[v] != usize::MAX {
                    continue;
                }
                label[v] = next;
                if let Some(&u) = graph.neighbors(v).iter().find(|&&u| label[u] == usize::MAX) {
                    label[u] = next;
                }
                next += 1;
            }
        }
        SeedStrategy::HighDegree | SeedStrategy::HighCc => {
            let mut position = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                position[v] = i;
            }
            let mut sweep: Vec<VertexId> = order.to_vec();
            if strategy == SeedStrategy::HighDegree {
                sweep.sort_by(|&a, &b| graph.degree(b).cmp(&graph.degree(a)).then(position[a].cmp(&position[b])));
            } else {
                let cc: Vec<f64> = graph.vertices().map(|v| graph.clustering_coefficient(v)).collect();
                sweep.sort_by(|&a, &b| cc[b].total_cmp(&cc[a]).then(position[a].cmp(&position[b])));
            }
            let mut next = 0;
            for v in sweep {
                if label[v] != usize::MAX {
                    continue;
                }
                label[v] = next;
                for &u in graph.neighbors(v) {
                    if label[u] == usize::MAX {
                        label[u] = next;
                    }
                }
                next += 1;
            }
        }
    }
    Partition::from_assignment(&label)
}
