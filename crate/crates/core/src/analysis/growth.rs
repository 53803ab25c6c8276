//! Modularity and permanence of planted partitions as the number of
//! equally sized blocks grows.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generate::{generate, GeneratorSpec};
use crate::rng;
use crate::scoring::{graph_permanence, modularity};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthRow {
    pub blocks: usize,
    pub vertices: usize,
    pub edges: usize,
    pub modularity: f64,
    pub permanence: f64,
}

/// Scores the planted truth at each block count. `block_size`, `p_in` and
/// `p_out` stay fixed, so the graph grows symmetrically.
pub fn asymptotic_growth_study(block_counts: &[usize], block_size: usize, p_in: f64, p_out: f64, rng_seed: u64) -> Result<Vec<GrowthRow>> {
    if block_counts.is_empty() {
        return Err(Error::InvalidParameter("growth study needs at least one block count".into()));
    }
    block_counts
        .iter()
        .enumerate()
        .map(|(i, &blocks)| {
            let seed = rng::derive_seed(rng_seed, &[rng::tag("growth"), i as u64]);
            let (graph, truth) = generate(&GeneratorSpec::PlantedPartition { blocks, block_size, p_in, p_out, seed })?;
            Ok(GrowthRow {
                blocks,
                vertices: graph.vertex_count(),
                edges: graph.edge_count(),
                modularity: modularity(&graph, &truth)?,
                permanence: graph_permanence(&graph, &truth)?,
            })
        })
        .collect()
}
