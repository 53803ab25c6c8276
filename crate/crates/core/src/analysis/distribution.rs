//! Distribution of vertex permanence over 20 equal bins of [-1, 1], and
//! the average permanence components inside each bin.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::scoring::permanence_breakdowns;

pub const BIN_COUNT: usize = 20;

/// Values this close below a bin edge are counted in the upper bin, so
/// that `0.9` computed as `0.8999999999999999` still lands in the top bin.
const EDGE_SLACK: f64 = 1e-9;

/// Zero-based bin of a permanence value: bin 0 is `[-1, -0.9)`, bin 19 is `[0.9, 1]`.
pub fn bin_index(value: f64) -> usize {
    let scaled = ((value + 1.0) * 10.0 + EDGE_SLACK).floor();
    scaled.clamp(0.0, (BIN_COUNT - 1) as f64) as usize
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinnedDistribution {
    /// `BIN_COUNT + 1` edges from -1 to 1.
    pub bin_edges: Vec<f64>,
    pub counts: Vec<usize>,
    pub fractions: Vec<f64>,
}

impl BinnedDistribution {
    pub fn bin_count(&self) -> usize {
        self.counts.len()
    }

    /// Index of the fullest bin; the lowest one on ties.
    pub fn modal_bin(&self) -> usize {
        let max = *self.counts.iter().max().unwrap_or(&0);
        self.counts.iter().position(|&c| c == max).unwrap_or(0)
    }
}

fn edges() -> Vec<f64> {
    (0..=BIN_COUNT).map(|i| -1.0 + i as f64 / 10.0).collect()
}

pub fn permanence_histogram(graph: &Graph, partition: &Partition) -> Result<BinnedDistribution> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let rows = permanence_breakdowns::<f64>(graph, partition)?;
    let mut counts = vec![0usize; BIN_COUNT];
    for r in &rows {
        counts[bin_index(r.permanence)] += 1;
    }
    let n = rows.len() as f64;
    let fractions = counts.iter().map(|&c| c as f64 / n).collect();
    Ok(BinnedDistribution { bin_edges: edges(), counts, fractions })
}

/// Averages of the permanence components over the vertices of one bin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentBin {
    pub bin: usize,
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
    pub mean_internal_degree: f64,
    pub mean_degree: f64,
    pub mean_max_external: f64,
    /// Mean of `I / (D * E_max)` over vertices with an external neighbor;
    /// `None` when the bin has none.
    pub mean_pull: Option<f64>,
    pub mean_internal_cc: f64,
}

/// Per-bin component averages, populated bins only, in bin order.
pub fn component_profile(graph: &Graph, partition: &Partition) -> Result<Vec<ComponentBin>> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let rows = permanence_breakdowns::<f64>(graph, partition)?;
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); BIN_COUNT];
    for (i, r) in rows.iter().enumerate() {
        groups[bin_index(r.permanence)].push(i);
    }
    let edges = edges();
    Ok(groups
        .iter()
        .enumerate()
        .filter(|(_, members)| !members.is_empty())
        .map(|(bin, members)| {
            let k = members.len() as f64;
            let avg = |f: &dyn Fn(usize) -> f64| members.iter().map(|&i| f(i)).sum::<f64>() / k;
            let pulls: Vec<f64> = members
                .iter()
                .map(|&i| &rows[i])
                .filter(|r| r.max_external > 0)
                .map(|r| r.internal_degree as f64 / (r.degree * r.max_external) as f64)
                .collect();
            ComponentBin {
                bin,
                lower: edges[bin],
                upper: edges[bin + 1],
                count: members.len(),
                mean_internal_degree: avg(&|i| rows[i].internal_degree as f64),
                mean_degree: avg(&|i| rows[i].degree as f64),
                mean_max_external: avg(&|i| rows[i].max_external as f64),
                mean_pull: (!pulls.is_empty()).then(|| pulls.iter().sum::<f64>() / pulls.len() as f64),
                mean_internal_cc: avg(&|i| rows[i].internal_cc),
            }
        })
        .collect())
}
