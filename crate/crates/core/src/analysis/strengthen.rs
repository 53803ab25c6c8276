//! Strengthening communities by deleting their lowest-permanence vertices.
//!
//! Vertices are ranked once by their permanence under the input partition
//! (dense ranking, lowest permanence first). For a removal fraction `f`, each
//! community drops its `floor(f * |S|)` lowest-ranked members, ties going to
//! the lower vertex id. The edge density of a community is its internal edge
//! count over `|S|(|S|-1)/2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::partition::Partition;
use crate::scoring::permanence_breakdowns;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrengthenRow {
    pub fraction: f64,
    pub removed: usize,
    /// Mean over communities of the percentage change in edge density.
    pub mean_change: f64,
    pub variance: f64,
    /// Communities that contributed: at least two members before and after
    /// removal, and a nonzero initial density.
    pub communities: usize,
}

/// Dense ranks starting at 1; equal values share a rank.
fn dense_ranks(values: &[f64]) -> Vec<usize> {
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    values.iter().map(|v| sorted.partition_point(|x| x < v) + 1).collect()
}

fn density(graph: &Graph, members: &[VertexId]) -> Option<f64> {
    let k = members.len();
    (k >= 2).then(|| graph.induced(members).edge_count() as f64 / (k * (k - 1) / 2) as f64)
}

pub fn strengthen(graph: &Graph, partition: &Partition, fractions: &[f64]) -> Result<Vec<StrengthenRow>> {
    if let Some(f) = fractions.iter().find(|f| !(0.0..=0.5).contains(*f)) {
        return Err(Error::InvalidParameter(format!("removal fraction {f} outside [0, 0.5]")));
    }
    let perms: Vec<f64> = permanence_breakdowns::<f64>(graph, partition)?.into_iter().map(|r| r.permanence).collect();
    let rank = dense_ranks(&perms);
    let ordered: Vec<Vec<VertexId>> = partition
        .communities()
        .iter()
        .map(|members| {
            let mut m = members.clone();
            m.sort_by_key(|&v| (rank[v], v));
            m
        })
        .collect();

    Ok(fractions
        .iter()
        .map(|&fraction| {
            let mut changes = Vec::new();
            let mut removed = 0;
            for members in &ordered {
                let drop = (fraction * members.len() as f64).floor() as usize;
                removed += drop;
                let before = density(graph, members);
                let mut kept = members[drop..].to_vec();
                kept.sort_unstable();
                let after = density(graph, &kept);
                if let (Some(b), Some(a)) = (before, after) {
                    if b > 0.0 {
                        changes.push(100.0 * (a - b) / b);
                    }
                }
            }
            let k = changes.len() as f64;
            let mean = if changes.is_empty() { 0.0 } else { changes.iter().sum::<f64>() / k };
            let variance = if changes.is_empty() { 0.0 } else { changes.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / k };
            StrengthenRow { fraction, removed, mean_change: mean, variance, communities: changes.len() }
        })
        .collect())
}
