//! Sensitivity of MaxPerm to the vertex processing order.
//!
//! A constant community is a maximal group of vertices placed together in
//! every run. After `k` runs, `φ_k` is the number of constant communities
//! among those runs divided by `n`.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use super::{detect, DetectorConfig};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::partition::{CommunityId, Partition};
use crate::rng;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityReport {
    pub permutation_count: usize,
    /// `φ_k` after the first `k` runs, for `k = 1..=permutation_count`.
    pub phi_values: Vec<f64>,
    /// `phi_values` divided by their minimum.
    pub normalized: Vec<f64>,
    pub constant_communities: Vec<Vec<VertexId>>,
    pub partitions: Vec<Partition>,
}

/// Runs [`detect`] under `permutations` seeded random vertex orders.
pub fn sensitivity(graph: &Graph, config: &DetectorConfig, permutations: usize) -> Result<SensitivityReport> {
    if permutations < 2 {
        return Err(Error::InvalidParameter("sensitivity needs at least 2 permutations".into()));
    }
    let orders: Vec<Vec<VertexId>> = (0..permutations as u64)
        .map(|i| {
            let mut order: Vec<VertexId> = graph.vertices().collect();
            let mut rng = rng::seeded(rng::derive_seed(config.rng_seed, &[rng::tag("sensitivity"), i]));
            order.shuffle(&mut rng);
            order
        })
        .collect();
    sensitivity_with_orders(graph, config, &orders)
}

/// Runs [`detect`] once per explicit order.
pub fn sensitivity_with_orders(graph: &Graph, config: &DetectorConfig, orders: &[Vec<VertexId>]) -> Result<SensitivityReport> {
    if orders.len() < 2 {
        return Err(Error::InvalidParameter("sensitivity needs at least 2 vertex orders".into()));
    }
    let partitions: Vec<Partition> = orders
        .par_iter()
        .map(|order| {
            let run = DetectorConfig { vertex_order: Some(order.clone()), ..config.clone() };
            detect::<f64>(graph, &run).map(|d| d.partition)
        })
        .collect::<Result<_>>()?;

    let n = graph.vertex_count();
    // Refine a running label per vertex; two vertices share a label iff
    // they were co-assigned in every run so far.
    let mut label: Vec<usize> = vec![0; n];
    let mut phi_values = Vec::with_capacity(partitions.len());
    for p in &partitions {
        let mut ids: HashMap<(usize, CommunityId), usize> = HashMap::new();
        for (v, l) in label.iter_mut().enumerate() {
            let next = ids.len();
            *l = *ids.entry((*l, p.community_of(v))).or_insert(next);
        }
        phi_values.push(ids.len() as f64 / n as f64);
    }
    let min = phi_values.iter().copied().fold(f64::INFINITY, f64::min);
    let normalized = phi_values.iter().map(|phi| phi / min).collect();
    let constant_communities = Partition::from_assignment(&label).communities().to_vec();
    Ok(SensitivityReport { permutation_count: partitions.len(), phi_values, normalized, constant_communities, partitions })
}
