//! Core-periphery structure inside communities: farness of a vertex from
//! its co-members, and assortativity of permanence along internal edges.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::distribution::bin_index;
use super::stats::pearson;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::partition::{CommunityId, Partition};
use crate::scoring::permanence_breakdowns;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FarnessBin {
    /// Lower edge of the bin.
    pub farness: f64,
    pub count: usize,
    pub mean_permanence: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FarnessProfile {
    /// `(vertex, farness, permanence)` for every vertex with a reachable co-member.
    pub vertices: Vec<(VertexId, f64, f64)>,
    pub bins: Vec<FarnessBin>,
}

/// Mean shortest-path length from each member to the co-members it can
/// reach inside the induced subgraph of `members`.
fn community_farness(graph: &Graph, members: &[VertexId]) -> Vec<Option<f64>> {
    let sub = graph.induced(members);
    let k = members.len();
    let mut dist = vec![usize::MAX; k];
    let mut queue = VecDeque::new();
    (0..k)
        .map(|s| {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            queue.push_back(s);
            let (mut total, mut reached) = (0usize, 0usize);
            while let Some(x) = queue.pop_front() {
                for &y in sub.neighbors(x) {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        total += dist[y];
                        reached += 1;
                        queue.push_back(y);
                    }
                }
            }
            (reached > 0).then(|| total as f64 / reached as f64)
        })
        .collect()
}

/// Farness against permanence, binned by farness in steps of `bin_width`.
pub fn farness_profile(graph: &Graph, partition: &Partition, bin_width: f64) -> Result<FarnessProfile> {
    if bin_width.is_nan() || bin_width <= 0.0 {
        return Err(Error::InvalidParameter("farness bin width must be positive".into()));
    }
    let perms: Vec<f64> = permanence_breakdowns::<f64>(graph, partition)?.into_iter().map(|r| r.permanence).collect();
    let mut vertices = Vec::new();
    for members in partition.communities() {
        for (&v, d) in members.iter().zip(community_farness(graph, members)) {
            if let Some(d) = d {
                vertices.push((v, d, perms[v]));
            }
        }
    }
    vertices.sort_by_key(|e| e.0);
    let mut bins: BTreeMap<u64, (usize, f64)> = BTreeMap::new();
    for &(_, d, p) in &vertices {
        // Slack keeps exact multiples of the width in their own bin.
        let key = (d / bin_width + 1e-9).floor() as u64;
        let e = bins.entry(key).or_insert((0, 0.0));
        e.0 += 1;
        e.1 += p;
    }
    let bins = bins
        .into_iter()
        .map(|(key, (count, sum))| FarnessBin { farness: key as f64 * bin_width, count, mean_permanence: sum / count as f64 })
        .collect();
    Ok(FarnessProfile { vertices, bins })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssortativityReport {
    /// Mean over usable communities, with the permanence bin index as attribute.
    pub r_permanence: Option<f64>,
    /// Mean over usable communities, with degree as attribute.
    pub r_degree: Option<f64>,
    pub used_permanence: usize,
    pub used_degree: usize,
    /// Communities without an internal edge.
    pub edgeless: Vec<CommunityId>,
    /// Communities whose attribute has zero variance over internal edges.
    pub undefined_permanence: Vec<CommunityId>,
    pub undefined_degree: Vec<CommunityId>,
}

/// Newman's scalar assortativity over the edges among `members`: the
/// Pearson correlation of endpoint attributes, each edge taken both ways.
fn scalar_assortativity(graph: &Graph, members: &[VertexId], attr: &dyn Fn(VertexId) -> f64) -> Option<f64> {
    let sub = graph.induced(members);
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (a, b) in sub.edges() {
        let (u, v) = (members[a], members[b]);
        xs.extend([attr(u), attr(v)]);
        ys.extend([attr(v), attr(u)]);
    }
    pearson(&xs, &ys)
}

pub fn permanence_assortativity(graph: &Graph, partition: &Partition) -> Result<AssortativityReport> {
    let bins: Vec<f64> = permanence_breakdowns::<f64>(graph, partition)?.into_iter().map(|r| bin_index(r.permanence) as f64).collect();
    let mut report = AssortativityReport {
        r_permanence: None,
        r_degree: None,
        used_permanence: 0,
        used_degree: 0,
        edgeless: Vec::new(),
        undefined_permanence: Vec::new(),
        undefined_degree: Vec::new(),
    };
    let (mut sum_perm, mut sum_degree) = (0.0, 0.0);
    for (c, members) in partition.communities().iter().enumerate() {
        if members.len() < 2 || graph.induced(members).edge_count() == 0 {
            report.edgeless.push(c);
            continue;
        }
        match scalar_assortativity(graph, members, &|v| bins[v]) {
            Some(r) => {
                sum_perm += r;
                report.used_permanence += 1;
            }
            None => report.undefined_permanence.push(c),
        }
        match scalar_assortativity(graph, members, &|v| graph.degree(v) as f64) {
            Some(r) => {
                sum_degree += r;
                report.used_degree += 1;
            }
            None => report.undefined_degree.push(c),
        }
    }
    report.r_permanence = (report.used_permanence > 0).then(|| sum_perm / report.used_permanence as f64);
    report.r_degree = (report.used_degree > 0).then(|| sum_degree / report.used_degree as f64);
    Ok(report)
}
