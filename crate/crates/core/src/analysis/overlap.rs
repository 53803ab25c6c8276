//! How detected communities overlap ground-truth communities.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{CommunityId, Partition};

pub const OVERLAP_BUCKETS: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapHistogram {
    /// `(detected, truth, |c_a ∩ c_g| / |c_a|)` for every nonzero overlap.
    pub edges: Vec<(CommunityId, CommunityId, f64)>,
    /// Bucket 0 holds weights in `[0.9, 1]`, bucket 1 `[0.8, 0.9)`, down to
    /// bucket 9 for `(0, 0.1)`.
    pub counts: Vec<usize>,
    pub fractions: Vec<f64>,
}

fn check_sizes(detected: &Partition, truth: &Partition) -> Result<()> {
    if detected.vertex_count() != truth.vertex_count() {
        return Err(Error::SizeMismatch { partition: detected.vertex_count(), graph: truth.vertex_count() });
    }
    if detected.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(())
}

fn intersections(detected: &Partition, truth: &Partition) -> BTreeMap<(CommunityId, CommunityId), usize> {
    let mut cells = BTreeMap::new();
    for v in 0..detected.vertex_count() {
        *cells.entry((detected.community_of(v), truth.community_of(v))).or_insert(0) += 1;
    }
    cells
}

pub fn bipartite_overlap(detected: &Partition, truth: &Partition) -> Result<OverlapHistogram> {
    check_sizes(detected, truth)?;
    let mut counts = vec![0usize; OVERLAP_BUCKETS];
    let mut edges = Vec::new();
    for ((a, g), shared) in intersections(detected, truth) {
        let size = detected.community_size(a);
        // floor(10 * shared / size) in integers keeps 0.8 out of the 0.7 bucket.
        let tenths = 10 * shared / size;
        counts[(OVERLAP_BUCKETS - 1).saturating_sub(tenths.min(OVERLAP_BUCKETS - 1))] += 1;
        edges.push((a, g, shared as f64 / size as f64));
    }
    let total = edges.len() as f64;
    let fractions = counts.iter().map(|&c| c as f64 / total).collect();
    Ok(OverlapHistogram { edges, counts, fractions })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeDiagnostics {
    /// `(community size, number of communities)` in ascending size.
    pub detected_sizes: Vec<(usize, usize)>,
    pub truth_sizes: Vec<(usize, usize)>,
    /// Largest detected community; the lowest id among equals.
    pub largest_detected: CommunityId,
    /// Best Jaccard coefficient of the largest detected community against any truth community.
    pub largest_jaccard: f64,
    pub best_truth: CommunityId,
}

fn size_histogram(p: &Partition) -> Vec<(usize, usize)> {
    let mut h = BTreeMap::new();
    for s in p.sizes() {
        *h.entry(s).or_insert(0) += 1;
    }
    h.into_iter().collect()
}

pub fn size_diagnostics(detected: &Partition, truth: &Partition) -> Result<SizeDiagnostics> {
    check_sizes(detected, truth)?;
    let sizes = detected.sizes();
    let largest = (0..sizes.len()).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c))).unwrap_or(0);
    let mut best = (0.0, 0);
    for ((a, g), shared) in intersections(detected, truth) {
        if a != largest {
            continue;
        }
        let union = sizes[a] + truth.community_size(g) - shared;
        let j = shared as f64 / union as f64;
        if j > best.0 {
            best = (j, g);
        }
    }
    Ok(SizeDiagnostics {
        detected_sizes: size_histogram(detected),
        truth_sizes: size_histogram(truth),
        largest_detected: largest,
        largest_jaccard: best.0,
        best_truth: best.1,
    })
}
