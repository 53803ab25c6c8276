//! Incremental bookkeeping for MaxPerm: per-vertex edge counts into each
//! neighboring community and the number of links among internal neighbors.
//!
//! A tentative move of `v` from `A` to `C` only changes the counts of `v`
//! and its neighbors, so candidate evaluation never rescans the graph.

use crate::graph::{Graph, VertexId};
use crate::partition::CommunityId;
use crate::scoring::PermanenceCounts;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityEdgeCache {
    /// Sorted by community id; counts are always positive.
    counts: Vec<Vec<(CommunityId, usize)>>,
    internal_links: Vec<usize>,
}

fn bump(list: &mut Vec<(CommunityId, usize)>, c: CommunityId, delta: isize) {
    match list.binary_search_by_key(&c, |e| e.0) {
        Ok(i) => {
            let next = list[i].1 as isize + delta;
            debug_assert!(next >= 0);
            if next == 0 {
                list.remove(i);
            } else {
                list[i].1 = next as usize;
            }
        }
        Err(i) => {
            debug_assert!(delta > 0);
            list.insert(i, (c, delta as usize));
        }
    }
}

/// `|N(u) ∩ N(v)|` restricted to vertices assigned to `community`.
fn common_in(graph: &Graph, assignment: &[CommunityId], u: VertexId, v: VertexId, community: CommunityId) -> usize {
    let (a, b) = (graph.neighbors(u), graph.neighbors(v));
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if assignment[a[i]] == community {
                    count += 1;
                }
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Links among `v`'s neighbors that are assigned to `community`.
fn links_within(graph: &Graph, assignment: &[CommunityId], v: VertexId, community: CommunityId) -> usize {
    let members: Vec<VertexId> = graph.neighbors(v).iter().copied().filter(|&u| assignment[u] == community).collect();
    graph.edges_within(&members)
}

impl CommunityEdgeCache {
    pub fn build(graph: &Graph, assignment: &[CommunityId]) -> Self {
        let mut counts = Vec::with_capacity(graph.vertex_count());
        let mut internal_links = Vec::with_capacity(graph.vertex_count());
        for v in graph.vertices() {
            let mut list: Vec<(CommunityId, usize)> = Vec::new();
            for &u in graph.neighbors(v) {
                bump(&mut list, assignment[u], 1);
            }
            counts.push(list);
            internal_links.push(links_within(graph, assignment, v, assignment[v]));
        }
        CommunityEdgeCache { counts, internal_links }
    }

    pub fn count(&self, v: VertexId, c: CommunityId) -> usize {
        let list = &self.counts[v];
        list.binary_search_by_key(&c, |e| e.0).map_or(0, |i| list[i].1)
    }

    /// Neighboring communities of `v` in ascending id order.
    pub fn neighbor_communities(&self, v: VertexId) -> impl Iterator<Item = CommunityId> + '_ {
        self.counts[v].iter().map(|e| e.0)
    }

    pub fn current_counts(&self, graph: &Graph, assignment: &[CommunityId], sizes: &[usize], v: VertexId) -> PermanenceCounts {
        let own = assignment[v];
        let max_external = self.counts[v].iter().filter(|e| e.0 != own).map(|e| e.1).max().unwrap_or(0);
        PermanenceCounts {
            internal: self.count(v, own),
            degree: graph.degree(v),
            max_external,
            internal_links: self.internal_links[v],
            singleton: sizes[own] == 1,
        }
    }

    /// Counts of `v` itself after a hypothetical move into `target`.
    pub fn moved_counts(&self, graph: &Graph, assignment: &[CommunityId], sizes: &[usize], v: VertexId, target: CommunityId) -> PermanenceCounts {
        let max_external = self.counts[v].iter().filter(|e| e.0 != target).map(|e| e.1).max().unwrap_or(0);
        let target_size = sizes[target] + usize::from(assignment[v] != target);
        PermanenceCounts {
            internal: self.count(v, target),
            degree: graph.degree(v),
            max_external,
            internal_links: links_within(graph, assignment, v, target),
            singleton: target_size == 1,
        }
    }

    /// Counts of neighbor `u` after `v` hypothetically moves from its
    /// community into `target`.
    pub fn neighbor_counts_after_move(
        &self,
        graph: &Graph,
        assignment: &[CommunityId],
        sizes: &[usize],
        u: VertexId,
        v: VertexId,
        target: CommunityId,
    ) -> PermanenceCounts {
        let from = assignment[v];
        let own = assignment[u];
        let adjusted = |c: CommunityId, k: usize| -> usize {
            if c == from {
                k - 1
            } else if c == target {
                k + 1
            } else {
                k
            }
        };
        let mut max_external = 0;
        let mut saw_target = false;
        for &(c, k) in &self.counts[u] {
            saw_target |= c == target;
            if c != own {
                max_external = max_external.max(adjusted(c, k));
            }
        }
        if !saw_target && target != own {
            max_external = max_external.max(1);
        }
        let mut internal = self.count(u, own);
        let mut links = self.internal_links[u];
        let mut size = sizes[own];
        if own == from {
            internal -= 1;
            links -= common_in(graph, assignment, u, v, from);
            size -= 1;
        } else if own == target {
            internal += 1;
            links += common_in(graph, assignment, u, v, target);
            size += 1;
        }
        PermanenceCounts { internal, degree: graph.degree(u), max_external, internal_links: links, singleton: size == 1 }
    }

    /// Applies the move of `v` into `target`. `assignment` is the state
    /// before the move.
    pub fn apply_move(&mut self, graph: &Graph, assignment: &[CommunityId], v: VertexId, target: CommunityId) {
        let from = assignment[v];
        if from == target {
            return;
        }
        for &u in graph.neighbors(v) {
            let own = assignment[u];
            if own == from {
                self.internal_links[u] -= common_in(graph, assignment, u, v, from);
            } else if own == target {
                self.internal_links[u] += common_in(graph, assignment, u, v, target);
            }
            bump(&mut self.counts[u], from, -1);
            bump(&mut self.counts[u], target, 1);
        }
        self.internal_links[v] = links_within(graph, assignment, v, target);
    }

    /// True when the cache matches a from-scratch recount.
    pub fn audit(&self, graph: &Graph, assignment: &[CommunityId]) -> bool {
        *self == CommunityEdgeCache::build(graph, assignment)
    }

    /// Sum of cached counts for `v`; always equals its degree.
    pub fn total(&self, v: VertexId) -> usize {
        self.counts[v].iter().map(|e| e.1).sum()
    }
}
