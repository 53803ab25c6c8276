//! Non-overlapping vertex partitions.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub type CommunityId = usize;

/// Assignment of every vertex to exactly one community.
///
/// Community ids are contiguous `0..community_count()` and numbered in
/// order of first appearance when scanning vertices by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<CommunityId>,
    members: Vec<Vec<VertexId>>,
    names: Option<Vec<String>>,
}

/// Serialized as the assignment vector.
impl Serialize for Partition {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        self.assignment.serialize(serializer)
    }
}

impl Partition {
    /// Builds a partition from arbitrary community labels, compacting them.
    pub fn from_assignment(labels: &[usize]) -> Self {
        let mut remap: HashMap<usize, CommunityId> = HashMap::new();
        let mut assignment = Vec::with_capacity(labels.len());
        let mut members: Vec<Vec<VertexId>> = Vec::new();
        for (v, &label) in labels.iter().enumerate() {
            let next = remap.len();
            let c = *remap.entry(label).or_insert(next);
            if c == members.len() {
                members.push(Vec::new());
            }
            members[c].push(v);
            assignment.push(c);
        }
        Partition { assignment, members, names: None }
    }

    /// Builds a partition from explicit groups. Every vertex `0..n` must appear once.
    pub fn from_groups(n: usize, groups: &[Vec<VertexId>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (c, group) in groups.iter().enumerate() {
            for &v in group {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if labels[v] != usize::MAX {
                    return Err(Error::DuplicateVertex { label: v.to_string(), line: 0 });
                }
                labels[v] = c;
            }
        }
        let missing: Vec<String> =
            labels.iter().enumerate().filter(|(_, &c)| c == usize::MAX).map(|(v, _)| v.to_string()).collect();
        if !missing.is_empty() {
            return Err(Error::MissingVertices { labels: missing });
        }
        Ok(Self::from_assignment(&labels))
    }

    /// Every vertex in one community.
    pub fn whole(n: usize) -> Self {
        Self::from_assignment(&vec![0; n])
    }

    /// Every vertex in its own community.
    pub fn singletons(n: usize) -> Self {
        Self::from_assignment(&(0..n).collect::<Vec<_>>())
    }

    pub fn vertex_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn community_count(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn community_of(&self, v: VertexId) -> CommunityId {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[CommunityId] {
        &self.assignment
    }

    pub fn members(&self, c: CommunityId) -> &[VertexId] {
        &self.members[c]
    }

    pub fn communities(&self) -> &[Vec<VertexId>] {
        &self.members
    }

    pub fn community_size(&self, c: CommunityId) -> usize {
        self.members[c].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    /// External name of community `c` (the ingested label, or the id).
    pub fn community_name(&self, c: CommunityId) -> String {
        match &self.names {
            Some(names) => names[c].clone(),
            None => c.to_string(),
        }
    }

    /// Same grouping of vertices, ignoring community labels.
    pub fn same_grouping(&self, other: &Partition) -> bool {
        self.vertex_count() == other.vertex_count() && self.assignment == other.assignment
    }

    /// Errors unless this partition covers exactly the vertices of `graph`.
    pub fn check_covers(&self, graph: &Graph) -> Result<()> {
        if self.vertex_count() != graph.vertex_count() {
            return Err(Error::SizeMismatch { partition: self.vertex_count(), graph: graph.vertex_count() });
        }
        Ok(())
    }

    /// `assignment` and `members` are exact inverses.
    pub fn check_invariants(&self) -> bool {
        let mut seen = 0;
        for (c, group) in self.members.iter().enumerate() {
            if group.is_empty() {
                return false;
            }
            for &v in group {
                if self.assignment.get(v) != Some(&c) {
                    return false;
                }
                seen += 1;
            }
        }
        seen == self.assignment.len()
    }

    /// Serializes as `vertex_label<TAB>community_label` lines in vertex order.
    pub fn to_text(&self, graph: &Graph) -> String {
        let mut out = String::new();
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "{}\t{}", graph.label(v), self.community_name(self.assignment[v]));
        }
        out
    }
}

/// Parses a partition file against `graph`'s vertex labels.
///
/// Each non-comment line holds a vertex label and a community label separated
/// by a tab (any whitespace is accepted). Community labels become contiguous
/// ids in order of first appearance by vertex id.
pub fn load_partition(text: &str, graph: &Graph) -> Result<Partition> {
    let n = graph.vertex_count();
    let mut raw: Vec<Option<usize>> = vec![None; n];
    let mut community_index: HashMap<String, usize> = HashMap::new();
    let mut community_labels: Vec<String> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split(['\t', ' ']).filter(|f| !f.is_empty());
        let (vertex_label, community_label) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected vertex and community label, found {:?}", trimmed),
                })
            }
        };
        let v = graph
            .vertex_by_label(vertex_label)
            .ok_or_else(|| Error::UnknownVertex { label: vertex_label.to_owned(), line: line_no })?;
        if raw[v].is_some() {
            return Err(Error::DuplicateVertex { label: vertex_label.to_owned(), line: line_no });
        }
        let next = community_labels.len();
        let c = *community_index.entry(community_label.to_owned()).or_insert_with(|| {
            community_labels.push(community_label.to_owned());
            next
        });
        raw[v] = Some(c);
    }
    let missing: Vec<String> =
        raw.iter().enumerate().filter(|(_, c)| c.is_none()).map(|(v, _)| graph.label(v).into_owned()).collect();
    if !missing.is_empty() {
        return Err(Error::MissingVertices { labels: missing });
    }
    let labels: Vec<usize> = raw.into_iter().map(|c| c.unwrap_or_default()).collect();
    let mut partition = Partition::from_assignment(&labels);
    // Carry the original community names across the compaction.
    let mut names = vec![String::new(); partition.community_count()];
    let mut done = HashSet::new();
    for (v, &label) in labels.iter().enumerate() {
        if done.insert(label) {
            names[partition.community_of(v)] = community_labels[label].clone();
        }
    }
    partition.names = Some(names);
    Ok(partition)
}
