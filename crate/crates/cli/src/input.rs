//! File loading with the offending path attached to every error.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use permanence::{load_edge_list, load_partition, Error, Graph, Partition, VertexId};

use crate::error::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

fn data(path: &Path) -> impl FnOnce(Error) -> CliError + '_ {
    move |source| CliError::Data { path: path.to_path_buf(), source }
}

pub fn graph(path: &Path) -> Result<Graph, CliError> {
    let (g, _) = load_edge_list(&read(path)?).map_err(data(path))?;
    Ok(g)
}

pub fn partition(path: &Path, graph: &Graph) -> Result<Partition, CliError> {
    let p = load_partition(&read(path)?, graph).map_err(data(path))?;
    p.check_covers(graph).map_err(data(path))?;
    Ok(p)
}

/// `(vertex, community)` label pairs of a partition file.
fn label_pairs(path: &Path) -> Result<Vec<(usize, String, String)>, CliError> {
    let mut pairs = Vec::new();
    for (idx, line) in read(path)?.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[..] {
            [v, c] => pairs.push((idx + 1, v.to_string(), c.to_string())),
            _ => {
                let message = format!("expected vertex and community label, found {line:?}");
                return Err(data(path)(Error::Parse { line: idx + 1, message }));
            }
        }
    }
    if pairs.is_empty() {
        return Err(data(path)(Error::EmptyInput));
    }
    Ok(pairs)
}

fn assignment(pairs: &[(usize, String, String)], index: &HashMap<&str, VertexId>, path: &Path) -> Result<Partition, CliError> {
    let mut community_ids: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<Option<usize>> = vec![None; index.len()];
    for (line, v, c) in pairs {
        let id = *index.get(v.as_str()).ok_or_else(|| data(path)(Error::UnknownVertex { label: v.clone(), line: *line }))?;
        if labels[id].is_some() {
            return Err(data(path)(Error::DuplicateVertex { label: v.clone(), line: *line }));
        }
        let next = community_ids.len();
        labels[id] = Some(*community_ids.entry(c.as_str()).or_insert(next));
    }
    let missing: Vec<String> = index.iter().filter(|(_, &id)| labels[id].is_none()).map(|(l, _)| l.to_string()).collect();
    if !missing.is_empty() {
        let mut labels = missing;
        labels.sort();
        return Err(data(path)(Error::MissingVertices { labels }));
    }
    Ok(Partition::from_assignment(&labels.into_iter().map(Option::unwrap).collect::<Vec<_>>()))
}

/// Detected and truth partitions. With a graph, both are read against its
/// labels; without one, vertices are the labels of the truth file.
pub fn partition_pair(detected: &Path, truth: &Path, graph: Option<&Graph>) -> Result<(Partition, Partition), CliError> {
    if let Some(g) = graph {
        return Ok((partition(detected, g)?, partition(truth, g)?));
    }
    let truth_pairs = label_pairs(truth)?;
    let mut index: HashMap<&str, VertexId> = HashMap::new();
    for (id, (line, v, _)) in truth_pairs.iter().enumerate() {
        if index.insert(v.as_str(), id).is_some() {
            return Err(data(truth)(Error::DuplicateVertex { label: v.clone(), line: *line }));
        }
    }
    let t = assignment(&truth_pairs, &index, truth)?;
    let d = assignment(&label_pairs(detected)?, &index, detected)?;
    Ok((d, t))
}

/// Whitespace-separated vertex labels, one full permutation.
pub fn order(path: &Path, graph: &Graph) -> Result<Vec<VertexId>, CliError> {
    let text = read(path)?;
    let mut order = Vec::with_capacity(graph.vertex_count());
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        for label in line.split_whitespace() {
            let v = graph
                .vertex_by_label(label)
                .ok_or_else(|| data(path)(Error::UnknownVertex { label: label.to_string(), line: idx + 1 }))?;
            order.push(v);
        }
    }
    Ok(order)
}

pub fn display(path: &Path) -> String {
    path.display().to_string()
}

pub fn display_all<'a>(paths: impl IntoIterator<Item = &'a PathBuf>) -> Vec<String> {
    paths.into_iter().map(|p| display(p)).collect()
}
