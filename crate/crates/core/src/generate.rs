//! Deterministic synthetic graphs with planted community structure.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::rng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// `cliques` copies of `K_size` joined in a cycle by single edges.
    RingOfCliques { cliques: usize, size: usize },
    /// 4-neighbor lattice.
    Grid { rows: usize, cols: usize },
    /// Blocks of equal size; intra-block pairs are edges with probability
    /// `p_in`, inter-block pairs with `p_out`.
    PlantedPartition { blocks: usize, block_size: usize, p_in: f64, p_out: f64, seed: u64 },
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            GeneratorSpec::RingOfCliques { cliques, size } => {
                if cliques < 3 || size < 3 {
                    return Err(Error::InvalidGenerator(format!(
                        "ring of cliques needs at least 3 cliques of size at least 3, got {cliques}x{size}"
                    )));
                }
            }
            GeneratorSpec::Grid { rows, cols } => {
                if rows < 2 || cols < 2 {
                    return Err(Error::InvalidGenerator(format!("grid needs rows, cols >= 2, got {rows}x{cols}")));
                }
            }
            GeneratorSpec::PlantedPartition { blocks, block_size, p_in, p_out, .. } => {
                if blocks == 0 || block_size == 0 {
                    return Err(Error::InvalidGenerator("planted partition needs nonempty blocks".into()));
                }
                if !(0.0 <= p_out && p_out < p_in && p_in <= 1.0) {
                    return Err(Error::InvalidGenerator(format!(
                        "planted partition needs 0 <= p_out < p_in <= 1, got p_in={p_in} p_out={p_out}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Builds the graph and its planted partition.
pub fn generate(spec: &GeneratorSpec) -> Result<(Graph, Partition)> {
    spec.validate()?;
    match *spec {
        GeneratorSpec::RingOfCliques { cliques, size } => Ok(ring_of_cliques(cliques, size)),
        GeneratorSpec::Grid { rows, cols } => Ok(grid(rows, cols)),
        GeneratorSpec::PlantedPartition { blocks, block_size, p_in, p_out, seed } => {
            Ok(planted_partition(blocks, block_size, p_in, p_out, seed))
        }
    }
}

/// Clique `i` occupies vertices `i*size..(i+1)*size`. Its vertex 0 is joined
/// to vertex 1 of clique `i+1 (mod cliques)`, so no vertex carries two
/// external edges.
fn ring_of_cliques(cliques: usize, size: usize) -> (Graph, Partition) {
    let mut edges = Vec::with_capacity(cliques * size * (size - 1) / 2 + cliques);
    let mut labels = Vec::with_capacity(cliques * size);
    for i in 0..cliques {
        let base = i * size;
        for a in 0..size {
            labels.push(i);
            for b in a + 1..size {
                edges.push((base + a, base + b));
            }
        }
        let next = ((i + 1) % cliques) * size;
        edges.push((base, next + 1));
    }
    let graph = Graph::from_edges(cliques * size, edges).expect("ids in range");
    (graph, Partition::from_assignment(&labels))
}

fn grid(rows: usize, cols: usize) -> (Graph, Partition) {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    let n = rows * cols;
    (Graph::from_edges(n, edges).expect("ids in range"), Partition::singletons(n))
}

fn planted_partition(blocks: usize, block_size: usize, p_in: f64, p_out: f64, seed: u64) -> (Graph, Partition) {
    let n = blocks * block_size;
    let mut rng = rng::seeded(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if u / block_size == v / block_size { p_in } else { p_out };
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|v| v / block_size).collect();
    (Graph::from_edges(n, edges).expect("ids in range"), Partition::from_assignment(&labels))
}
