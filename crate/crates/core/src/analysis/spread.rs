//! Push-protocol message spreading from one initiator per community.
//!
//! Rounds are synchronous. In each round every informed vertex picks one
//! uninformed neighbor uniformly at random, as seen at the start of the
//! round, and informs it; two vertices picking the same target inform it once.

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::partition::Partition;
use crate::rng;
use crate::scoring::permanence_breakdowns;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selector {
    Random,
    Degree,
    Permanence,
}

impl std::str::FromStr for Selector {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "random" => Ok(Selector::Random),
            "degree" => Ok(Selector::Degree),
            "permanence" => Ok(Selector::Permanence),
            other => Err(format!("unknown selector {other:?} (expected random, degree or permanence)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpreadReport {
    pub selector: Selector,
    pub runs: usize,
    pub mean_rounds: f64,
    pub rounds: Vec<usize>,
    /// Vertices reachable from the initiators.
    pub reached: usize,
    /// False when some vertices are unreachable from every initiator.
    pub complete: bool,
}

/// One initiator per community: the maximizer of `key`, lowest id on ties.
fn best_per_community(partition: &Partition, key: impl Fn(VertexId) -> f64) -> Vec<VertexId> {
    partition
        .communities()
        .iter()
        .map(|members| {
            members.iter().copied().fold(members[0], |best, v| if key(v) > key(best) { v } else { best })
        })
        .collect()
}

fn simulate(graph: &Graph, initiators: &[VertexId], rng: &mut rng::Rng) -> (usize, usize) {
    let n = graph.vertex_count();
    let mut informed = vec![false; n];
    let mut active: Vec<VertexId> = Vec::new();
    for &v in initiators {
        if !informed[v] {
            informed[v] = true;
            active.push(v);
        }
    }
    let mut rounds = 0;
    let mut candidates = Vec::new();
    loop {
        let mut fresh = Vec::new();
        for &v in &active {
            candidates.clear();
            candidates.extend(graph.neighbors(v).iter().copied().filter(|&u| !informed[u]));
            if let Some(&u) = candidates.choose(rng) {
                fresh.push(u);
            }
        }
        if fresh.is_empty() {
            break;
        }
        rounds += 1;
        for u in fresh {
            if !informed[u] {
                informed[u] = true;
                active.push(u);
            }
        }
        // Vertices with no uninformed neighbor left never act again.
        active.retain(|&v| graph.neighbors(v).iter().any(|&u| !informed[u]));
    }
    (rounds, informed.iter().filter(|&&x| x).count())
}

pub fn spreading_simulation(graph: &Graph, truth: &Partition, selector: Selector, runs: usize, rng_seed: u64) -> Result<SpreadReport> {
    if runs == 0 {
        return Err(Error::InvalidParameter("runs must be at least 1".into()));
    }
    truth.check_covers(graph)?;
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let fixed = match selector {
        Selector::Random => None,
        Selector::Degree => Some(best_per_community(truth, |v| graph.degree(v) as f64)),
        Selector::Permanence => {
            let perms: Vec<f64> = permanence_breakdowns::<f64>(graph, truth)?.into_iter().map(|r| r.permanence).collect();
            Some(best_per_community(truth, |v| perms[v]))
        }
    };
    let results: Vec<(usize, usize)> = (0..runs as u64)
        .into_par_iter()
        .map(|run| {
            let mut rng = rng::seeded(rng::derive_seed(rng_seed, &[rng::tag("spread"), run]));
            let initiators = match &fixed {
                Some(list) => list.clone(),
                None => truth.communities().iter().map(|m| *m.choose(&mut rng).expect("communities are nonempty")).collect(),
            };
            simulate(graph, &initiators, &mut rng)
        })
        .collect();
    let rounds: Vec<usize> = results.iter().map(|r| r.0).collect();
    let reached = results.iter().map(|r| r.1).min().unwrap_or(0);
    Ok(SpreadReport {
        selector,
        runs,
        mean_rounds: rounds.iter().sum::<usize>() as f64 / runs as f64,
        rounds,
        reached,
        complete: reached == graph.vertex_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_of_four_takes_two_or_three_rounds() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let report = spreading_simulation(&g, &Partition::whole(4), Selector::Degree, 200, 9).unwrap();
        assert!(report.rounds.iter().all(|&r| (2..=3).contains(&r)));
        assert!(report.complete);
    }

    #[test]
    fn all_initiators_need_no_rounds() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let report = spreading_simulation(&g, &Partition::singletons(3), Selector::Random, 5, 1).unwrap();
        assert_eq!(report.mean_rounds, 0.0);
    }

    #[test]
    fn unreachable_vertices_are_flagged() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let report = spreading_simulation(&g, &Partition::whole(4), Selector::Degree, 3, 1).unwrap();
        assert!(!report.complete);
        assert_eq!(report.reached, 2);
    }
}
