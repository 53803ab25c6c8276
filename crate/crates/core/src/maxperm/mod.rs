//! MaxPerm: greedy community detection by maximizing permanence.
//!
//! Starting from seed communities, each vertex in turn tries the
//! communities of its neighbors. A move is kept only when it strictly
//! raises the vertex's own permanence and the summed permanence of its
//! neighbors; otherwise the vertex is put back. Passes repeat until the
//! running permanence sum stops changing or `max_iterations` is reached.

mod cache;
mod seed;
mod sensitivity;

pub use cache::CommunityEdgeCache;
pub use seed::{seed, seed_in_order, SeedStrategy};
pub use sensitivity::{sensitivity, sensitivity_with_orders, SensitivityReport};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::partition::{CommunityId, Partition};
use crate::scalar::Scalar;
use crate::scoring::{graph_permanence, PermanenceCounts};

/// Which conditions a tentative move must satisfy to be kept.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AcceptanceRule {
    /// Vertex permanence and neighbor permanence sum must both increase.
    #[default]
    VertexAndNeighbors,
    /// Only the vertex's own permanence must increase.
    VertexOnly,
}

/// How candidate communities are scanned for one vertex.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateScan {
    /// Commit the first improving candidate in ascending community id.
    #[default]
    FirstImprovement,
    /// Try every candidate; each accepted move becomes the new baseline for
    /// the vertex's own permanence while the neighbor baseline stays at its
    /// value before the scan.
    BestSoFar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectorConfig {
    pub seed_strategy: SeedStrategy,
    pub max_iterations: usize,
    pub rng_seed: u64,
    /// Explicit processing order; ascending id when absent.
    pub vertex_order: Option<Vec<VertexId>>,
    pub acceptance: AcceptanceRule,
    pub scan: CandidateScan,
    /// Recount the edge cache after every committed move (cached detector only).
    pub audit_cache: bool,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        DetectorConfig {
            seed_strategy: SeedStrategy::HighDegree,
            max_iterations: 10,
            rng_seed: 0,
            vertex_order: None,
            acceptance: AcceptanceRule::default(),
            scan: CandidateScan::default(),
            audit_cache: false,
        }
    }
}

impl DetectorConfig {
    fn order(&self, graph: &Graph) -> Result<Vec<VertexId>> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter("max_iterations must be at least 1".into()));
        }
        match &self.vertex_order {
            None => Ok(graph.vertices().collect()),
            Some(order) => {
                let n = graph.vertex_count();
                let mut seen = vec![false; n];
                let valid = order.len() == n && order.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true));
                if !valid {
                    return Err(Error::InvalidParameter(format!("vertex order is not a permutation of 0..{n}")));
                }
                Ok(order.clone())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Detection<S> {
    pub partition: Partition,
    /// Exact `Perm(G)` of the final partition.
    pub permanence: S,
    /// The running sum kept by the move loop, divided by `n`.
    pub loop_permanence: S,
    pub iterations: usize,
    pub moves: usize,
    /// `Perm(G)` after each pass.
    pub pass_permanence: Vec<S>,
    /// Number of cache audits that passed.
    pub audits: usize,
}

/// Mutable partition state shared by both evaluators.
struct State {
    assignment: Vec<CommunityId>,
    sizes: Vec<usize>,
}

impl State {
    fn from_partition(p: &Partition) -> Self {
        State { assignment: p.assignment().to_vec(), sizes: p.sizes() }
    }

    fn relocate(&mut self, v: VertexId, target: CommunityId) {
        let from = self.assignment[v];
        self.sizes[from] -= 1;
        self.sizes[target] += 1;
        self.assignment[v] = target;
    }
}

/// How the move loop reads permanence values.
trait Evaluator<S: Scalar> {
    fn perm(&self, state: &State, v: VertexId) -> S;
    fn neighbor_sum(&self, state: &State, v: VertexId) -> S;
    fn candidates(&self, state: &State, v: VertexId) -> Vec<CommunityId>;
    /// `(Perm(v), Σ Perm(u) over neighbors)` after moving `v` into `target`.
    fn tentative(&mut self, state: &mut State, v: VertexId, target: CommunityId) -> (S, S);
    fn commit(&mut self, state: &mut State, v: VertexId, target: CommunityId) -> Result<()>;
}

struct Recompute<'g> {
    graph: &'g Graph,
}

impl Recompute<'_> {
    fn counts(&self, state: &State, v: VertexId) -> PermanenceCounts {
        PermanenceCounts::gather(self.graph, &state.assignment, state.sizes[state.assignment[v]], v)
    }
}

impl<S: Scalar> Evaluator<S> for Recompute<'_> {
    fn perm(&self, state: &State, v: VertexId) -> S {
        self.counts(state, v).permanence()
    }

    fn neighbor_sum(&self, state: &State, v: VertexId) -> S {
        self.graph.neighbors(v).iter().fold(S::zero(), |acc, &u| acc + self.counts(state, u).permanence::<S>())
    }

    fn candidates(&self, state: &State, v: VertexId) -> Vec<CommunityId> {
        let own = state.assignment[v];
        let mut list: Vec<CommunityId> =
            self.graph.neighbors(v).iter().map(|&u| state.assignment[u]).filter(|&c| c != own).collect();
        list.sort_unstable();
        list.dedup();
        list
    }

    fn tentative(&mut self, state: &mut State, v: VertexId, target: CommunityId) -> (S, S) {
        let from = state.assignment[v];
        state.relocate(v, target);
        let result = (self.perm(state, v), self.neighbor_sum(state, v));
        state.relocate(v, from);
        result
    }

    fn commit(&mut self, state: &mut State, v: VertexId, target: CommunityId) -> Result<()> {
        state.relocate(v, target);
        Ok(())
    }
}

struct Cached<'g> {
    graph: &'g Graph,
    cache: CommunityEdgeCache,
    audit: bool,
    audits: usize,
}

impl<S: Scalar> Evaluator<S> for Cached<'_> {
    fn perm(&self, state: &State, v: VertexId) -> S {
        self.cache.current_counts(self.graph, &state.assignment, &state.sizes, v).permanence()
    }

    fn neighbor_sum(&self, state: &State, v: VertexId) -> S {
        self.graph.neighbors(v).iter().fold(S::zero(), |acc, &u| {
            acc + self.cache.current_counts(self.graph, &state.assignment, &state.sizes, u).permanence::<S>()
        })
    }

    fn candidates(&self, state: &State, v: VertexId) -> Vec<CommunityId> {
        let own = state.assignment[v];
        self.cache.neighbor_communities(v).filter(|&c| c != own).collect()
    }

    fn tentative(&mut self, state: &mut State, v: VertexId, target: CommunityId) -> (S, S) {
        let (g, a, s) = (self.graph, &state.assignment, &state.sizes);
        let own = self.cache.moved_counts(g, a, s, v, target).permanence();
        let neighbors = g.neighbors(v).iter().fold(S::zero(), |acc, &u| {
            acc + self.cache.neighbor_counts_after_move(g, a, s, u, v, target).permanence::<S>()
        });
        (own, neighbors)
    }

    fn commit(&mut self, state: &mut State, v: VertexId, target: CommunityId) -> Result<()> {
        self.cache.apply_move(self.graph, &state.assignment, v, target);
        state.relocate(v, target);
        if self.audit {
            if !self.cache.audit(self.graph, &state.assignment) {
                return Err(Error::InvalidParameter(format!("edge cache diverged from recount after moving vertex {v}")));
            }
            self.audits += 1;
        }
        Ok(())
    }
}

fn accepts<S: Scalar>(rule: AcceptanceRule, cur: &S, new: &S, cur_neighbors: &S, new_neighbors: &S) -> bool {
    match rule {
        AcceptanceRule::VertexAndNeighbors => cur < new && cur_neighbors < new_neighbors,
        AcceptanceRule::VertexOnly => cur < new,
    }
}

fn run<S: Scalar, E: Evaluator<S>>(graph: &Graph, config: &DetectorConfig, eval: &mut E, state: &mut State, order: &[VertexId]) -> Result<(S, usize, usize, Vec<S>)> {
    let n = graph.vertex_count();
    let mut sum = S::zero();
    let mut old_sum = -S::one();
    let mut iterations = 0;
    let mut moves = 0;
    let mut pass_permanence = Vec::new();
    while sum != old_sum && iterations < config.max_iterations {
        iterations += 1;
        old_sum = std::mem::replace(&mut sum, S::zero());
        for &v in order {
            let mut current = eval.perm(state, v);
            if current == S::one() {
                sum = sum + current;
                continue;
            }
            let neighbors_before = eval.neighbor_sum(state, v);
            for target in eval.candidates(state, v) {
                if state.assignment[v] == target {
                    continue;
                }
                let (candidate, candidate_neighbors) = eval.tentative(state, v, target);
                if accepts(config.acceptance, &current, &candidate, &neighbors_before, &candidate_neighbors) {
                    eval.commit(state, v, target)?;
                    moves += 1;
                    current = candidate;
                    if config.scan == CandidateScan::FirstImprovement {
                        break;
                    }
                }
            }
            sum = sum + current;
        }
        let snapshot = Partition::from_assignment(&state.assignment);
        pass_permanence.push(graph_permanence::<S>(graph, &snapshot)?);
    }
    Ok((sum / S::from_count(n), iterations, moves, pass_permanence))
}

fn finish<S: Scalar>(graph: &Graph, state: State, loop_permanence: S, iterations: usize, moves: usize, pass_permanence: Vec<S>, audits: usize) -> Result<Detection<S>> {
    let partition = Partition::from_assignment(&state.assignment);
    let permanence = graph_permanence(graph, &partition)?;
    Ok(Detection { partition, permanence, loop_permanence, iterations, moves, pass_permanence, audits })
}

/// MaxPerm recomputing every permanence from the graph.
pub fn detect<S: Scalar>(graph: &Graph, config: &DetectorConfig) -> Result<Detection<S>> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let order = config.order(graph)?;
    let mut state = State::from_partition(&seed(graph, config.seed_strategy, config.rng_seed));
    let mut eval = Recompute { graph };
    let (loop_perm, iterations, moves, passes) = run::<S, _>(graph, config, &mut eval, &mut state, &order)?;
    finish(graph, state, loop_perm, iterations, moves, passes, 0)
}

/// MaxPerm backed by a [`CommunityEdgeCache`]; same output as [`detect`].
pub fn detect_with_cache<S: Scalar>(graph: &Graph, config: &DetectorConfig) -> Result<Detection<S>> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let order = config.order(graph)?;
    let mut state = State::from_partition(&seed(graph, config.seed_strategy, config.rng_seed));
    let cache = CommunityEdgeCache::build(graph, &state.assignment);
    let mut eval = Cached { graph, cache, audit: config.audit_cache, audits: 0 };
    let (loop_perm, iterations, moves, passes) = run::<S, _>(graph, config, &mut eval, &mut state, &order)?;
    let audits = eval.audits;
    finish(graph, state, loop_perm, iterations, moves, passes, audits)
}
