//! Membership-swap perturbations of a ground-truth partition, and sweeps
//! that track how each scoring function degrades.
//!
//! Every swap exchanges the communities of two vertices, so the multiset of
//! community sizes never changes. Swaps compound: each one samples from the
//! partition as already perturbed.

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::partition::{CommunityId, Partition};
use crate::rng;
use crate::scoring::{permanence_breakdowns, score_report, Aggregation, ScoreReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    EdgeBased,
    Random,
    CommunityBased,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::EdgeBased, Strategy::Random, Strategy::CommunityBased];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::EdgeBased => "edge_based",
            Strategy::Random => "random",
            Strategy::CommunityBased => "community_based",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "edge_based" | "edge" => Ok(Strategy::EdgeBased),
            "random" => Ok(Strategy::Random),
            "community_based" | "community" => Ok(Strategy::CommunityBased),
            _ => Err(format!("unknown perturbation strategy {s:?} (expected edge_based, random or community_based)")),
        }
    }
}

/// Swap bookkeeping for one community under the community-based strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommunitySwaps {
    pub community: CommunityId,
    pub requested: usize,
    pub performed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Perturbed {
    pub partition: Partition,
    pub requested: usize,
    pub performed: usize,
    /// Filled by the community-based strategy only.
    pub per_community: Vec<CommunitySwaps>,
    /// Communities that had no boundary edge when their turn came.
    pub skipped: Vec<CommunityId>,
}

fn swap_count(p: f64, count: usize) -> usize {
    (p * count as f64).ceil() as usize
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&p) {
        return Err(Error::InvalidParameter(format!("perturbation intensity {p} outside [0, 0.5]")));
    }
    Ok(())
}

/// Inter-community edges under the current labels, kept in a swap-remove
/// vector so that removal and uniform sampling are O(1).
struct BoundaryEdges {
    edges: Vec<(VertexId, VertexId)>,
    incident: Vec<Vec<usize>>,
    active: Vec<usize>,
    slot: Vec<Option<usize>>,
}

impl BoundaryEdges {
    fn new(graph: &Graph, labels: &[CommunityId]) -> Self {
        let edges: Vec<_> = graph.edges().collect();
        let mut incident = vec![Vec::new(); graph.vertex_count()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        let mut set = BoundaryEdges { slot: vec![None; edges.len()], edges, incident, active: Vec::new() };
        for i in 0..set.edges.len() {
            set.refresh(i, labels);
        }
        set
    }

    fn refresh(&mut self, i: usize, labels: &[CommunityId]) {
        let (u, v) = self.edges[i];
        let crossing = labels[u] != labels[v];
        match (crossing, self.slot[i]) {
            (true, None) => {
                self.slot[i] = Some(self.active.len());
                self.active.push(i);
            }
            (false, Some(at)) => {
                self.active.swap_remove(at);
                if let Some(&moved) = self.active.get(at) {
                    self.slot[moved] = Some(at);
                }
                self.slot[i] = None;
            }
            _ => {}
        }
    }

    fn swap(&mut self, labels: &mut [CommunityId], u: VertexId, v: VertexId) {
        labels.swap(u, v);
        for x in [u, v] {
            for k in 0..self.incident[x].len() {
                let i = self.incident[x][k];
                self.refresh(i, labels);
            }
        }
    }
}

/// `⌈p·|E|⌉` swaps across uniformly chosen inter-community edges.
pub fn perturb_edge_based(graph: &Graph, truth: &Partition, p: f64, rng_seed: u64) -> Result<Perturbed> {
    check_p(p)?;
    truth.check_covers(graph)?;
    let mut labels = truth.assignment().to_vec();
    let mut boundary = BoundaryEdges::new(graph, &labels);
    let requested = swap_count(p, graph.edge_count());
    if requested > 0 && boundary.active.is_empty() {
        return Err(Error::InvalidParameter("edge-based perturbation needs an inter-community edge".into()));
    }
    let mut rng = rng::seeded(rng_seed);
    let mut performed = 0;
    while performed < requested && !boundary.active.is_empty() {
        let (u, v) = boundary.edges[boundary.active[rng.gen_range(0..boundary.active.len())]];
        boundary.swap(&mut labels, u, v);
        performed += 1;
    }
    Ok(Perturbed { partition: Partition::from_assignment(&labels), requested, performed, per_community: Vec::new(), skipped: Vec::new() })
}

/// `⌈p·|V|⌉` swaps of uniformly chosen vertex pairs in different communities.
pub fn perturb_random(graph: &Graph, truth: &Partition, p: f64, rng_seed: u64) -> Result<Perturbed> {
    check_p(p)?;
    truth.check_covers(graph)?;
    if truth.community_count() < 2 {
        return Err(Error::SingleCommunity);
    }
    let n = graph.vertex_count();
    let mut labels = truth.assignment().to_vec();
    let requested = swap_count(p, n);
    let mut rng = rng::seeded(rng_seed);
    for _ in 0..requested {
        let (u, v) = loop {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if labels[u] != labels[v] {
                break (u, v);
            }
        };
        labels.swap(u, v);
    }
    Ok(Perturbed { partition: Partition::from_assignment(&labels), requested, performed: requested, per_community: Vec::new(), skipped: Vec::new() })
}

/// Communities in id order, each receiving `⌈p·|S|⌉` swaps across its own
/// boundary edges.
pub fn perturb_community_based(graph: &Graph, truth: &Partition, p: f64, rng_seed: u64) -> Result<Perturbed> {
    check_p(p)?;
    truth.check_covers(graph)?;
    let mut labels = truth.assignment().to_vec();
    let mut boundary = BoundaryEdges::new(graph, &labels);
    let mut rng = rng::seeded(rng_seed);
    let mut per_community = Vec::with_capacity(truth.community_count());
    let mut skipped = Vec::new();
    for c in 0..truth.community_count() {
        let requested = swap_count(p, truth.community_size(c));
        let mut performed = 0;
        while performed < requested {
            let touching: Vec<(VertexId, VertexId)> = boundary
                .active
                .iter()
                .map(|&i| boundary.edges[i])
                .filter(|&(u, v)| labels[u] == c || labels[v] == c)
                .collect();
            if touching.is_empty() {
                break;
            }
            let (u, v) = touching[rng.gen_range(0..touching.len())];
            boundary.swap(&mut labels, u, v);
            performed += 1;
        }
        if requested > 0 && performed == 0 {
            skipped.push(c);
        }
        per_community.push(CommunitySwaps { community: c, requested, performed });
    }
    let requested = per_community.iter().map(|s| s.requested).sum();
    let performed = per_community.iter().map(|s| s.performed).sum();
    Ok(Perturbed { partition: Partition::from_assignment(&labels), requested, performed, per_community, skipped })
}

pub fn perturb(strategy: Strategy, graph: &Graph, truth: &Partition, p: f64, rng_seed: u64) -> Result<Perturbed> {
    match strategy {
        Strategy::EdgeBased => perturb_edge_based(graph, truth, p, rng_seed),
        Strategy::Random => perturb_random(graph, truth, p, rng_seed),
        Strategy::CommunityBased => perturb_community_based(graph, truth, p, rng_seed),
    }
}

/// The four scores in a fixed order: permanence, modularity, conductance
/// complement, cut-ratio complement.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Scores {
    pub permanence: f64,
    pub modularity: f64,
    pub conductance: f64,
    pub cut_ratio: f64,
}

impl Scores {
    fn from_report(r: &ScoreReport<f64>) -> Self {
        Scores {
            permanence: r.graph_permanence,
            modularity: r.modularity,
            conductance: r.mean_conductance_complement,
            cut_ratio: r.mean_cutratio_complement,
        }
    }

    fn map2(self, other: Scores, f: impl Fn(f64, f64) -> f64) -> Scores {
        Scores {
            permanence: f(self.permanence, other.permanence),
            modularity: f(self.modularity, other.modularity),
            conductance: f(self.conductance, other.conductance),
            cut_ratio: f(self.cut_ratio, other.cut_ratio),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub p: f64,
    /// `p` scaled by performed over requested swaps, averaged over runs.
    pub effective_p: f64,
    pub raw: Scores,
    pub normalized: Scores,
    pub mean_internal_degree: f64,
    pub mean_max_external: f64,
    pub mean_internal_cc: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub strategy: Strategy,
    pub points: Vec<SweepPoint>,
    pub runs: usize,
    pub rng_seed: u64,
}

struct Cell {
    scores: Scores,
    internal: f64,
    external: f64,
    cc: f64,
    effective_p: f64,
}

fn evaluate(graph: &Graph, perturbed: &Perturbed, p: f64) -> Result<Cell> {
    let report = score_report::<f64>(graph, &perturbed.partition, Aggregation::Unweighted)?;
    let rows = permanence_breakdowns::<f64>(graph, &perturbed.partition)?;
    let n = rows.len() as f64;
    let effective_p = if perturbed.requested == 0 { 0.0 } else { p * perturbed.performed as f64 / perturbed.requested as f64 };
    Ok(Cell {
        scores: Scores::from_report(&report),
        internal: rows.iter().map(|r| r.internal_degree as f64).sum::<f64>() / n,
        external: rows.iter().map(|r| r.max_external as f64).sum::<f64>() / n,
        cc: rows.iter().map(|r| r.internal_cc).sum::<f64>() / n,
        effective_p,
    })
}

/// Scales a series by its maximum. A series whose maximum is not positive
/// maps its maximizing points to 1 and every other point to 0.
fn normalize(values: &[f64]) -> Vec<f64> {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    values
        .iter()
        .map(|&x| if x == max { 1.0 } else if max > 0.0 { x / max } else { 0.0 })
        .collect()
}

/// Averages `runs` perturbations at every grid point. Cells run in parallel,
/// each with its own derived random stream.
pub fn sweep(graph: &Graph, truth: &Partition, strategy: Strategy, p_grid: &[f64], runs: usize, rng_seed: u64) -> Result<SweepResult> {
    if runs == 0 {
        return Err(Error::InvalidParameter("runs must be at least 1".into()));
    }
    if p_grid.is_empty() || p_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter("p grid must be nonempty and ascending".into()));
    }
    for &p in p_grid {
        check_p(p)?;
    }
    let cells: Vec<(usize, usize)> = (0..p_grid.len()).flat_map(|i| (0..runs).map(move |r| (i, r))).collect();
    let results: Vec<Cell> = cells
        .par_iter()
        .map(|&(i, r)| {
            let seed = rng::derive_seed(rng_seed, &[rng::tag(strategy.name()), i as u64, r as u64]);
            let perturbed = perturb(strategy, graph, truth, p_grid[i], seed)?;
            evaluate(graph, &perturbed, p_grid[i])
        })
        .collect::<Result<_>>()?;

    let k = runs as f64;
    let mut points: Vec<SweepPoint> = p_grid
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let group = &results[i * runs..(i + 1) * runs];
            let sum = |f: fn(&Cell) -> f64| group.iter().map(f).sum::<f64>() / k;
            let raw = group.iter().fold(Scores::default(), |acc, c| acc.map2(c.scores, |a, b| a + b)).map2(Scores::default(), |a, _| a / k);
            SweepPoint {
                p,
                effective_p: sum(|c| c.effective_p),
                raw,
                normalized: raw,
                mean_internal_degree: sum(|c| c.internal),
                mean_max_external: sum(|c| c.external),
                mean_internal_cc: sum(|c| c.cc),
            }
        })
        .collect();

    let series = |f: fn(&Scores) -> f64| normalize(&points.iter().map(|pt| f(&pt.raw)).collect::<Vec<_>>());
    let (perm, modu, cond, cut) = (series(|s| s.permanence), series(|s| s.modularity), series(|s| s.conductance), series(|s| s.cut_ratio));
    for (i, pt) in points.iter_mut().enumerate() {
        pt.normalized = Scores { permanence: perm[i], modularity: modu[i], conductance: cond[i], cut_ratio: cut[i] };
    }
    Ok(SweepResult { strategy, points, runs, rng_seed })
}
