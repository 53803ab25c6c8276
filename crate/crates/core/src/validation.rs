//! Partition comparison: NMI, ARI, purity, and degree-weighted variants.
//!
//! All six metrics are computed from a [`ContingencyTable`]. The weighted
//! variants give each vertex mass `D(v)` instead of 1; pair-counting terms
//! use the pair mass `w_u * w_v`, so uniform weights reproduce the
//! unweighted values exactly.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

/// Joint mass distribution over (detected community, truth community).
#[derive(Debug, Clone, PartialEq)]
pub struct ContingencyTable {
    /// Sparse cells keyed by `(detected, truth)`; value is `(mass, squared mass)`.
    cells: BTreeMap<(usize, usize), (f64, f64)>,
    rows: Vec<(f64, f64)>,
    cols: Vec<(f64, f64)>,
    total: f64,
    total_sq: f64,
}

impl ContingencyTable {
    pub fn new(detected: &Partition, truth: &Partition, weights: Option<&[f64]>) -> Result<Self> {
        if detected.vertex_count() != truth.vertex_count() {
            return Err(Error::SizeMismatch { partition: detected.vertex_count(), graph: truth.vertex_count() });
        }
        let mut cells: BTreeMap<(usize, usize), (f64, f64)> = BTreeMap::new();
        let mut rows = vec![(0.0, 0.0); detected.community_count()];
        let mut cols = vec![(0.0, 0.0); truth.community_count()];
        let (mut total, mut total_sq) = (0.0, 0.0);
        for v in 0..detected.vertex_count() {
            let w = weights.map_or(1.0, |w| w[v]);
            let (r, c) = (detected.community_of(v), truth.community_of(v));
            let cell = cells.entry((r, c)).or_insert((0.0, 0.0));
            cell.0 += w;
            cell.1 += w * w;
            rows[r].0 += w;
            rows[r].1 += w * w;
            cols[c].0 += w;
            cols[c].1 += w * w;
            total += w;
            total_sq += w * w;
        }
        Ok(ContingencyTable { cells, rows, cols, total, total_sq })
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn row_marginals(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(|r| r.0)
    }

    pub fn col_marginals(&self) -> impl Iterator<Item = f64> + '_ {
        self.cols.iter().map(|c| c.0)
    }

    /// Mass at `(detected, truth)`.
    pub fn cell(&self, detected: usize, truth: usize) -> f64 {
        self.cells.get(&(detected, truth)).map_or(0.0, |c| c.0)
    }

    fn entropy(masses: impl Iterator<Item = f64>, total: f64) -> f64 {
        masses.filter(|&m| m > 0.0).map(|m| m / total).map(|p| -p * p.ln()).sum()
    }

    fn nmi(&self) -> f64 {
        let hx = Self::entropy(self.row_marginals(), self.total);
        let hy = Self::entropy(self.col_marginals(), self.total);
        if hx + hy <= 0.0 {
            // Both sides are a single community.
            return 1.0;
        }
        let mut mi = 0.0;
        for (&(r, c), &(mass, _)) in &self.cells {
            if mass > 0.0 {
                let pxy = mass / self.total;
                let px = self.rows[r].0 / self.total;
                let py = self.cols[c].0 / self.total;
                mi += pxy * (pxy / (px * py)).ln();
            }
        }
        (2.0 * mi / (hx + hy)).clamp(0.0, 1.0)
    }

    fn ari(&self, identical: bool) -> f64 {
        // Pair mass of a group: sum over unordered pairs of w_u * w_v.
        let pairs = |(s, sq): (f64, f64)| (s * s - sq) / 2.0;
        let index: f64 = self.cells.values().map(|&c| pairs(c)).sum();
        let a: f64 = self.rows.iter().map(|&r| pairs(r)).sum();
        let b: f64 = self.cols.iter().map(|&c| pairs(c)).sum();
        let all = pairs((self.total, self.total_sq));
        if all <= 0.0 {
            return if identical { 1.0 } else { 0.0 };
        }
        let expected = a * b / all;
        let max_index = (a + b) / 2.0;
        let denom = max_index - expected;
        if denom.abs() <= f64::EPSILON * all.max(1.0) {
            return if identical { 1.0 } else { 0.0 };
        }
        (index - expected) / denom
    }

    fn purity(&self) -> f64 {
        let mut best = vec![0.0f64; self.rows.len()];
        for (&(r, _), &(mass, _)) in &self.cells {
            best[r] = best[r].max(mass);
        }
        best.iter().sum::<f64>() / self.total
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Nmi,
    Ari,
    Purity,
}

/// Normalized mutual information, arithmetic-mean normalization.
pub fn nmi(detected: &Partition, truth: &Partition) -> Result<f64> {
    Ok(ContingencyTable::new(detected, truth, None)?.nmi())
}

/// Adjusted Rand index over vertex pairs.
pub fn ari(detected: &Partition, truth: &Partition) -> Result<f64> {
    let identical = detected.same_grouping(truth);
    Ok(ContingencyTable::new(detected, truth, None)?.ari(identical))
}

/// Fraction of vertices in the majority truth community of their detected community.
///
/// Asymmetric: each detected community is matched against truth.
pub fn purity(detected: &Partition, truth: &Partition) -> Result<f64> {
    Ok(ContingencyTable::new(detected, truth, None)?.purity())
}

/// `metric` computed with every vertex weighted by its degree.
pub fn weighted_variant(metric: Metric, detected: &Partition, truth: &Partition, graph: &Graph) -> Result<f64> {
    if graph.vertex_count() != detected.vertex_count() {
        return Err(Error::SizeMismatch { partition: detected.vertex_count(), graph: graph.vertex_count() });
    }
    if graph.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let weights: Vec<f64> = graph.vertices().map(|v| graph.degree(v) as f64).collect();
    let table = ContingencyTable::new(detected, truth, Some(&weights))?;
    Ok(match metric {
        Metric::Nmi => table.nmi(),
        Metric::Ari => table.ari(detected.same_grouping(truth)),
        Metric::Purity => table.purity(),
    })
}

/// All six metrics for one comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidationReport {
    pub nmi: f64,
    pub ari: f64,
    pub purity: f64,
    pub weighted_nmi: Option<f64>,
    pub weighted_ari: Option<f64>,
    pub weighted_purity: Option<f64>,
}

impl ValidationReport {
    /// Mean over whichever metrics were computed.
    pub fn mean(&self) -> f64 {
        let values: Vec<f64> = [Some(self.nmi), Some(self.ari), Some(self.purity), self.weighted_nmi, self.weighted_ari, self.weighted_purity]
            .into_iter()
            .flatten()
            .collect();
        values.iter().sum::<f64>() / values.len() as f64
    }
}

/// Computes the unweighted metrics, and the weighted ones when `graph` is given.
pub fn validate(detected: &Partition, truth: &Partition, graph: Option<&Graph>) -> Result<ValidationReport> {
    let table = ContingencyTable::new(detected, truth, None)?;
    let identical = detected.same_grouping(truth);
    let mut report = ValidationReport {
        nmi: table.nmi(),
        ari: table.ari(identical),
        purity: table.purity(),
        weighted_nmi: None,
        weighted_ari: None,
        weighted_purity: None,
    };
    if let Some(graph) = graph {
        report.weighted_nmi = Some(weighted_variant(Metric::Nmi, detected, truth, graph)?);
        report.weighted_ari = Some(weighted_variant(Metric::Ari, detected, truth, graph)?);
        report.weighted_purity = Some(weighted_variant(Metric::Purity, detected, truth, graph)?);
    }
    Ok(report)
}
