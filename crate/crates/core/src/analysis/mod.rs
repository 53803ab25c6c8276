//! Studies built on top of permanence: value distributions, component
//! profiles, community strengthening, core-periphery structure, overlap
//! with ground truth, message spreading, size growth, and the lemma
//! laboratory for the two-community bridge scenario.

mod distribution;
mod growth;
pub mod lemma;
mod overlap;
mod spread;
mod stats;
mod strengthen;
mod structure;

pub use distribution::{bin_index, component_profile, permanence_histogram, BinnedDistribution, ComponentBin, BIN_COUNT};
pub use growth::{asymptotic_growth_study, GrowthRow};
pub use lemma::{build_lemma_scenario, four_case_totals, lemma_check, FourCaseResult, LemmaOutcome, LemmaScenario, LemmaSpec, Wiring};
pub use overlap::{bipartite_overlap, size_diagnostics, OverlapHistogram, SizeDiagnostics};
pub use spread::{spreading_simulation, Selector, SpreadReport};
pub use stats::{pearson, spearman};
pub use strengthen::{strengthen, StrengthenRow};
pub use structure::{farness_profile, permanence_assortativity, AssortativityReport, FarnessBin, FarnessProfile};
