//! One function per subcommand, each producing an [`Output`].

use serde::Serialize;
use serde_json::{json, Value};

use permanence::analysis::{self, Selector, Wiring};
use permanence::maxperm::{self, AcceptanceRule, CandidateScan, DetectorConfig, SeedStrategy};
use permanence::perturbation::{self, Strategy};
use permanence::scoring::{self, Aggregation};
use permanence::{generate as gen, validation, Exact, GeneratorSpec, Graph, Partition, Scalar};

use crate::error::CliError;
use crate::input;
use crate::output::{write_file, Cell, Output, Table};
use crate::*;

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

/// Snake-case name of a unit enum variant.
fn name(v: &impl Serialize) -> String {
    to_value(v).as_str().unwrap_or_default().to_string()
}

fn community(p: &Partition, v: usize) -> String {
    p.community_name(p.community_of(v))
}

fn load_pair(input: &GraphPartition) -> Result<(Graph, Partition), CliError> {
    let g = input::graph(&input.graph)?;
    let p = input::partition(&input.partition, &g)?;
    Ok((g, p))
}

struct VertexRow {
    label: String,
    community: String,
    internal: usize,
    degree: usize,
    max_external: usize,
    internal_cc: f64,
    permanence: f64,
    boundary: String,
}

fn score_in<S: Scalar>(g: &Graph, p: &Partition, agg: Aggregation) -> Result<(Value, Vec<VertexRow>), CliError> {
    let r = scoring::score_report::<S>(g, p, agg)?;
    let report = json!({
        "permanence": r.graph_permanence.to_f64_lossy(),
        "modularity": r.modularity.to_f64_lossy(),
        "conductance_complement": r.mean_conductance_complement.to_f64_lossy(),
        "cutratio_complement": r.mean_cutratio_complement.to_f64_lossy(),
        "degenerate_conductance": r.degenerate_conductance,
        "degenerate_cut_ratio": r.degenerate_cut_ratio,
        "vertices": g.vertex_count(),
        "communities": p.community_count(),
    });
    let rows = scoring::permanence_breakdowns::<S>(g, p)?
        .into_iter()
        .map(|b| VertexRow {
            label: g.label(b.vertex).into_owned(),
            community: community(p, b.vertex),
            internal: b.internal_degree,
            degree: b.degree,
            max_external: b.max_external,
            internal_cc: b.internal_cc.to_f64_lossy(),
            permanence: b.permanence.to_f64_lossy(),
            boundary: name(&b.boundary),
        })
        .collect();
    Ok((report, rows))
}

const SCORE_KEYS: [&str; 8] = [
    "permanence",
    "modularity",
    "conductance_complement",
    "cutratio_complement",
    "degenerate_conductance",
    "degenerate_cut_ratio",
    "vertices",
    "communities",
];

fn metric_cell(v: &Value) -> Cell {
    match v {
        Value::Number(n) if n.is_f64() => Cell::Float(n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => Cell::Int(n.as_i64().unwrap_or_default()),
        Value::Null => Cell::Empty,
        Value::Bool(b) => Cell::Bool(*b),
        other => Cell::Text(other.to_string()),
    }
}

/// Fills a two-column `metric,value` table from `keys` of `summary`.
fn metric_table(out: &mut Output, keys: &[&str]) {
    out.table = Table::new(&["metric", "value"]);
    for k in keys {
        let cell = out.summary.get(*k).map_or(Cell::Empty, metric_cell);
        out.table.push(vec![(*k).into(), cell]);
    }
}

pub fn score(a: &ScoreArgs) -> Result<Output, CliError> {
    let g = input::graph(&a.graph)?;
    let p = input::partition(&a.partition, &g)?;
    let agg = match a.aggregation {
        AggregationArg::Unweighted => Aggregation::Unweighted,
        AggregationArg::SizeWeighted => Aggregation::SizeWeighted,
    };
    let (report, rows) = if a.exact { score_in::<Exact>(&g, &p, agg)? } else { score_in::<f64>(&g, &p, agg)? };
    let mut out = Output::default();
    if let Value::Object(map) = &report {
        out.summary = map.clone();
    }
    if a.per_vertex {
        out.table = Table::new(&["vertex_label", "community", "I", "D", "Emax", "c_in", "permanence", "boundary"]);
        let mut vertices = Vec::new();
        for r in rows {
            vertices.push(json!({
                "vertex_label": r.label, "community": r.community, "I": r.internal, "D": r.degree,
                "Emax": r.max_external, "c_in": r.internal_cc, "permanence": r.permanence, "boundary": r.boundary,
            }));
            out.table.push(vec![
                r.label.into(),
                r.community.into(),
                r.internal.into(),
                r.degree.into(),
                r.max_external.into(),
                r.internal_cc.into(),
                r.permanence.into(),
                r.boundary.into(),
            ]);
        }
        out.result = json!({ "report": report, "vertices": vertices });
    } else {
        metric_table(&mut out, &SCORE_KEYS);
        out.result = json!({ "report": report });
    }
    Ok(out)
}

fn detector_config(d: &DetectorArgs) -> DetectorConfig {
    DetectorConfig {
        seed_strategy: match d.seed_strategy {
            SeedArg::PairWise => SeedStrategy::PairWise,
            SeedArg::HighDegree => SeedStrategy::HighDegree,
            SeedArg::HighCc => SeedStrategy::HighCc,
        },
        max_iterations: d.max_iter,
        rng_seed: d.rng_seed,
        ..DetectorConfig::default()
    }
}

pub fn detect(a: &DetectArgs) -> Result<Output, CliError> {
    let g = input::graph(&a.graph)?;
    let mut config = detector_config(&a.detector);
    config.scan = match a.scan {
        ScanArg::First => CandidateScan::FirstImprovement,
        ScanArg::Best => CandidateScan::BestSoFar,
    };
    config.acceptance = match a.acceptance {
        AcceptArg::VertexAndNeighbors => AcceptanceRule::VertexAndNeighbors,
        AcceptArg::VertexOnly => AcceptanceRule::VertexOnly,
    };
    if let Some(path) = &a.order_file {
        config.vertex_order = Some(input::order(path, &g)?);
    }
    let d = if a.no_cache { maxperm::detect::<f64>(&g, &config)? } else { maxperm::detect_with_cache::<f64>(&g, &config)? };
    if let Some(path) = &a.partition_out {
        write_file(path, d.partition.to_text(&g).as_bytes())?;
    }
    let mut out = Output::new(&["vertex_label", "community"]);
    out.summarize("permanence", d.permanence);
    out.summarize("loop_permanence", d.loop_permanence);
    out.summarize("iterations", d.iterations);
    out.summarize("moves", d.moves);
    out.summarize("communities", d.partition.community_count());
    let mut assignment = Vec::new();
    for v in g.vertices() {
        let label = g.label(v).into_owned();
        let c = community(&d.partition, v);
        assignment.push(json!({ "vertex_label": label, "community": c }));
        out.table.push(vec![label.into(), c.into()]);
    }
    out.result = json!({
        "permanence": d.permanence,
        "iterations": d.iterations,
        "moves": d.moves,
        "pass_permanence": d.pass_permanence,
        "partition": assignment,
    });
    Ok(out)
}

const VALIDATION_KEYS: [&str; 7] = ["nmi", "ari", "purity", "weighted_nmi", "weighted_ari", "weighted_purity", "mean"];

pub fn validate(a: &ValidateArgs) -> Result<Output, CliError> {
    let g = a.graph.as_deref().map(input::graph).transpose()?;
    let (det, truth) = input::partition_pair(&a.detected, &a.truth, g.as_ref())?;
    let r = validation::validate(&det, &truth, g.as_ref())?;
    let mut out = Output::default();
    if let Value::Object(map) = to_value(&r) {
        out.summary = map;
    }
    out.summarize("mean", r.mean());
    metric_table(&mut out, &VALIDATION_KEYS);
    out.result = Value::Object(out.summary.clone());
    Ok(out)
}

pub fn perturb(a: &PerturbArgs) -> Result<Output, CliError> {
    let g = input::graph(&a.graph)?;
    let truth = input::partition(&a.truth, &g)?;
    let strategies: Vec<Strategy> = match a.strategy {
        StrategyArg::EdgeBased => vec![Strategy::EdgeBased],
        StrategyArg::Random => vec![Strategy::Random],
        StrategyArg::CommunityBased => vec![Strategy::CommunityBased],
        StrategyArg::All => Strategy::ALL.to_vec(),
    };
    let mut out = Output::new(&[
        "strategy",
        "p",
        "effective_p",
        "permanence",
        "modularity",
        "conductance",
        "cut_ratio",
        "norm_permanence",
        "norm_modularity",
        "norm_conductance",
        "norm_cut_ratio",
        "mean_internal_degree",
        "mean_max_external",
        "mean_internal_cc",
    ]);
    let mut sweeps = Vec::new();
    for s in strategies {
        let sweep = perturbation::sweep(&g, &truth, s, &a.p_grid, a.runs, a.rng_seed)?;
        for pt in &sweep.points {
            out.table.push(vec![
                s.name().into(),
                pt.p.into(),
                pt.effective_p.into(),
                pt.raw.permanence.into(),
                pt.raw.modularity.into(),
                pt.raw.conductance.into(),
                pt.raw.cut_ratio.into(),
                pt.normalized.permanence.into(),
                pt.normalized.modularity.into(),
                pt.normalized.conductance.into(),
                pt.normalized.cut_ratio.into(),
                pt.mean_internal_degree.into(),
                pt.mean_max_external.into(),
                pt.mean_internal_cc.into(),
            ]);
        }
        sweeps.push(sweep);
    }
    out.summarize("strategies", sweeps.iter().map(|s| s.strategy.name()).collect::<Vec<_>>());
    out.summarize("points", out.table.rows.len());
    out.result = to_value(&sweeps);
    Ok(out)
}

pub fn sensitivity(a: &SensitivityArgs) -> Result<Output, CliError> {
    let g = input::graph(&a.graph)?;
    let r = maxperm::sensitivity(&g, &detector_config(&a.detector), a.permutations)?;
    let mut out = Output::new(&["k", "phi", "normalized"]);
    for (k, (phi, norm)) in r.phi_values.iter().zip(&r.normalized).enumerate() {
        out.table.push(vec![(k + 1).into(), (*phi).into(), (*norm).into()]);
    }
    out.summarize("permutations", r.permutation_count);
    out.summarize("constant_communities", r.constant_communities.len());
    let constant: Vec<Vec<String>> =
        r.constant_communities.iter().map(|c| c.iter().map(|&v| g.label(v).into_owned()).collect()).collect();
    out.result = json!({
        "phi": r.phi_values,
        "normalized": r.normalized,
        "constant_communities": constant,
    });
    Ok(out)
}

pub fn generate(a: &GenerateArgs) -> Result<Output, CliError> {
    let spec = match a.kind {
        KindArg::Ring => GeneratorSpec::RingOfCliques { cliques: a.m, size: a.k },
        KindArg::Grid => GeneratorSpec::Grid { rows: a.rows, cols: a.cols },
        KindArg::Planted => GeneratorSpec::PlantedPartition {
            blocks: a.blocks,
            block_size: a.block_size,
            p_in: a.p_in,
            p_out: a.p_out,
            seed: a.rng_seed,
        },
    };
    let (g, truth) = gen(&spec)?;
    let edges = g.to_edge_list();
    match &a.out {
        Some(path) => write_file(path, edges.as_bytes())?,
        None => print!("{edges}"),
    }
    if let Some(path) = &a.truth {
        write_file(path, truth.to_text(&g).as_bytes())?;
    }
    let mut out = Output::new(&["vertices", "edges", "communities"]);
    out.summarize("vertices", g.vertex_count());
    out.summarize("edges", g.edge_count());
    out.summarize("communities", truth.community_count());
    out.table.push(vec![g.vertex_count().into(), g.edge_count().into(), truth.community_count().into()]);
    out.result = json!({ "spec": spec, "vertices": g.vertex_count(), "edges": g.edge_count(), "communities": truth.community_count() });
    Ok(out)
}

pub fn histogram(a: &HistogramArgs) -> Result<Output, CliError> {
    let (g, p) = load_pair(&a.input)?;
    let h = analysis::permanence_histogram(&g, &p)?;
    let mut out = Output::new(&["bin", "lower", "upper", "count", "fraction"]);
    for (i, (&c, &f)) in h.counts.iter().zip(&h.fractions).enumerate() {
        out.table.push(vec![i.into(), h.bin_edges[i].into(), h.bin_edges[i + 1].into(), c.into(), f.into()]);
    }
    out.summarize("modal_bin", h.modal_bin());
    out.result = to_value(&h);
    Ok(out)
}

pub fn components(a: &HistogramArgs) -> Result<Output, CliError> {
    let (g, p) = load_pair(&a.input)?;
    let bins = analysis::component_profile(&g, &p)?;
    let mut out = Output::new(&[
        "bin",
        "lower",
        "upper",
        "count",
        "mean_internal_degree",
        "mean_degree",
        "mean_max_external",
        "mean_pull",
        "mean_internal_cc",
    ]);
    for b in &bins {
        out.table.push(vec![
            b.bin.into(),
            b.lower.into(),
            b.upper.into(),
            b.count.into(),
            b.mean_internal_degree.into(),
            b.mean_degree.into(),
            b.mean_max_external.into(),
            b.mean_pull.into(),
            b.mean_internal_cc.into(),
        ]);
    }
    out.summarize("populated_bins", bins.len());
    out.result = to_value(&bins);
    Ok(out)
}

pub fn strengthen(a: &StrengthenArgs) -> Result<Output, CliError> {
    let (g, p) = load_pair(&a.input)?;
    let rows = analysis::strengthen(&g, &p, &a.fractions)?;
    let mut out = Output::new(&["fraction", "removed", "mean_change", "variance", "communities"]);
    for r in &rows {
        out.table.push(vec![r.fraction.into(), r.removed.into(), r.mean_change.into(), r.variance.into(), r.communities.into()]);
    }
    out.summarize("fractions", rows.len());
    out.result = to_value(&rows);
    Ok(out)
}

pub fn farness(a: &FarnessArgs) -> Result<Output, CliError> {
    let (g, p) = load_pair(&a.input)?;
    let f = analysis::farness_profile(&g, &p, a.bin_width)?;
    let mut out = Output::new(&["farness", "count", "mean_permanence"]);
    for b in &f.bins {
        out.table.push(vec![b.farness.into(), b.count.into(), b.mean_permanence.into()]);
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = f.vertices.iter().map(|e| (e.1, e.2)).unzip();
    out.summarize("vertices", f.vertices.len());
    out.summarize("pearson", analysis::pearson(&xs, &ys));
    let vertices: Vec<Value> = f
        .vertices
        .iter()
        .map(|&(v, d, perm)| json!({ "vertex_label": g.label(v), "farness": d, "permanence": perm }))
        .collect();
    out.result = json!({ "bins": f.bins, "vertices": vertices });
    Ok(out)
}

pub fn assortativity(a: &HistogramArgs) -> Result<Output, CliError> {
    let (g, p) = load_pair(&a.input)?;
    let r = analysis::permanence_assortativity(&g, &p)?;
    let mut out = Output::new(&[
        "r_permanence",
        "r_degree",
        "used_permanence",
        "used_degree",
        "edgeless",
        "undefined_permanence",
        "undefined_degree",
    ]);
    out.table.push(vec![
        r.r_permanence.into(),
        r.r_degree.into(),
        r.used_permanence.into(),
        r.used_degree.into(),
        r.edgeless.len().into(),
        r.undefined_permanence.len().into(),
        r.undefined_degree.len().into(),
    ]);
    out.summarize("r_permanence", r.r_permanence);
    out.summarize("r_degree", r.r_degree);
    let names = |cs: &[usize]| cs.iter().map(|&c| p.community_name(c)).collect::<Vec<_>>();
    out.result = json!({
        "r_permanence": r.r_permanence,
        "r_degree": r.r_degree,
        "used_permanence": r.used_permanence,
        "used_degree": r.used_degree,
        "edgeless": names(&r.edgeless),
        "undefined_permanence": names(&r.undefined_permanence),
        "undefined_degree": names(&r.undefined_degree),
    });
    Ok(out)
}

fn load_partition_pair(input: &PartitionPair) -> Result<(Partition, Partition), CliError> {
    let g = input.graph.as_deref().map(input::graph).transpose()?;
    input::partition_pair(&input.detected, &input.truth, g.as_ref())
}

pub fn overlap(a: &OverlapArgs) -> Result<Output, CliError> {
    let (det, truth) = load_partition_pair(&a.input)?;
    let h = analysis::bipartite_overlap(&det, &truth)?;
    let mut out = Output::new(&["bucket", "lower", "upper", "count", "fraction"]);
    for (i, (&c, &f)) in h.counts.iter().zip(&h.fractions).enumerate() {
        let upper = 1.0 - i as f64 / 10.0;
        out.table.push(vec![i.into(), (upper - 0.1).max(0.0).into(), upper.into(), c.into(), f.into()]);
    }
    out.summarize("pairs", h.edges.len());
    out.summarize("top_bucket_fraction", h.fractions[0]);
    out.result = to_value(&h);
    Ok(out)
}

pub fn sizes(a: &OverlapArgs) -> Result<Output, CliError> {
    let (det, truth) = load_partition_pair(&a.input)?;
    let s = analysis::size_diagnostics(&det, &truth)?;
    let mut out = Output::new(&["partition", "size", "count"]);
    for (which, hist) in [("detected", &s.detected_sizes), ("truth", &s.truth_sizes)] {
        for &(size, count) in hist {
            out.table.push(vec![which.into(), size.into(), count.into()]);
        }
    }
    out.summarize("largest_detected", det.community_name(s.largest_detected));
    out.summarize("largest_jaccard", s.largest_jaccard);
    out.summarize("best_truth", truth.community_name(s.best_truth));
    out.result = to_value(&s);
    Ok(out)
}

pub fn spread(a: &SpreadArgs) -> Result<Output, CliError> {
    let g = input::graph(&a.graph)?;
    let truth = input::partition(&a.truth, &g)?;
    let selectors = match a.selector {
        SelectorArg::Random => vec![Selector::Random],
        SelectorArg::Degree => vec![Selector::Degree],
        SelectorArg::Permanence => vec![Selector::Permanence],
        SelectorArg::All => vec![Selector::Random, Selector::Degree, Selector::Permanence],
    };
    let mut out = Output::new(&["selector", "runs", "mean_rounds", "min_rounds", "max_rounds", "reached", "complete"]);
    let mut reports = Vec::new();
    for s in selectors {
        let r = analysis::spreading_simulation(&g, &truth, s, a.runs, a.rng_seed)?;
        let min = r.rounds.iter().min().copied().unwrap_or(0);
        let max = r.rounds.iter().max().copied().unwrap_or(0);
        out.table.push(vec![name(&s).into(), r.runs.into(), r.mean_rounds.into(), min.into(), max.into(), r.reached.into(), r.complete.into()]);
        out.summarize(&format!("mean_rounds_{}", name(&s)), r.mean_rounds);
        reports.push(r);
    }
    out.result = to_value(&reports);
    Ok(out)
}

pub fn lemmas(a: &LemmaArgs) -> Result<Output, CliError> {
    let wiring = |w: WiringArg| match w {
        WiringArg::Tight => Wiring::Tight,
        WiringArg::Sparse => Wiring::Sparse,
    };
    let spec = analysis::LemmaSpec {
        alpha: a.alpha,
        beta: a.beta,
        size_a: a.size_a,
        size_b: a.size_b,
        wiring_a: wiring(a.wiring_a),
        wiring_b: wiring(a.wiring_b),
        rng_seed: a.rng_seed,
    };
    let scenario = analysis::build_lemma_scenario(&spec)?;
    let cases = analysis::four_case_totals(&scenario);
    let outcomes = analysis::lemma_check(&scenario);
    let mut out = Output::new(&["id", "comparison", "variant", "status", "hypotheses_hold", "discriminant", "oracle", "agrees", "reason"]);
    for (k, v) in cases.summary() {
        out.summarize(k, v);
    }
    for o in &outcomes {
        out.table.push(vec![
            o.id.into(),
            o.comparison.into(),
            o.variant.map(|w| name(&w)).into(),
            name(&o.status).into(),
            o.hypotheses_hold.into(),
            o.discriminant.into(),
            o.oracle.into(),
            o.agrees.into(),
            o.reason.clone().into(),
        ]);
    }
    out.result = json!({ "spec": spec, "cases": Value::Object(out.summary.clone()), "outcomes": outcomes });
    Ok(out)
}

pub fn growth(a: &GrowthArgs) -> Result<Output, CliError> {
    let rows = analysis::asymptotic_growth_study(&a.blocks, a.block_size, a.p_in, a.p_out, a.rng_seed)?;
    let mut out = Output::new(&["blocks", "vertices", "edges", "modularity", "permanence"]);
    for r in &rows {
        out.table.push(vec![r.blocks.into(), r.vertices.into(), r.edges.into(), r.modularity.into(), r.permanence.into()]);
    }
    let perms = rows.iter().map(|r| r.permanence);
    let spread = perms.clone().fold(f64::NEG_INFINITY, f64::max) - perms.fold(f64::INFINITY, f64::min);
    out.summarize("permanence_spread", spread);
    out.summarize("modularity_increasing", rows.windows(2).all(|w| w[1].modularity > w[0].modularity));
    out.result = to_value(&rows);
    Ok(out)
}
