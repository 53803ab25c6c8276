use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_permanence"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// A ring of cliques and a planted partition graph with truth files.
fn fixtures() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["generate", "--kind", "ring", "--m", "10", "--k", "5", "--out", "g.edges", "--truth", "g.truth"]);
    ok(
        dir.path(),
        &[
            "generate", "--kind", "planted", "--blocks", "4", "--block-size", "15", "--p-in", "0.7", "--p-out", "0.05",
            "--rng-seed", "5", "--out", "p.edges", "--truth", "p.truth",
        ],
    );
    ok(dir.path(), &["detect", "--graph", "p.edges", "--partition-out", "p.det", "--out", "det.csv"]);
    dir
}

fn without_duration(text: &str) -> String {
    text.lines().filter(|l| !l.contains("\"duration_seconds\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn ring_scores_point_nine_two() {
    let dir = fixtures();
    let json = ok(dir.path(), &["score", "--graph", "g.edges", "--partition", "g.truth", "--per-vertex", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["result"]["report"]["permanence"], 0.92);
    assert_eq!(v["result"]["vertices"].as_array().unwrap().len(), 50);

    let csv = ok(dir.path(), &["score", "--graph", "g.edges", "--partition", "g.truth", "--per-vertex"]);
    assert!(csv.starts_with("vertex_label,community,I,D,Emax,c_in,permanence,boundary\n"));
    let summary = ok(dir.path(), &["score", "--graph", "g.edges", "--partition", "g.truth"]);
    assert!(summary.contains("permanence,0.92\n"));
    let exact = ok(dir.path(), &["score", "--graph", "g.edges", "--partition", "g.truth", "--exact"]);
    assert_eq!(exact, summary);
}

#[test]
fn csv_manifest_goes_next_to_the_output() {
    let dir = fixtures();
    ok(dir.path(), &["score", "--graph", "g.edges", "--partition", "g.truth", "--out", "s.csv"]);
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("s.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["subcommand"], "score");
    assert_eq!(manifest["summary"]["permanence"], 0.92);
    assert_eq!(manifest["inputs"], serde_json::json!(["g.edges", "g.truth"]));
    assert!(manifest["duration_seconds"].is_number());
    assert_eq!(manifest["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn detect_recovers_the_ring_and_repeats_byte_for_byte() {
    let dir = fixtures();
    let args = |out: &'static str| vec!["detect", "--graph", "g.edges", "--seed-strategy", "high_degree", "--rng-seed", "7", "--out", out];
    ok(dir.path(), &args("a.csv"));
    ok(dir.path(), &args("b.csv"));
    let read = |p: &str| std::fs::read(dir.path().join(p)).unwrap();
    assert_eq!(read("a.csv"), read("b.csv"));
    let manifest = String::from_utf8(read("a.csv.manifest.json")).unwrap();
    assert!(manifest.contains("\"permanence\": 0.92"));

    ok(dir.path(), &["detect", "--graph", "g.edges", "--partition-out", "g.det"]);
    let v = ok(dir.path(), &["validate", "--detected", "g.det", "--truth", "g.truth", "--graph", "g.edges", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&v).unwrap();
    for key in ["nmi", "ari", "purity", "weighted_nmi", "weighted_ari", "weighted_purity"] {
        assert_eq!(v["result"][key], 1.0, "{key}");
    }
}

#[test]
fn validate_without_graph_leaves_weighted_metrics_empty() {
    let dir = fixtures();
    let csv = ok(dir.path(), &["validate", "--detected", "p.det", "--truth", "p.truth"]);
    assert!(csv.contains("weighted_nmi,\n"));
    let with_graph = ok(dir.path(), &["validate", "--detected", "p.det", "--truth", "p.truth", "--graph", "p.edges"]);
    let nmi = |s: &str| s.lines().find(|l| l.starts_with("nmi,")).unwrap().to_string();
    assert_eq!(nmi(&csv), nmi(&with_graph));
}

#[test]
fn order_file_changes_processing_order() {
    let dir = fixtures();
    let labels: Vec<String> = (0..60).rev().map(|i| i.to_string()).collect();
    std::fs::write(dir.path().join("order.txt"), labels.join("\n")).unwrap();
    let out = ok(dir.path(), &["detect", "--graph", "p.edges", "--order-file", "order.txt", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["manifest"]["inputs"].as_array().unwrap().iter().any(|i| i == "order.txt"));

    std::fs::write(dir.path().join("bad.txt"), "0 1 2").unwrap();
    let bad = run(dir.path(), &["detect", "--graph", "p.edges", "--order-file", "bad.txt"]);
    assert_eq!(bad.status.code(), Some(1));
}

fn every_subcommand() -> Vec<Vec<&'static str>> {
    let gp = ["--graph", "p.edges", "--partition", "p.truth"];
    let pair = ["--detected", "p.det", "--truth", "p.truth"];
    vec![
        [&["score"][..], &gp, &["--per-vertex"]].concat(),
        vec!["detect", "--graph", "p.edges", "--seed-strategy", "pair_wise", "--rng-seed", "7"],
        [&["validate"][..], &pair, &["--graph", "p.edges"]].concat(),
        vec!["perturb", "--graph", "p.edges", "--truth", "p.truth", "--p-grid", "0.1,0.3", "--runs", "2", "--rng-seed", "3"],
        vec!["sensitivity", "--graph", "p.edges", "--permutations", "4", "--rng-seed", "3"],
        [&["analyze", "histogram"][..], &gp].concat(),
        [&["analyze", "components"][..], &gp].concat(),
        [&["analyze", "strengthen"][..], &gp].concat(),
        [&["analyze", "farness"][..], &gp].concat(),
        [&["analyze", "assortativity"][..], &gp].concat(),
        [&["analyze", "overlap"][..], &pair].concat(),
        [&["analyze", "sizes"][..], &pair].concat(),
        vec!["analyze", "spread", "--graph", "p.edges", "--truth", "p.truth", "--runs", "20", "--rng-seed", "3"],
        vec!["analyze", "lemmas", "--alpha", "2", "--beta", "1"],
        vec!["analyze", "growth", "--blocks", "2,3", "--block-size", "10", "--rng-seed", "3"],
        vec!["generate", "--kind", "planted", "--rng-seed", "9"],
    ]
}

#[test]
fn every_subcommand_is_byte_deterministic() {
    let dir = fixtures();
    for cmd in every_subcommand() {
        for format in ["csv", "json"] {
            let args: Vec<&str> = cmd.iter().copied().chain(["--format", format]).collect();
            let a = run(dir.path(), &args);
            let b = run(dir.path(), &args);
            assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
            let text = |o: &Output| (without_duration(&String::from_utf8_lossy(&o.stdout)), without_duration(&String::from_utf8_lossy(&o.stderr)));
            assert_eq!(text(&a), text(&b), "{args:?}");
            assert!(!a.stdout.is_empty(), "{args:?}");
        }
    }
}

#[test]
fn csv_always_has_headers_and_nine_digit_floats() {
    let dir = fixtures();
    for cmd in every_subcommand() {
        if cmd[0] == "generate" {
            continue;
        }
        let out = ok(dir.path(), &cmd);
        let mut rdr = csv::ReaderBuilder::new().from_reader(out.as_bytes());
        let headers = rdr.headers().unwrap().clone();
        assert!(headers.iter().all(|h| !h.is_empty() && h.parse::<f64>().is_err()), "{cmd:?}: {headers:?}");
        for rec in rdr.records() {
            for field in rec.unwrap().iter() {
                if let Ok(x) = field.parse::<f64>() {
                    let digits = field.trim_start_matches('-').split('e').next().unwrap().chars().filter(char::is_ascii_digit);
                    let significant = digits.skip_while(|&c| c == '0').count();
                    assert!(significant <= 9 || x.fract() == 0.0, "{cmd:?}: {field}");
                }
            }
        }
    }
}

#[test]
fn missing_file_is_a_data_error_naming_the_path() {
    let dir = fixtures();
    let out = run(dir.path(), &["score", "--graph", "nowhere.edges", "--partition", "g.truth"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nowhere.edges"));

    std::fs::write(dir.path().join("short.truth"), "0\t0\n").unwrap();
    let out = run(dir.path(), &["score", "--graph", "g.edges", "--partition", "short.truth"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("short.truth"));
}

#[test]
fn bad_flags_are_usage_errors() {
    let dir = fixtures();
    for args in [
        vec!["score", "--graph", "g.edges", "--unknown"],
        vec!["detect", "--graph", "g.edges", "--seed-strategy", "best"],
        vec!["frobnicate"],
        vec!["generate", "--kind", "planted", "--p-in", "2"],
        vec!["perturb", "--graph", "p.edges", "--truth", "p.truth", "--p-grid", "0.5,0.1"],
        vec!["sensitivity", "--graph", "p.edges", "--permutations", "1"],
    ] {
        let out = run(dir.path(), &args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(run(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn generate_writes_loadable_files() {
    let dir = fixtures();
    let edges = std::fs::read_to_string(dir.path().join("g.edges")).unwrap();
    assert_eq!(edges.lines().count(), 110);
    let truth = std::fs::read_to_string(dir.path().join("g.truth")).unwrap();
    assert!(truth.lines().all(|l| l.split('\t').count() == 2));
    let summary = ok(dir.path(), &["generate", "--kind", "grid", "--rows", "3", "--cols", "4", "--out", "grid.edges", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&summary).unwrap();
    assert_eq!(v["result"]["edges"], 17);
    assert!(dir.path().join("grid.edges.manifest.json").exists());
}
