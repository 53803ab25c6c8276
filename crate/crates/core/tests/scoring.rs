mod common;

use approx::assert_abs_diff_eq;
use common::*;
use permanence::scoring::{conductance, cut_ratio, graph_permanence, modularity, permanence_breakdowns, vertex_permanence, Boundary};
use permanence::validation::{ari, nmi, purity, validate, weighted_variant, Metric};
use permanence::{Exact, Graph, Partition};
use proptest::prelude::*;

#[test]
fn vertex_permanence_matches_oracle_on_small_graphs() {
    let mut r = rng(11);
    for trial in 0..300 {
        let n = 2 + trial % 11;
        let g = random_graph(&mut r, n, [0.2, 0.4, 0.7][trial % 3]);
        let p = random_partition(&mut r, n, 4);
        for v in g.vertices() {
            let got = vertex_permanence::<f64>(&g, &p, v).permanence;
            assert_abs_diff_eq!(got, perm_oracle(&g, p.assignment(), v), epsilon = 1e-12);
        }
    }
}

#[test]
fn exact_and_float_permanence_agree() {
    let mut r = rng(12);
    for _ in 0..50 {
        let g = random_graph(&mut r, 10, 0.4);
        let p = random_partition(&mut r, 10, 3);
        let exact: Exact = graph_permanence(&g, &p).unwrap();
        let float: f64 = graph_permanence(&g, &p).unwrap();
        let exact = num_traits::ToPrimitive::to_f64(&exact).unwrap();
        assert_abs_diff_eq!(exact, float, epsilon = 1e-12);
    }
}

#[test]
fn community_scores_match_oracles() {
    let mut r = rng(13);
    for trial in 0..200 {
        let n = 3 + trial % 10;
        let g = random_graph(&mut r, n, 0.45);
        if g.edge_count() == 0 {
            continue;
        }
        let p = random_partition(&mut r, n, 4);
        assert_abs_diff_eq!(modularity::<f64>(&g, &p).unwrap(), modularity_oracle(&g, p.assignment()), epsilon = 1e-12);
        for c in 0..p.community_count() {
            let phi = conductance::<f64>(&g, &p, c);
            match conductance_oracle(&g, p.assignment(), c) {
                Some(x) => assert_abs_diff_eq!(phi.value, x, epsilon = 1e-12),
                None => assert!(phi.degenerate),
            }
            let theta = cut_ratio::<f64>(&g, &p, c);
            match cut_ratio_oracle(&g, p.assignment(), c) {
                Some(x) => assert_abs_diff_eq!(theta.value, x, epsilon = 1e-12),
                None => assert!(theta.degenerate),
            }
        }
    }
}

#[test]
fn boundary_rules_are_exact() {
    // Clique 0..4 with a pendant 4-5 leaving to community 1.
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            edges.push((a, b));
        }
    }
    edges.extend([(4, 5), (6, 7)]);
    let g = Graph::from_edges(9, edges).unwrap();
    let p = Partition::from_assignment(&[0, 0, 0, 0, 0, 1, 2, 2, 3]);
    let b = |v| vertex_permanence::<Exact>(&g, &p, v);
    let one = Exact::from_integer(1.into());
    assert_eq!(b(0).permanence, one);
    assert_eq!(b(0).boundary, Boundary::NoExternal);
    assert_eq!(b(5).permanence, Exact::from_integer(0.into()));
    assert_eq!(b(5).boundary, Boundary::Singleton);
    assert_eq!(b(8).boundary, Boundary::Singleton);
    // Vertex 6 has one internal neighbor and nothing outside: c_in = 0.
    assert_eq!(b(6).permanence, Exact::from_integer(0.into()));
    assert_eq!(b(6).boundary, Boundary::NoExternal);
    // Vertex 4: I = 4, D = 5, E_max = 1, c_in = 1.
    assert_eq!(b(4).permanence, Exact::new(4.into(), 5.into()));
}

#[test]
fn external_only_vertex_hits_lower_bound() {
    let g = Graph::from_edges(4, [(0, 2), (1, 3), (2, 3)]).unwrap();
    let p = Partition::from_assignment(&[0, 0, 1, 1]);
    let b = vertex_permanence::<f64>(&g, &p, 0);
    assert_eq!(b.permanence, -1.0);
    assert_eq!(b.boundary, Boundary::ExternalOnly);
}

#[test]
fn validation_matches_oracles() {
    let mut r = rng(14);
    for trial in 0..200 {
        let n = 2 + trial % 14;
        let a = random_partition(&mut r, n, 5);
        let b = random_partition(&mut r, n, 5);
        let ones = vec![1.0; n];
        assert_abs_diff_eq!(nmi(&a, &b).unwrap(), nmi_oracle(a.assignment(), b.assignment(), &ones), epsilon = 1e-12);
        assert_abs_diff_eq!(purity(&a, &b).unwrap(), purity_oracle(a.assignment(), b.assignment()), epsilon = 1e-12);
        if let Some(x) = ari_oracle(a.assignment(), b.assignment()) {
            assert_abs_diff_eq!(ari(&a, &b).unwrap(), x, epsilon = 1e-9);
        }
    }
}

#[test]
fn weighted_nmi_matches_oracle() {
    let mut r = rng(15);
    for _ in 0..100 {
        let g = random_graph(&mut r, 12, 0.4);
        if g.edge_count() == 0 {
            continue;
        }
        let a = random_partition(&mut r, 12, 4);
        let b = random_partition(&mut r, 12, 4);
        let w: Vec<f64> = g.vertices().map(|v| g.degree(v) as f64).collect();
        let got = weighted_variant(Metric::Nmi, &a, &b, &g).unwrap();
        assert_abs_diff_eq!(got, nmi_oracle(a.assignment(), b.assignment(), &w).clamp(0.0, 1.0), epsilon = 1e-12);
    }
}

#[test]
fn identical_partitions_validate_perfectly() {
    let p = Partition::from_assignment(&[0, 0, 1, 1, 2, 2]);
    let g = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5), (1, 2)]).unwrap();
    let report = validate(&p, &p, Some(&g)).unwrap();
    assert_abs_diff_eq!(report.mean(), 1.0, epsilon = 1e-12);
}

fn graph_and_partition() -> impl Strategy<Value = (Graph, Partition)> {
    (2usize..16).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (proptest::collection::vec(any::<bool>(), pairs), proptest::collection::vec(0usize..4, n)).prop_map(move |(bits, labels)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            (Graph::from_edges(n, edges).unwrap(), Partition::from_assignment(&labels))
        })
    })
}

proptest! {
    #[test]
    fn permanence_stays_in_range((g, p) in graph_and_partition()) {
        for b in permanence_breakdowns::<f64>(&g, &p).unwrap() {
            prop_assert!((-1.0..=1.0).contains(&b.permanence));
            prop_assert_eq!(b.permanence == -1.0, b.boundary == Boundary::ExternalOnly);
        }
    }

    #[test]
    fn relabelling_communities_changes_nothing((g, p) in graph_and_partition()) {
        let k = p.community_count();
        let flipped: Vec<usize> = p.assignment().iter().map(|&c| k - 1 - c).collect();
        let q = Partition::from_assignment(&flipped);
        prop_assert_eq!(graph_permanence::<Exact>(&g, &p).unwrap(), graph_permanence::<Exact>(&g, &q).unwrap());
    }

    #[test]
    fn validation_metrics_are_bounded(labels in proptest::collection::vec((0usize..4, 0usize..4), 2..30)) {
        let a = Partition::from_assignment(&labels.iter().map(|x| x.0).collect::<Vec<_>>());
        let b = Partition::from_assignment(&labels.iter().map(|x| x.1).collect::<Vec<_>>());
        let n = nmi(&a, &b).unwrap();
        prop_assert!((0.0..=1.0).contains(&n));
        prop_assert!((0.0..=1.0).contains(&purity(&a, &b).unwrap()));
        prop_assert!(ari(&a, &b).unwrap() <= 1.0 + 1e-12);
        prop_assert!((nmi(&a, &b).unwrap() - nmi(&b, &a).unwrap()).abs() < 1e-12);
    }
}
