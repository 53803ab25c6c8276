//! Brute-force reference implementations written straight from the
//! definitions, plus small random instance generators.

#![allow(dead_code)]

use permanence::{Graph, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdos-Renyi graph on `n` vertices with edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_partition(rng: &mut ChaCha8Rng, n: usize, max_k: usize) -> Partition {
    let k = rng.gen_range(1..=max_k.max(1));
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    Partition::from_assignment(&labels)
}

fn adjacent(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbors(u).contains(&v)
}

/// Permanence of `v` from first principles.
pub fn perm_oracle(g: &Graph, label: &[usize], v: usize) -> f64 {
    let n = g.vertex_count();
    let own = label[v];
    let size = (0..n).filter(|&u| label[u] == own).count();
    if size == 1 {
        return 0.0;
    }
    let nbrs: Vec<usize> = (0..n).filter(|&u| u != v && adjacent(g, u, v)).collect();
    let d = nbrs.len();
    if d == 0 {
        return 0.0;
    }
    let internal: Vec<usize> = nbrs.iter().copied().filter(|&u| label[u] == own).collect();
    let i = internal.len();
    let mut links = 0usize;
    for (a, &x) in internal.iter().enumerate() {
        for &y in &internal[a + 1..] {
            if adjacent(g, x, y) {
                links += 1;
            }
        }
    }
    let c_in = if i < 2 { 0.0 } else { links as f64 / (i * (i - 1) / 2) as f64 };
    let mut e_max = 0;
    for c in 0..n {
        if c != own {
            e_max = e_max.max(nbrs.iter().filter(|&&u| label[u] == c).count());
        }
    }
    if e_max == 0 {
        return c_in;
    }
    if i == 0 {
        return -1.0;
    }
    i as f64 / (e_max as f64 * d as f64) - (1.0 - c_in)
}

/// `Q = 1/2m * sum_ij (A_ij - k_i k_j / 2m) delta(c_i, c_j)`.
pub fn modularity_oracle(g: &Graph, label: &[usize]) -> f64 {
    let n = g.vertex_count();
    let two_m = (0..n).map(|v| g.degree(v)).sum::<usize>() as f64;
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if label[i] == label[j] {
                let a = if adjacent(g, i, j) { 1.0 } else { 0.0 };
                q += a - g.degree(i) as f64 * g.degree(j) as f64 / two_m;
            }
        }
    }
    q / two_m
}

/// `(cut edges, volume of S, volume of the rest, |S|)` for community `c`.
fn cut_stats(g: &Graph, label: &[usize], c: usize) -> (usize, usize, usize, usize) {
    let n = g.vertex_count();
    let mut cut = 0;
    for u in 0..n {
        for v in 0..n {
            if label[u] == c && label[v] != c && adjacent(g, u, v) {
                cut += 1;
            }
        }
    }
    let vol_in = (0..n).filter(|&v| label[v] == c).map(|v| g.degree(v)).sum();
    let vol_out = (0..n).filter(|&v| label[v] != c).map(|v| g.degree(v)).sum();
    (cut, vol_in, vol_out, (0..n).filter(|&v| label[v] == c).count())
}

/// Conductance, `None` when the smaller volume is 0.
pub fn conductance_oracle(g: &Graph, label: &[usize], c: usize) -> Option<f64> {
    let (cut, a, b, _) = cut_stats(g, label, c);
    let denom = a.min(b);
    (denom > 0).then(|| cut as f64 / denom as f64)
}

/// Cut-ratio, `None` when the community is empty or everything.
pub fn cut_ratio_oracle(g: &Graph, label: &[usize], c: usize) -> Option<f64> {
    let n = g.vertex_count();
    let (cut, _, _, size) = cut_stats(g, label, c);
    (size > 0 && size < n).then(|| cut as f64 / (size * (n - size)) as f64)
}

fn entropy(counts: &[f64], total: f64) -> f64 {
    counts.iter().filter(|&&c| c > 0.0).map(|&c| -(c / total) * (c / total).ln()).sum()
}

/// NMI with arithmetic-mean normalization, from vertex-by-vertex counts.
pub fn nmi_oracle(a: &[usize], b: &[usize], w: &[f64]) -> f64 {
    let ka = a.iter().max().unwrap() + 1;
    let kb = b.iter().max().unwrap() + 1;
    let mut joint = vec![vec![0.0; kb]; ka];
    let (mut ra, mut rb) = (vec![0.0; ka], vec![0.0; kb]);
    for v in 0..a.len() {
        joint[a[v]][b[v]] += w[v];
        ra[a[v]] += w[v];
        rb[b[v]] += w[v];
    }
    let total: f64 = w.iter().sum();
    let (ha, hb) = (entropy(&ra, total), entropy(&rb, total));
    if ha + hb == 0.0 {
        return 1.0;
    }
    let mut mi = 0.0;
    for i in 0..ka {
        for j in 0..kb {
            if joint[i][j] > 0.0 {
                let pij = joint[i][j] / total;
                mi += pij * (pij / ((ra[i] / total) * (rb[j] / total))).ln();
            }
        }
    }
    2.0 * mi / (ha + hb)
}

/// ARI by enumerating vertex pairs; `None` when the index is undefined.
pub fn ari_oracle(a: &[usize], b: &[usize]) -> Option<f64> {
    let n = a.len();
    let (mut both, mut in_a, mut in_b, mut pairs) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for u in 0..n {
        for v in u + 1..n {
            let sa = a[u] == a[v];
            let sb = b[u] == b[v];
            pairs += 1.0;
            if sa {
                in_a += 1.0;
            }
            if sb {
                in_b += 1.0;
            }
            if sa && sb {
                both += 1.0;
            }
        }
    }
    let expected = in_a * in_b / pairs;
    let max = (in_a + in_b) / 2.0;
    ((max - expected).abs() > 1e-9).then(|| (both - expected) / (max - expected))
}

pub fn purity_oracle(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len();
    let ka = a.iter().max().unwrap() + 1;
    let kb = b.iter().max().unwrap() + 1;
    let mut hits = 0;
    for i in 0..ka {
        hits += (0..kb).map(|j| (0..n).filter(|&v| a[v] == i && b[v] == j).count()).max().unwrap();
    }
    hits as f64 / n as f64
}

use permanence::analysis::{LemmaSpec, Wiring};

/// Every two-sided lemma scenario with `α, β ∈ 1..=max_k` and each side
/// up to `extra` vertices larger than its minimum.
pub fn lemma_grid(max_k: usize, extra: usize) -> Vec<LemmaSpec> {
    let min = |k: usize, w: Wiring| match w {
        Wiring::Tight => k.max(2),
        Wiring::Sparse => k + 1,
    };
    let mut specs = Vec::new();
    for alpha in 1..=max_k {
        for beta in 1..=max_k {
            for wiring_a in [Wiring::Tight, Wiring::Sparse] {
                for wiring_b in [Wiring::Tight, Wiring::Sparse] {
                    for size_a in min(alpha, wiring_a)..=min(alpha, wiring_a) + extra {
                        for size_b in min(beta, wiring_b)..=min(beta, wiring_b) + extra {
                            let rng_seed = (specs.len() as u64).wrapping_mul(0x9E37_79B9);
                            specs.push(LemmaSpec { alpha, beta, size_a, size_b, wiring_a, wiring_b, rng_seed });
                        }
                    }
                }
            }
        }
    }
    specs
}
