//! Independent oracles shared by the integration suites. Everything here
//! recomputes results by brute force or direct search, never through the
//! code paths it is checking.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regis_core::canon::canonical_form;
use regis_core::entropy::Distribution;
use regis_core::graph::{Graph, VertexSet};

/// Subset-scan count of independent sets, n <= 20.
#[allow(dead_code)]
pub fn brute_count_independent_sets(g: &Graph) -> BigUint {
    assert!(g.n() <= 20);
    let mut count = 0u64;
    'subsets: for mask in 0..(1u64 << g.n()) {
        for v in VertexSet::from_bits(mask).iter() {
            if g.neighbors(v).bits() & mask != 0 {
                continue 'subsets;
            }
        }
        count += 1;
    }
    BigUint::from(count)
}

/// Counts isomorphism classes of (optionally connected) d-regular graphs by
/// scanning every labeled graph: potential edges are decided in lexicographic
/// order, pruning only on degree feasibility, and completed graphs are
/// bucketed by canonical form.
#[allow(dead_code)]
pub fn labeled_scan_class_count(n: usize, d: usize, connected_only: bool) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let mut deg = vec![0usize; n];
    let mut edges = Vec::new();
    let mut classes = std::collections::HashSet::new();
    scan(
        n,
        d,
        connected_only,
        &pairs,
        0,
        &mut deg,
        &mut edges,
        &mut classes,
    );
    classes.len()
}

#[allow(clippy::too_many_arguments)]
fn scan(
    n: usize,
    d: usize,
    connected_only: bool,
    pairs: &[(usize, usize)],
    idx: usize,
    deg: &mut Vec<usize>,
    edges: &mut Vec<(usize, usize)>,
    classes: &mut std::collections::HashSet<regis_core::canon::CanonicalForm>,
) {
    if idx == pairs.len() {
        if deg.iter().all(|&x| x == d) {
            let g = Graph::from_edges(n, edges).unwrap();
            if !connected_only || g.is_connected() {
                classes.insert(canonical_form(&g).unwrap());
            }
        }
        return;
    }
    let (u, v) = pairs[idx];
    // Once every pair touching u is decided, u's degree is final.
    let u_done_after = pairs[idx..].iter().skip(1).all(|&(a, b)| a != u && b != u);

    // Leave the edge out.
    if !(u_done_after && deg[u] != d) {
        scan(n, d, connected_only, pairs, idx + 1, deg, edges, classes);
    }
    // Put the edge in.
    if deg[u] < d && deg[v] < d {
        deg[u] += 1;
        deg[v] += 1;
        edges.push((u, v));
        if !(u_done_after && deg[u] != d) {
            scan(n, d, connected_only, pairs, idx + 1, deg, edges, classes);
        }
        edges.pop();
        deg[u] -= 1;
        deg[v] -= 1;
    }
}

#[allow(dead_code)]
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

#[allow(dead_code)]
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Grid-search oracle for D_{n,eps}: walks the feasible interval of the
/// constrained coordinate at the given step (boundary included exactly),
/// completes with uniform mass, and maximizes the entropy computed the long
/// way through [`Distribution`].
#[allow(dead_code)]
pub fn d_eps_grid_oracle(n: usize, eps: f64, step: f64) -> f64 {
    assert!(n >= 2 && eps > 0.0);
    let mut best = f64::NEG_INFINITY;
    let mut probe = |q: f64| {
        if !(0.0..=1.0).contains(&q) {
            return;
        }
        let rest = (1.0 - q) / (n - 1) as f64;
        let mut p = vec![rest; n];
        p[0] = q;
        // Renormalize away float dust so the validator accepts the vector.
        let total: f64 = p.iter().sum();
        for x in p.iter_mut() {
            *x /= total;
        }
        best = best.max(Distribution::new(p).unwrap().entropy());
    };

    let lo_bound = 1.0 / n as f64 + eps / 2.0; // q1 >= this
    if lo_bound <= 1.0 {
        let mut q = lo_bound;
        while q <= 1.0 {
            probe(q);
            q += step;
        }
        probe(1.0);
        probe(lo_bound); // exact boundary, in case the walk drifted
    }
    let hi_bound = 1.0 / n as f64 - eps / 2.0; // q2 <= this
    if hi_bound >= 0.0 {
        let mut q = hi_bound;
        while q >= 0.0 {
            probe(q);
            q -= step;
        }
        probe(0.0);
        probe(hi_bound);
    }
    best
}

/// Full-simplex grid maximum of entropy under the D_{n,eps} premise, for small
/// n: every composition of `parts` into n cells. Confirms independently that
/// the uniform-rest completion is the right shape.
#[allow(dead_code)]
pub fn d_eps_full_simplex_oracle(n: usize, eps: f64, parts: usize) -> f64 {
    assert!(n <= 4, "full grid only feasible for tiny n");
    let mut best = f64::NEG_INFINITY;
    let mut cells = vec![0usize; n];
    compositions(parts, 0, &mut cells, &mut |cells| {
        let p: Vec<f64> = cells.iter().map(|&k| k as f64 / parts as f64).collect();
        let feasible = p[0] >= 1.0 / n as f64 + eps / 2.0 || p[1] <= 1.0 / n as f64 - eps / 2.0;
        if feasible {
            let h = Distribution::new(p).unwrap().entropy();
            if h > best {
                best = h;
            }
        }
    });
    best
}

fn compositions(left: usize, idx: usize, cells: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if idx == cells.len() - 1 {
        cells[idx] = left;
        emit(cells);
        return;
    }
    for k in 0..=left {
        cells[idx] = k;
        compositions(left - k, idx + 1, cells, emit);
    }
}
