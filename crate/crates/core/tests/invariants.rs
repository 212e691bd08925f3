//! Cross-module invariants checked against independent brute-force routes.

mod common;

use num_bigint::BigUint;
use rand::Rng;

use regis_core::census::is_alon_graph;
use regis_core::enumerate::{enumerate_regular, RegularClassSpec};
use regis_core::graph::{Graph, VertexSet};
use regis_core::graph6::{from_graph6, to_graph6};
use regis_core::isets::count_independent_sets;

/// Odd-cycle search by vertex-subset DFS, the slow route.
fn has_odd_cycle(g: &Graph, s: VertexSet) -> bool {
    // Try every start vertex and walk all simple closed walks of odd length
    // via DFS over (vertex, parity) states.
    let verts: Vec<usize> = s.iter().collect();
    for &start in &verts {
        let mut stack = vec![(start, 0usize)];
        let mut seen = std::collections::HashSet::new();
        while let Some((v, parity)) = stack.pop() {
            if !seen.insert((v, parity)) {
                continue;
            }
            for w in g.neighbors(v).iter() {
                if !s.contains(w) {
                    continue;
                }
                if w == start && parity % 2 == 0 {
                    return true; // closing edge makes an odd closed walk
                }
                stack.push((w, 1 - parity));
            }
        }
    }
    false
}

#[test]
fn bipartiteness_matches_odd_cycle_search() {
    let mut rng = common::seeded_rng(0xB1B);
    for _ in 0..150 {
        let n = rng.gen_range(1..=10);
        let g = common::random_graph(&mut rng, n, 0.35);
        let mask = rng.gen_range(0..(1u64 << n));
        let s = VertexSet::from_bits(mask);
        let bip = g.bipartition_on(s);
        assert_eq!(
            bip.is_none(),
            has_odd_cycle(&g, s),
            "graph {g:?}, subset {s:?}"
        );
        if let Some((a, b)) = bip {
            assert_eq!(a | b, s);
            assert!((a & b).is_empty());
            for v in a.iter() {
                assert!((g.neighbors(v) & a).is_empty(), "class 1 spans an edge");
            }
            for v in b.iter() {
                assert!((g.neighbors(v) & b).is_empty(), "class 2 spans an edge");
            }
        }
    }
}

#[test]
fn neighbor_witness_on_non_kdd_components() {
    // In every connected d-regular bipartite graph other than K_{d,d}, every
    // vertex has two neighbors with different neighborhoods.
    for (n, d) in [
        (6usize, 2usize),
        (8, 2),
        (10, 2),
        (8, 3),
        (10, 3),
        (12, 3),
        (10, 4),
    ] {
        for g in enumerate_regular(&RegularClassSpec::new(n, d, true)).unwrap() {
            if g.bipartition().is_none() || is_alon_graph(&g, d) {
                continue;
            }
            for v in 0..g.n() {
                assert!(
                    g.neighbor_witness(v).unwrap().is_some(),
                    "no witness at vertex {v} of {}",
                    to_graph6(&g).unwrap()
                );
            }
        }
    }
    // And on K_{d,d} itself there is never one.
    for d in 1..=5 {
        let g = Graph::complete_bipartite(d).unwrap();
        for v in 0..g.n() {
            assert_eq!(g.neighbor_witness(v).unwrap(), None);
        }
    }
}

#[test]
fn double_cover_pair_model() {
    // i(G x K2) equals the number of pairs (A, B) with no edge between them.
    let mut rng = common::seeded_rng(0xD0C);
    for _ in 0..40 {
        let n = rng.gen_range(1..=10);
        let g = common::random_graph(&mut rng, n, 0.4);
        let full = g.vertices().bits();
        let mut pairs = BigUint::from(0u32);
        for a_bits in 0..=full {
            let free = n as u32 - g.neighborhood_of_set(VertexSet::from_bits(a_bits)).len() as u32;
            pairs += BigUint::from(1u32) << free;
        }
        let cover_count = count_independent_sets(&g.double_cover().unwrap());
        assert_eq!(cover_count, pairs, "pair model failed on {g:?}");
    }
}

#[test]
fn counting_matches_brute_force_exhaustively_small() {
    // Every labeled graph on up to 4 vertices.
    for n in 0..=4usize {
        let pair_count = n * n.saturating_sub(1) / 2;
        for mask in 0u32..(1 << pair_count) {
            let mut edges = Vec::new();
            let mut bit = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if (mask >> bit) & 1 == 1 {
                        edges.push((u, v));
                    }
                    bit += 1;
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            assert_eq!(
                count_independent_sets(&g),
                common::brute_count_independent_sets(&g)
            );
        }
    }
}

#[test]
fn graph6_round_trip_random_up_to_62() {
    let mut rng = common::seeded_rng(0x616);
    for _ in 0..60 {
        let n = rng.gen_range(0..=62);
        let g = common::random_graph(&mut rng, n, 0.3);
        let line = to_graph6(&g).unwrap();
        assert_eq!(from_graph6(&line).unwrap(), g);
    }
}

#[test]
fn component_factorization_of_counts() {
    let mut rng = common::seeded_rng(0xFAC);
    for _ in 0..30 {
        let (na, nb, nc) = (
            rng.gen_range(1..=8),
            rng.gen_range(1..=8),
            rng.gen_range(1..=6),
        );
        let a = common::random_graph(&mut rng, na, 0.4);
        let b = common::random_graph(&mut rng, nb, 0.4);
        let c = common::random_graph(&mut rng, nc, 0.5);
        let union = a.disjoint_union(&b).unwrap().disjoint_union(&c).unwrap();
        let expect =
            count_independent_sets(&a) * count_independent_sets(&b) * count_independent_sets(&c);
        assert_eq!(count_independent_sets(&union), expect);
    }
}
