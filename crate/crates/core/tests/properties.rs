//! Randomized invariant checks across the public API, driven by seeds so
//! every failure replays exactly.

use proptest::prelude::*;

use squares_core::big_clique::{candidate_set, counting_certificate};
use squares_core::clique_core::{extend_to_maximal, is_clique, max_clique_exact, DEFAULT_BUDGET};
use squares_core::generators::{
    parse_rotation, random_triangulation, serialize_rotation, sparsify, GenSeed,
};
use squares_core::plane_graph::CycleSpec;
use squares_core::square_ops::{dist2_closed_neighborhood, square_of_plane, SimpleGraph};
use squares_core::structure_checks::degeneracy_order_plane;
use squares_core::PlaneGraph;

fn random_plane(seed: u64, n: usize, keep: f64) -> PlaneGraph {
    let tri = random_triangulation(GenSeed { seed, n });
    if keep >= 1.0 {
        tri
    } else {
        sparsify(&tri, keep, seed ^ 0x5eed)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotation_format_round_trips(seed in 0u64..1000, n in 3usize..40, keep in 0.2f64..1.0) {
        let g = random_plane(seed, n, keep);
        let text = serialize_rotation(&g);
        prop_assert_eq!(parse_rotation(&text).unwrap(), g);
    }

    #[test]
    fn contraction_preserves_planarity_and_bounds(seed in 0u64..500, n in 4usize..40) {
        let g = random_triangulation(GenSeed { seed, n });
        let edges = g.edges();
        let (v, w) = edges[seed as usize % edges.len()];
        let dv = g.degree(v);
        let dw = g.degree(w);
        let (h, mapping, merged) = g.contract_edge(v, w).unwrap();
        prop_assert!(h.validate().is_ok());
        prop_assert_eq!(h.vertex_count(), g.vertex_count() - 1);
        prop_assert!(h.degree(merged) <= dv + dw - 2);
        prop_assert!(mapping[v].is_none());

        // Distances between survivors never increase.
        let gs = SimpleGraph::from_plane(&g);
        let hs = SimpleGraph::from_plane(&h);
        for a in 0..g.vertex_count() {
            let Some(na) = mapping[a] else { continue };
            let da = gs.bfs_distances(a);
            let ha = hs.bfs_distances(na);
            for b in 0..g.vertex_count() {
                let Some(nb) = mapping[b] else { continue };
                if let (Some(old), Some(new)) = (da[b], ha[nb]) {
                    prop_assert!(new <= old);
                }
            }
        }
    }

    #[test]
    fn separation_agrees_with_component_oracle(seed in 0u64..1000, n in 8usize..40) {
        let g = random_triangulation(GenSeed { seed, n });
        // Link of a vertex in a triangulation is a cycle once n > 4.
        let v = (seed as usize) % n;
        prop_assume!(g.degree(v) >= 3 && g.degree(v) < n - 1);
        let link = CycleSpec::new(&g, g.neighbors(v).to_vec()).unwrap();
        let outside: Vec<usize> = (0..n)
            .filter(|&u| u != v && !g.neighbors(v).contains(&u))
            .collect();
        prop_assume!(!outside.is_empty());
        let b = outside[seed as usize % outside.len()];

        // Oracle: BFS in the vertex-deleted graph.
        let mut blocked: Vec<bool> = vec![false; n];
        for &u in g.neighbors(v) {
            blocked[u] = true;
        }
        let mut seen = vec![false; n];
        seen[v] = true;
        let mut stack = vec![v];
        while let Some(t) = stack.pop() {
            for &u in g.neighbors(t) {
                if !blocked[u] && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        let expect = !seen[b];
        prop_assert_eq!(g.cycle_separates(&link, v, b).unwrap(), expect);
        prop_assert_eq!(g.cycle_separates(&link, b, v).unwrap(), expect);
    }

    #[test]
    fn diagonalize_is_monotone_idempotent_and_saturated(seed in 0u64..300, n in 4usize..30, keep in 0.3f64..0.9) {
        let g = random_plane(seed, n, keep);
        let h = g.diagonalize();
        prop_assert!(h.validate().is_ok());
        for (u, v) in g.edges() {
            prop_assert!(h.has_edge(u, v));
        }
        prop_assert_eq!(h.diagonalize(), h.clone());
        // Post-hoc scan: no 10⁻-vertex on a 4⁺-face still admits a chord.
        for walk in h.faces() {
            if walk.len() < 4 {
                continue;
            }
            let verts: Vec<usize> = walk.vertices().collect();
            for &w in &verts {
                if h.degree(w) > 10 {
                    continue;
                }
                for &u in &verts {
                    prop_assert!(u == w || h.has_edge(u, w));
                }
            }
        }
    }

    #[test]
    fn dist2_neighborhood_matches_square(seed in 0u64..300, n in 3usize..30, keep in 0.3f64..1.0) {
        let g = random_plane(seed, n, keep);
        let simple = SimpleGraph::from_plane(&g);
        let sq = simple.square();
        for v in 0..n {
            let mut expect = vec![v];
            expect.extend_from_slice(sq.neighbors(v));
            expect.sort_unstable();
            prop_assert_eq!(dist2_closed_neighborhood(&simple, v), expect);
        }
    }

    #[test]
    fn square_degree_is_at_most_delta_squared(seed in 0u64..300, n in 3usize..40, keep in 0.3f64..1.0) {
        let g = random_plane(seed, n, keep);
        let simple = SimpleGraph::from_plane(&g);
        let sq = simple.square();
        let delta = simple.max_degree();
        for v in 0..n {
            prop_assert!(sq.degree(v) <= delta * delta);
        }
    }

    #[test]
    fn maximal_extension_is_maximal(seed in 0u64..300, n in 3usize..20) {
        let g = random_triangulation(GenSeed { seed, n });
        let sq = square_of_plane(&g);
        let best = max_clique_exact(&sq, DEFAULT_BUDGET).unwrap();
        // Grow from a sub-clique of the maximum.
        let half: Vec<usize> = best.members.iter().copied().step_by(2).collect();
        let ext = extend_to_maximal(&sq, &half).unwrap();
        prop_assert!(is_clique(&sq, &ext.members));
        for v in 0..n {
            if ext.members.binary_search(&v).is_err() {
                prop_assert!(!ext.members.iter().all(|&u| sq.has_edge(u, v)));
            }
        }
    }

    #[test]
    fn counting_bound_dominates_every_pattern(seed in 0u64..200, n in 6usize..40) {
        let g = random_triangulation(GenSeed { seed, n });
        let d = g.max_degree().max(19);
        let x = seed as usize % n;
        let y = (x + 1 + seed as usize / 3) % n;
        let z = (y + 1 + seed as usize / 7) % n;
        prop_assume!(x != y && y != z && x != z);
        let p = candidate_set(&g, x, y, z).unwrap();
        // Independent recount of |S| straight from the definition.
        let mut recount = 0;
        for v in 0..n {
            let mut c = 0;
            for &t in &[x, y, z] {
                if v == t || g.has_edge(v, t) {
                    c += 1;
                }
            }
            if c >= 2 {
                recount += 1;
            }
        }
        prop_assert_eq!(p.size(), recount);
        let cert = counting_certificate(&g, &p, d).unwrap();
        prop_assert!(cert.slack >= 0);
        if cert.core_connected {
            prop_assert!(cert.bound <= 3 * d / 2 + 1);
        }
    }

    #[test]
    fn degeneracy_of_plane_instances_is_at_most_5(seed in 0u64..300, n in 3usize..50, keep in 0.2f64..1.0) {
        let g = random_plane(seed, n, keep);
        let out = degeneracy_order_plane(&g);
        prop_assert!(out.k <= 5);
    }
}
