//! Seeded cross-module property checks against the independent oracles in
//! `common`. The heavyweight exhaustive and high-volume batteries live in the
//! acceptance suite; these runs are sized for the ordinary test cycle.

mod common;

use common::{definition_induced_minor, naive_balanced, naive_components};
use proptest::prelude::*;

use wheelsep::generate::{
    gen_random_graph, gen_series_parallel, gen_weighting, SplitMix64,
};
use wheelsep::graph::{Graph, Vertex, VertexSet};
use wheelsep::gyarfas::{gyarfas_path, thin_separator};
use wheelsep::minor::{find_induced_minor, verify_model};
use wheelsep::pipeline::{separator, tw2_decomposition, tw2_separator, verify_result};
use wheelsep::weights::{
    format_rational, heavy_component, is_balanced_separator, parse_rational, rat, Weighting,
};

fn random_connected(n: u32, seed: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    loop {
        let g = gen_random_graph(n, (1 + rng.next_below(7), 10), rng.next_u64());
        if g.is_connected() {
            return g;
        }
    }
}

#[test]
fn components_match_union_find() {
    for seed in 0..60 {
        let g = gen_random_graph(3 + (seed % 8) as u32, (3, 10), seed);
        assert_eq!(g.components(), naive_components(&g));
    }
}

#[test]
fn shortest_paths_are_induced() {
    for seed in 0..40 {
        let g = random_connected(8, seed);
        let all = g.vertex_set();
        for from in g.vertices() {
            for to in g.vertices() {
                let p = g.shortest_path(from, to, &all).unwrap().unwrap();
                assert!(g.is_induced_path(&p), "seed {seed}: {from}->{to}");
            }
        }
    }
}

#[test]
fn contraction_round_trip() {
    // Expanding fibers and re-deriving adjacency reproduces the image graph.
    for seed in 0..40 {
        let g = gen_random_graph(9, (4, 10), seed);
        let mut rng = SplitMix64::new(seed ^ 0x5eed);
        let keep: VertexSet = g.vertices().filter(|_| rng.chance(1, 2)).collect();
        let cm = g.contract_components(&keep).unwrap();
        let image = cm.image();
        let verts: Vec<Vertex> = image.vertices().collect();
        for (i, &a) in verts.iter().enumerate() {
            for &b in &verts[i + 1..] {
                let origin_edge = cm
                    .fiber(a)
                    .iter()
                    .any(|&x| cm.fiber(b).iter().any(|&y| g.has_edge(x, y)));
                assert_eq!(image.has_edge(a, b), origin_edge);
            }
        }
        let expanded: VertexSet = cm.expand(&image.vertex_set());
        assert_eq!(expanded, g.vertex_set());
    }
}

#[test]
fn balance_agrees_with_naive_and_is_monotone() {
    for seed in 0..60 {
        let g = gen_random_graph(4 + (seed % 7) as u32, (1 + seed % 8, 10), seed);
        let w = gen_weighting(&g, seed, 6);
        let mut rng = SplitMix64::new(seed ^ 77);
        let s: VertexSet = g.vertices().filter(|_| rng.chance(1, 3)).collect();
        let balanced = is_balanced_separator(&g, &w, &s);
        assert_eq!(balanced, naive_balanced(&g, &w, &s));
        // Matches the heavy-component view and stays under supersets.
        let wn = w.normalize().unwrap();
        assert_eq!(balanced, heavy_component(&g, &wn, &s).unwrap().is_none());
        if balanced {
            let mut bigger = s.clone();
            bigger.extend(g.vertices().take(2));
            assert!(is_balanced_separator(&g, &w, &bigger));
        }
    }
}

#[test]
fn heavy_component_is_unique() {
    for seed in 0..40 {
        let g = gen_random_graph(8, (2, 10), seed);
        let w = gen_weighting(&g, seed, 5);
        let wn = w.normalize().unwrap();
        let mut rng = SplitMix64::new(seed);
        let s: VertexSet = g.vertices().filter(|_| rng.chance(1, 4)).collect();
        let half = wheelsep::weights::one_half();
        let heavy_count = g
            .without(&s)
            .components()
            .iter()
            .filter(|c| wn.weight_of(c) > half)
            .count();
        assert!(heavy_count <= 1, "seed {seed}");
        assert_eq!(
            heavy_count == 0,
            heavy_component(&g, &wn, &s).unwrap().is_none()
        );
    }
}

#[test]
fn gyarfas_growth_shrinks_heavy_components() {
    for seed in 0..80 {
        let g = random_connected(4 + (seed % 9) as u32, seed);
        let w = gen_weighting(&g, seed ^ 0x9e37, 8);
        let wn = w.normalize().unwrap();
        let path = gyarfas_path(&g, &wn).unwrap();
        assert!(g.is_induced_path(&path));
        let mut previous: Option<VertexSet> = None;
        for k in 1..=path.len() {
            let prefix: VertexSet = path.items()[..k].iter().copied().collect();
            let nh = g.closed_neighborhood(&prefix).unwrap();
            let heavy = heavy_component(&g, &wn, &nh).unwrap();
            match heavy {
                Some(d) => {
                    if let Some(prev) = &previous {
                        assert!(d.is_subset(prev) && d != *prev, "strict shrink, seed {seed}");
                    }
                    previous = Some(d);
                }
                None => assert_eq!(k, path.len(), "growth stops at the first balanced prefix"),
            }
        }
    }
}

#[test]
fn thin_separator_outputs_are_balanced() {
    // Random (g, w, x, y, z) satisfying the preconditions: output balanced.
    let mut found = 0;
    for seed in 0..400 {
        let g = gen_random_graph(4 + (seed % 6) as u32, (4, 10), seed);
        let w = gen_weighting(&g, seed, 6);
        let mut rng = SplitMix64::new(seed ^ 0xface);
        let x: VertexSet = g.vertices().filter(|_| rng.chance(1, 2)).collect();
        let y: VertexSet = g.vertices().filter(|_| rng.chance(1, 3)).collect();
        let z: VertexSet = x.iter().copied().filter(|_| rng.chance(1, 2)).collect();
        let xy: VertexSet = x.union(&y).copied().collect();
        if !is_balanced_separator(&g, &w, &xy) || is_balanced_separator(&g, &w, &z) {
            continue;
        }
        let out = thin_separator(&g, &w, &x, &y, &z).unwrap();
        assert!(is_balanced_separator(&g, &w, &out), "seed {seed}");
        assert!(naive_balanced(&g, &w, &out), "seed {seed}");
        found += 1;
    }
    assert!(found >= 30, "only {found} sampled inputs met the preconditions");
}

#[test]
fn tw2_decompositions_are_valid() {
    for seed in 0..50 {
        let g = gen_series_parallel(3 + (seed % 16) as u32, seed);
        let td = tw2_decomposition(&g).unwrap();
        td.validate(&g).unwrap();
        assert!(td.width() <= 2);
        let w = gen_weighting(&g, seed, 7);
        let sep = tw2_separator(&g, &w).unwrap();
        assert!(sep.len() <= 3);
        assert!(naive_balanced(&g, &w, &sep));
    }
}

#[test]
fn oracle_witnesses_verify_and_match_definition_on_samples() {
    let patterns = [Graph::cycle(4), Graph::wheel(3), Graph::fan(3)];
    for seed in 0..40 {
        let g = gen_random_graph(5, (CONN_P.0, CONN_P.1), seed);
        for pattern in &patterns {
            let by_search = find_induced_minor(&g, pattern).unwrap();
            if let Some(witness) = &by_search {
                assert_eq!(verify_model(&g, witness), Ok(true));
            }
            assert_eq!(
                by_search.is_some(),
                definition_induced_minor(&g, pattern),
                "seed {seed}, pattern {pattern:?}"
            );
        }
    }
}

const CONN_P: (u64, u64) = (5, 10);

#[test]
fn pipeline_is_deterministic() {
    for seed in [3u64, 17, 40] {
        let g = gen_random_graph(10, (4, 10), seed);
        let w = gen_weighting(&g, seed, 9);
        let a = separator(&g, &w, 4).unwrap();
        let b = separator(&g, &w, 4).unwrap();
        match (&a, &b) {
            (
                wheelsep::PipelineResult::Certificate(ca),
                wheelsep::PipelineResult::Certificate(cb),
            ) => assert_eq!(ca, cb),
            (wheelsep::PipelineResult::Witness(wa), wheelsep::PipelineResult::Witness(wb)) => {
                assert_eq!(wa, wb)
            }
            _ => panic!("arms differ between runs"),
        }
        assert!(verify_result(&g, &w, &a, 4).unwrap());
    }
}

#[test]
fn pipeline_soundness_sample() {
    // Small version of the acceptance soundness battery.
    for seed in 0..60 {
        let n = 4 + (seed % 7) as u32;
        let g = gen_random_graph(n, (1 + seed % 8, 10), seed);
        let w = gen_weighting(&g, seed ^ 0xbeef, 8);
        for ell in [3u32, 4] {
            let result = separator(&g, &w, ell).unwrap();
            assert!(
                verify_result(&g, &w, &result, ell).unwrap(),
                "seed {seed}, ell {ell}"
            );
        }
        let result = wheelsep::pipeline::fan_separator(&g, &w, 3).unwrap();
        assert!(verify_result(&g, &w, &result, 3).unwrap(), "fan seed {seed}");
    }
}

proptest! {
    #[test]
    fn normalize_preserves_proportions(nums in proptest::collection::vec(0u16..200, 2..8)) {
        prop_assume!(nums.iter().any(|&x| x > 0));
        let g = Graph::path(nums.len() as u32);
        let weights = nums
            .iter()
            .enumerate()
            .map(|(i, &p)| (i as Vertex, rat(p as i64, 7)))
            .collect();
        let w = Weighting::new(&g, weights).unwrap();
        let wn = w.normalize().unwrap();
        prop_assert!(wn.is_normal());
        // Cross-multiplication keeps exact proportions.
        for (a, ra) in w.iter() {
            for (b, rb) in w.iter() {
                prop_assert_eq!(ra * wn.get(b), rb * wn.get(a));
            }
        }
    }

    #[test]
    fn rational_strings_round_trip(p in 0u32..10_000, q in 1u32..10_000) {
        let r = rat(p as i64, q as i64);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }
}
