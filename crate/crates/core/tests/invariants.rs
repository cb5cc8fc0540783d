use std::collections::BTreeSet;

use bicolor_core::analysis::{check_proper, find_induced_path, online_chromatic_number};
use bicolor_core::engines::{run_presentation, EngineKind};
use bicolor_core::generate::random_bipartite;
use bicolor_core::graph::{
    arrival_component, component_minus_anchor, connected_components, level_component, Adjacency, ColorLabel, ComponentView,
    OnlineBipartiteGraph, SimpleGraph, VertexId,
};
use bicolor_core::suite::suite_engines;
use bicolor_core::transcript::GameTranscript;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn presentation(n: usize, p: f64, seed: u64) -> Vec<Vec<VertexId>> {
    random_bipartite(n, p, &mut ChaCha8Rng::seed_from_u64(seed)).presentation
}

fn sides_are_consistent(graph: &OnlineBipartiteGraph, view: &ComponentView) -> bool {
    let side1_ok = view.side1.iter().all(|&w| graph.same_side(w, view.anchor) == Some(true));
    let side2_ok = view.side2.iter().all(|&w| graph.same_side(w, view.anchor) == Some(false));
    let no_inner_edge = |side: &BTreeSet<VertexId>| {
        side.iter().all(|&u| graph.neighbors(u).iter().all(|w| !side.contains(w)))
    };
    side1_ok && side2_ok && no_inner_edge(&view.side1) && no_inner_edge(&view.side2)
}

/// Subset-based oracle: some `len`-set induces a path, with `endpoint` at an end.
fn path_by_subsets(g: &SimpleGraph, len: usize, endpoint: Option<VertexId>) -> bool {
    let n = g.vertex_count();
    (0u32..1 << n).filter(|s| s.count_ones() as usize == len).any(|set| {
        let members: Vec<VertexId> = (0..n).filter(|&v| set >> v & 1 == 1).collect();
        let deg = |v: VertexId| g.neighbors(v).iter().filter(|&&w| set >> w & 1 == 1).count();
        let edges: usize = members.iter().map(|&v| deg(v)).sum::<usize>() / 2;
        let degrees_ok = members.iter().all(|&v| deg(v) <= 2);
        let ends = members.iter().filter(|&&v| deg(v) <= 1).count();
        let connected = connected_components(&SimpleGraph::induced(g, &members)).len() == 1;
        let endpoint_ok = endpoint.is_none_or(|e| set >> e & 1 == 1 && deg(e) <= 1);
        edges + 1 == len && degrees_ok && connected && endpoint_ok && (len == 1 || ends == 2)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_engine_colors_properly(n in 0usize..40, p in 0.05f64..0.6, seed in any::<u64>()) {
        let pres = presentation(n, p, seed);
        for engine in suite_engines() {
            let run = run_presentation(engine, &pres, "random", n as u64, seed).unwrap();
            prop_assert_eq!(check_proper(&run.graph, &run.coloring), Ok(true));
            prop_assert_eq!(run.coloring.len(), n);
        }
        let run = run_presentation(EngineKind::bicolormax(), &pres, "random", n as u64, seed).unwrap();
        prop_assert!(run.coloring.iter().all(|(_, c)| c != ColorLabel::c(1)));
    }

    #[test]
    fn level_components_grow_with_level(n in 1usize..30, p in 0.05f64..0.5, seed in any::<u64>()) {
        let pres = presentation(n, p, seed);
        let run = run_presentation(EngineKind::bicolormax(), &pres, "random", n as u64, seed).unwrap();
        let top = run.coloring.max_index() + 1;
        for v in 0..n {
            let mut prev_level: Option<ComponentView> = None;
            let mut prev_arrival: Option<ComponentView> = None;
            for level in 0..=top {
                let now = level_component(&run.graph, &run.coloring, v, level, false).unwrap();
                let arr = arrival_component(&run.graph, &run.coloring, v, level);
                prop_assert!(sides_are_consistent(&run.graph, &now));
                prop_assert!(sides_are_consistent(&run.graph, &arr));
                prop_assert!(arr.vertices().iter().all(|&w| now.contains(w)));
                prop_assert!(arr.vertices().iter().all(|&w| w <= v));
                if let Some(prev) = &prev_level {
                    prop_assert!(prev.vertices().iter().all(|&w| now.contains(w)));
                }
                if let Some(prev) = &prev_arrival {
                    prop_assert!(prev.vertices().iter().all(|&w| arr.contains(w)));
                }
                prev_level = Some(now);
                prev_arrival = Some(arr);
            }
        }
    }

    #[test]
    fn removing_the_anchor_splits_into_separate_pieces(n in 2usize..30, p in 0.05f64..0.5, seed in any::<u64>()) {
        let pres = presentation(n, p, seed);
        let run = run_presentation(EngineKind::FirstFit, &pres, "random", n as u64, seed).unwrap();
        for v in 0..n {
            let view = level_component(&run.graph, &run.coloring, v, u32::MAX, false).unwrap();
            let parts = component_minus_anchor(&run.graph, &view, v).unwrap();
            let mut seen = BTreeSet::new();
            for part in &parts {
                prop_assert!(!part.contains(v));
                prop_assert!(sides_are_consistent(&run.graph, part));
                for w in part.vertices() {
                    prop_assert!(seen.insert(w));
                    prop_assert!(view.contains(w));
                }
            }
            prop_assert_eq!(seen.len() + 1, view.len());
            for (i, a) in parts.iter().enumerate() {
                for b in &parts[i + 1..] {
                    for x in a.vertices() {
                        prop_assert!(b.vertices().iter().all(|&y| !run.graph.has_edge(x, y)));
                    }
                }
            }
        }
    }

    #[test]
    fn induced_path_search_matches_subsets(n in 1usize..=9, p in 0.1f64..0.8, seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for w in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, w);
                }
            }
        }
        for len in 1..=n {
            for endpoint in std::iter::once(None).chain((0..n).map(Some)) {
                let found = find_induced_path(&g, len, endpoint);
                prop_assert_eq!(found.is_some(), path_by_subsets(&g, len, endpoint), "len {} endpoint {:?}", len, endpoint);
            }
        }
    }

    #[test]
    fn games_are_deterministic(n in 0usize..40, p in 0.05f64..0.5, seed in any::<u64>()) {
        let pres = presentation(n, p, seed);
        for engine in suite_engines() {
            let a = run_presentation(engine, &pres, "random", n as u64, seed).unwrap();
            let b = run_presentation(engine, &pres, "random", n as u64, seed).unwrap();
            prop_assert_eq!(&a.transcript, &b.transcript);
            let replayed = a.replay().unwrap();
            prop_assert_eq!(replayed.coloring, a.coloring);
        }
    }

    #[test]
    fn transcripts_round_trip(n in 0usize..30, p in 0.05f64..0.5, seed in any::<u64>()) {
        let pres = presentation(n, p, seed);
        for engine in suite_engines() {
            let run = run_presentation(engine, &pres, "random", n as u64, seed).unwrap();
            let parsed = GameTranscript::from_jsonl(&run.transcript.to_jsonl()).unwrap();
            prop_assert_eq!(&parsed.engine, &run.transcript.engine);
            prop_assert_eq!(parsed.param, run.transcript.param);
            prop_assert_eq!(parsed.seed, run.transcript.seed);
            prop_assert_eq!(parsed.presentation(), pres.clone());
            for (x, y) in parsed.steps.iter().zip(&run.transcript.steps) {
                prop_assert_eq!(x.color, y.color);
                prop_assert_eq!(x.branch, y.branch);
            }
        }
    }
}

#[test]
fn solver_value_never_drops_when_adding_an_edge_free_vertex() {
    // adding an isolated vertex can only help the adversary
    for g in [SimpleGraph::path(3), SimpleGraph::path(4), SimpleGraph::complete_bipartite(2, 2)] {
        let base = online_chromatic_number(&g, 5).unwrap();
        let mut bigger = SimpleGraph::new(g.vertex_count() + 1);
        for u in 0..g.vertex_count() {
            for &w in g.neighbors(u) {
                if u < w {
                    bigger.add_edge(u, w);
                }
            }
        }
        assert!(online_chromatic_number(&bigger, 5).unwrap() >= base);
    }
}

#[test]
fn solver_value_is_monotone_under_induced_subgraphs() {
    let g = SimpleGraph::path(6);
    let whole = online_chromatic_number(&g, 5).unwrap();
    for keep in 1u32..(1 << 6) {
        let vs: Vec<VertexId> = (0..6).filter(|&v| keep >> v & 1 == 1).collect();
        assert!(online_chromatic_number(&SimpleGraph::induced(&g, &vs), 5).unwrap() <= whole);
    }
}
