mod common;

use cklab_core::graph::{all_cycles_upto, find_entryless_cycle, path_count, paths_from, paths_of_length};
use cklab_core::{corpus, Graph};
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #[test]
    fn path_count_matches_enumeration(g in common::any_graph(5, 9), n in 0u32..5) {
        let a = path_count(&g, n);
        for u in g.vertices() {
            let paths = paths_from(&g, u, n as usize);
            for w in g.vertices() {
                let count = paths.iter().filter(|p| p.range(&g) == w).count();
                prop_assert_eq!(&a[(u.0, w.0)], &BigInt::from(count));
            }
        }
        let total: usize = g.vertices().map(|v| paths_from(&g, v, n as usize).len()).sum();
        prop_assert_eq!(paths_of_length(&g, n as usize).len(), total);
    }

    #[test]
    fn entryless_cycle_matches_brute_force(g in common::no_sink_graph(6, 3)) {
        let fast = find_entryless_cycle(&g).unwrap();
        let brute: Vec<_> = all_cycles_upto(&g, g.vertex_count())
            .into_iter()
            .filter(|c| c.entry(&g).is_none())
            .collect();
        prop_assert_eq!(fast.is_some(), !brute.is_empty());
        if let Some(c) = fast {
            prop_assert!(c.entry(&g).is_none());
            prop_assert!(brute.contains(&c.canonical(&g)));
        }
    }

    #[test]
    fn text_and_json_round_trip(g in common::any_graph(6, 10)) {
        let from_text = Graph::parse_text(&g.to_text()).unwrap();
        prop_assert_eq!(&from_text, &g);
        prop_assert_eq!(from_text.fingerprint(), g.fingerprint());
        let from_json = Graph::parse(&g.to_json()).unwrap();
        prop_assert_eq!(&from_json, &g);
    }

    #[test]
    fn graphs_without_sinks_have_cycles(g in common::no_sink_graph(6, 2)) {
        prop_assert!(!all_cycles_upto(&g, g.vertex_count()).is_empty());
    }

    #[test]
    fn cycles_are_closed_and_canonical(g in common::no_sink_graph(5, 2)) {
        for c in all_cycles_upto(&g, g.vertex_count()) {
            let p = c.as_path(&g);
            prop_assert_eq!(p.source(), p.range(&g));
            prop_assert_eq!(c.canonical(&g), c.clone());
        }
    }
}

#[test]
fn corpus_graphs_parse_from_their_text() {
    for entry in corpus::corpus() {
        assert_eq!(Graph::parse(&entry.graph.to_text()).unwrap(), entry.graph);
        assert_eq!(corpus::lookup(&entry.name).unwrap(), entry.graph);
    }
}

#[test]
fn parse_errors_carry_locations() {
    let err = Graph::parse_text("a: v > w\na: w > v").unwrap_err();
    assert!(err.to_string().contains("line 2"), "{err}");
    assert!(Graph::parse_text("a v w").is_err());
    assert!(Graph::parse("{\"vertices\": [\"v\"], \"edges\": [], \"extra\": 1}").is_err());
    assert!(Graph::parse("").is_err());
}
